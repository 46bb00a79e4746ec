#pragma once

// Command implementations behind the groupctl executable. Each command
// writes to the given streams and returns the process exit status:
// 0 success, 1 a reproduction claim failed, 2 parse error or unknown id,
// 3 enumeration cap exceeded, 4 internal inconsistency, 5 I/O error.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupctl/report.hpp"
#include "groupctl/textio.hpp"

namespace groupctl {

enum class Format { human, json, csv };

Format format_from_string(const std::string& s);

struct RunConfig {
  std::string command;     ///< check, defect, kcontrol, reproduce, decompose, report
  std::string input;       ///< file path, "-" for stdin, or the input text itself
  std::string example_id;  ///< reproduce only
  Format format = Format::human;
  std::size_t cap = kDefaultOracleCap;
  std::optional<std::size_t> k_max;
  std::size_t k = 1;
  std::optional<std::pair<std::size_t, std::size_t>> depths;
  IndexSet j{0};
  std::string out;  ///< empty: standard output
  bool oracle = false;
};

/// "a..b" with a <= b.
std::pair<std::size_t, std::size_t> parse_range(const std::string& s);
IndexSet parse_index_list(const std::string& s);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int cmd_check(const RunConfig& config, std::ostream& out);
int cmd_defect(const RunConfig& config, std::ostream& out);
int cmd_kcontrol(const RunConfig& config, std::ostream& out);
int cmd_reproduce(const RunConfig& config, std::ostream& out);
int cmd_decompose(const RunConfig& config, std::ostream& out);
int cmd_report(const RunConfig& config, std::ostream& out);

std::vector<std::string> reproduce_ids();
/// The full report of a reproduction at its pinned truncations. Throws
/// ParseError for an unknown id.
Report reproduce_report(const std::string& id);
bool all_pass(const Report& r);

}  // namespace groupctl
