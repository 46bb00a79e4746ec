#include <iostream>

#include <CLI11.hpp>

#include "groupctl/cli.hpp"
#include "groupctl/error.hpp"

using namespace groupctl;

int main(int argc, char** argv) {
  CLI::App app{"Controllability hierarchy for subgroups of products of finite abelian groups"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "human", depths, j;
  std::size_t kmax = 0;

  auto common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input,-i", config.input, "spec file, '-' for stdin, or inline spec text");
    if (needs_input) in->required();
    sub->add_option("--format,-f", format, "human, json or csv")->check(CLI::IsMember({"human", "json", "csv"}));
    sub->add_option("--out,-o", config.out, "write the output to this file");
    sub->add_option("--cap", config.cap, "brute-force enumeration cap")->check(CLI::PositiveNumber);
    sub->add_option("--kmax", kmax, "largest splice distance searched (default W+L)");
    sub->add_option("--k", config.k, "splice distance for k-controllability");
    sub->add_option("--j", j, "index set J as a comma list (default 0)");
  };

  auto* check = app.add_subcommand("check", "all five verdicts with evidence");
  common(check, true);
  check->add_flag("--oracle", config.oracle, "cross-check every verdict by enumeration");
  auto* defect = app.add_subcommand("defect", "uniformity defect table at J");
  common(defect, false);
  defect->add_option("--depths", depths, "z2_power depths a..b");
  auto* kcontrol = app.add_subcommand("kcontrol", "k-controllability and strong index");
  common(kcontrol, true);
  kcontrol->add_flag("--oracle", config.oracle, "cross-check by enumeration");
  auto* reproduce = app.add_subcommand("reproduce", "rebuild a published example at pinned truncations");
  common(reproduce, false);
  reproduce->add_option("id", config.example_id, "ex-3.5, ex-4.6, ex-5-dense or thm-7.1")->required();
  auto* decompose = app.add_subcommand("decompose", "invariant factors and torsion density");
  common(decompose, true);
  auto* report = app.add_subcommand("report", "JSON report for a spec, or validate an existing report");
  common(report, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  try {
    config.format = format_from_string(format);
    if (!depths.empty()) config.depths = parse_range(depths);
    if (!j.empty()) config.j = parse_index_list(j);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (kmax > 0) config.k_max = kmax;
  return run(config, std::cout, std::cerr);
}
