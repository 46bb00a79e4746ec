#pragma once

// Machine-readable run reports (JSON) and defect tables (CSV). Reports hold
// plain values only, so parse_report(emit_json(r)) == r.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupctl/families.hpp"
#include "groupctl/structure.hpp"

namespace groupctl {

inline constexpr int kReportVersion = 1;
inline constexpr const char* kEngineVersion = "groupctl 1.0.0";

struct VerdictRecord {
  std::string property;
  std::size_t k = 0;
  bool holds = false;
  std::string evidence;  ///< "certificate" or "witness"
  friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;
};

struct EqualityRecord {
  IndexSet j;
  std::string constraint;
  std::vector<std::string> lhs;  ///< basis rows, space separated
  std::vector<std::string> rhs;
  friend bool operator==(const EqualityRecord&, const EqualityRecord&) = default;
};

struct CertificateRecord {
  std::string property;
  std::string kind;  ///< "equalities" or "witness"
  std::string note;  ///< reduction argument or witness context
  std::vector<EqualityRecord> equalities;
  IndexSet j;              ///< witness only
  std::string constraint;  ///< witness only
  std::string element;     ///< witness only
  friend bool operator==(const CertificateRecord&, const CertificateRecord&) = default;
};

struct DefectRecord {
  IndexSet j;
  std::optional<std::size_t> defect;
  std::string target_order;
  std::vector<std::pair<std::size_t, std::string>> table;
  friend bool operator==(const DefectRecord&, const DefectRecord&) = default;
};

struct CheckRecord {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct GrowthRecord {
  std::string parameter;
  std::optional<std::size_t> defect;
  bool controllable = false;
  std::optional<std::size_t> strong_index;
  std::vector<bool> k_profile;
  friend bool operator==(const GrowthRecord&, const GrowthRecord&) = default;
};

struct Report {
  int report_version = kReportVersion;
  std::string subgroup;
  std::string schema;
  std::vector<VerdictRecord> verdicts;
  std::vector<CertificateRecord> certificates;  ///< one per verdict, same order
  std::optional<DefectRecord> defect_profile;
  std::vector<std::string> invariant_factors;
  std::vector<std::pair<std::string, std::string>> truncation_params;
  std::vector<CheckRecord> checks;
  std::vector<GrowthRecord> growth;
  std::string engine_version = kEngineVersion;
  friend bool operator==(const Report&, const Report&) = default;
};

VerdictRecord verdict_record(const Verdict& v);
CertificateRecord certificate_record(const Verdict& v);
DefectRecord defect_record(const DefectProfile& d);
GrowthRecord growth_record(const GrowthRow& r);
CheckRecord check_record(const PredictionCheck& c, const std::string& prefix = "");
void add_verdict(Report& r, const Verdict& v);

/// Two-space indented JSON with a trailing newline; keys in schema order.
std::string emit_json(const Report& r);
/// Strict: rejects unknown or missing fields, wrong types, empty verdicts
/// and a certificate count different from the verdict count.
Report parse_report(const std::string& json);

struct DefectCsvRow {
  std::string parameter;
  std::size_t k = 0;
  std::string image_order;
  std::optional<std::size_t> defect;
};

std::vector<DefectCsvRow> defect_csv_rows(const std::string& parameter, const DefectProfile& d);
/// Header "parameter,k,image_order,defect"; a missing defect is written "none".
std::string defect_csv(const std::vector<DefectCsvRow>& rows);

}  // namespace groupctl
