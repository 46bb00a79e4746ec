#include "groupctl/report.hpp"

#include <set>
#include <sstream>

#include <json.hpp>

#include "groupctl/error.hpp"

namespace groupctl {

using Json = nlohmann::ordered_json;

namespace {

std::vector<std::string> matrix_rows(const IntMatrix& m) {
  std::vector<std::string> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::string s;
    for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? " " : "") + m(r, c).get_str();
    rows.push_back(s);
  }
  return rows;
}

Json opt(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

// --- strict reading ---

void expect_keys(const Json& j, const std::vector<std::string>& keys, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  std::set<std::string> want(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!want.count(k)) throw ParseError(where + ": unknown field '" + k + "'");
  for (const auto& k : keys)
    if (!j.contains(k)) throw ParseError(where + ": missing field '" + k + "'");
}

std::string get_string(const Json& j, const std::string& key) {
  if (!j.at(key).is_string()) throw ParseError("field '" + key + "' must be a string");
  return j.at(key).get<std::string>();
}

bool get_bool(const Json& j, const std::string& key) {
  if (!j.at(key).is_boolean()) throw ParseError("field '" + key + "' must be a boolean");
  return j.at(key).get<bool>();
}

std::size_t as_count(const Json& v, const std::string& key) {
  if (!v.is_number_unsigned()) throw ParseError("field '" + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

std::optional<std::size_t> get_opt_count(const Json& j, const std::string& key) {
  if (j.at(key).is_null()) return std::nullopt;
  return as_count(j.at(key), key);
}

const Json& get_array(const Json& j, const std::string& key) {
  if (!j.at(key).is_array()) throw ParseError("field '" + key + "' must be an array");
  return j.at(key);
}

IndexSet get_index_set(const Json& j, const std::string& key) {
  IndexSet out;
  for (const auto& v : get_array(j, key)) out.push_back(as_count(v, key));
  return out;
}

std::vector<std::string> get_strings(const Json& j, const std::string& key) {
  std::vector<std::string> out;
  for (const auto& v : get_array(j, key)) {
    if (!v.is_string()) throw ParseError("entries of '" + key + "' must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

VerdictRecord verdict_record(const Verdict& v) {
  return VerdictRecord{to_string(v.property), v.k, v.holds, v.witness() ? "witness" : "certificate"};
}

CertificateRecord certificate_record(const Verdict& v) {
  CertificateRecord c;
  c.property = to_string(v.property);
  if (const Witness* w = v.witness()) {
    c.kind = "witness";
    c.note = w->context;
    c.j = w->j;
    c.constraint = w->constraint.to_string();
    std::string e;
    for (std::size_t i = 0; i < w->h_proj.coords().size(); ++i) e += (i ? " " : "") + std::to_string(w->h_proj.coords()[i]);
    c.element = e;
    return c;
  }
  const Certificate& cert = *v.certificate();
  c.kind = "equalities";
  c.note = cert.reduction;
  for (const auto& eq : cert.equalities)
    c.equalities.push_back(EqualityRecord{eq.j, eq.constraint.to_string(), matrix_rows(eq.lhs), matrix_rows(eq.rhs)});
  return c;
}

DefectRecord defect_record(const DefectProfile& d) {
  DefectRecord r{d.j, d.defect, d.target_order.get_str(), {}};
  for (const auto& [k, o] : d.table) r.table.emplace_back(k, o.get_str());
  return r;
}

GrowthRecord growth_record(const GrowthRow& r) {
  return GrowthRecord{r.parameter, r.defect, r.controllable, r.strong_index, r.k_profile};
}

CheckRecord check_record(const PredictionCheck& c, const std::string& prefix) {
  return CheckRecord{prefix + c.name, c.expected, c.actual, c.pass};
}

void add_verdict(Report& r, const Verdict& v) {
  r.verdicts.push_back(verdict_record(v));
  r.certificates.push_back(certificate_record(v));
}

std::string emit_json(const Report& r) {
  Json j;
  j["report_version"] = r.report_version;
  j["subgroup"] = r.subgroup;
  j["schema"] = r.schema;
  j["verdicts"] = Json::array();
  for (const auto& v : r.verdicts)
    j["verdicts"].push_back(Json{{"property", v.property}, {"k", v.k}, {"holds", v.holds}, {"evidence", v.evidence}});
  j["certificates"] = Json::array();
  for (const auto& c : r.certificates) {
    Json cj{{"property", c.property}, {"kind", c.kind}, {"note", c.note}};
    if (c.kind == "witness") {
      cj["j"] = c.j;
      cj["constraint"] = c.constraint;
      cj["element"] = c.element;
    } else {
      cj["equalities"] = Json::array();
      for (const auto& e : c.equalities)
        cj["equalities"].push_back(Json{{"j", e.j}, {"constraint", e.constraint}, {"lhs", e.lhs}, {"rhs", e.rhs}});
    }
    j["certificates"].push_back(cj);
  }
  if (r.defect_profile) {
    const auto& d = *r.defect_profile;
    Json table = Json::array();
    for (const auto& [k, o] : d.table) table.push_back(Json{{"k", k}, {"image_order", o}});
    j["defect_profile"] = Json{{"j", d.j}, {"defect", opt(d.defect)}, {"target_order", d.target_order}, {"table", table}};
  } else {
    j["defect_profile"] = nullptr;
  }
  j["invariant_factors"] = r.invariant_factors;
  j["truncation_params"] = Json::object();
  for (const auto& [k, v] : r.truncation_params) j["truncation_params"][k] = v;
  j["checks"] = Json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back(Json{{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
  j["growth"] = Json::array();
  for (const auto& g : r.growth)
    j["growth"].push_back(Json{{"parameter", g.parameter},
                               {"defect", opt(g.defect)},
                               {"controllable", g.controllable},
                               {"strong_index", opt(g.strong_index)},
                               {"k_profile", g.k_profile}});
  j["engine_version"] = r.engine_version;
  return j.dump(2) + "\n";
}

Report parse_report(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what());
  }
  expect_keys(j,
              {"report_version", "subgroup", "schema", "verdicts", "certificates", "defect_profile", "invariant_factors",
               "truncation_params", "checks", "growth", "engine_version"},
              "report");
  Report r;
  if (!j["report_version"].is_number_integer() || j["report_version"].get<int>() != kReportVersion)
    throw ParseError("unsupported report_version");
  r.subgroup = get_string(j, "subgroup");
  r.schema = get_string(j, "schema");
  for (const auto& v : get_array(j, "verdicts")) {
    expect_keys(v, {"property", "k", "holds", "evidence"}, "verdict");
    VerdictRecord vr{get_string(v, "property"), as_count(v.at("k"), "k"), get_bool(v, "holds"), get_string(v, "evidence")};
    property_from_string(vr.property);
    if (vr.evidence != "certificate" && vr.evidence != "witness") throw ParseError("bad evidence kind");
    r.verdicts.push_back(vr);
  }
  if (r.verdicts.empty()) throw ParseError("report has no verdicts");
  for (const auto& c : get_array(j, "certificates")) {
    CertificateRecord cr;
    if (!c.is_object() || !c.contains("kind") || !c.at("kind").is_string()) throw ParseError("certificate needs a kind");
    cr.kind = c.at("kind").get<std::string>();
    if (cr.kind == "witness") {
      expect_keys(c, {"property", "kind", "note", "j", "constraint", "element"}, "certificate");
      cr.j = get_index_set(c, "j");
      cr.constraint = get_string(c, "constraint");
      cr.element = get_string(c, "element");
    } else if (cr.kind == "equalities") {
      expect_keys(c, {"property", "kind", "note", "equalities"}, "certificate");
      for (const auto& e : get_array(c, "equalities")) {
        expect_keys(e, {"j", "constraint", "lhs", "rhs"}, "equality");
        cr.equalities.push_back(
            EqualityRecord{get_index_set(e, "j"), get_string(e, "constraint"), get_strings(e, "lhs"), get_strings(e, "rhs")});
      }
    } else {
      throw ParseError("unknown certificate kind '" + cr.kind + "'");
    }
    cr.property = get_string(c, "property");
    cr.note = get_string(c, "note");
    r.certificates.push_back(cr);
  }
  if (r.certificates.size() != r.verdicts.size()) throw ParseError("certificate count differs from verdict count");
  if (!j["defect_profile"].is_null()) {
    const Json& d = j["defect_profile"];
    expect_keys(d, {"j", "defect", "target_order", "table"}, "defect_profile");
    DefectRecord dr{get_index_set(d, "j"), get_opt_count(d, "defect"), get_string(d, "target_order"), {}};
    for (const auto& row : get_array(d, "table")) {
      expect_keys(row, {"k", "image_order"}, "defect table row");
      dr.table.emplace_back(as_count(row.at("k"), "k"), get_string(row, "image_order"));
    }
    r.defect_profile = dr;
  }
  r.invariant_factors = get_strings(j, "invariant_factors");
  if (!j["truncation_params"].is_object()) throw ParseError("truncation_params must be an object");
  for (const auto& [k, v] : j["truncation_params"].items()) {
    if (!v.is_string()) throw ParseError("truncation parameter '" + k + "' must be a string");
    r.truncation_params.emplace_back(k, v.get<std::string>());
  }
  for (const auto& c : get_array(j, "checks")) {
    expect_keys(c, {"name", "expected", "actual", "pass"}, "check");
    r.checks.push_back(CheckRecord{get_string(c, "name"), get_string(c, "expected"), get_string(c, "actual"), get_bool(c, "pass")});
  }
  for (const auto& g : get_array(j, "growth")) {
    expect_keys(g, {"parameter", "defect", "controllable", "strong_index", "k_profile"}, "growth row");
    GrowthRecord gr{get_string(g, "parameter"), get_opt_count(g, "defect"), get_bool(g, "controllable"),
                    get_opt_count(g, "strong_index"), {}};
    for (const auto& b : get_array(g, "k_profile")) {
      if (!b.is_boolean()) throw ParseError("k_profile entries must be booleans");
      gr.k_profile.push_back(b.get<bool>());
    }
    r.growth.push_back(gr);
  }
  r.engine_version = get_string(j, "engine_version");
  return r;
}

std::vector<DefectCsvRow> defect_csv_rows(const std::string& parameter, const DefectProfile& d) {
  std::vector<DefectCsvRow> rows;
  for (const auto& [k, o] : d.table) rows.push_back(DefectCsvRow{parameter, k, o.get_str(), d.defect});
  return rows;
}

std::string defect_csv(const std::vector<DefectCsvRow>& rows) {
  std::ostringstream os;
  os << "parameter,k,image_order,defect\n";
  for (const auto& r : rows) {
    std::string p = r.parameter;
    if (p.find_first_of(",\"") != std::string::npos) {
      std::string q = "\"";
      for (char c : p) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      p = q + "\"";
    }
    os << p << "," << r.k << "," << r.image_order << "," << (r.defect ? std::to_string(*r.defect) : "none") << "\n";
  }
  return os.str();
}

}  // namespace groupctl
