#include "groupctl/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "groupctl/error.hpp"

namespace groupctl {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through a temporary file so readers never see a partial report.
void write_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw IoError("cannot write " + path);
    o << content;
    if (!o.flush()) throw IoError("cannot write " + path);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot write " + path + ": " + ec.message());
}

std::string input_text(const RunConfig& c) {
  if (c.input.empty()) throw ParseError("no --input given");
  if (c.input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  if (c.input.find('\n') != std::string::npos || c.input.find(' ') != std::string::npos) return c.input;
  return read_file(c.input);
}

struct Resolved {
  ProductSubgroup h;
  std::string description;
  std::string schema;
  std::optional<TorusSeqSubgroup> torus;
  std::optional<FamilySpec> family;
};

Resolved resolve(const InputSpec& spec) {
  if (const auto* h = std::get_if<ProductSubgroup>(&spec)) return {*h, h->to_string(), h->schema().to_string(), {}, {}};
  auto from_torus = [](const TorusSeqSubgroup& t) {
    ProductEmbedding e = to_product_subgroup(t);
    return Resolved{e.h, t.to_string(), "Q/Z embedded in " + e.h.schema().tail.to_string(), t, {}};
  };
  if (const auto* t = std::get_if<TorusSeqSubgroup>(&spec)) return from_torus(*t);
  const FamilySpec& f = std::get<FamilySpec>(spec);
  const FamilyInstance inst = build(f);
  Resolved r = std::holds_alternative<TorusSeqSubgroup>(inst)
                   ? from_torus(std::get<TorusSeqSubgroup>(inst))
                   : Resolved{std::get<ProductSubgroup>(inst), "", std::get<ProductSubgroup>(inst).schema().to_string(), {}, {}};
  r.description = to_string(f.kind()) + " " + f.describe();
  r.family = f;
  return r;
}

Resolved load(const RunConfig& c) { return resolve(parse_input(input_text(c))); }

void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.out.empty())
    out << text;
  else
    write_atomically(c.out, text);
}

std::string show_bool(bool b) { return b ? "true" : "false"; }
std::string show_opt(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "none"; }

std::vector<std::string> factor_strings(const std::vector<BigInt>& f) {
  std::vector<std::string> out;
  for (const auto& d : f) out.push_back(d.get_str());
  return out;
}

std::string join_strings(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string index_text(const IndexSet& j) {
  std::vector<std::string> parts;
  for (auto i : j) parts.push_back(std::to_string(i));
  return "{" + join_strings(parts, ",") + "}";
}

std::string evidence_summary(const Verdict& v) {
  if (const Witness* w = v.witness())
    return "witness " + w->h_proj.to_string() + " at J=" + index_text(w->j) + " vs " + w->constraint.to_string();
  return "certificate, " + std::to_string(v.certificate()->equalities.size()) + " equalities";
}

void print_verdicts(std::ostream& out, const std::vector<const Verdict*>& vs) {
  out << std::left << std::setw(24) << "property" << std::setw(4) << "k" << std::setw(7) << "holds"
      << "evidence\n";
  for (const Verdict* v : vs)
    out << std::setw(24) << to_string(v->property) << std::setw(4) << v->k << std::setw(7) << show_bool(v->holds)
        << evidence_summary(*v) << "\n";
}

void cross_check_with_oracle(const ProductSubgroup& h, const VerdictSet& s, std::size_t cap, std::size_t k_max) {
  for (const Verdict* v : s.all()) {
    Verdict o = oracle_check(h, OracleQuery{v->property, v->k, k_max, cap});
    if (o.holds != v->holds || (v->property == Property::strongly_controllable && v->holds && o.k != v->k))
      throw InternalInconsistency("engine and brute force disagree on " + to_string(v->property));
  }
}

Report base_report(const Resolved& r, const std::vector<const Verdict*>& vs) {
  Report rep;
  rep.subgroup = r.description;
  rep.schema = r.schema;
  for (const Verdict* v : vs) add_verdict(rep, *v);
  const Window w = effective_window(r.h);
  rep.truncation_params = {{"W", std::to_string(w.w)}, {"L", std::to_string(w.l)}};
  return rep;
}

std::size_t default_kmax(const RunConfig& c, const ProductSubgroup& h) {
  return c.k_max.value_or(effective_window(h).span());
}

// --- reproductions ---------------------------------------------------------

void add_checks(Report& rep, const FamilySpec& spec, const std::string& prefix) {
  for (const auto& c : check_prediction(spec)) rep.checks.push_back(check_record(c, prefix));
}

void add_check(Report& rep, std::string name, std::string expected, std::string actual) {
  const bool pass = expected == actual;
  rep.checks.push_back(CheckRecord{std::move(name), std::move(expected), std::move(actual), pass});
}

void fill_main_instance(Report& rep, const ProductSubgroup& h, std::size_t k) {
  VerdictSet s = check_all(h, k);
  for (const Verdict* v : s.all()) add_verdict(rep, *v);
  rep.defect_profile = defect_record(uniformity_defect(h, {0}));
  rep.invariant_factors = factor_strings(decompose(h).factors);
  const Window w = effective_window(h);
  rep.truncation_params.emplace_back("W", std::to_string(w.w));
  rep.truncation_params.emplace_back("L", std::to_string(w.l));
  rep.truncation_params.emplace_back("k", std::to_string(k));
  rep.truncation_params.emplace_back("k_max", std::to_string(w.span()));
}

Report reproduce_chain() {
  Report rep;
  const FamilySpec main{Z2PowerParams{3}};
  rep.subgroup = "z2_power " + main.describe();
  const ProductSubgroup h = z2_power_example(3);
  rep.schema = h.schema().to_string();
  rep.truncation_params.emplace_back("depths", "2..6");
  fill_main_instance(rep, h, 1);
  std::vector<FamilySpec> grid;
  for (std::size_t d = 2; d <= 6; ++d) {
    grid.push_back({Z2PowerParams{d}});
    add_checks(rep, grid.back(), grid.back().describe() + ": ");
  }
  for (const auto& row : defect_growth(grid)) rep.growth.push_back(growth_record(row));
  return rep;
}

Report reproduce_torus() {
  Report rep;
  const TorusSeqSubgroup t = torsion_torus_example(4);
  const ProductEmbedding e = to_product_subgroup(t);
  rep.subgroup = "torsion_torus n=4 " + t.to_string();
  rep.schema = "Q/Z embedded in " + e.h.schema().tail.to_string();
  rep.truncation_params.emplace_back("n", "1..6");
  rep.truncation_params.emplace_back("main_n", "4");
  add_verdict(rep, noncontrollability_witness(t, qz(1, 2)));
  rep.defect_profile = defect_record(uniformity_defect(e.h, {0}));
  rep.invariant_factors = factor_strings(decompose(t).factors);
  for (std::size_t n = 1; n <= 6; ++n) add_checks(rep, {TorsionTorusParams{n}}, "n=" + std::to_string(n) + ": ");
  auto show_approx = [](const std::optional<Approximation>& a, const std::vector<QZ>& y) -> std::string {
    if (!a) return "none";
    return "y_k=" + y[a->k].to_string() + " m=" + a->m.get_str();
  };
  const std::vector<QZ> y6 = default_y(6);
  add_check(rep, "approximate_constant(1/2, J={0}, eps=1/10)", "y_k=1/7 m=3",
            show_approx(approximate_constant(qz(1, 2), y6, {0}, Rational(1, 10)), y6));
  const std::vector<QZ> y4 = default_y(4);
  add_check(rep, "approximate_constant(1/2, J={0}, eps=1/1000) at length 4", "none",
            show_approx(approximate_constant(qz(1, 2), y4, {0}, Rational(1, 1000)), y4));
  const std::vector<QZ> y100 = default_y(100);
  add_check(rep, "approximate_constant(1/2, J={0}, eps=1/1000) at length 100", "y_k=1/503 m=251",
            show_approx(approximate_constant(qz(1, 2), y100, {0}, Rational(1, 1000)), y100));
  return rep;
}

Report reproduce_dense() {
  Report rep;
  const FamilySpec main{DenseParams{FiniteAbelianGroup::cyclic(2), 3, 12}};
  const ProductSubgroup h = std::get<ProductSubgroup>(build(main));
  rep.subgroup = "dense_trivial_sum " + main.describe();
  rep.schema = h.schema().to_string();
  rep.truncation_params.emplace_back("l", "3");
  rep.truncation_params.emplace_back("window", "12");
  fill_main_instance(rep, h, 1);
  for (std::int64_t q : {2, 3}) {
    const FamilySpec spec{DenseParams{FiniteAbelianGroup::cyclic(q), 3, 12}};
    add_checks(rep, spec, spec.describe() + ": ");
  }
  return rep;
}

Report reproduce_blocks() {
  Report rep;
  const FamilySpec main{BlockParams{2, {2, 3}}};
  const ProductSubgroup h = block_family(2, {2, 3});
  rep.subgroup = "block " + main.describe();
  rep.schema = h.schema().to_string();
  rep.truncation_params.emplace_back("p", "2,3");
  rep.truncation_params.emplace_back("blocks", "(2,S), S=3..5");
  fill_main_instance(rep, h, 1);
  std::vector<FamilySpec> grid;
  for (std::int64_t p : {2, 3})
    for (std::size_t s = 3; s <= 5; ++s) {
      grid.push_back({BlockParams{p, {2, s}}});
      const FamilySpec& spec = grid.back();
      add_checks(rep, spec, spec.describe() + ": ");
      const ProductSubgroup g = block_family(p, {2, s});
      const std::size_t kmax = effective_window(g).span();
      add_check(rep, spec.describe() + ": strong_index = splice search", show_opt(BruteForceOracle(g).strong_index(kmax)),
                show_opt(strong_index(g, kmax)));
    }
  for (const auto& row : defect_growth(grid)) rep.growth.push_back(growth_record(row));
  return rep;
}

void print_report_human(std::ostream& out, const Report& rep) {
  out << "subgroup  " << rep.subgroup << "\n";
  out << "schema    " << rep.schema << "\n";
  for (const auto& [k, v] : rep.truncation_params) out << "  " << k << " = " << v << "\n";
  for (const auto& v : rep.verdicts)
    out << "verdict   " << std::left << std::setw(24) << v.property << " k=" << v.k << " " << show_bool(v.holds) << " ("
        << v.evidence << ")\n";
  if (rep.defect_profile)
    out << "defect    J=" << index_text(rep.defect_profile->j) << " " << show_opt(rep.defect_profile->defect) << "\n";
  if (!rep.invariant_factors.empty()) out << "factors   " << join_strings(rep.invariant_factors, " ") << "\n";
  for (const auto& g : rep.growth) {
    std::string prof;
    for (bool b : g.k_profile) prof += b ? '1' : '0';
    out << "growth    " << std::setw(24) << g.parameter << " defect=" << show_opt(g.defect)
        << " strong_index=" << show_opt(g.strong_index) << " k-profile=" << prof << "\n";
  }
  for (const auto& c : rep.checks)
    out << (c.pass ? "PASS  " : "FAIL  ") << c.name << "  expected=" << c.expected << " actual=" << c.actual << "\n";
}

}  // namespace

Format format_from_string(const std::string& s) {
  if (s == "human") return Format::human;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw ParseError("unknown format '" + s + "'");
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw ParseError("range must look like a..b");
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    const unsigned long lo = std::stoul(a, &used_a), hi = std::stoul(b, &used_b);
    if (used_a != a.size() || used_b != b.size() || lo > hi || a[0] == '-' || b[0] == '-') throw ParseError("");
    return {lo, hi};
  } catch (const std::exception&) {
    throw ParseError("range must look like a..b with a <= b, got '" + s + "'");
  }
}

IndexSet parse_index_list(const std::string& s) {
  std::vector<std::size_t> idx;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(part, &used);
      if (used != part.size() || part[0] == '-') throw ParseError("");
      idx.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("bad index list '" + s + "'");
    }
  }
  if (idx.empty()) throw ParseError("index list is empty");
  return make_index_set(idx);
}

std::vector<std::string> reproduce_ids() { return {"ex-3.5", "ex-4.6", "ex-5-dense", "thm-7.1"}; }

Report reproduce_report(const std::string& id) {
  if (id == "ex-3.5") return reproduce_chain();
  if (id == "ex-4.6") return reproduce_torus();
  if (id == "ex-5-dense") return reproduce_dense();
  if (id == "thm-7.1") return reproduce_blocks();
  throw ParseError("unknown example id '" + id + "' (known: " + join_strings(reproduce_ids(), ", ") + ")");
}

bool all_pass(const Report& r) {
  for (const auto& c : r.checks)
    if (!c.pass) return false;
  return true;
}

int cmd_check(const RunConfig& c, std::ostream& out) {
  const Resolved r = load(c);
  const std::size_t kmax = default_kmax(c, r.h);
  const VerdictSet s = check_all(r.h, c.k, kmax);
  if (c.oracle) cross_check_with_oracle(r.h, s, c.cap, kmax);
  std::ostringstream os;
  if (c.format == Format::json) {
    Report rep = base_report(r, s.all());
    rep.defect_profile = defect_record(uniformity_defect(r.h, c.j));
    rep.invariant_factors = factor_strings(decompose(r.h).factors);
    rep.truncation_params.emplace_back("k", std::to_string(c.k));
    rep.truncation_params.emplace_back("k_max", std::to_string(kmax));
    os << emit_json(rep);
  } else if (c.format == Format::csv) {
    os << "property,k,holds\n";
    for (const Verdict* v : s.all()) os << to_string(v->property) << "," << v->k << "," << show_bool(v->holds) << "\n";
  } else {
    const Window w = effective_window(r.h);
    os << "subgroup  " << r.description << "\n";
    os << "window    W=" << w.w << " L=" << w.l << " k_max=" << kmax << "\n";
    print_verdicts(os, s.all());
    os << "strong index: " << (s.strong.holds ? std::to_string(s.strong.k) : "none up to " + std::to_string(kmax)) << "\n";
    if (c.oracle) os << "brute force: agrees\n";
  }
  emit(c, out, os.str());
  return 0;
}

int cmd_defect(const RunConfig& c, std::ostream& out) {
  std::vector<DefectCsvRow> rows;
  std::vector<std::pair<std::string, DefectProfile>> profiles;
  if (c.depths) {
    if (!c.input.empty()) {
      InputSpec in = parse_input(input_text(c));
      if (!std::holds_alternative<FamilySpec>(in) || std::get<FamilySpec>(in).kind() != FamilyKind::z2_power)
        throw ParseError("--depths applies to the z2_power family only");
    }
    for (std::size_t d = c.depths->first; d <= c.depths->second; ++d) {
      const FamilySpec spec{Z2PowerParams{d}};
      profiles.emplace_back(spec.describe(), uniformity_defect(z2_power_example(d), c.j));
    }
    for (const auto& [p, prof] : profiles) {
      const auto hit = prof.defect ? prof.table[*prof.defect].second : prof.target_order;
      rows.push_back(DefectCsvRow{p, prof.defect.value_or(prof.table.back().first), hit.get_str(), prof.defect});
    }
  } else {
    const Resolved r = load(c);
    profiles.emplace_back("input", uniformity_defect(r.h, c.j));
    rows = defect_csv_rows("input", profiles.front().second);
  }
  std::ostringstream os;
  if (c.format == Format::csv) {
    os << defect_csv(rows);
  } else if (c.format == Format::json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& [p, prof] : profiles) {
      nlohmann::ordered_json t = nlohmann::ordered_json::array();
      for (const auto& [k, o] : prof.table) t.push_back({{"k", k}, {"image_order", o.get_str()}});
      j.push_back({{"parameter", p},
                   {"j", prof.j},
                   {"defect", prof.defect ? nlohmann::ordered_json(*prof.defect) : nlohmann::ordered_json(nullptr)},
                   {"target_order", prof.target_order.get_str()},
                   {"table", t}});
    }
    os << j.dump(2) << "\n";
  } else {
    for (const auto& [p, prof] : profiles) {
      os << p << "  J=" << index_text(prof.j) << "  |p_J(H)|=" << prof.target_order.get_str()
         << "  defect=" << (prof.defect ? std::to_string(*prof.defect) : "none (exceeds window)") << "\n";
      if (!c.depths)
        for (const auto& [k, o] : prof.table) os << "  k=" << k << "  |p_J(H cap sum[0,k])|=" << o.get_str() << "\n";
    }
  }
  emit(c, out, os.str());
  return 0;
}

int cmd_kcontrol(const RunConfig& c, std::ostream& out) {
  const Resolved r = load(c);
  const std::size_t kmax = default_kmax(c, r.h);
  const Verdict kv = is_k_controllable(r.h, c.k);
  const Verdict sv = is_strongly_controllable(r.h, kmax);
  if (c.oracle) {
    const BruteForceOracle o(r.h, c.cap);
    if (o.k_controllable(c.k) != kv.holds || o.strong_index(kmax) != strong_index(r.h, kmax))
      throw InternalInconsistency("engine and brute force disagree on k-controllability");
  }
  std::ostringstream os;
  if (c.format == Format::json) {
    Report rep = base_report(r, {&kv, &sv});
    rep.truncation_params.emplace_back("k", std::to_string(c.k));
    rep.truncation_params.emplace_back("k_max", std::to_string(kmax));
    os << emit_json(rep);
  } else if (c.format == Format::csv) {
    os << "property,k,holds\n"
       << "k_controllable," << kv.k << "," << show_bool(kv.holds) << "\n"
       << "strongly_controllable," << sv.k << "," << show_bool(sv.holds) << "\n";
  } else {
    os << "subgroup  " << r.description << "\n";
    print_verdicts(os, {&kv, &sv});
    os << "strong index: " << (sv.holds ? std::to_string(sv.k) : "none up to " + std::to_string(kmax)) << "\n";
  }
  emit(c, out, os.str());
  return 0;
}

int cmd_decompose(const RunConfig& c, std::ostream& out) {
  const Resolved r = load(c);
  const DecompositionReport d = r.torus ? decompose(*r.torus) : decompose(r.h);
  std::ostringstream os;
  if (c.format == Format::json) {
    Report rep = base_report(r, {&d.weakly_controllable});
    rep.invariant_factors = factor_strings(d.factors);
    rep.truncation_params.emplace_back("order", d.order.get_str());
    rep.truncation_params.emplace_back("torsion_dense", show_bool(d.torsion.dense));
    rep.truncation_params.emplace_back("torsion_reason", d.torsion.reason);
    os << emit_json(rep);
  } else if (c.format == Format::csv) {
    os << "factor\n";
    for (const auto& f : d.factors) os << f.get_str() << "\n";
  } else {
    os << "subgroup  " << r.description << "\n";
    os << "order     " << d.order.get_str() << "\n";
    os << "factors   " << (d.factors.empty() ? "(trivial)" : join_strings(factor_strings(d.factors), " ")) << "\n";
    os << "torsion   dense=" << show_bool(d.torsion.dense) << " (" << d.torsion.reason << ")\n";
    os << "weakly_controllable " << show_bool(d.weakly_controllable.holds)
       << (r.torus ? " (discrete embedding)" : "") << "\n";
  }
  emit(c, out, os.str());
  return 0;
}

int cmd_report(const RunConfig& c, std::ostream& out) {
  const std::string text = input_text(c);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    emit(c, out, emit_json(parse_report(text)));
    return 0;
  }
  const Resolved r = resolve(parse_input(text));
  const std::size_t kmax = default_kmax(c, r.h);
  const VerdictSet s = check_all(r.h, c.k, kmax);
  Report rep = base_report(r, s.all());
  rep.defect_profile = defect_record(uniformity_defect(r.h, c.j));
  rep.invariant_factors = factor_strings((r.torus ? decompose(*r.torus) : decompose(r.h)).factors);
  rep.truncation_params.emplace_back("k", std::to_string(c.k));
  rep.truncation_params.emplace_back("k_max", std::to_string(kmax));
  if (r.family)
    for (const auto& chk : check_prediction(*r.family)) rep.checks.push_back(check_record(chk));
  emit(c, out, emit_json(rep));
  return 0;
}

int cmd_reproduce(const RunConfig& c, std::ostream& out) {
  const Report rep = reproduce_report(c.example_id);
  const bool pass = all_pass(rep);
  if (c.format == Format::json) {
    emit(c, out, emit_json(rep));
  } else {
    if (!c.out.empty()) write_atomically(c.out, emit_json(rep));
    std::ostringstream os;
    print_report_human(os, rep);
    os << (pass ? "PASS " : "FAIL ") << c.example_id << "\n";
    out << os.str();
  }
  return pass ? 0 : 1;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.cap == 0) throw ParseError("--cap must be positive");
    if (c.command == "check") return cmd_check(c, out);
    if (c.command == "defect") return cmd_defect(c, out);
    if (c.command == "kcontrol") return cmd_kcontrol(c, out);
    if (c.command == "reproduce") return cmd_reproduce(c, out);
    if (c.command == "decompose") return cmd_decompose(c, out);
    if (c.command == "report") return cmd_report(c, out);
    throw ParseError("unknown command '" + c.command + "'");
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const InternalInconsistency& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 5;
  } catch (const Error& e) {
    // Invalid constructions (bad family parameters, schema mismatches) are input errors.
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace groupctl
