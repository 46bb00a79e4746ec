#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "groupctl/cli.hpp"
#include "groupctl/error.hpp"
#include "groupctl/structure.hpp"

namespace py = pybind11;
using namespace groupctl;

namespace {

py::int_ to_py(const BigInt& x) { return py::int_(py::str(x.get_str())); }

ProductSubgroup product_from_text(const std::string& text) {
  const InputSpec spec = parse_input(text);
  if (const auto* h = std::get_if<ProductSubgroup>(&spec)) return *h;
  if (const auto* f = std::get_if<FamilySpec>(&spec)) {
    const FamilyInstance inst = build(*f);
    if (const auto* h = std::get_if<ProductSubgroup>(&inst)) return *h;
  }
  throw ParseError("input does not describe a product subgroup");
}

TorusSeqSubgroup torus_from_text(const std::string& text) {
  const InputSpec spec = parse_input(text);
  if (const auto* h = std::get_if<TorusSeqSubgroup>(&spec)) return *h;
  if (const auto* f = std::get_if<FamilySpec>(&spec)) {
    const FamilyInstance inst = build(*f);
    if (const auto* h = std::get_if<TorusSeqSubgroup>(&inst)) return *h;
  }
  throw ParseError("input does not describe a torus subgroup");
}

std::vector<QZ> parse_qz_list(const std::vector<std::string>& xs) {
  std::vector<QZ> out;
  for (const auto& x : xs) out.push_back(QZ::parse(x));
  return out;
}

py::tuple run_command(const RunConfig& c) {
  std::ostringstream out, err;
  const int code = run(c, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_groupctl, m) {
  m.doc() = "Controllability of subgroups of products of finite abelian groups";

  auto base = py::register_exception<Error>(m, "GroupctlError");
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<CapExceeded>(m, "CapExceeded", base);
  py::register_exception<InternalInconsistency>(m, "InternalInconsistency", base);
  py::register_exception<PreconditionFailed>(m, "PreconditionFailed", base);

  py::class_<Verdict>(m, "Verdict")
      .def_property_readonly("property", [](const Verdict& v) { return to_string(v.property); })
      .def_readonly("k", &Verdict::k)
      .def_readonly("holds", &Verdict::holds)
      .def_property_readonly("evidence", [](const Verdict& v) { return v.witness() ? "witness" : "certificate"; })
      .def("__bool__", [](const Verdict& v) { return v.holds; })
      .def("__repr__", [](const Verdict& v) {
        return "<Verdict " + to_string(v.property) + " k=" + std::to_string(v.k) + (v.holds ? " holds>" : " fails>");
      });

  py::class_<ProductSubgroup>(m, "Subgroup")
      .def_static("parse", &product_from_text, py::arg("text"))
      .def("to_text", [](const ProductSubgroup& h) { return to_text(h); })
      .def("__repr__", &ProductSubgroup::to_string)
      .def_property_readonly("window", [](const ProductSubgroup& h) {
        const Window w = effective_window(h);
        return py::make_tuple(w.w, w.l);
      })
      .def_property_readonly("order", [](const ProductSubgroup& h) { return to_py(subgroup_order(h)); })
      .def("controllable_at", &controllable_at, py::arg("j"))
      .def("is_controllable", &is_controllable)
      .def("is_weakly_controllable", &is_weakly_controllable_discrete)
      .def("is_uniformly_controllable", &is_uniformly_controllable)
      .def("is_k_controllable", &is_k_controllable, py::arg("k"))
      .def("is_strongly_controllable", &is_strongly_controllable, py::arg("k_max") = py::none())
      .def("strong_index", [](const ProductSubgroup& h, std::optional<std::size_t> k_max) {
        return strong_index(h, k_max.value_or(effective_window(h).span()));
      }, py::arg("k_max") = py::none())
      .def("uniformity_defect", [](const ProductSubgroup& h, const IndexSet& j) {
        return uniformity_defect(h, make_index_set(j)).defect;
      }, py::arg("j"))
      .def("verify", &verify, py::arg("verdict"))
      .def("check_all", [](const ProductSubgroup& h, std::size_t k) {
        const VerdictSet s = check_all(h, k);
        py::dict d;
        for (const Verdict* v : s.all()) d[py::str(to_string(v->property))] = v->holds;
        return d;
      }, py::arg("k") = 1)
      .def("oracle", [](const ProductSubgroup& h, const std::string& property, std::size_t k, std::size_t cap) {
        return oracle_check(h, {property_from_string(property), k, effective_window(h).span(), cap}).holds;
      }, py::arg("property"), py::arg("k") = 0, py::arg("cap") = kDefaultOracleCap)
      .def("invariant_factors", [](const ProductSubgroup& h) {
        py::list out;
        for (const auto& d : decompose(h).factors) out.append(to_py(d));
        return out;
      });

  m.def("torus_witness", [](const std::string& text, const std::string& x) {
    const TorusSeqSubgroup h = torus_from_text(text);
    const Verdict v = noncontrollability_witness(h, QZ::parse(x));
    return py::make_tuple(v, verify_torus_witness(h, v));
  }, py::arg("text"), py::arg("x"), "Noncontrollability verdict for c_x at J = {0} and whether it re-verifies.");

  m.def("in_span", [](const std::string& x, const std::vector<std::string>& y) {
    return in_span(QZ::parse(x), parse_qz_list(y));
  }, py::arg("x"), py::arg("y"));

  m.def("approximate_constant", [](const std::string& x, const std::vector<std::string>& y, const IndexSet& j,
                                   const std::string& epsilon) -> std::optional<py::tuple> {
    const auto a = approximate_constant(QZ::parse(x), parse_qz_list(y), make_index_set(j), Rational(epsilon));
    if (!a) return std::nullopt;
    return py::make_tuple(a->k, to_py(a->m), a->distance.get_str());
  }, py::arg("x"), py::arg("y"), py::arg("j"), py::arg("epsilon"));

  m.def("reproduce_ids", &reproduce_ids);
  m.def("reproduce", [](const std::string& id) { return emit_json(reproduce_report(id)); }, py::arg("id"),
        "Canonical JSON report of a pinned reproduction.");
  m.def("report", [](const std::string& text) {
    RunConfig c;
    c.command = "report";
    c.input = text;
    c.format = Format::json;
    return run_command(c);
  }, py::arg("text"), "Runs the report command on inline input; returns (exit code, stdout, stderr).");
  m.attr("engine_version") = kEngineVersion;
}
