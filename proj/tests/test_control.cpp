#include "doctest.h"

#include "groupctl/control.hpp"
#include "groupctl/error.hpp"
#include "support/corpus.hpp"

using namespace groupctl;

namespace {

SchemaPtr z(std::int64_t n) { return power_schema(FiniteAbelianGroup::cyclic(n)); }

GroupElement c(const SchemaPtr& s, std::int64_t v) { return s->tail.element(std::vector<std::int64_t>{v}); }

}  // namespace

TEST_SUITE("control") {

TEST_CASE("delta generator is in every class") {
  auto s = z(2);
  ProductSubgroup h(s, {SeqElement::delta(s, 0, c(s, 1))});
  CHECK(is_controllable(h).holds);
  CHECK(is_uniformly_controllable(h).holds);
  CHECK(is_weakly_controllable_discrete(h).holds);
  CHECK_FALSE(is_k_controllable(h, 0).holds);
  CHECK(is_k_controllable(h, 1).holds);
  CHECK(strong_index(h, 5) == std::optional<std::size_t>(1));
  auto all = check_all(h, 1);
  for (auto* v : all.all()) CHECK(v->holds);
}

TEST_CASE("constant sequence is not controllable") {
  auto s = z(3);
  ProductSubgroup h(s, {SeqElement::constant(s, c(s, 1))});
  Verdict v = is_controllable(h);
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness());
  CHECK(v.witness()->j == initial_segment(0));
  CHECK(verify(h, v));
  DefectProfile d = uniformity_defect(h, initial_segment(0));
  CHECK_FALSE(d.defect.has_value());
  CHECK(d.target_order == 3);
  CHECK_FALSE(is_strongly_controllable(h).holds);
}

TEST_CASE("defect of a two-block group") {
  // generated by 1 1 0 0 ... : p_{0}(H) needs support [0,1]
  auto s = z(2);
  ProductSubgroup h(s, {SeqElement(s, {c(s, 1), c(s, 1)}, {c(s, 0)})});
  auto d = uniformity_defect(h, initial_segment(0));
  CHECK(d.defect == std::optional<std::size_t>(1));
  CHECK(d.table.front().second == 1);
  BruteForceOracle o(h);
  CHECK(o.uniformity_defect(initial_segment(0)) == std::optional<std::int64_t>(1));
  CHECK(o.size() == 2);
}

TEST_CASE("certificates re-verify and tampering is detected") {
  auto s = z(2);
  ProductSubgroup h(s, {SeqElement::delta(s, 1, c(s, 1))});
  Verdict v = is_uniformly_controllable(h);
  REQUIRE(v.holds);
  CHECK(verify(h, v));
  Verdict bad = v;
  std::get<Certificate>(bad.evidence).equalities.pop_back();
  CHECK_FALSE(verify(h, bad));
  ProductSubgroup other(s, {SeqElement::constant(s, c(s, 1))});
  CHECK_FALSE(verify(other, v));
}

TEST_CASE("engine agrees with brute force on random subgroups") {
  testing::Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    ProductSubgroup h = testing::random_small_subgroup(rng, 2000);
    CAPTURE(h.to_string());
    BruteForceOracle o(h);
    const std::size_t span = effective_window(h).span();
    for (std::size_t n = 0; n < span + 2; ++n) {
      const IndexSet j = initial_segment(n);
      CHECK(controllable_at(h, j).holds == o.controllable_at(j));
      auto d = uniformity_defect(h, j).defect;
      auto od = o.uniformity_defect(j);
      CHECK(d.has_value() == od.has_value());
      if (d && od) CHECK(static_cast<std::int64_t>(*d) == *od);
    }
    CHECK(is_weakly_controllable_discrete(h).holds == o.weakly_controllable());
    CHECK(is_controllable(h).holds == o.controllable());
    CHECK(is_uniformly_controllable(h).holds == o.uniformly_controllable());
    CHECK(is_classically_controllable(h).holds == o.classical_controllable());
    CHECK(is_classically_uniform(h).holds == o.classical_uniform());
    for (std::size_t k = 0; k <= 3; ++k) CHECK(is_k_controllable(h, k).holds == o.k_controllable(k));
    auto all = check_all(h, 1);
    for (auto* v : all.all()) CHECK(verify(h, *v));
  }
}

TEST_CASE("translation to N preserves verdicts") {
  auto s = z(2);
  ProductSubgroup h(s, {SeqElement(s, {c(s, 1), c(s, 1)}, {c(s, 0)})});
  ZIndexedSubgroup zh = embed_full_past(h, 2);
  CHECK(zh.label(0) == -2);
  CHECK(zh.storage(0) == 2);
  CHECK_THROWS_AS(zh.storage(-3), PreconditionFailed);
  ProductSubgroup t = translate_from_Z(2, zh);
  BruteForceOracle o(t, kDefaultOracleCap, -2);
  CHECK(is_uniformly_controllable(t).holds == o.uniformly_controllable());
  CHECK(o.uniformity_defect(initial_segment(2)) == std::optional<std::int64_t>(1));
}

TEST_CASE("oracle cap") {
  auto s = z(2);
  std::vector<SeqElement> gens;
  for (std::size_t i = 0; i < 8; ++i) gens.push_back(SeqElement::delta(s, i, c(s, 1)));
  ProductSubgroup h(s, gens);
  CHECK_THROWS_AS(BruteForceOracle(h, 100), CapExceeded);
  CHECK(BruteForceOracle(h, 256).size() == 256);
}

}
