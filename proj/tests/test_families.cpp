#include "doctest.h"

#include "groupctl/error.hpp"
#include "groupctl/families.hpp"
#include "support/corpus.hpp"

using namespace groupctl;

TEST_SUITE("families") {

TEST_CASE("coordinate chain in (Z/2)^3") {
  FiniteAbelianGroup m({2, 2, 2});
  ProductSubgroup h = chain_family(m, coordinate_chain(m));
  CHECK(h.gens().size() == 6);
  CHECK(uniformity_defect(h, {0}).defect == std::optional<std::size_t>(2));
  CHECK(verify_faces(m, coordinate_chain(m), h));
  BruteForceOracle o(h);
  CHECK(o.size() == 64);
  CHECK(o.uniformity_defect({0}) == std::optional<std::int64_t>(2));
  CHECK(o.controllable());
}

TEST_CASE("single-link chain has defect zero") {
  FiniteAbelianGroup m({4});
  ProductSubgroup h = chain_family(m, {Subgroup::whole(m)});
  CHECK(uniformity_defect(h, {0}).defect == std::optional<std::size_t>(0));
}

TEST_CASE("chain must be strict") {
  FiniteAbelianGroup m({2, 2});
  auto c = coordinate_chain(m);
  CHECK_THROWS_AS(chain_family(m, {c[0], c[0]}), ChainNotStrict);
  CHECK_THROWS_AS(chain_family(m, {c[1], c[0]}), ChainNotStrict);
  CHECK_THROWS_AS(chain_family(FiniteAbelianGroup({2}), c), DimensionMismatch);
}

TEST_CASE("z2 power: controllable with growing defect") {
  for (std::size_t d = 2; d <= 6; ++d) {
    ProductSubgroup h = z2_power_example(d);
    CHECK(is_controllable(h).holds);
    CHECK(uniformity_defect(h, {0}).defect == std::optional<std::size_t>(d - 1));
    FiniteAbelianGroup m(std::vector<std::int64_t>(d, 2));
    CHECK(verify_faces(m, coordinate_chain(m), h));
    for (std::size_t n = 0; n < effective_window(h).span(); ++n) CHECK(controllable_at(h, initial_segment(n)).holds);
    if (d <= 4) {
      BruteForceOracle o(h, 20000);
      CHECK(o.uniformity_defect({0}) == std::optional<std::int64_t>(d - 1));
    }
  }
  CHECK_THROWS_AS(z2_power_example(1), PreconditionFailed);
}

TEST_CASE("blocks (2,3) over Z/2") {
  ProductSubgroup h = block_family(2, {2, 3});
  CHECK(is_uniformly_controllable(h).holds);
  CHECK_FALSE(is_k_controllable(h, 1).holds);
  CHECK(uniformity_defect(h, {0}).defect == std::optional<std::size_t>(1));
  BruteForceOracle o(h);
  CHECK_FALSE(o.k_controllable(1));
  CHECK(o.uniformity_defect({0}) == std::optional<std::int64_t>(1));
  CHECK_THROWS_AS(block_family(4, {1}), PreconditionFailed);
}

TEST_CASE("a single one-coordinate block needs splice distance one") {
  ProductSubgroup h = block_family(3, {1});
  CHECK(strong_index(h, 4) == std::optional<std::size_t>(1));
  CHECK(BruteForceOracle(h).strong_index(4) == std::optional<std::size_t>(1));
  CHECK(is_strongly_controllable(h).holds);
}

TEST_CASE("block strong index equals the splice search") {
  for (std::int64_t p : {2, 3})
    for (auto blocks : std::vector<std::vector<std::size_t>>{{1, 3}, {2, 4}, {3, 5}, {1, 2, 4}}) {
      ProductSubgroup h = block_family(p, blocks);
      const std::size_t s = *std::max_element(blocks.begin(), blocks.end());
      auto idx = strong_index(h, effective_window(h).span());
      CHECK(idx == BruteForceOracle(h).strong_index(effective_window(h).span()));
      REQUIRE(idx);
      CHECK(*idx >= s - 1);
    }
}

TEST_CASE("dense family with trivial direct-sum part") {
  for (auto kg : {FiniteAbelianGroup::cyclic(2), FiniteAbelianGroup::cyclic(3)})
    for (std::size_t window : {9, 12}) {
      ProductSubgroup h = dense_trivial_sum_family(kg, 3, window);
      CHECK(subgroup_order(intersect_directsum(h)) == 1);
      for (std::size_t n = 1; n <= 3; ++n)
        CHECK(project(h, index_range(0, n)).order() == product_group(h.schema(), index_range(0, n)).cardinality());
      CHECK_FALSE(project(h, index_range(0, 4)).order() == product_group(h.schema(), index_range(0, 4)).cardinality());
      CHECK_FALSE(is_weakly_controllable_discrete(h).holds);
      BruteForceOracle o(h);
      for (const auto& x : o.elements())
        if (!x.is_zero()) CHECK_FALSE(x.has_finite_support());
      CHECK_FALSE(o.weakly_controllable());
    }
  CHECK_THROWS_AS(dense_trivial_sum_family(FiniteAbelianGroup::cyclic(2), 1, 4), PreconditionFailed);
}

TEST_CASE("every prediction holds on the reproduction grid") {
  std::vector<FamilySpec> grid;
  for (std::size_t d = 2; d <= 6; ++d) grid.push_back({Z2PowerParams{d}});
  for (std::int64_t p : {2, 3})
    for (std::size_t s = 3; s <= 5; ++s) grid.push_back({BlockParams{p, {2, s}}});
  grid.push_back({DenseParams{FiniteAbelianGroup::cyclic(2), 3, 12}});
  grid.push_back({DenseParams{FiniteAbelianGroup::cyclic(3), 3, 12}});
  for (std::size_t n = 1; n <= 6; ++n) grid.push_back({TorsionTorusParams{n}});
  FiniteAbelianGroup z4({4});
  grid.push_back({ChainParams{z4, {span(z4, {z4.element(std::vector<std::int64_t>{2})}), Subgroup::whole(z4)}, 1}});
  for (const auto& spec : grid) {
    auto checks = check_prediction(spec);
    CHECK_FALSE(checks.empty());
    for (const auto& c : checks) {
      CAPTURE(spec.describe());
      CAPTURE(c.name);
      CHECK(c.expected == c.actual);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("defect growth tables") {
  std::vector<FamilySpec> z2;
  for (std::size_t d = 2; d <= 6; ++d) z2.push_back({Z2PowerParams{d}});
  auto rows = defect_growth(z2);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(rows[i].defect == std::optional<std::size_t>(i + 1));
    CHECK(rows[i].controllable);
    CHECK(rows[i].parameter == "depth=" + std::to_string(i + 2));
  }
  FiniteAbelianGroup z4({4});
  std::vector<Subgroup> chain{span(z4, {z4.element(std::vector<std::int64_t>{2})}), Subgroup::whole(z4)};
  std::vector<FamilySpec> control;
  for (std::size_t c = 1; c <= 4; ++c) control.push_back({ChainParams{z4, chain, c}});
  for (const auto& r : defect_growth(control)) CHECK(r.defect == std::optional<std::size_t>(1));
  std::vector<FamilySpec> blocks;
  for (std::size_t s = 1; s <= 5; ++s) blocks.push_back({BlockParams{2, {s}}});
  auto brows = defect_growth(blocks);
  for (std::size_t i = 0; i + 1 < brows.size(); ++i) CHECK(*brows[i].strong_index < *brows[i + 1].strong_index);
  CHECK_THROWS_AS(defect_growth({{TorsionTorusParams{2}}}), PreconditionFailed);
}

}
