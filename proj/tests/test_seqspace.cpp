#include "doctest.h"

#include "groupctl/error.hpp"
#include "groupctl/seqspace.hpp"
#include "support/corpus.hpp"
#include "support/naive.hpp"

using namespace groupctl;
using testing::Tuple;

namespace {

GroupElement c2(const SchemaPtr& s, std::int64_t v) { return s->tail.element(std::vector<std::int64_t>{v}); }

// Restrictions to [0, horizon) of the elements of h satisfying keep.
template <typename Pred>
std::size_t count_where(const ProductSubgroup& h, std::size_t horizon, Pred keep) {
  std::size_t n = 0;
  for (const auto& t : testing::truncated_elements(h, horizon)) n += keep(t) ? 1 : 0;
  return n;
}

// Offsets of coordinate i inside a flattened truncated tuple.
std::vector<std::size_t> offsets(const CoordSchema& s, std::size_t horizon) {
  std::vector<std::size_t> off{0};
  for (std::size_t i = 0; i < horizon; ++i) off.push_back(off.back() + s.group_at(i).rank());
  return off;
}

}  // namespace

TEST_SUITE("seqspace") {

TEST_CASE("canonical form") {
  auto s = power_schema(FiniteAbelianGroup::cyclic(2));
  SeqElement a(s, {c2(s, 1), c2(s, 0), c2(s, 1)}, {c2(s, 0), c2(s, 1)});
  SeqElement b(s, {c2(s, 1)}, {c2(s, 0), c2(s, 1), c2(s, 0), c2(s, 1)});
  CHECK(a == b);
  CHECK(a.prefix_length() == 0);
  CHECK(a.period() == std::vector<GroupElement>{c2(s, 1), c2(s, 0)});
  CHECK(a.period_length() == 2);
  CHECK(SeqElement::constant(s, c2(s, 1)).order() == 2);
  CHECK(SeqElement::delta(s, 3, c2(s, 1)).has_finite_support());
  CHECK(support(SeqElement::delta(s, 3, c2(s, 1))).indices == IndexSet{3});
  CHECK(support(a).infinite);
  CHECK_THROWS_AS(SeqElement(s, {}, {}), DimensionMismatch);
}

TEST_CASE("random elements agree with their canonical forms pointwise") {
  testing::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    ProductSubgroup h = testing::random_subgroup(rng);
    for (const auto& g : h.gens()) {
      SeqElement sum = seq_add(g, seq_neg(g));
      CHECK(sum.is_zero());
      SeqElement twice = seq_scale(g, 2);
      for (std::size_t i = 0; i < 20; ++i) CHECK(twice.at(i) == g.at(i) + g.at(i));
    }
  }
}

TEST_CASE("orders and intersections match truncated closure") {
  testing::Rng rng(32);
  for (int trial = 0; trial < 150; ++trial) {
    ProductSubgroup h = testing::random_small_subgroup(rng, 3000);
    CAPTURE(h.to_string());
    const Window win = effective_window(h);
    const std::size_t horizon = win.w + 2 * win.l + 1;
    const auto off = offsets(h.schema(), horizon);
    auto zero_on = [&](const Tuple& t, std::size_t lo, std::size_t hi) {
      for (std::size_t p = off[lo]; p < off[hi]; ++p)
        if (t[p] != 0) return false;
      return true;
    };
    CHECK(subgroup_order(h) == static_cast<long>(testing::truncated_elements(h, horizon).size()));
    // A truncated element is finitely supported iff its last full period is zero.
    const std::size_t tail_lo = horizon - win.l;
    CHECK(subgroup_order(intersect_directsum(h)) ==
          static_cast<long>(count_where(h, horizon, [&](const Tuple& t) { return zero_on(t, tail_lo, horizon); })));
    for (std::size_t m = 0; m + win.l < horizon; ++m)
      CHECK(subgroup_order(intersect_zero_from(h, m)) ==
            static_cast<long>(count_where(h, horizon, [&](const Tuple& t) { return zero_on(t, m, horizon); })));
    for (std::size_t k = 0; k + 1 + win.l <= horizon; ++k)
      CHECK(subgroup_order(intersect_sum_window(h, initial_segment(k))) ==
            static_cast<long>(count_where(h, horizon, [&](const Tuple& t) { return zero_on(t, k + 1, horizon); })));
    for (std::size_t n = 0; n < horizon; ++n)
      CHECK(project(h, initial_segment(n)).order() == static_cast<long>(testing::truncated_elements(h, n + 1).size()));
    CHECK(contains(h, intersect_directsum(h)));
    CHECK(same_subgroup(h, ProductSubgroup(h.schema_ptr(), h.gens())));
    for (const auto& g : h.gens()) CHECK(contains_element(h, g));
  }
}

TEST_CASE("schema mismatch") {
  auto a = power_schema(FiniteAbelianGroup::cyclic(2));
  auto b = power_schema(FiniteAbelianGroup::cyclic(3));
  CHECK_THROWS_AS(seq_add(SeqElement::zero(a), SeqElement::zero(b)), DimensionMismatch);
}

}
