#include "doctest.h"

#include <algorithm>
#include <map>

#include "groupctl/error.hpp"
#include "groupctl/finabel.hpp"
#include "support/corpus.hpp"
#include "support/naive.hpp"

using namespace groupctl;
using testing::Tuple;

namespace {

FiniteAbelianGroup random_group(testing::Rng& rng) {
  std::vector<std::int64_t> orders;
  const std::size_t r = testing::pick(rng, 1, 3);
  for (std::size_t i = 0; i < r; ++i) orders.push_back(testing::pick(rng, 1, 8));
  return FiniteAbelianGroup(orders);
}

std::vector<GroupElement> random_gens(testing::Rng& rng, const FiniteAbelianGroup& g) {
  std::vector<GroupElement> gens;
  const std::size_t n = testing::pick(rng, 0, 3);
  for (std::size_t i = 0; i < n; ++i) gens.push_back(testing::random_element(rng, g, 2));
  return gens;
}

std::set<Tuple> naive_span(const FiniteAbelianGroup& g, const std::vector<GroupElement>& gens) {
  std::vector<Tuple> ts;
  for (auto& x : gens) ts.push_back(x.coords());
  return testing::closure(ts, g.orders());
}

std::set<Tuple> as_set(const Subgroup& s) {
  std::set<Tuple> out;
  for (auto& x : enumerate(s)) out.insert(x.coords());
  return out;
}

}  // namespace

TEST_SUITE("finabel") {

TEST_CASE("basic group facts") {
  FiniteAbelianGroup g({4, 6});
  CHECK(g.cardinality() == 24);
  CHECK(g.to_string() == "Z/4+Z/6");
  auto x = g.element(std::vector<std::int64_t>{3, -1});
  CHECK(x.coords() == std::vector<std::int64_t>{3, 5});
  CHECK(x.order() == 12);
  CHECK((x + x).coords() == std::vector<std::int64_t>{2, 4});
  CHECK(invariant_factors(Subgroup::whole(g)) == std::vector<BigInt>{2, 12});
  CHECK(invariant_factors(Subgroup::trivial(g)).empty());
}

TEST_CASE("span, membership and enumeration match closure") {
  testing::Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    FiniteAbelianGroup g = random_group(rng);
    auto gens = random_gens(rng, g);
    Subgroup s = span(g, gens);
    auto ref = naive_span(g, gens);
    CHECK(s.order() == static_cast<long>(ref.size()));
    CHECK(as_set(s) == ref);
    testing::for_each_tuple(g.orders(), [&](const Tuple& t) { CHECK(member(s, g.element(t)) == (ref.count(t) > 0)); });
  }
}

TEST_CASE("sum and intersection match set operations") {
  testing::Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    FiniteAbelianGroup g = random_group(rng);
    auto ga = random_gens(rng, g), gb = random_gens(rng, g);
    Subgroup a = span(g, ga), b = span(g, gb);
    auto sa = naive_span(g, ga), sb = naive_span(g, gb);
    std::set<Tuple> inter;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(inter, inter.begin()));
    CHECK(as_set(subgroup_intersect(a, b)) == inter);
    auto both = ga;
    both.insert(both.end(), gb.begin(), gb.end());
    CHECK(as_set(subgroup_sum(a, b)) == naive_span(g, both));
    CHECK(is_subgroup_of(subgroup_intersect(a, b), a));
    CHECK(subgroup_equal(a, b) == (sa == sb));
  }
}

TEST_CASE("homomorphisms: image, kernel, preimage") {
  testing::Rng rng(23);
  int built = 0;
  for (int trial = 0; built < 100 && trial < 2000; ++trial) {
    FiniteAbelianGroup dom = random_group(rng), cod = random_group(rng);
    IntMatrix m(cod.rank(), dom.rank());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = testing::pick(rng, 0, 5);
    std::optional<Homomorphism> f;
    try {
      f.emplace(dom, cod, m);
    } catch (const PreconditionFailed&) {
      continue;
    }
    ++built;
    auto tgt_gens = random_gens(rng, cod);
    Subgroup t = span(cod, tgt_gens);
    auto tset = naive_span(cod, tgt_gens);
    std::set<Tuple> img, ker, pre;
    testing::for_each_tuple(dom.orders(), [&](const Tuple& x) {
      Tuple y = (*f)(dom.element(x)).coords();
      img.insert(y);
      if (std::all_of(y.begin(), y.end(), [](auto v) { return v == 0; })) ker.insert(x);
      if (tset.count(y)) pre.insert(x);
    });
    CHECK(as_set(image(*f, Subgroup::whole(dom))) == img);
    CHECK(as_set(kernel(*f)) == ker);
    CHECK(as_set(preimage(*f, t)) == pre);
  }
  CHECK(built == 100);
}

TEST_CASE("ill-defined homomorphism is rejected") {
  CHECK_THROWS_AS(Homomorphism(FiniteAbelianGroup::cyclic(2), FiniteAbelianGroup::cyclic(3), IntMatrix{{1}}),
                  PreconditionFailed);
}

TEST_CASE("invariant factors: chain, product, element orders") {
  testing::Rng rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    FiniteAbelianGroup g = random_group(rng);
    auto gens = random_gens(rng, g);
    Subgroup s = span(g, gens);
    auto d = invariant_factors(s);
    BigInt prod = 1;
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(d[i] >= 2);
      if (i + 1 < d.size()) CHECK(d[i + 1] % d[i] == 0);
      prod *= d[i];
    }
    CHECK(prod == s.order());
    std::map<std::int64_t, int> lhs, rhs;
    for (auto& t : naive_span(g, gens)) ++lhs[testing::tuple_order(t, g.orders())];
    std::vector<std::int64_t> dd;
    for (auto& v : d) dd.push_back(v.get_si());
    testing::for_each_tuple(dd.empty() ? std::vector<std::int64_t>{1} : dd,
                            [&](const Tuple& t) { ++rhs[testing::tuple_order(t, dd.empty() ? std::vector<std::int64_t>{1} : dd)]; });
    CHECK(lhs == rhs);
  }
}

TEST_CASE("enumeration cap") {
  FiniteAbelianGroup g({8, 8});
  CHECK_THROWS_AS(enumerate(Subgroup::whole(g), 63), CapExceeded);
  CHECK(enumerate(Subgroup::whole(g), 64).size() == 64);
}

}
