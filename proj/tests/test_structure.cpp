#include "doctest.h"

#include <map>

#include "groupctl/families.hpp"
#include "groupctl/structure.hpp"
#include "support/corpus.hpp"

using namespace groupctl;

TEST_SUITE("structure") {

TEST_CASE("fixed decompositions") {
  auto s = power_schema(FiniteAbelianGroup::cyclic(2));
  ProductSubgroup delta(s, {SeqElement::delta(s, 0, s->tail.element(std::vector<std::int64_t>{1}))});
  CHECK(decompose(delta).factors == std::vector<BigInt>{2});
  auto chain = decompose(z2_power_example(3));
  CHECK(chain.order == 64);
  CHECK(chain.factors == std::vector<BigInt>(6, 2));
  auto torus = decompose(torsion_torus_example(2));
  CHECK(torus.factors == std::vector<BigInt>{30});
  CHECK(torus.torsion.dense);
  CHECK(torus.torsion.reason.rfind("all generators torsion", 0) == 0);
  CHECK(torsion_density(delta).reason.rfind("all generators torsion", 0) == 0);
}

TEST_CASE("factors agree with enumeration and ignore the generating set") {
  testing::Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    ProductSubgroup h = testing::random_small_subgroup(rng, 3000);
    DecompositionReport r = decompose(h);
    BigInt prod = 1;
    for (std::size_t i = 0; i < r.factors.size(); ++i) {
      prod *= r.factors[i];
      if (i + 1 < r.factors.size()) CHECK(r.factors[i + 1] % r.factors[i] == 0);
    }
    BruteForceOracle o(h);
    CHECK(prod == static_cast<long>(o.size()));
    std::map<BigInt, int> orders, expected;
    for (const auto& x : o.elements()) ++orders[x.order()];
    std::vector<std::int64_t> dd;
    for (auto& d : r.factors) dd.push_back(d.get_si());
    FiniteAbelianGroup model(dd);
    for (const auto& x : enumerate(Subgroup::whole(model))) ++expected[x.order()];
    CHECK(orders == expected);
    auto gens = h.gens();
    if (gens.size() >= 2) gens.push_back(seq_add(gens[0], gens[1]));
    std::reverse(gens.begin(), gens.end());
    CHECK(decompose(ProductSubgroup(h.schema_ptr(), gens)).factors == r.factors);
    CHECK(r.weakly_controllable.holds == o.weakly_controllable());
  }
}

}
