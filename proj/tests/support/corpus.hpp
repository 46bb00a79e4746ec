#pragma once

// Hand-rolled random generators shared by the unit and acceptance suites.

#include <cstdint>
#include <random>
#include <vector>

#include "groupctl/control.hpp"
#include "groupctl/linalg.hpp"
#include "groupctl/seqspace.hpp"

namespace groupctl::testing {

using Rng = std::mt19937_64;

inline std::int64_t pick(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline IntMatrix random_matrix(Rng& rng, std::size_t max_dim = 8, long bound = 50) {
  const std::size_t r = pick(rng, 1, max_dim), c = pick(rng, 1, max_dim);
  IntMatrix m(r, c);
  const int sparsity = pick(rng, 0, 3);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = pick(rng, 0, 3) < sparsity ? 0 : pick(rng, -bound, bound);
  return m;
}

inline FiniteAbelianGroup random_coordinate_group(Rng& rng) {
  static const std::int64_t kOrders[] = {2, 3, 4, 6};
  if (pick(rng, 0, 5) == 0) return FiniteAbelianGroup({2, 2});
  return FiniteAbelianGroup::cyclic(kOrders[pick(rng, 0, 3)]);
}

inline GroupElement random_element(Rng& rng, const FiniteAbelianGroup& g, int zero_bias = 1) {
  std::vector<std::int64_t> c(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) c[i] = pick(rng, 0, zero_bias) == 0 ? 0 : pick(rng, 0, g.orders()[i] - 1);
  return g.element(c);
}

/// Random subgroup whose generators are fixed by their first `explicit_coords`
/// coordinates (prefix plus one period), coordinate orders in {2,3,4,6}.
inline ProductSubgroup random_subgroup(Rng& rng, std::size_t explicit_coords = 6) {
  const std::size_t w0 = pick(rng, 0, 2);
  std::vector<FiniteAbelianGroup> prefix;
  for (std::size_t i = 0; i < w0; ++i) prefix.push_back(random_coordinate_group(rng));
  SchemaPtr schema = make_schema(prefix, random_coordinate_group(rng));
  const std::size_t ngens = pick(rng, 1, 4);
  std::vector<SeqElement> gens;
  for (std::size_t g = 0; g < ngens; ++g) {
    const std::size_t plen = pick(rng, w0, std::min<std::size_t>(w0 + 3, explicit_coords - 1));
    const std::size_t lmax = std::min<std::size_t>(3, explicit_coords - plen);
    const std::size_t l = pick(rng, 1, static_cast<std::int64_t>(lmax));
    const bool finite = pick(rng, 0, 1) == 0;
    std::vector<GroupElement> pre, per;
    for (std::size_t i = 0; i < plen; ++i) pre.push_back(random_element(rng, schema->group_at(i)));
    for (std::size_t i = 0; i < l; ++i)
      per.push_back(finite ? schema->tail.zero() : random_element(rng, schema->tail, 2));
    gens.emplace_back(schema, std::move(pre), std::move(per));
  }
  return ProductSubgroup(schema, std::move(gens));
}

/// Draws until the subgroup has at most max_order elements.
inline ProductSubgroup random_small_subgroup(Rng& rng, std::int64_t max_order = 10000, std::size_t explicit_coords = 6) {
  for (;;) {
    ProductSubgroup h = random_subgroup(rng, explicit_coords);
    if (subgroup_order(h) <= max_order) return h;
  }
}

}  // namespace groupctl::testing
