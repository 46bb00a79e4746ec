#pragma once

// Parameterized constructions that separate the controllability classes,
// each with the prediction the engine is expected to reproduce at the
// given truncation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "groupctl/control.hpp"
#include "groupctl/torus.hpp"

namespace groupctl {

struct ChainParams {
  FiniteAbelianGroup m;
  std::vector<Subgroup> chain;  ///< strictly ascending A_0 < A_1 < ...
  std::size_t copies = 1;       ///< disjoint shifted replicas laid side by side
};

struct BlockParams {
  std::int64_t p = 2;
  std::vector<std::size_t> blocks;
};

struct DenseParams {
  FiniteAbelianGroup k_group;
  std::size_t l = 3;
  std::size_t window = 12;
};

struct Z2PowerParams {
  std::size_t depth = 2;
};

struct TorsionTorusParams {
  std::size_t n = 1;
};

enum class FamilyKind { chain, block, dense_trivial_sum, z2_power, torsion_torus };

std::string to_string(FamilyKind k);

/// What the engine must report for a family instance. Unset fields are not predicted.
struct Prediction {
  std::optional<bool> controllable;
  std::optional<bool> weakly_controllable;
  std::optional<bool> uniformly_controllable;
  std::optional<std::size_t> defect_at_0;
  /// not k-controllable for every k <= this bound
  std::optional<std::size_t> not_k_controllable_upto;
  std::optional<bool> directsum_trivial;
  /// project(H, [0, n)) is the full product for every n <= this length
  std::optional<std::size_t> full_projection_length;
  std::optional<bool> witness_valid;
};

struct FamilySpec {
  std::variant<ChainParams, BlockParams, DenseParams, Z2PowerParams, TorsionTorusParams> params;

  FamilyKind kind() const;
  Prediction prediction() const;
  /// Short parameter description, e.g. "p=2 blocks=2,3".
  std::string describe() const;
};

using FamilyInstance = std::variant<ProductSubgroup, TorusSeqSubgroup>;

/// Throws ChainNotStrict unless the chain is strictly ascending inside m.
ProductSubgroup chain_family(const FiniteAbelianGroup& m, const std::vector<Subgroup>& chain, std::size_t copies = 1);
ProductSubgroup block_family(std::int64_t p, const std::vector<std::size_t>& block_sizes);
ProductSubgroup dense_trivial_sum_family(const FiniteAbelianGroup& k_group, std::size_t l, std::size_t window);
ProductSubgroup z2_power_example(std::size_t depth);
TorusSeqSubgroup torsion_torus_example(std::size_t n);

/// A_i = span(e_0, ..., e_i) inside (Z/2)^depth.
std::vector<Subgroup> coordinate_chain(const FiniteAbelianGroup& m);

FamilyInstance build(const FamilySpec& spec);

/// H intersected with the sum over [0, k] equals the span of the level-i
/// generators for i <= k, for every k below W + L.
bool verify_faces(const FiniteAbelianGroup& m, const std::vector<Subgroup>& chain, const ProductSubgroup& h);

struct PredictionCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

/// Evaluates every predicted quantity with the engine.
std::vector<PredictionCheck> check_prediction(const FamilySpec& spec);

struct GrowthRow {
  std::string parameter;
  std::optional<std::size_t> defect;  ///< at J = {0}
  bool controllable = false;
  std::optional<std::size_t> strong_index;
  std::vector<bool> k_profile;  ///< k-controllable for k = 0, 1, ...
};

/// One row per grid point; each spec must be a product-subgroup family.
std::vector<GrowthRow> defect_growth(const std::vector<FamilySpec>& grid, std::size_t k_profile_len = 6);

}  // namespace groupctl
