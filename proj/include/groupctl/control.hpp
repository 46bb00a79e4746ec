#pragma once

// Decision procedures for the controllability hierarchy of a finitely
// generated subgroup H of prod_{i in N} G_i.
//
// Every quantifier over finite index sets J is reduced to the initial
// segments [0, n] with n < W + L (see effective_window): p_J factors through
// p_{[0, max J]}, and equality at [0, W + L - 1] already forces H to lie in
// the direct sum, after which every larger segment agrees as well. Splice
// conditions are checked for n < W + L for the same reason. These reductions
// are cross-examined by BruteForceOracle.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "groupctl/seqspace.hpp"

namespace groupctl {

enum class Property {
  weakly_controllable,
  controllable,
  uniformly_controllable,
  k_controllable,
  strongly_controllable,
  classical_controllable,  ///< splice form of controllability on N
  classical_uniform,       ///< splice form of uniform controllability on N
};

std::string to_string(Property p);
Property property_from_string(const std::string& s);

/// Which subgroup of H a projection is compared against.
struct Constraint {
  enum class Kind {
    finite_support,  ///< H intersected with the direct sum
    support_within,  ///< elements supported in [0, bound]
    zero_from,       ///< elements vanishing on [bound, infinity)
  };
  Kind kind = Kind::finite_support;
  std::size_t bound = 0;

  std::string to_string() const;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

ProductSubgroup constrained(const ProductSubgroup& h, const Constraint& c);

/// An element of p_J(H) outside p_J(constrained(H)).
struct Witness {
  IndexSet j;
  GroupElement h_proj;
  Constraint constraint;
  std::string context;
};

/// p_J(H) == p_J(constrained(H)), recorded as the two canonical bases.
struct EqualityCertificate {
  IndexSet j;
  Constraint constraint;
  IntMatrix lhs;
  IntMatrix rhs;
};

struct Certificate {
  std::string reduction;
  std::vector<EqualityCertificate> equalities;
};

struct Verdict {
  Property property = Property::controllable;
  std::size_t k = 0;  ///< parameter of k_controllable / index found for strongly_controllable
  bool holds = false;
  std::variant<Certificate, Witness> evidence;

  const Witness* witness() const { return std::get_if<Witness>(&evidence); }
  const Certificate* certificate() const { return std::get_if<Certificate>(&evidence); }
};

/// Re-checks a verdict's evidence from scratch against h.
bool verify(const ProductSubgroup& h, const Verdict& v);

struct DefectProfile {
  IndexSet j;
  std::optional<std::size_t> defect;  ///< nullopt: no finite window works
  BigInt target_order;                ///< order of p_J(H)
  /// (k, order of p_J(H intersect sum_{0..k})) for k = 0 .. W + L.
  std::vector<std::pair<std::size_t, BigInt>> table;
};

Verdict controllable_at(const ProductSubgroup& h, const IndexSet& j);
Verdict is_controllable(const ProductSubgroup& h);
Verdict is_weakly_controllable_discrete(const ProductSubgroup& h);
/// Throws InternalInconsistency if H is controllable at J but no window works.
DefectProfile uniformity_defect(const ProductSubgroup& h, const IndexSet& j);
Verdict is_uniformly_controllable(const ProductSubgroup& h);
Verdict is_k_controllable(const ProductSubgroup& h, std::size_t k);
std::optional<std::size_t> strong_index(const ProductSubgroup& h, std::size_t k_max);
/// k_max defaults to W + L, which decides strong controllability exactly.
Verdict is_strongly_controllable(const ProductSubgroup& h, std::optional<std::size_t> k_max = std::nullopt);
Verdict is_classically_controllable(const ProductSubgroup& h);
Verdict is_classically_uniform(const ProductSubgroup& h);

struct VerdictSet {
  Verdict weak;
  Verdict controllable;
  Verdict uniform;
  Verdict k_controllable;
  Verdict strong;

  std::vector<const Verdict*> all() const { return {&weak, &controllable, &uniform, &k_controllable, &strong}; }
};

/// The five verdicts; throws InternalInconsistency if they violate
/// strong => uniform => controllable => weak or k-controllable => strong.
VerdictSet check_all(const ProductSubgroup& h, std::size_t k, std::optional<std::size_t> k_max = std::nullopt);

// --- Z-indexed problems -------------------------------------------------------

/// A subgroup of prod_{i >= -window_neg} G_i. Storage coordinate s of body
/// carries the integer label s - window_neg.
struct ZIndexedSubgroup {
  std::size_t window_neg = 0;
  ProductSubgroup body;

  std::int64_t label(std::size_t storage) const {
    return static_cast<std::int64_t>(storage) - static_cast<std::int64_t>(window_neg);
  }
  std::size_t storage(std::int64_t label) const;
};

/// Relabels the index window [-window_neg, inf) as N.
ProductSubgroup translate_from_Z(std::size_t window_neg, const ZIndexedSubgroup& spec);

/// M^{[-w, 0)} x H as a Z-indexed subgroup; h must live on a power M^N.
ZIndexedSubgroup embed_full_past(const ProductSubgroup& h, std::size_t w);

// --- brute force ------------------------------------------------------------

inline constexpr std::size_t kDefaultOracleCap = 10000;

/// Literal evaluation of the definitions by enumerating H. Index sets J range
/// over initial segments below a horizon past the effective window and, for
/// small groups, over every subset of the first coordinates. Indices are
/// reported as labels: storage coordinate s has label s + label_offset.
class BruteForceOracle {
 public:
  explicit BruteForceOracle(const ProductSubgroup& h, std::size_t cap = kDefaultOracleCap,
                            std::int64_t label_offset = 0);

  std::size_t size() const { return elements_.size(); }
  const std::vector<SeqElement>& elements() const { return elements_; }
  std::size_t horizon() const { return horizon_; }

  bool controllable_at(const IndexSet& j) const;
  /// Least label k with p_J(H) == p_J(H intersect sum_{first..k}).
  std::optional<std::int64_t> uniformity_defect(const IndexSet& j) const;
  bool controllable() const;
  bool uniformly_controllable() const;
  bool weakly_controllable() const;
  bool classical_controllable() const;
  bool classical_uniform() const;
  bool k_controllable(std::size_t k) const;
  std::optional<std::size_t> strong_index(std::size_t k_max) const;

 private:
  using Key = std::vector<std::int64_t>;
  Key pattern(std::size_t e, const IndexSet& j) const;
  Key suffix_key(std::size_t e, std::size_t m) const;
  bool splice_surjective(std::size_t n, std::size_t m) const;
  std::vector<IndexSet> probe_sets() const;

  std::vector<SeqElement> elements_;
  std::vector<bool> finite_;
  std::vector<std::size_t> support_end_;  // 1 + max support index, 0 for zero
  std::size_t horizon_ = 0;
  std::int64_t label_offset_ = 0;
};

struct OracleQuery {
  Property property = Property::controllable;
  std::size_t k = 0;
  std::size_t k_max = 0;
  std::size_t cap = kDefaultOracleCap;
};

/// Ground-truth verdict; throws CapExceeded when H has more than cap elements.
Verdict oracle_check(const ProductSubgroup& h, const OracleQuery& q);

}  // namespace groupctl
