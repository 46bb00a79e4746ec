#pragma once

// Sequence spaces prod_{i in N} G_i with finitely many distinct coordinate
// groups: G_i = prefix[i] for i < W0 and G_i = tail otherwise. Elements are
// eventually periodic; subgroups are finitely generated by such elements and
// are reduced to finite abelian groups over an effective window.

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "groupctl/finabel.hpp"

namespace groupctl {

/// Sorted, duplicate-free set of coordinate indices.
using IndexSet = std::vector<std::size_t>;

IndexSet make_index_set(std::vector<std::size_t> indices);
/// {0, 1, ..., n}.
IndexSet initial_segment(std::size_t n);
/// {lo, ..., hi - 1}.
IndexSet index_range(std::size_t lo, std::size_t hi);

struct CoordSchema {
  std::vector<FiniteAbelianGroup> prefix;
  FiniteAbelianGroup tail;

  std::size_t prefix_length() const { return prefix.size(); }
  const FiniteAbelianGroup& group_at(std::size_t i) const {
    return i < prefix.size() ? prefix[i] : tail;
  }
  std::string to_string() const;

  friend bool operator==(const CoordSchema&, const CoordSchema&) = default;
};

using SchemaPtr = std::shared_ptr<const CoordSchema>;

SchemaPtr make_schema(std::vector<FiniteAbelianGroup> prefix, FiniteAbelianGroup tail);
/// Schema of M^N: no prefix, every coordinate is m.
SchemaPtr power_schema(FiniteAbelianGroup m);

/// Eventually periodic element: coordinate i reads prefix[i] for i < P and
/// period[(i - P) mod L] afterwards. Always stored in canonical form (L and
/// P minimal, P >= W0), so equality is structural.
class SeqElement {
 public:
  SeqElement(SchemaPtr schema, std::vector<GroupElement> prefix, std::vector<GroupElement> period);

  static SeqElement zero(SchemaPtr schema);
  /// value at coordinate i, zero elsewhere.
  static SeqElement delta(SchemaPtr schema, std::size_t i, const GroupElement& value);
  /// value at every coordinate; requires every coordinate group to be the tail group.
  static SeqElement constant(SchemaPtr schema, const GroupElement& value);

  const CoordSchema& schema() const { return *schema_; }
  const SchemaPtr& schema_ptr() const { return schema_; }
  const std::vector<GroupElement>& prefix() const { return prefix_; }
  const std::vector<GroupElement>& period() const { return period_; }
  std::size_t prefix_length() const { return prefix_.size(); }
  std::size_t period_length() const { return period_.size(); }

  const GroupElement& at(std::size_t i) const;
  bool is_zero() const;
  bool has_finite_support() const;
  /// Additive order: lcm of the orders of all values.
  BigInt order() const;

  std::string to_string() const;

  friend bool operator==(const SeqElement& a, const SeqElement& b);
  friend std::strong_ordering operator<=>(const SeqElement& a, const SeqElement& b);

 private:
  void canonicalize();

  SchemaPtr schema_;
  std::vector<GroupElement> prefix_;
  std::vector<GroupElement> period_;
};

SeqElement seq_add(const SeqElement& a, const SeqElement& b);
SeqElement seq_neg(const SeqElement& a);
SeqElement seq_scale(const SeqElement& a, std::int64_t n);

struct Support {
  bool infinite = false;
  IndexSet indices;  ///< exact support when finite
};

Support support(const SeqElement& a);

/// The element of prod_{j in J} G_j obtained by restricting a to J.
GroupElement restrict_to(const SeqElement& a, const IndexSet& j);
FiniteAbelianGroup product_group(const CoordSchema& schema, const IndexSet& j);

class ProductSubgroup {
 public:
  explicit ProductSubgroup(SchemaPtr schema, std::vector<SeqElement> gens = {});

  const CoordSchema& schema() const { return *schema_; }
  const SchemaPtr& schema_ptr() const { return schema_; }
  const std::vector<SeqElement>& gens() const { return gens_; }

  std::string to_string() const;

 private:
  SchemaPtr schema_;
  std::vector<SeqElement> gens_;
};

/// W: coordinates [0, W) may be irregular; from W on every element of H is
/// L-periodic. Elements are determined by their restriction to [0, W + L).
struct Window {
  std::size_t w = 0;
  std::size_t l = 1;
  std::size_t span() const { return w + l; }
  friend bool operator==(const Window&, const Window&) = default;
};

Window effective_window(const ProductSubgroup& h);

/// p_J(H) as a subgroup of prod_{j in J} G_j.
Subgroup project(const ProductSubgroup& h, const IndexSet& j);
/// H itself as a finite group, via the injective restriction to [0, W + L).
Subgroup as_finite_group(const ProductSubgroup& h);
BigInt subgroup_order(const ProductSubgroup& h);

/// H intersected with the direct sum: combinations of generators whose
/// periodic tail vanishes.
ProductSubgroup intersect_directsum(const ProductSubgroup& h);
/// Elements of H supported inside the finite set k.
ProductSubgroup intersect_sum_window(const ProductSubgroup& h, const IndexSet& k);
/// Elements of H vanishing at every coordinate >= m.
ProductSubgroup intersect_zero_from(const ProductSubgroup& h, std::size_t m);

bool same_subgroup(const ProductSubgroup& a, const ProductSubgroup& b);
bool contains(const ProductSubgroup& outer, const ProductSubgroup& inner);
bool contains_element(const ProductSubgroup& h, const SeqElement& x);

}  // namespace groupctl
