#pragma once

// Finite abelian groups Z/n_1 + ... + Z/n_r and their subgroups.
//
// A subgroup S of G = Z^r / R, R = n_1 Z + ... + n_r Z, is stored as the
// lattice L with R <= L <= Z^r and S = L / R. L is kept in row Hermite normal
// form, which is an r x r upper triangular matrix with positive diagonal, so
// two subgroups are equal iff their basis matrices are identical.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "groupctl/linalg.hpp"

namespace groupctl {

class GroupElement;

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<std::int64_t> orders);

  static FiniteAbelianGroup cyclic(std::int64_t n) { return FiniteAbelianGroup({n}); }
  static FiniteAbelianGroup direct_sum(const std::vector<FiniteAbelianGroup>& parts);

  const std::vector<std::int64_t>& orders() const { return orders_; }
  /// Number of cyclic factors, trivial ones included.
  std::size_t rank() const { return orders_.size(); }
  BigInt cardinality() const;
  IntVector moduli() const;
  bool is_trivial() const;

  GroupElement zero() const;
  /// Element with the given coordinates, reduced into canonical residues.
  GroupElement element(const std::vector<std::int64_t>& coords) const;
  GroupElement element(const IntVector& coords) const;

  std::string to_string() const;

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  std::vector<std::int64_t> orders_;
};

class GroupElement {
 public:
  GroupElement() = default;

  const FiniteAbelianGroup& parent() const { return parent_; }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  bool is_zero() const;
  /// Additive order of the element.
  BigInt order() const;
  IntVector as_vector() const;

  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-() const;
  GroupElement operator-(const GroupElement& o) const { return *this + (-o); }
  GroupElement scaled(std::int64_t n) const;

  std::string to_string() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
    return a.coords_ <=> b.coords_;
  }

 private:
  friend class FiniteAbelianGroup;
  GroupElement(FiniteAbelianGroup parent, std::vector<std::int64_t> coords)
      : parent_(std::move(parent)), coords_(std::move(coords)) {}

  FiniteAbelianGroup parent_;
  std::vector<std::int64_t> coords_;
};

class Subgroup {
 public:
  Subgroup() = default;

  static Subgroup trivial(const FiniteAbelianGroup& g);
  static Subgroup whole(const FiniteAbelianGroup& g);
  /// Subgroup generated by the images of integer row vectors.
  static Subgroup from_rows(const FiniteAbelianGroup& g, const IntMatrix& rows);

  const FiniteAbelianGroup& parent() const { return parent_; }
  const IntMatrix& basis() const { return basis_; }
  BigInt order() const;
  /// Basis rows that are nonzero in the group; together they generate the subgroup.
  std::vector<GroupElement> generators() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.basis_ == b.basis_;
  }

 private:
  Subgroup(FiniteAbelianGroup parent, IntMatrix basis)
      : parent_(std::move(parent)), basis_(std::move(basis)) {}

  FiniteAbelianGroup parent_;
  IntMatrix basis_;
};

/// y = matrix * x, matrix is codomain.rank() x domain.rank().
class Homomorphism {
 public:
  Homomorphism(FiniteAbelianGroup domain, FiniteAbelianGroup codomain, IntMatrix matrix);

  static Homomorphism identity(const FiniteAbelianGroup& g);

  const FiniteAbelianGroup& domain() const { return domain_; }
  const FiniteAbelianGroup& codomain() const { return codomain_; }
  const IntMatrix& matrix() const { return matrix_; }

  GroupElement operator()(const GroupElement& x) const;

 private:
  FiniteAbelianGroup domain_;
  FiniteAbelianGroup codomain_;
  IntMatrix matrix_;
};

inline constexpr std::size_t kDefaultEnumerationCap = 100000;

Subgroup span(const FiniteAbelianGroup& g, const std::vector<GroupElement>& gens);
bool member(const Subgroup& s, const GroupElement& x);
/// Membership of an integer vector (any representative) in the lattice of s.
bool member_vector(const Subgroup& s, const IntVector& x);
Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b);
Subgroup subgroup_intersect(const Subgroup& a, const Subgroup& b);
bool subgroup_equal(const Subgroup& a, const Subgroup& b);
bool is_subgroup_of(const Subgroup& inner, const Subgroup& outer);

Subgroup image(const Homomorphism& f, const Subgroup& s);
Subgroup preimage(const Homomorphism& f, const Subgroup& s);
Subgroup kernel(const Homomorphism& f);

/// d_1 | d_2 | ... with every d_i >= 2 and s isomorphic to the sum of Z/d_i.
std::vector<BigInt> invariant_factors(const Subgroup& s);

/// Every element exactly once. Throws CapExceeded when order(s) > cap.
std::vector<GroupElement> enumerate(const Subgroup& s, std::size_t cap = kDefaultEnumerationCap);

/// Coefficients c with x == sum c_i * basis_i. x must lie in the lattice.
IntVector coordinates_in_basis(const IntMatrix& upper_triangular, const IntVector& x);

}  // namespace groupctl
