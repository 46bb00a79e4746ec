#pragma once

// Exact integer linear algebra: Hermite and Smith normal forms, lattice
// kernels and linear congruence solving. Entries are GMP integers, so no
// intermediate value can overflow.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace groupctl {

using BigInt = mpz_class;
using IntVector = std::vector<BigInt>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const IntVector& d);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  void append_row(const IntVector& row);
  IntMatrix transpose() const;
  bool is_zero_row(std::size_t r) const;
  /// Drops rows that are entirely zero.
  IntMatrix nonzero_rows() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> entries_;
};

IntVector mat_vec(const IntMatrix& a, const IntVector& x);

/// Determinant by fraction-free (Bareiss) elimination. Square input only.
BigInt determinant(const IntMatrix& m);

struct HnfResult {
  IntMatrix h;  ///< Row Hermite normal form.
  IntMatrix u;  ///< Unimodular, u * input == h.
  std::size_t rank = 0;
};

struct SnfResult {
  IntMatrix d;  ///< Diagonal, same shape as the input.
  IntMatrix l;  ///< Unimodular, l * input * r == d.
  IntMatrix r;

  /// The diagonal entries d(0,0), d(1,1), ... up to min(rows, cols).
  IntVector diagonal() const;
};

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above each pivot reduced into [0, pivot). Zero rows sink to the bottom.
HnfResult hnf(const IntMatrix& m);

/// Smith normal form with non-negative diagonal d_1 | d_2 | ... .
SnfResult snf(const IntMatrix& m);

/// Rows of the returned matrix form a basis of {u : u * m == 0}.
IntMatrix left_kernel(const IntMatrix& m);

/// Generators (rows, in HNF) of the lattice {x in Z^cols : a*x == 0 (mod moduli)}.
/// Throws DimensionMismatch unless moduli.size() == a.rows(); every modulus must be >= 1.
IntMatrix kernel_mod(const IntMatrix& a, const IntVector& moduli);

/// Some x with a*x == b (mod moduli), or nullopt if none exists. The answer
/// is reduced against the kernel lattice, so it is canonical for (a, moduli).
std::optional<IntVector> solve_mod(const IntMatrix& a, const IntVector& b, const IntVector& moduli);

/// Reduces x modulo the row lattice of an HNF matrix (pivot-wise floor division).
IntVector reduce_by_hnf(IntVector x, const IntMatrix& h);

/// Pivot column of each nonzero row of an echelon matrix.
std::vector<std::size_t> pivot_columns(const IntMatrix& h);

/// Floor-mod into [0, m) for m >= 1.
BigInt mod_floor(const BigInt& a, const BigInt& m);

}  // namespace groupctl
