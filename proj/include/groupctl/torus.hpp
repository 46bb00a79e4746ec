#pragma once

// Torsion part of the circle group, Q/Z, and eventually constant sequences
// over it. Only exact rationals are used; the non-torsion part of the circle
// is out of reach of exact membership tests.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "groupctl/control.hpp"

namespace groupctl {

using Rational = mpq_class;

/// num/den with 0 <= num < den and gcd(num, den) = 1.
class QZ {
 public:
  QZ() = default;

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  QZ operator+(const QZ& o) const;
  QZ operator-() const;
  QZ operator-(const QZ& o) const { return *this + (-o); }
  QZ scaled(const BigInt& n) const;

  /// "num/den".
  std::string to_string() const;
  /// Parses "a/b" or "a"; throws ParseError or ZeroDenominator.
  static QZ parse(const std::string& s);

  friend bool operator==(const QZ&, const QZ&) = default;
  friend QZ qz(const BigInt& num, const BigInt& den);

 private:
  BigInt num_ = 0;
  BigInt den_ = 1;
};

/// Reduces num/den mod 1. Throws ZeroDenominator for den == 0.
QZ qz(const BigInt& num, const BigInt& den);
/// Additive order, the reduced denominator.
BigInt qz_order(const QZ& x);
/// min(|a - b|, 1 - |a - b|) on representatives in [0, 1).
Rational circle_distance(const QZ& a, const QZ& b);

/// x lies in the subgroup generated by y iff den(x) divides lcm of the denominators.
bool in_span(const QZ& x, const std::vector<QZ>& y);

/// prefix values, then tail forever.
struct QZSequence {
  std::vector<QZ> prefix;
  QZ tail;

  QZ at(std::size_t i) const { return i < prefix.size() ? prefix[i] : tail; }
  BigInt order() const;
  std::string to_string() const;
  friend bool operator==(const QZSequence&, const QZSequence&) = default;
};

/// y_k at coordinates 0..k, zero afterwards.
QZSequence build_fk(const std::vector<QZ>& y, std::size_t k);
QZSequence constant_sequence(const QZ& x);

struct DiffCheck {
  bool ok = true;
  std::optional<std::size_t> first_failure;
};

/// Necessary condition for g to lie in the closure of <f_k>: g(n) - g(n+1)
/// lies in <y_n> for every n < window. Never a membership decision.
DiffCheck closure_diff_check(const QZSequence& g, const std::vector<QZ>& y, std::size_t window);

struct Approximation {
  std::size_t k = 0;
  BigInt m;
  Rational distance;
};

/// Least k >= max(j), and least m for that k, with circle_distance(m*y_k, x) < epsilon.
std::optional<Approximation> approximate_constant(const QZ& x, const std::vector<QZ>& y, const IndexSet& j,
                                                  const Rational& epsilon);

struct TorusGenerator {
  QZSequence seq;
  std::string tag;  ///< "f_k", "c_x" or "custom"
};

struct TorusSeqSubgroup {
  std::vector<QZ> y;
  std::vector<TorusGenerator> gens;

  std::string to_string() const;
};

/// 1/p for the first n odd primes.
std::vector<QZ> default_y(std::size_t n);
std::vector<std::int64_t> odd_primes(std::size_t n);

/// H realized inside (Z/N)^N, N the lcm of every denominator involved: the
/// value a/b maps to a * (N / b).
struct ProductEmbedding {
  ProductSubgroup h;
  BigInt modulus;
  GroupElement embed(const QZ& x) const;
};

ProductEmbedding to_product_subgroup(const TorusSeqSubgroup& h);

/// Negative controllability verdict witnessed by x at J = {0}. Throws
/// PreconditionFailed unless c_x is a generator and x is outside <y>.
Verdict noncontrollability_witness(const TorusSeqSubgroup& h, const QZ& x);
/// Re-checks such a witness against the product embedding.
bool verify_torus_witness(const TorusSeqSubgroup& h, const Verdict& v);

}  // namespace groupctl
