#include "groupctl/torus.hpp"

#include <numeric>
#include <sstream>

#include "groupctl/error.hpp"

namespace groupctl {

QZ qz(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ZeroDenominator("denominator is zero");
  BigInt n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  n = mod_floor(n, d);
  BigInt g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  QZ x;
  x.num_ = n / g;
  x.den_ = d / g;
  return x;
}

QZ QZ::operator+(const QZ& o) const { return qz(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
QZ QZ::operator-() const { return qz(-num_, den_); }
QZ QZ::scaled(const BigInt& n) const { return qz(num_ * n, den_); }

std::string QZ::to_string() const { return num_.get_str() + "/" + den_.get_str(); }

QZ QZ::parse(const std::string& s) {
  const auto slash = s.find('/');
  BigInt num, den = 1;
  try {
    if (slash == std::string::npos) {
      num = BigInt(s);
    } else {
      num = BigInt(s.substr(0, slash));
      den = BigInt(s.substr(slash + 1));
    }
  } catch (const std::invalid_argument&) {
    throw ParseError("not a rational: '" + s + "'");
  }
  return qz(num, den);
}

BigInt qz_order(const QZ& x) { return x.den(); }

Rational circle_distance(const QZ& a, const QZ& b) {
  Rational d(a.num(), a.den());
  d -= Rational(b.num(), b.den());
  d.canonicalize();
  if (d < 0) d = -d;
  const Rational other = 1 - d;
  return other < d ? other : d;
}

bool in_span(const QZ& x, const std::vector<QZ>& y) {
  BigInt l = 1;
  for (const auto& v : y) l = lcm(l, v.den());
  return l % x.den() == 0;
}

BigInt QZSequence::order() const {
  BigInt o = tail.den();
  for (const auto& v : prefix) o = lcm(o, v.den());
  return o;
}

std::string QZSequence::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < prefix.size(); ++i) os << (i ? " " : "") << prefix[i].to_string();
  os << (prefix.empty() ? "| " : " | ") << tail.to_string();
  return os.str();
}

QZSequence build_fk(const std::vector<QZ>& y, std::size_t k) {
  if (k >= y.size()) throw PreconditionFailed("build_fk: index " + std::to_string(k) + " out of range");
  return QZSequence{std::vector<QZ>(k + 1, y[k]), QZ{}};
}

QZSequence constant_sequence(const QZ& x) { return QZSequence{{}, x}; }

DiffCheck closure_diff_check(const QZSequence& g, const std::vector<QZ>& y, std::size_t window) {
  if (window > y.size()) throw PreconditionFailed("closure_diff_check: window exceeds the length of y");
  for (std::size_t n = 0; n < window; ++n) {
    const QZ d = g.at(n) - g.at(n + 1);
    if (y[n].den() % d.den() != 0) return DiffCheck{false, n};
  }
  return DiffCheck{};
}

std::optional<Approximation> approximate_constant(const QZ& x, const std::vector<QZ>& y, const IndexSet& j,
                                                  const Rational& epsilon) {
  if (epsilon <= 0) throw PreconditionFailed("epsilon must be positive");
  const std::size_t start = j.empty() ? 0 : j.back();
  const Rational xr(x.num(), x.den());
  for (std::size_t k = start; k < y.size(); ++k) {
    const BigInt& s = y[k].den();
    // Least residue t with circle_distance(t/s, x) < epsilon.
    std::optional<BigInt> t;
    if (circle_distance(QZ{}, x) < epsilon) {
      t = 0;
    } else {
      Rational lo = (xr - epsilon) * s;
      BigInt cand;
      mpz_fdiv_q(cand.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
      cand += 1;
      if (cand < s && circle_distance(qz(cand, s), x) < epsilon) t = cand;
    }
    if (!t) continue;
    // m * y_k = t / s, y_k = a / s with a invertible mod s.
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), y[k].num().get_mpz_t(), s.get_mpz_t());
    if (s == 1) inv = 0;
    const BigInt m = mod_floor(*t * inv, s);
    return Approximation{k, m, circle_distance(y[k].scaled(m), x)};
  }
  return std::nullopt;
}

std::string TorusSeqSubgroup::to_string() const {
  std::ostringstream os;
  os << "<y=[";
  for (std::size_t i = 0; i < y.size(); ++i) os << (i ? "," : "") << y[i].to_string();
  os << "];";
  for (const auto& g : gens) os << " " << g.tag << "={" << g.seq.to_string() << "}";
  os << " >";
  return os.str();
}

std::vector<std::int64_t> odd_primes(std::size_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t c = 3; out.size() < n; c += 2) {
    bool prime = true;
    for (auto p : out) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(c);
  }
  return out;
}

std::vector<QZ> default_y(std::size_t n) {
  std::vector<QZ> y;
  for (auto p : odd_primes(n)) y.push_back(qz(1, p));
  return y;
}

GroupElement ProductEmbedding::embed(const QZ& x) const {
  if (modulus % x.den() != 0) throw PreconditionFailed("value " + x.to_string() + " is outside the embedded group");
  const BigInt v = x.num() * (modulus / x.den());
  return h.schema().tail.element(IntVector{v});
}

ProductEmbedding to_product_subgroup(const TorusSeqSubgroup& h) {
  BigInt n = 1;
  for (const auto& v : h.y) n = lcm(n, v.den());
  for (const auto& g : h.gens) n = lcm(n, g.seq.order());
  if (!n.fits_slong_p()) throw CapExceeded("common denominator " + n.get_str() + " too large");
  SchemaPtr schema = power_schema(FiniteAbelianGroup::cyclic(n.get_si()));
  ProductEmbedding out{ProductSubgroup(schema), n};
  std::vector<SeqElement> gens;
  for (const auto& g : h.gens) {
    std::vector<GroupElement> prefix;
    for (const auto& v : g.seq.prefix) prefix.push_back(out.embed(v));
    gens.emplace_back(schema, std::move(prefix), std::vector<GroupElement>{out.embed(g.seq.tail)});
  }
  out.h = ProductSubgroup(schema, std::move(gens));
  return out;
}

Verdict noncontrollability_witness(const TorusSeqSubgroup& h, const QZ& x) {
  bool has_cx = false;
  for (const auto& g : h.gens) has_cx = has_cx || g.seq == constant_sequence(x);
  if (!has_cx) throw PreconditionFailed("c_" + x.to_string() + " is not a generator");
  if (in_span(x, h.y)) throw PreconditionFailed(x.to_string() + " lies in <y>; no witness exists");
  const ProductEmbedding e = to_product_subgroup(h);
  const IndexSet j{0};
  const Subgroup finite_part = project(intersect_directsum(e.h), j);
  const GroupElement target = e.embed(x);
  if (member(finite_part, target))
    throw InternalInconsistency("x outside <y> but realized by a finitely supported element");
  return Verdict{Property::controllable, 0, false,
                 Witness{j, target, Constraint{Constraint::Kind::finite_support, 0},
                         "c_" + x.to_string() + " at J={0}: " + x.to_string() + " not in <y>, modulus " +
                             e.modulus.get_str()}};
}

bool verify_torus_witness(const TorusSeqSubgroup& h, const Verdict& v) {
  return verify(to_product_subgroup(h).h, v);
}

}  // namespace groupctl
