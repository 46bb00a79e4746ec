#include "groupctl/finabel.hpp"

#include <numeric>
#include <sstream>

#include "groupctl/error.hpp"

namespace groupctl {

namespace {

std::int64_t residue(const BigInt& v, std::int64_t n) {
  return mod_floor(v, BigInt(static_cast<long>(n))).get_si();
}

std::int64_t residue(std::int64_t v, std::int64_t n) {
  std::int64_t r = v % n;
  return r < 0 ? r + n : r;
}

void require_same_parent(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b, const char* what) {
  if (!(a == b)) throw DimensionMismatch(std::string(what) + ": parent group mismatch");
}

// Lattice generated by rows plus the relation lattice of g, in canonical form.
IntMatrix canonical_lattice(const FiniteAbelianGroup& g, const IntMatrix& rows) {
  if (rows.cols() != g.rank()) throw DimensionMismatch("generator width differs from group rank");
  IntMatrix stacked = rows;
  const IntVector mod = g.moduli();
  for (std::size_t j = 0; j < g.rank(); ++j) {
    IntVector r(g.rank(), BigInt(0));
    r[j] = mod[j];
    stacked.append_row(r);
  }
  IntMatrix h = hnf(stacked).h.nonzero_rows();
  if (h.rows() != g.rank()) throw InternalInconsistency("subgroup lattice is not of full rank");
  return h;
}

}  // namespace

// --- FiniteAbelianGroup -----------------------------------------------------

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
  for (auto n : orders_)
    if (n < 1) throw PreconditionFailed("cyclic factor orders must be >= 1");
}

FiniteAbelianGroup FiniteAbelianGroup::direct_sum(const std::vector<FiniteAbelianGroup>& parts) {
  std::vector<std::int64_t> all;
  for (const auto& p : parts) all.insert(all.end(), p.orders_.begin(), p.orders_.end());
  return FiniteAbelianGroup(std::move(all));
}

BigInt FiniteAbelianGroup::cardinality() const {
  BigInt c = 1;
  for (auto n : orders_) c *= static_cast<long>(n);
  return c;
}

IntVector FiniteAbelianGroup::moduli() const {
  IntVector m;
  m.reserve(orders_.size());
  for (auto n : orders_) m.emplace_back(static_cast<long>(n));
  return m;
}

bool FiniteAbelianGroup::is_trivial() const {
  for (auto n : orders_)
    if (n != 1) return false;
  return true;
}

GroupElement FiniteAbelianGroup::zero() const {
  return GroupElement(*this, std::vector<std::int64_t>(orders_.size(), 0));
}

GroupElement FiniteAbelianGroup::element(const std::vector<std::int64_t>& coords) const {
  if (coords.size() != orders_.size()) throw DimensionMismatch("element arity differs from group rank");
  std::vector<std::int64_t> c(coords.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = residue(coords[j], orders_[j]);
  return GroupElement(*this, std::move(c));
}

GroupElement FiniteAbelianGroup::element(const IntVector& coords) const {
  if (coords.size() != orders_.size()) throw DimensionMismatch("element arity differs from group rank");
  std::vector<std::int64_t> c(coords.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = residue(coords[j], orders_[j]);
  return GroupElement(*this, std::move(c));
}

std::string FiniteAbelianGroup::to_string() const {
  if (orders_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t j = 0; j < orders_.size(); ++j) os << (j ? "+" : "") << "Z/" << orders_[j];
  return os.str();
}

// --- GroupElement -----------------------------------------------------------

bool GroupElement::is_zero() const {
  for (auto c : coords_)
    if (c != 0) return false;
  return true;
}

BigInt GroupElement::order() const {
  BigInt ord = 1;
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    const std::int64_t n = parent_.orders()[j];
    const std::int64_t o = n / std::gcd(coords_[j], n);
    ord = lcm(ord, BigInt(static_cast<long>(o)));
  }
  return ord;
}

IntVector GroupElement::as_vector() const {
  IntVector v;
  v.reserve(coords_.size());
  for (auto c : coords_) v.emplace_back(static_cast<long>(c));
  return v;
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
  require_same_parent(parent_, o.parent_, "element addition");
  std::vector<std::int64_t> c(coords_.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = (coords_[j] + o.coords_[j]) % parent_.orders()[j];
  return GroupElement(parent_, std::move(c));
}

GroupElement GroupElement::operator-() const {
  std::vector<std::int64_t> c(coords_.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = residue(-coords_[j], parent_.orders()[j]);
  return GroupElement(parent_, std::move(c));
}

GroupElement GroupElement::scaled(std::int64_t n) const {
  std::vector<std::int64_t> c(coords_.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    const std::int64_t ord = parent_.orders()[j];
    c[j] = residue(residue(n, ord) * coords_[j], ord);
  }
  return GroupElement(parent_, std::move(c));
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < coords_.size(); ++j) os << (j ? "," : "") << coords_[j];
  os << ')';
  return os.str();
}

// --- Subgroup ---------------------------------------------------------------

Subgroup Subgroup::trivial(const FiniteAbelianGroup& g) {
  return Subgroup(g, IntMatrix::diagonal(g.moduli()));
}

Subgroup Subgroup::whole(const FiniteAbelianGroup& g) {
  return Subgroup(g, IntMatrix::identity(g.rank()));
}

Subgroup Subgroup::from_rows(const FiniteAbelianGroup& g, const IntMatrix& rows) {
  return Subgroup(g, canonical_lattice(g, rows));
}

BigInt Subgroup::order() const {
  BigInt idx = 1;
  for (std::size_t i = 0; i < basis_.rows(); ++i) idx *= basis_(i, i);
  return parent_.cardinality() / idx;
}

std::vector<GroupElement> Subgroup::generators() const {
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    GroupElement e = parent_.element(basis_.row(i));
    if (!e.is_zero()) out.push_back(std::move(e));
  }
  return out;
}

Subgroup span(const FiniteAbelianGroup& g, const std::vector<GroupElement>& gens) {
  IntMatrix rows(0, g.rank());
  for (const auto& x : gens) {
    require_same_parent(g, x.parent(), "span");
    rows.append_row(x.as_vector());
  }
  return Subgroup::from_rows(g, rows);
}

IntVector coordinates_in_basis(const IntMatrix& b, const IntVector& x) {
  const std::size_t n = b.rows();
  IntVector rest = x;
  IntVector c(n, BigInt(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (!mpz_divisible_p(rest[i].get_mpz_t(), b(i, i).get_mpz_t()))
      throw PreconditionFailed("vector is not in the lattice");
    c[i] = rest[i] / b(i, i);
    for (std::size_t j = i; j < n; ++j) rest[j] -= c[i] * b(i, j);
  }
  return c;
}

bool member_vector(const Subgroup& s, const IntVector& x) {
  const IntMatrix& b = s.basis();
  if (x.size() != b.cols()) throw DimensionMismatch("member: arity mismatch");
  IntVector rest = x;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    if (!mpz_divisible_p(rest[i].get_mpz_t(), b(i, i).get_mpz_t())) return false;
    const BigInt q = rest[i] / b(i, i);
    for (std::size_t j = i; j < b.cols(); ++j) rest[j] -= q * b(i, j);
  }
  return true;
}

bool member(const Subgroup& s, const GroupElement& x) {
  require_same_parent(s.parent(), x.parent(), "member");
  return member_vector(s, x.as_vector());
}

Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a.parent(), b.parent(), "subgroup_sum");
  IntMatrix rows = a.basis();
  for (std::size_t i = 0; i < b.basis().rows(); ++i) rows.append_row(b.basis().row(i));
  return Subgroup::from_rows(a.parent(), rows);
}

Subgroup subgroup_intersect(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a.parent(), b.parent(), "subgroup_intersect");
  const std::size_t n = a.parent().rank();
  IntMatrix stacked = a.basis();
  for (std::size_t i = 0; i < n; ++i) stacked.append_row(b.basis().row(i));
  // (u, v) with u*A + v*B == 0 gives u*A in both lattices.
  const IntMatrix k = left_kernel(stacked);
  IntMatrix u(k.rows(), n);
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) u(i, j) = k(i, j);
  return Subgroup::from_rows(a.parent(), u * a.basis());
}

bool subgroup_equal(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a.parent(), b.parent(), "subgroup_equal");
  return a.basis() == b.basis();
}

bool is_subgroup_of(const Subgroup& inner, const Subgroup& outer) {
  require_same_parent(inner.parent(), outer.parent(), "is_subgroup_of");
  for (std::size_t i = 0; i < inner.basis().rows(); ++i)
    if (!member_vector(outer, inner.basis().row(i))) return false;
  return true;
}

// --- Homomorphism -----------------------------------------------------------

Homomorphism::Homomorphism(FiniteAbelianGroup domain, FiniteAbelianGroup codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != codomain_.rank() || matrix_.cols() != domain_.rank())
    throw DimensionMismatch("homomorphism matrix must be codomain.rank x domain.rank");
  for (std::size_t j = 0; j < domain_.rank(); ++j)
    for (std::size_t i = 0; i < codomain_.rank(); ++i) {
      BigInt v = matrix_(i, j) * static_cast<long>(domain_.orders()[j]);
      if (mod_floor(v, BigInt(static_cast<long>(codomain_.orders()[i]))) != 0)
        throw PreconditionFailed("homomorphism is not well defined on the relations");
    }
}

Homomorphism Homomorphism::identity(const FiniteAbelianGroup& g) {
  return Homomorphism(g, g, IntMatrix::identity(g.rank()));
}

GroupElement Homomorphism::operator()(const GroupElement& x) const {
  require_same_parent(domain_, x.parent(), "homomorphism application");
  return codomain_.element(mat_vec(matrix_, x.as_vector()));
}

Subgroup image(const Homomorphism& f, const Subgroup& s) {
  require_same_parent(f.domain(), s.parent(), "image");
  return Subgroup::from_rows(f.codomain(), s.basis() * f.matrix().transpose());
}

Subgroup preimage(const Homomorphism& f, const Subgroup& s) {
  require_same_parent(f.codomain(), s.parent(), "preimage");
  const std::size_t dn = f.domain().rank();
  const std::size_t cn = f.codomain().rank();
  // Columns of [A | -B^T]; integer kernel vectors (x, u) satisfy A x == B^T u.
  IntMatrix sys(cn, dn + cn);
  for (std::size_t i = 0; i < cn; ++i) {
    for (std::size_t j = 0; j < dn; ++j) sys(i, j) = f.matrix()(i, j);
    for (std::size_t j = 0; j < cn; ++j) sys(i, dn + j) = -s.basis()(j, i);
  }
  const IntMatrix k = left_kernel(sys.transpose());
  IntMatrix x(k.rows(), dn);
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = 0; j < dn; ++j) x(i, j) = k(i, j);
  return Subgroup::from_rows(f.domain(), x);
}

Subgroup kernel(const Homomorphism& f) { return preimage(f, Subgroup::trivial(f.codomain())); }

// --- structure --------------------------------------------------------------

std::vector<BigInt> invariant_factors(const Subgroup& s) {
  const IntMatrix& b = s.basis();
  const std::size_t n = b.rows();
  const IntVector mod = s.parent().moduli();
  // Relations of L / R expressed in the basis of L.
  IntMatrix rel(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    IntVector r(n, BigInt(0));
    r[j] = mod[j];
    const IntVector c = coordinates_in_basis(b, r);
    for (std::size_t i = 0; i < n; ++i) rel(j, i) = c[i];
  }
  std::vector<BigInt> out;
  for (const auto& d : snf(rel).diagonal()) {
    if (d == 0) throw InternalInconsistency("relation matrix of a finite group is singular");
    if (d != 1) out.push_back(d);
  }
  return out;
}

std::vector<GroupElement> enumerate(const Subgroup& s, std::size_t cap) {
  const BigInt ord = s.order();
  if (ord > BigInt(static_cast<unsigned long>(cap)))
    throw CapExceeded("subgroup of order " + ord.get_str() + " exceeds enumeration cap " +
                      std::to_string(cap));
  const IntMatrix& b = s.basis();
  const std::size_t n = b.rows();
  const auto& orders = s.parent().orders();
  // Mixed radix: sum u_i * b_i with 0 <= u_i < orders_i / b_ii hits each element once.
  std::vector<std::int64_t> radix(n);
  for (std::size_t i = 0; i < n; ++i) radix[i] = orders[i] / b(i, i).get_si();
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = mod_floor(b(i, j), BigInt(static_cast<long>(orders[j]))).get_si();

  std::vector<GroupElement> out;
  out.reserve(ord.get_ui());
  std::vector<std::int64_t> u(n, 0);
  std::vector<std::int64_t> acc(n, 0);
  while (true) {
    out.push_back(s.parent().element(acc));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++u[i] < radix[i]) {
        for (std::size_t j = 0; j < n; ++j) acc[j] = (acc[j] + rows[i][j]) % orders[j];
        break;
      }
      // Wrap digit i back to zero: subtract (radix_i - 1) more copies.
      for (std::size_t j = 0; j < n; ++j)
        acc[j] = residue(acc[j] - (radix[i] - 1) % orders[j] * rows[i][j] % orders[j], orders[j]);
      u[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

}  // namespace groupctl
