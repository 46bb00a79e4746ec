#include "groupctl/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "groupctl/error.hpp"

namespace groupctl {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, BigInt(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    for (long v : r) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void IntMatrix::append_row(const IntVector& row) {
  if (row.size() != cols_) throw DimensionMismatch("append_row: width mismatch");
  entries_.insert(entries_.end(), row.begin(), row.end());
  ++rows_;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero_row(std::size_t r) const {
  for (std::size_t j = 0; j < cols_; ++j)
    if ((*this)(r, j) != 0) return false;
  return true;
}

IntMatrix IntMatrix::nonzero_rows() const {
  IntMatrix out(0, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    if (!is_zero_row(i)) out.append_row(row(i));
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const BigInt& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

IntVector mat_vec(const IntMatrix& a, const IntVector& x) {
  if (a.cols() != x.size()) throw DimensionMismatch("mat_vec: width mismatch");
  IntVector y(a.rows(), BigInt(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt trunc_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] += q * row[src]
void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += q * m(src, j);
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += q * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

// (row a, row b) <- (s*a + t*b, x*a + y*b), with s*y - t*x == 1.
void combine_rows(IntMatrix& m, std::size_t a, std::size_t b, const BigInt& s, const BigInt& t,
                  const BigInt& x, const BigInt& y) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    BigInt va = m(a, j);
    BigInt vb = m(b, j);
    m(a, j) = s * va + t * vb;
    m(b, j) = x * va + y * vb;
  }
}

}  // namespace

BigInt determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(m, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

HnfResult hnf(const IntMatrix& m) {
  HnfResult res{m, IntMatrix::identity(m.rows()), 0};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < h.cols() && pr < h.rows(); ++c) {
    for (std::size_t i = pr + 1; i < h.rows(); ++i) {
      if (h(i, c) == 0) continue;
      if (h(pr, c) == 0) {
        swap_rows(h, pr, i);
        swap_rows(u, pr, i);
        continue;
      }
      const BigInt a = h(pr, c);
      const BigInt b = h(i, c);
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
        BigInt q = -(b / a);
        add_row_multiple(h, i, pr, q);
        add_row_multiple(u, i, pr, q);
        continue;
      }
      BigInt g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      const BigInt x = -(b / g);
      const BigInt y = a / g;
      combine_rows(h, pr, i, s, t, x, y);
      combine_rows(u, pr, i, s, t, x, y);
    }
    if (h(pr, c) == 0) continue;
    if (h(pr, c) < 0) {
      negate_row(h, pr);
      negate_row(u, pr);
    }
    for (std::size_t i = 0; i < pr; ++i) {
      BigInt q = -floor_div(h(i, c), h(pr, c));
      add_row_multiple(h, i, pr, q);
      add_row_multiple(u, i, pr, q);
    }
    ++pr;
  }
  res.rank = pr;
  return res;
}

IntVector SnfResult::diagonal() const {
  IntVector out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

SnfResult snf(const IntMatrix& m) {
  SnfResult res{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& d = res.d;
  const std::size_t rows = d.rows();
  const std::size_t cols = d.cols();
  std::size_t t = 0;
  while (t < std::min(rows, cols)) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pi = rows, pj = cols;
    BigInt best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (d(i, j) == 0) continue;
        BigInt v = abs(d(i, j));
        if (pi == rows || v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi == rows) break;
    swap_rows(d, t, pi);
    swap_rows(res.l, t, pi);
    swap_cols(d, t, pj);
    swap_cols(res.r, t, pj);

    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (d(i, t) == 0) continue;
      BigInt q = -trunc_div(d(i, t), d(t, t));
      add_row_multiple(d, i, t, q);
      add_row_multiple(res.l, i, t, q);
      if (d(i, t) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (d(t, j) == 0) continue;
      BigInt q = -trunc_div(d(t, j), d(t, t));
      add_col_multiple(d, j, t, q);
      add_col_multiple(res.r, j, t, q);
      if (d(t, j) != 0) clean = false;
    }
    if (!clean) continue;

    // Pivot must divide the rest of the block; otherwise fold a bad row in.
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i)
      for (std::size_t j = t + 1; j < cols; ++j)
        if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
          add_row_multiple(d, t, i, 1);
          add_row_multiple(res.l, t, i, 1);
          divides = false;
          break;
        }
    if (!divides) continue;

    if (d(t, t) < 0) {
      negate_row(d, t);
      negate_row(res.l, t);
    }
    ++t;
  }
  return res;
}

IntMatrix left_kernel(const IntMatrix& m) {
  HnfResult h = hnf(m);
  IntMatrix k(0, m.rows());
  for (std::size_t i = h.rank; i < m.rows(); ++i) k.append_row(h.u.row(i));
  return k;
}

std::vector<std::size_t> pivot_columns(const IntMatrix& h) {
  std::vector<std::size_t> piv;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t j = 0;
    while (j < h.cols() && h(i, j) == 0) ++j;
    if (j == h.cols()) break;
    piv.push_back(j);
  }
  return piv;
}

IntVector reduce_by_hnf(IntVector x, const IntMatrix& h) {
  const auto piv = pivot_columns(h);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    const std::size_t p = piv[i];
    BigInt q = floor_div(x[p], h(i, p));
    if (q == 0) continue;
    for (std::size_t j = p; j < h.cols(); ++j) x[j] -= q * h(i, j);
  }
  return x;
}

namespace {

void check_moduli(const IntMatrix& a, const IntVector& moduli) {
  if (moduli.size() != a.rows())
    throw DimensionMismatch("moduli length must equal the number of rows");
  for (const auto& q : moduli)
    if (q < 1) throw PreconditionFailed("every modulus must be >= 1");
}

// [a | -diag(moduli)]
IntMatrix augmented(const IntMatrix& a, const IntVector& moduli) {
  IntMatrix m(a.rows(), a.cols() + a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    m(i, a.cols() + i) = -moduli[i];
  }
  return m;
}

}  // namespace

IntMatrix kernel_mod(const IntMatrix& a, const IntVector& moduli) {
  check_moduli(a, moduli);
  const std::size_t c = a.cols();
  IntMatrix k = left_kernel(augmented(a, moduli).transpose());
  IntMatrix proj(k.rows(), c);
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = 0; j < c; ++j) proj(i, j) = k(i, j);
  return hnf(proj).h.nonzero_rows();
}

std::optional<IntVector> solve_mod(const IntMatrix& a, const IntVector& b, const IntVector& moduli) {
  check_moduli(a, moduli);
  if (b.size() != a.rows()) throw DimensionMismatch("right-hand side length must equal rows");
  const std::size_t c = a.cols();
  const IntMatrix m = augmented(a, moduli);
  const SnfResult s = snf(m);
  const IntVector lb = mat_vec(s.l, b);
  IntVector w(m.cols(), BigInt(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const BigInt& di = s.d(i, i);
    if (di == 0) {
      if (lb[i] != 0) return std::nullopt;
      continue;
    }
    if (!mpz_divisible_p(lb[i].get_mpz_t(), di.get_mpz_t())) return std::nullopt;
    w[i] = lb[i] / di;
  }
  const IntVector z = mat_vec(s.r, w);
  IntVector x(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(c));
  x = reduce_by_hnf(std::move(x), kernel_mod(a, moduli));
  const IntVector ax = mat_vec(a, x);
  for (std::size_t i = 0; i < ax.size(); ++i)
    if (mod_floor(ax[i] - b[i], moduli[i]) != 0)
      throw InternalInconsistency("solve_mod: solution failed substitution check");
  return x;
}

}  // namespace groupctl
