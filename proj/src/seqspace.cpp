#include "groupctl/seqspace.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "groupctl/error.hpp"

namespace groupctl {

IndexSet make_index_set(std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return indices;
}

IndexSet initial_segment(std::size_t n) { return index_range(0, n + 1); }

IndexSet index_range(std::size_t lo, std::size_t hi) {
  IndexSet out;
  for (std::size_t i = lo; i < hi; ++i) out.push_back(i);
  return out;
}

std::string CoordSchema::to_string() const {
  std::ostringstream os;
  os << "prefix=[";
  for (std::size_t i = 0; i < prefix.size(); ++i) os << (i ? "," : "") << prefix[i].to_string();
  os << "] tail=" << tail.to_string();
  return os.str();
}

SchemaPtr make_schema(std::vector<FiniteAbelianGroup> prefix, FiniteAbelianGroup tail) {
  return std::make_shared<const CoordSchema>(CoordSchema{std::move(prefix), std::move(tail)});
}

SchemaPtr power_schema(FiniteAbelianGroup m) { return make_schema({}, std::move(m)); }

namespace {

void require_same_schema(const CoordSchema& a, const CoordSchema& b, const char* what) {
  if (&a != &b && !(a == b)) throw DimensionMismatch(std::string(what) + ": schema mismatch");
}

std::size_t lcm_size(std::size_t a, std::size_t b) { return std::lcm(a, b); }

}  // namespace

// --- SeqElement -------------------------------------------------------------

SeqElement::SeqElement(SchemaPtr schema, std::vector<GroupElement> prefix, std::vector<GroupElement> period)
    : schema_(std::move(schema)), prefix_(std::move(prefix)), period_(std::move(period)) {
  if (!schema_) throw PreconditionFailed("SeqElement requires a schema");
  if (prefix_.size() < schema_->prefix_length())
    throw DimensionMismatch("prefix must cover every irregular coordinate");
  if (period_.empty()) throw DimensionMismatch("period must be non-empty");
  for (std::size_t i = 0; i < prefix_.size(); ++i)
    if (!(prefix_[i].parent() == schema_->group_at(i)))
      throw DimensionMismatch("prefix value " + std::to_string(i) + " is not in its coordinate group");
  for (const auto& v : period_)
    if (!(v.parent() == schema_->tail)) throw DimensionMismatch("period value is not in the tail group");
  canonicalize();
}

void SeqElement::canonicalize() {
  const std::size_t l = period_.size();
  for (std::size_t d = 1; d < l; ++d) {
    if (l % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < l && periodic; ++i) periodic = period_[i] == period_[i - d];
    if (periodic) {
      period_.resize(d);
      break;
    }
  }
  while (prefix_.size() > schema_->prefix_length() && prefix_.back() == period_.back()) {
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    prefix_.pop_back();
  }
}

SeqElement SeqElement::zero(SchemaPtr schema) {
  std::vector<GroupElement> prefix;
  for (const auto& g : schema->prefix) prefix.push_back(g.zero());
  std::vector<GroupElement> period{schema->tail.zero()};
  return SeqElement(std::move(schema), std::move(prefix), std::move(period));
}

SeqElement SeqElement::delta(SchemaPtr schema, std::size_t i, const GroupElement& value) {
  std::vector<GroupElement> prefix;
  const std::size_t p = std::max(schema->prefix_length(), i + 1);
  for (std::size_t t = 0; t < p; ++t) prefix.push_back(schema->group_at(t).zero());
  prefix[i] = value;
  std::vector<GroupElement> period{schema->tail.zero()};
  return SeqElement(std::move(schema), std::move(prefix), std::move(period));
}

SeqElement SeqElement::constant(SchemaPtr schema, const GroupElement& value) {
  std::vector<GroupElement> prefix(schema->prefix_length(), value);
  std::vector<GroupElement> period{value};
  return SeqElement(std::move(schema), std::move(prefix), std::move(period));
}

const GroupElement& SeqElement::at(std::size_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  return period_[(i - prefix_.size()) % period_.size()];
}

bool SeqElement::is_zero() const {
  return std::all_of(prefix_.begin(), prefix_.end(), [](const auto& v) { return v.is_zero(); }) &&
         has_finite_support();
}

bool SeqElement::has_finite_support() const {
  return std::all_of(period_.begin(), period_.end(), [](const auto& v) { return v.is_zero(); });
}

BigInt SeqElement::order() const {
  BigInt ord = 1;
  for (const auto& v : prefix_) ord = lcm(ord, v.order());
  for (const auto& v : period_) ord = lcm(ord, v.order());
  return ord;
}

std::string SeqElement::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < prefix_.size(); ++i) os << (i ? " " : "") << prefix_[i].to_string();
  os << " | ";
  for (std::size_t i = 0; i < period_.size(); ++i) os << (i ? " " : "") << period_[i].to_string();
  return os.str();
}

bool operator==(const SeqElement& a, const SeqElement& b) {
  return a.prefix_ == b.prefix_ && a.period_ == b.period_;
}

std::strong_ordering operator<=>(const SeqElement& a, const SeqElement& b) {
  if (auto c = a.prefix_.size() <=> b.prefix_.size(); c != 0) return c;
  if (auto c = a.period_.size() <=> b.period_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.prefix_.size(); ++i)
    if (auto c = a.prefix_[i].coords() <=> b.prefix_[i].coords(); c != 0) return c;
  for (std::size_t i = 0; i < a.period_.size(); ++i)
    if (auto c = a.period_[i].coords() <=> b.period_[i].coords(); c != 0) return c;
  return std::strong_ordering::equal;
}

namespace {

template <typename Op>
SeqElement combine(const SeqElement& a, const SeqElement& b, Op op) {
  require_same_schema(a.schema(), b.schema(), "sequence arithmetic");
  const std::size_t p = std::max(a.prefix_length(), b.prefix_length());
  const std::size_t l = lcm_size(a.period_length(), b.period_length());
  std::vector<GroupElement> prefix;
  prefix.reserve(p);
  for (std::size_t i = 0; i < p; ++i) prefix.push_back(op(a.at(i), b.at(i)));
  std::vector<GroupElement> period;
  period.reserve(l);
  for (std::size_t t = 0; t < l; ++t) period.push_back(op(a.at(p + t), b.at(p + t)));
  return SeqElement(a.schema_ptr(), std::move(prefix), std::move(period));
}

template <typename Op>
SeqElement map_values(const SeqElement& a, Op op) {
  std::vector<GroupElement> prefix;
  for (const auto& v : a.prefix()) prefix.push_back(op(v));
  std::vector<GroupElement> period;
  for (const auto& v : a.period()) period.push_back(op(v));
  return SeqElement(a.schema_ptr(), std::move(prefix), std::move(period));
}

}  // namespace

SeqElement seq_add(const SeqElement& a, const SeqElement& b) {
  return combine(a, b, [](const GroupElement& x, const GroupElement& y) { return x + y; });
}

SeqElement seq_neg(const SeqElement& a) {
  return map_values(a, [](const GroupElement& x) { return -x; });
}

SeqElement seq_scale(const SeqElement& a, std::int64_t n) {
  return map_values(a, [n](const GroupElement& x) { return x.scaled(n); });
}

Support support(const SeqElement& a) {
  Support s;
  if (!a.has_finite_support()) {
    s.infinite = true;
    return s;
  }
  for (std::size_t i = 0; i < a.prefix_length(); ++i)
    if (!a.prefix()[i].is_zero()) s.indices.push_back(i);
  return s;
}

FiniteAbelianGroup product_group(const CoordSchema& schema, const IndexSet& j) {
  std::vector<FiniteAbelianGroup> parts;
  parts.reserve(j.size());
  for (auto i : j) parts.push_back(schema.group_at(i));
  return FiniteAbelianGroup::direct_sum(parts);
}

namespace {

std::vector<std::int64_t> flat_values(const SeqElement& a, const IndexSet& j) {
  std::vector<std::int64_t> out;
  for (auto i : j) {
    const auto& c = a.at(i).coords();
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

// Row g holds generator g restricted to j, flattened over cyclic factors.
IntMatrix restriction_rows(const ProductSubgroup& h, const IndexSet& j) {
  const FiniteAbelianGroup g = product_group(h.schema(), j);
  IntMatrix rows(0, g.rank());
  for (const auto& gen : h.gens()) {
    IntVector r;
    for (auto v : flat_values(gen, j)) r.emplace_back(static_cast<long>(v));
    rows.append_row(r);
  }
  return rows;
}

// Generators of {sum c_g gen_g : the sum vanishes on coords}.
ProductSubgroup vanishing_on(const ProductSubgroup& h, const IndexSet& coords) {
  const std::size_t ng = h.gens().size();
  if (ng == 0) return h;
  const FiniteAbelianGroup g = product_group(h.schema(), coords);
  const IntMatrix a = restriction_rows(h, coords).transpose();
  const IntMatrix coeffs = kernel_mod(a, g.moduli());
  std::vector<BigInt> gen_orders;
  for (const auto& x : h.gens()) gen_orders.push_back(x.order());

  std::vector<SeqElement> out;
  for (std::size_t r = 0; r < coeffs.rows(); ++r) {
    SeqElement acc = SeqElement::zero(h.schema_ptr());
    for (std::size_t c = 0; c < ng; ++c) {
      const BigInt k = mod_floor(coeffs(r, c), gen_orders[c]);
      if (k == 0) continue;
      acc = seq_add(acc, seq_scale(h.gens()[c], k.get_si()));
    }
    if (!acc.is_zero() && std::find(out.begin(), out.end(), acc) == out.end()) out.push_back(std::move(acc));
  }
  return ProductSubgroup(h.schema_ptr(), std::move(out));
}

}  // namespace

GroupElement restrict_to(const SeqElement& a, const IndexSet& j) {
  return product_group(a.schema(), j).element(flat_values(a, j));
}

// --- ProductSubgroup --------------------------------------------------------

ProductSubgroup::ProductSubgroup(SchemaPtr schema, std::vector<SeqElement> gens)
    : schema_(std::move(schema)), gens_(std::move(gens)) {
  if (!schema_) throw PreconditionFailed("ProductSubgroup requires a schema");
  for (const auto& g : gens_) require_same_schema(*schema_, g.schema(), "ProductSubgroup");
}

std::string ProductSubgroup::to_string() const {
  std::ostringstream os;
  os << "<" << schema_->to_string() << ";";
  for (const auto& g : gens_) os << " {" << g.to_string() << "}";
  os << " >";
  return os.str();
}

Window effective_window(const ProductSubgroup& h) {
  Window win;
  for (const auto& g : h.gens()) {
    win.w = std::max(win.w, g.prefix_length());
    win.l = lcm_size(win.l, g.period_length());
  }
  return win;
}

Subgroup project(const ProductSubgroup& h, const IndexSet& j) {
  return Subgroup::from_rows(product_group(h.schema(), j), restriction_rows(h, j));
}

Subgroup as_finite_group(const ProductSubgroup& h) {
  return project(h, index_range(0, effective_window(h).span()));
}

BigInt subgroup_order(const ProductSubgroup& h) { return as_finite_group(h).order(); }

ProductSubgroup intersect_directsum(const ProductSubgroup& h) {
  const Window win = effective_window(h);
  return vanishing_on(h, index_range(win.w, win.span()));
}

ProductSubgroup intersect_sum_window(const ProductSubgroup& h, const IndexSet& k) {
  const Window win = effective_window(h);
  // Finite support forces a zero tail, so [W, W+L) is always constrained.
  IndexSet coords;
  for (std::size_t i = 0; i < win.w; ++i)
    if (!std::binary_search(k.begin(), k.end(), i)) coords.push_back(i);
  for (std::size_t i = win.w; i < win.span(); ++i) coords.push_back(i);
  return vanishing_on(h, coords);
}

ProductSubgroup intersect_zero_from(const ProductSubgroup& h, std::size_t m) {
  const Window win = effective_window(h);
  return vanishing_on(h, index_range(m, std::max(m, win.w) + win.l));
}

namespace {

std::size_t common_span(const Window& a, const Window& b) {
  return std::max(a.w, b.w) + lcm_size(a.l, b.l);
}

}  // namespace

bool contains(const ProductSubgroup& outer, const ProductSubgroup& inner) {
  require_same_schema(outer.schema(), inner.schema(), "contains");
  const IndexSet j = index_range(0, common_span(effective_window(outer), effective_window(inner)));
  return is_subgroup_of(project(inner, j), project(outer, j));
}

bool same_subgroup(const ProductSubgroup& a, const ProductSubgroup& b) {
  require_same_schema(a.schema(), b.schema(), "same_subgroup");
  const IndexSet j = index_range(0, common_span(effective_window(a), effective_window(b)));
  return project(a, j) == project(b, j);
}

bool contains_element(const ProductSubgroup& h, const SeqElement& x) {
  require_same_schema(h.schema(), x.schema(), "contains_element");
  const Window win = effective_window(h);
  const IndexSet j = index_range(0, std::max(win.w, x.prefix_length()) + lcm_size(win.l, x.period_length()));
  return member(project(h, j), restrict_to(x, j));
}

}  // namespace groupctl
