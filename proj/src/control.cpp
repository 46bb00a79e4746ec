#include "groupctl/control.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "groupctl/error.hpp"

namespace groupctl {

std::string to_string(Property p) {
  switch (p) {
    case Property::weakly_controllable: return "weakly_controllable";
    case Property::controllable: return "controllable";
    case Property::uniformly_controllable: return "uniformly_controllable";
    case Property::k_controllable: return "k_controllable";
    case Property::strongly_controllable: return "strongly_controllable";
    case Property::classical_controllable: return "classical_controllable";
    case Property::classical_uniform: return "classical_uniform";
  }
  return "unknown";
}

Property property_from_string(const std::string& s) {
  for (auto p : {Property::weakly_controllable, Property::controllable, Property::uniformly_controllable,
                 Property::k_controllable, Property::strongly_controllable, Property::classical_controllable,
                 Property::classical_uniform})
    if (to_string(p) == s) return p;
  throw ParseError("unknown property '" + s + "'");
}

std::string Constraint::to_string() const {
  switch (kind) {
    case Kind::finite_support: return "finite_support";
    case Kind::support_within: return "support_within:" + std::to_string(bound);
    case Kind::zero_from: return "zero_from:" + std::to_string(bound);
  }
  return "unknown";
}

ProductSubgroup constrained(const ProductSubgroup& h, const Constraint& c) {
  switch (c.kind) {
    case Constraint::Kind::finite_support: return intersect_directsum(h);
    case Constraint::Kind::support_within: return intersect_sum_window(h, initial_segment(c.bound));
    case Constraint::Kind::zero_from: return intersect_zero_from(h, c.bound);
  }
  throw PreconditionFailed("unknown constraint");
}

namespace {

using Evidence = std::variant<EqualityCertificate, Witness>;

Evidence compare(const ProductSubgroup& h, const IndexSet& j, const Constraint& c, const std::string& context) {
  Subgroup lhs = project(h, j);
  Subgroup rhs = project(constrained(h, c), j);
  if (lhs == rhs) return EqualityCertificate{j, c, lhs.basis(), rhs.basis()};
  for (auto& g : lhs.generators())
    if (!member(rhs, g)) return Witness{j, g, c, context};
  throw InternalInconsistency("projections differ but every generator is a member");
}

std::string segment_context(std::size_t n, const Constraint& c) {
  return "p_J(H) != p_J(H cap " + c.to_string() + ") at J=[0," + std::to_string(n) + "]";
}

const char* const kSingleIndexSet = "single index set";

const char* const kSegmentReduction =
    "finite J reduce to initial segments [0,n], n < W+L: p_J factors through p_[0,max J], and "
    "equality at [0,W+L-1] forces H into the direct sum";

// Runs one comparison per initial segment [0, n], n < W + L.
template <typename ConstraintFor>
Verdict segment_verdict(const ProductSubgroup& h, Property prop, std::size_t k, ConstraintFor constraint_for,
                        const std::string& reduction) {
  const std::size_t span = effective_window(h).span();
  Certificate cert{reduction, {}};
  for (std::size_t n = 0; n < span; ++n) {
    const Constraint c = constraint_for(n);
    Evidence e = compare(h, initial_segment(n), c, segment_context(n, c));
    if (auto* w = std::get_if<Witness>(&e)) return Verdict{prop, k, false, std::move(*w)};
    cert.equalities.push_back(std::get<EqualityCertificate>(std::move(e)));
  }
  return Verdict{prop, k, true, std::move(cert)};
}

bool constraint_fits(Property p, std::size_t k, std::size_t n, const Constraint& c, std::size_t w) {
  switch (p) {
    case Property::weakly_controllable:
    case Property::controllable:
    case Property::classical_controllable:
      return c.kind == Constraint::Kind::finite_support ||
             (c.kind == Constraint::Kind::zero_from && c.bound >= w);
    case Property::uniformly_controllable: return c.kind == Constraint::Kind::support_within;
    case Property::classical_uniform: return c.kind == Constraint::Kind::zero_from;
    case Property::k_controllable:
    case Property::strongly_controllable:
      return c.kind == Constraint::Kind::zero_from && c.bound == n + k;
  }
  return false;
}

}  // namespace

bool verify(const ProductSubgroup& h, const Verdict& v) {
  if (const Witness* w = v.witness()) {
    if (v.holds) return false;
    const GroupElement& x = w->h_proj;
    if (!(x.parent() == product_group(h.schema(), w->j))) return false;
    return member(project(h, w->j), x) && !member(project(constrained(h, w->constraint), w->j), x);
  }
  const Certificate& cert = *v.certificate();
  if (!v.holds) return false;
  const Window win = effective_window(h);
  for (const auto& eq : cert.equalities) {
    const Subgroup lhs = project(h, eq.j);
    const Subgroup rhs = project(constrained(h, eq.constraint), eq.j);
    if (!(lhs.basis() == eq.lhs) || !(rhs.basis() == eq.rhs) || !(lhs == rhs)) return false;
  }
  // Whole-property certificates must cover every initial segment below W + L.
  if (cert.reduction == kSingleIndexSet) return cert.equalities.size() == 1;
  if (cert.equalities.size() != win.span()) return false;
  for (std::size_t n = 0; n < win.span(); ++n) {
    const auto& eq = cert.equalities[n];
    if (eq.j != initial_segment(n)) return false;
    if (!constraint_fits(v.property, v.k, n, eq.constraint, win.w)) return false;
  }
  return true;
}

Verdict controllable_at(const ProductSubgroup& h, const IndexSet& j) {
  const Constraint c{Constraint::Kind::finite_support, 0};
  Evidence e = compare(h, j, c, "p_J(H) != p_J(H cap direct sum)");
  if (auto* w = std::get_if<Witness>(&e)) return Verdict{Property::controllable, 0, false, std::move(*w)};
  return Verdict{Property::controllable, 0, true,
                 Certificate{kSingleIndexSet, {std::get<EqualityCertificate>(std::move(e))}}};
}

Verdict is_controllable(const ProductSubgroup& h) {
  return segment_verdict(
      h, Property::controllable, 0, [](std::size_t) { return Constraint{Constraint::Kind::finite_support, 0}; },
      kSegmentReduction);
}

Verdict is_weakly_controllable_discrete(const ProductSubgroup& h) {
  // Discrete coordinates: density of H cap (+) in H is controllability.
  Verdict v = is_controllable(h);
  v.property = Property::weakly_controllable;
  return v;
}

DefectProfile uniformity_defect(const ProductSubgroup& h, const IndexSet& j) {
  const std::size_t span = effective_window(h).span();
  DefectProfile prof;
  prof.j = j;
  const Subgroup target = project(h, j);
  prof.target_order = target.order();
  for (std::size_t k = 0; k <= span; ++k) {
    const Subgroup got = project(intersect_sum_window(h, initial_segment(k)), j);
    prof.table.emplace_back(k, got.order());
    if (!prof.defect && got == target) prof.defect = k;
  }
  if (!prof.defect && controllable_at(h, j).holds)
    throw InternalInconsistency("controllable at J but no window [0,k], k <= W+L, realizes p_J(H)");
  return prof;
}

Verdict is_uniformly_controllable(const ProductSubgroup& h) {
  const std::size_t span = effective_window(h).span();
  Certificate cert{std::string(kSegmentReduction) + "; K = [0, defect(J)]", {}};
  for (std::size_t n = 0; n < span; ++n) {
    const IndexSet j = initial_segment(n);
    const DefectProfile prof = uniformity_defect(h, j);
    if (!prof.defect) {
      const Constraint c{Constraint::Kind::finite_support, 0};
      Evidence e = compare(h, j, c, "no finite K: " + segment_context(n, c));
      return Verdict{Property::uniformly_controllable, 0, false, std::get<Witness>(std::move(e))};
    }
    const Constraint c{Constraint::Kind::support_within, *prof.defect};
    Evidence e = compare(h, j, c, segment_context(n, c));
    cert.equalities.push_back(std::get<EqualityCertificate>(std::move(e)));
  }
  return Verdict{Property::uniformly_controllable, 0, true, std::move(cert)};
}

Verdict is_k_controllable(const ProductSubgroup& h, std::size_t k) {
  return segment_verdict(
      h, Property::k_controllable, k,
      [k](std::size_t n) { return Constraint{Constraint::Kind::zero_from, n + k}; },
      "splice at every n < W+L with m = n+k; for n >= W+L-1 the condition is the same as at W+L-1");
}

std::optional<std::size_t> strong_index(const ProductSubgroup& h, std::size_t k_max) {
  for (std::size_t k = 0; k <= k_max; ++k)
    if (is_k_controllable(h, k).holds) return k;
  return std::nullopt;
}

Verdict is_strongly_controllable(const ProductSubgroup& h, std::optional<std::size_t> k_max) {
  const std::size_t kmax = k_max.value_or(effective_window(h).span());
  for (std::size_t k = 0; k <= kmax; ++k) {
    Verdict v = is_k_controllable(h, k);
    if (v.holds || k == kmax) {
      v.property = Property::strongly_controllable;
      return v;
    }
  }
  throw InternalInconsistency("unreachable");
}

Verdict is_classically_controllable(const ProductSubgroup& h) {
  const std::size_t w = effective_window(h).w;
  return segment_verdict(
      h, Property::classical_controllable, 0,
      [w](std::size_t n) { return Constraint{Constraint::Kind::zero_from, std::max(n + 1, w)}; },
      "pairs (h,h') reduce to h-h'; some m works iff m = max(n+1, W) works");
}

Verdict is_classically_uniform(const ProductSubgroup& h) {
  const Window win = effective_window(h);
  Certificate cert{"m searched in [0, max(n,W)]; any m >= W is equivalent to m = W", {}};
  for (std::size_t n = 0; n < win.span(); ++n) {
    const IndexSet j = initial_segment(n);
    const std::size_t m_top = std::max(n, win.w);
    std::optional<EqualityCertificate> found;
    for (std::size_t m = 0; m <= m_top && !found; ++m) {
      Evidence e = compare(h, j, Constraint{Constraint::Kind::zero_from, m}, "");
      if (auto* eq = std::get_if<EqualityCertificate>(&e)) found = std::move(*eq);
    }
    if (!found) {
      const Constraint c{Constraint::Kind::zero_from, m_top};
      Evidence e = compare(h, j, c, "no m: " + segment_context(n, c));
      return Verdict{Property::classical_uniform, 0, false, std::get<Witness>(std::move(e))};
    }
    cert.equalities.push_back(std::move(*found));
  }
  return Verdict{Property::classical_uniform, 0, true, std::move(cert)};
}

VerdictSet check_all(const ProductSubgroup& h, std::size_t k, std::optional<std::size_t> k_max) {
  const std::size_t kmax = k_max.value_or(effective_window(h).span());
  VerdictSet s{is_weakly_controllable_discrete(h), is_controllable(h), is_uniformly_controllable(h),
               is_k_controllable(h, k), is_strongly_controllable(h, kmax)};
  auto implies = [](bool a, bool b) { return !a || b; };
  const bool ok = implies(s.strong.holds, s.uniform.holds) && implies(s.uniform.holds, s.controllable.holds) &&
                  implies(s.controllable.holds, s.weak.holds) &&
                  implies(s.k_controllable.holds && k <= kmax, s.strong.holds) &&
                  s.weak.holds == s.controllable.holds && s.controllable.holds == s.uniform.holds;
  if (!ok) throw InternalInconsistency("verdicts violate the controllability hierarchy");
  for (const Verdict* v : s.all())
    if (!verify(h, *v)) throw InternalInconsistency("verdict evidence failed re-verification: " + to_string(v->property));
  return s;
}

// --- Z-indexed problems -------------------------------------------------------

std::size_t ZIndexedSubgroup::storage(std::int64_t label) const {
  const std::int64_t s = label + static_cast<std::int64_t>(window_neg);
  if (s < 0) throw PreconditionFailed("index " + std::to_string(label) + " lies left of the window");
  return static_cast<std::size_t>(s);
}

ProductSubgroup translate_from_Z(std::size_t window_neg, const ZIndexedSubgroup& spec) {
  if (window_neg != spec.window_neg)
    throw PreconditionFailed("translation amount must equal the negative window of the subgroup");
  return ProductSubgroup(spec.body.schema_ptr(), spec.body.gens());
}

ZIndexedSubgroup embed_full_past(const ProductSubgroup& h, std::size_t w) {
  if (h.schema().prefix_length() != 0) throw PreconditionFailed("embed_full_past needs a power M^N");
  const SchemaPtr& schema = h.schema_ptr();
  const FiniteAbelianGroup& m = schema->tail;
  std::vector<SeqElement> gens;
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t f = 0; f < m.rank(); ++f) {
      std::vector<std::int64_t> e(m.rank(), 0);
      e[f] = 1;
      SeqElement d = SeqElement::delta(schema, i, m.element(e));
      if (!d.is_zero()) gens.push_back(std::move(d));
    }
  for (const auto& g : h.gens()) {
    std::vector<GroupElement> prefix(w, m.zero());
    prefix.insert(prefix.end(), g.prefix().begin(), g.prefix().end());
    gens.emplace_back(schema, std::move(prefix), g.period());
  }
  return ZIndexedSubgroup{w, ProductSubgroup(schema, std::move(gens))};
}

// --- brute force ------------------------------------------------------------

BruteForceOracle::BruteForceOracle(const ProductSubgroup& h, std::size_t cap, std::int64_t label_offset)
    : label_offset_(label_offset) {
  std::set<SeqElement> seen;
  SeqElement zero = SeqElement::zero(h.schema_ptr());
  seen.insert(zero);
  elements_.push_back(zero);
  for (std::size_t head = 0; head < elements_.size(); ++head)
    for (const auto& g : h.gens()) {
      SeqElement next = seq_add(elements_[head], g);
      if (seen.insert(next).second) {
        if (elements_.size() >= cap)
          throw CapExceeded("brute force: subgroup has more than " + std::to_string(cap) + " elements");
        elements_.push_back(std::move(next));
      }
    }
  std::size_t w = 0, l = 1;
  for (const auto& e : elements_) {
    const Support s = support(e);
    finite_.push_back(!s.infinite);
    support_end_.push_back(s.infinite || s.indices.empty() ? 0 : s.indices.back() + 1);
    w = std::max(w, e.prefix_length());
    l = std::lcm(l, e.period_length());
  }
  horizon_ = w + 2 * l;
}

BruteForceOracle::Key BruteForceOracle::pattern(std::size_t e, const IndexSet& j) const {
  Key k;
  for (auto i : j) {
    const auto& c = elements_[e].at(i).coords();
    k.insert(k.end(), c.begin(), c.end());
  }
  return k;
}

BruteForceOracle::Key BruteForceOracle::suffix_key(std::size_t e, std::size_t m) const {
  const SeqElement& x = elements_[e];
  const std::size_t p = x.prefix_length();
  const std::size_t w0 = x.schema().prefix_length();
  std::vector<std::vector<std::int64_t>> explicit_vals;
  for (std::size_t i = m; i < p; ++i) explicit_vals.push_back(x.at(i).coords());
  const std::size_t start = std::max(m, p);
  std::vector<std::vector<std::int64_t>> period;
  for (std::size_t t = 0; t < x.period_length(); ++t) period.push_back(x.at(start + t).coords());
  // Canonical form of the suffix sequence, as for SeqElement.
  const std::size_t l = period.size();
  for (std::size_t d = 1; d < l; ++d) {
    if (l % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < l && ok; ++i) ok = period[i] == period[i - d];
    if (ok) {
      period.resize(d);
      break;
    }
  }
  while (!explicit_vals.empty() && m + explicit_vals.size() > w0 && explicit_vals.back() == period.back()) {
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    explicit_vals.pop_back();
  }
  Key k{static_cast<std::int64_t>(explicit_vals.size()), static_cast<std::int64_t>(period.size())};
  for (const auto& v : explicit_vals) k.insert(k.end(), v.begin(), v.end());
  for (const auto& v : period) k.insert(k.end(), v.begin(), v.end());
  return k;
}

bool BruteForceOracle::splice_surjective(std::size_t n, std::size_t m) const {
  const IndexSet past = initial_segment(n);
  std::set<Key> a, b;
  std::set<std::pair<Key, Key>> both;
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    Key p = pattern(e, past);
    Key f = suffix_key(e, m);
    a.insert(p);
    b.insert(f);
    both.emplace(std::move(p), std::move(f));
  }
  return both.size() == a.size() * b.size();
}

std::vector<IndexSet> BruteForceOracle::probe_sets() const {
  std::vector<IndexSet> sets;
  for (std::size_t n = 0; n < horizon_; ++n) sets.push_back(initial_segment(n));
  if (elements_.size() <= 2000) {
    const std::size_t width = std::min<std::size_t>(horizon_, 6);
    for (std::size_t mask = 1; mask < (std::size_t{1} << width); ++mask) {
      IndexSet j;
      for (std::size_t i = 0; i < width; ++i)
        if (mask >> i & 1) j.push_back(i);
      if (j.size() != j.back() + 1) sets.push_back(std::move(j));
    }
  }
  return sets;
}

bool BruteForceOracle::controllable_at(const IndexSet& j) const {
  std::set<Key> reachable;
  for (std::size_t e = 0; e < elements_.size(); ++e)
    if (finite_[e]) reachable.insert(pattern(e, j));
  for (std::size_t e = 0; e < elements_.size(); ++e)
    if (!reachable.count(pattern(e, j))) return false;
  return true;
}

std::optional<std::int64_t> BruteForceOracle::uniformity_defect(const IndexSet& j) const {
  // For each pattern: the smallest k with a finite element supported in [0, k].
  std::map<Key, std::size_t> best;
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    if (!finite_[e]) continue;
    const std::size_t k = support_end_[e] == 0 ? 0 : support_end_[e] - 1;
    auto [it, inserted] = best.emplace(pattern(e, j), k);
    if (!inserted) it->second = std::min(it->second, k);
  }
  std::size_t defect = 0;
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    auto it = best.find(pattern(e, j));
    if (it == best.end()) return std::nullopt;
    defect = std::max(defect, it->second);
  }
  return static_cast<std::int64_t>(defect) + label_offset_;
}

bool BruteForceOracle::controllable() const {
  for (const auto& j : probe_sets())
    if (!controllable_at(j)) return false;
  return true;
}

bool BruteForceOracle::uniformly_controllable() const {
  for (const auto& j : probe_sets())
    if (!uniformity_defect(j)) return false;
  return true;
}

bool BruteForceOracle::weakly_controllable() const {
  // Basic open sets of H: cylinders {x : x|J = pattern} that meet H.
  for (const auto& j : probe_sets()) {
    std::set<Key> opens, hit;
    for (std::size_t e = 0; e < elements_.size(); ++e) {
      Key p = pattern(e, j);
      if (finite_[e]) hit.insert(p);
      opens.insert(std::move(p));
    }
    for (const auto& u : opens)
      if (!hit.count(u)) return false;
  }
  return true;
}

bool BruteForceOracle::classical_controllable() const {
  const CoordSchema& schema = elements_.front().schema();
  for (std::size_t n = 0; n < horizon_; ++n) {
    const IndexSet past = initial_segment(n);
    const auto orders = product_group(schema, past).orders();
    std::set<Key> finite_past;
    std::vector<Key> pasts;
    for (std::size_t e = 0; e < elements_.size(); ++e) {
      Key p = pattern(e, past);
      if (finite_[e]) finite_past.insert(p);
      pasts.push_back(std::move(p));
    }
    // g = h' + f with f finite-support and f|past = (h - h')|past.
    if (elements_.size() <= 300) {
      Key diff(orders.size());
      for (const auto& hp : pasts)
        for (const auto& hq : pasts) {
          for (std::size_t c = 0; c < orders.size(); ++c) diff[c] = ((hp[c] - hq[c]) % orders[c] + orders[c]) % orders[c];
          if (!finite_past.count(diff)) return false;
        }
    } else {
      for (const auto& hp : pasts)
        if (!finite_past.count(hp)) return false;
    }
  }
  return true;
}

bool BruteForceOracle::classical_uniform() const {
  for (std::size_t n = 0; n < horizon_; ++n) {
    bool found = false;
    for (std::size_t m = 0; m <= n + horizon_ && !found; ++m) found = splice_surjective(n, m);
    if (!found) return false;
  }
  return true;
}

bool BruteForceOracle::k_controllable(std::size_t k) const {
  for (std::size_t n = 0; n < horizon_; ++n)
    if (!splice_surjective(n, n + k)) return false;
  return true;
}

std::optional<std::size_t> BruteForceOracle::strong_index(std::size_t k_max) const {
  for (std::size_t k = 0; k <= k_max; ++k)
    if (k_controllable(k)) return k;
  return std::nullopt;
}

Verdict oracle_check(const ProductSubgroup& h, const OracleQuery& q) {
  const BruteForceOracle o(h, q.cap);
  bool holds = false;
  std::size_t k = q.k;
  switch (q.property) {
    case Property::weakly_controllable: holds = o.weakly_controllable(); break;
    case Property::controllable: holds = o.controllable(); break;
    case Property::uniformly_controllable: holds = o.uniformly_controllable(); break;
    case Property::k_controllable: holds = o.k_controllable(q.k); break;
    case Property::strongly_controllable: {
      const auto idx = o.strong_index(q.k_max);
      holds = idx.has_value();
      k = idx.value_or(q.k_max);
      break;
    }
    case Property::classical_controllable: holds = o.classical_controllable(); break;
    case Property::classical_uniform: holds = o.classical_uniform(); break;
  }
  std::ostringstream os;
  os << "exhaustive enumeration of " << o.size() << " elements, horizon " << o.horizon();
  if (holds) return Verdict{q.property, k, true, Certificate{os.str(), {}}};
  return Verdict{q.property, k, false, Witness{{}, GroupElement{}, Constraint{}, os.str()}};
}

}  // namespace groupctl
