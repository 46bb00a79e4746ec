#include "groupctl/families.hpp"

#include <algorithm>
#include <sstream>

#include "groupctl/error.hpp"

namespace groupctl {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string show(bool b) { return b ? "true" : "false"; }
std::string show(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "none"; }

std::string basis_string(const Subgroup& s) {
  std::string out = "<";
  auto gens = s.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? "," : "") + gens[i].to_string();
  return out + ">";
}

}  // namespace

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::chain: return "chain";
    case FamilyKind::block: return "block";
    case FamilyKind::dense_trivial_sum: return "dense_trivial_sum";
    case FamilyKind::z2_power: return "z2_power";
    case FamilyKind::torsion_torus: return "torsion_torus";
  }
  return "unknown";
}

FamilyKind FamilySpec::kind() const { return static_cast<FamilyKind>(params.index()); }

std::string FamilySpec::describe() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ChainParams>) {
          os << "m=" << p.m.to_string() << " chain=";
          for (std::size_t i = 0; i < p.chain.size(); ++i) os << (i ? "<" : "") << basis_string(p.chain[i]);
          if (p.copies != 1) os << " copies=" << p.copies;
        } else if constexpr (std::is_same_v<T, BlockParams>) {
          os << "p=" << p.p << " blocks=" << join(p.blocks);
        } else if constexpr (std::is_same_v<T, DenseParams>) {
          os << "k=" << p.k_group.to_string() << " l=" << p.l << " window=" << p.window;
        } else if constexpr (std::is_same_v<T, Z2PowerParams>) {
          os << "depth=" << p.depth;
        } else {
          os << "n=" << p.n;
        }
      },
      params);
  return os.str();
}

Prediction FamilySpec::prediction() const {
  Prediction pr;
  switch (kind()) {
    case FamilyKind::chain: {
      const auto& p = std::get<ChainParams>(params);
      pr.controllable = pr.weakly_controllable = pr.uniformly_controllable = true;
      pr.defect_at_0 = p.chain.size() - 1;
      break;
    }
    case FamilyKind::z2_power: {
      const auto& p = std::get<Z2PowerParams>(params);
      pr.controllable = pr.weakly_controllable = pr.uniformly_controllable = true;
      pr.defect_at_0 = p.depth - 1;
      break;
    }
    case FamilyKind::block: {
      const auto& p = std::get<BlockParams>(params);
      pr.controllable = pr.weakly_controllable = pr.uniformly_controllable = true;
      pr.defect_at_0 = p.blocks.front() - 1;
      const std::size_t s = *std::max_element(p.blocks.begin(), p.blocks.end());
      if (s >= 2) pr.not_k_controllable_upto = s - 2;
      break;
    }
    case FamilyKind::dense_trivial_sum: {
      const auto& p = std::get<DenseParams>(params);
      pr.directsum_trivial = true;
      pr.full_projection_length = p.l;
      pr.weakly_controllable = pr.controllable = false;
      break;
    }
    case FamilyKind::torsion_torus: pr.witness_valid = true; break;
  }
  return pr;
}

ProductSubgroup chain_family(const FiniteAbelianGroup& m, const std::vector<Subgroup>& chain, std::size_t copies) {
  if (chain.empty()) throw PreconditionFailed("chain must be non-empty");
  if (copies == 0) throw PreconditionFailed("copies must be positive");
  for (const auto& a : chain)
    if (!(a.parent() == m)) throw DimensionMismatch("chain member is not a subgroup of " + m.to_string());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!is_subgroup_of(chain[i], chain[i + 1]) || chain[i] == chain[i + 1])
      throw ChainNotStrict("A_" + std::to_string(i) + " is not a proper subgroup of A_" + std::to_string(i + 1));
  SchemaPtr schema = power_schema(m);
  std::vector<SeqElement> gens;
  for (std::size_t c = 0; c < copies; ++c)
    for (std::size_t i = 0; i < chain.size(); ++i)
      for (const auto& a : chain[i].generators()) {
        std::vector<GroupElement> prefix(c * chain.size(), m.zero());
        prefix.insert(prefix.end(), i + 1, a);
        gens.emplace_back(schema, std::move(prefix), std::vector<GroupElement>{m.zero()});
      }
  return ProductSubgroup(schema, std::move(gens));
}

std::vector<Subgroup> coordinate_chain(const FiniteAbelianGroup& m) {
  std::vector<Subgroup> chain;
  std::vector<GroupElement> basis;
  for (std::size_t i = 0; i < m.rank(); ++i) {
    std::vector<std::int64_t> e(m.rank(), 0);
    e[i] = 1;
    basis.push_back(m.element(e));
    chain.push_back(span(m, basis));
  }
  return chain;
}

ProductSubgroup z2_power_example(std::size_t depth) {
  if (depth < 2) throw PreconditionFailed("depth must be at least 2");
  FiniteAbelianGroup m(std::vector<std::int64_t>(depth, 2));
  return chain_family(m, coordinate_chain(m));
}

ProductSubgroup block_family(std::int64_t p, const std::vector<std::size_t>& block_sizes) {
  if (!is_prime(p)) throw PreconditionFailed(std::to_string(p) + " is not prime");
  FiniteAbelianGroup zp = FiniteAbelianGroup::cyclic(p);
  SchemaPtr schema = power_schema(zp);
  const GroupElement one = zp.element(std::vector<std::int64_t>{1});
  std::vector<SeqElement> gens;
  std::size_t offset = 0;
  for (auto b : block_sizes) {
    if (b == 0) throw PreconditionFailed("block sizes must be positive");
    std::vector<GroupElement> prefix(offset, zp.zero());
    prefix.insert(prefix.end(), b, one);
    gens.emplace_back(schema, std::move(prefix), std::vector<GroupElement>{zp.zero()});
    offset += b;
  }
  return ProductSubgroup(schema, std::move(gens));
}

ProductSubgroup dense_trivial_sum_family(const FiniteAbelianGroup& k_group, std::size_t l, std::size_t window) {
  if (l < 2) throw PreconditionFailed("l must be at least 2");
  SchemaPtr schema = power_schema(k_group);
  std::vector<SeqElement> gens;
  for (std::size_t k = 0; k < l; ++k)
    for (std::size_t f = 0; f < k_group.rank(); ++f) {
      if (k_group.orders()[f] == 1) continue;
      std::vector<std::int64_t> e(k_group.rank(), 0);
      e[f] = 1;
      const GroupElement d = k_group.element(e);
      // d on I_k = {n : n = k mod l}, which is {k} together with I_k minus {0..k}.
      std::vector<GroupElement> prefix, period;
      for (std::size_t n = 0; n < window; ++n) prefix.push_back(n % l == k ? d : k_group.zero());
      for (std::size_t n = window; n < window + l; ++n) period.push_back(n % l == k ? d : k_group.zero());
      gens.emplace_back(schema, std::move(prefix), std::move(period));
    }
  return ProductSubgroup(schema, std::move(gens));
}

TorusSeqSubgroup torsion_torus_example(std::size_t n) {
  if (n == 0) throw PreconditionFailed("n must be at least 1");
  TorusSeqSubgroup h{default_y(n), {}};
  for (std::size_t k = 0; k < n; ++k) h.gens.push_back({build_fk(h.y, k), "f_" + std::to_string(k)});
  h.gens.push_back({constant_sequence(qz(1, 2)), "c_1/2"});
  return h;
}

FamilyInstance build(const FamilySpec& spec) {
  return std::visit(
      [](const auto& p) -> FamilyInstance {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ChainParams>) return chain_family(p.m, p.chain, p.copies);
        else if constexpr (std::is_same_v<T, BlockParams>) return block_family(p.p, p.blocks);
        else if constexpr (std::is_same_v<T, DenseParams>) return dense_trivial_sum_family(p.k_group, p.l, p.window);
        else if constexpr (std::is_same_v<T, Z2PowerParams>) return z2_power_example(p.depth);
        else return torsion_torus_example(p.n);
      },
      spec.params);
}

bool verify_faces(const FiniteAbelianGroup& m, const std::vector<Subgroup>& chain, const ProductSubgroup& h) {
  SchemaPtr schema = h.schema_ptr();
  if (!(schema->tail == m)) throw DimensionMismatch("h does not live on a power of m");
  const std::size_t span = effective_window(h).span();
  std::vector<SeqElement> levels;
  for (std::size_t k = 0; k < span; ++k) {
    if (k < chain.size())
      for (const auto& a : chain[k].generators()) {
        std::vector<GroupElement> prefix(k + 1, a);
        levels.emplace_back(schema, std::move(prefix), std::vector<GroupElement>{m.zero()});
      }
    if (!same_subgroup(intersect_sum_window(h, initial_segment(k)), ProductSubgroup(schema, levels))) return false;
  }
  return true;
}

std::vector<PredictionCheck> check_prediction(const FamilySpec& spec) {
  const Prediction pr = spec.prediction();
  const FamilyInstance inst = build(spec);
  std::vector<PredictionCheck> out;
  auto add = [&](std::string name, std::string expected, std::string actual) {
    const bool pass = expected == actual;
    out.push_back({std::move(name), std::move(expected), std::move(actual), pass});
  };
  if (const auto* t = std::get_if<TorusSeqSubgroup>(&inst)) {
    if (pr.witness_valid) {
      const QZ half = qz(1, 2);
      bool valid = false;
      try {
        valid = verify_torus_witness(*t, noncontrollability_witness(*t, half));
      } catch (const PreconditionFailed&) {
        valid = false;
      }
      add("noncontrollability_witness(1/2)", show(*pr.witness_valid), show(valid));
      add("in_span(1/2,y)", "false", show(in_span(half, t->y)));
      bool diffs = true;
      for (const auto& g : t->gens) diffs = diffs && closure_diff_check(g.seq, t->y, t->y.size()).ok;
      add("closure_diff_check(all generators)", "true", show(diffs));
    }
    return out;
  }
  const ProductSubgroup& h = std::get<ProductSubgroup>(inst);
  if (pr.controllable) add("controllable", show(*pr.controllable), show(is_controllable(h).holds));
  if (pr.weakly_controllable)
    add("weakly_controllable", show(*pr.weakly_controllable), show(is_weakly_controllable_discrete(h).holds));
  if (pr.uniformly_controllable)
    add("uniformly_controllable", show(*pr.uniformly_controllable), show(is_uniformly_controllable(h).holds));
  if (pr.defect_at_0) add("defect({0})", show(pr.defect_at_0), show(uniformity_defect(h, {0}).defect));
  if (pr.not_k_controllable_upto) {
    std::optional<std::size_t> first_true;
    for (std::size_t k = 0; k <= *pr.not_k_controllable_upto && !first_true; ++k)
      if (is_k_controllable(h, k).holds) first_true = k;
    add("k_controllable(k<=" + std::to_string(*pr.not_k_controllable_upto) + ")", "none", show(first_true));
  }
  if (pr.directsum_trivial)
    add("directsum_trivial", show(*pr.directsum_trivial), show(subgroup_order(intersect_directsum(h)) == 1));
  if (pr.full_projection_length) {
    bool full = true;
    for (std::size_t n = 1; n <= *pr.full_projection_length; ++n)
      full = full && project(h, index_range(0, n)).order() == product_group(h.schema(), index_range(0, n)).cardinality();
    add("full_projection(len<=" + std::to_string(*pr.full_projection_length) + ")", "true", show(full));
  }
  if (spec.kind() == FamilyKind::chain || spec.kind() == FamilyKind::z2_power) {
    FiniteAbelianGroup m;
    std::vector<Subgroup> chain;
    if (const auto* c = std::get_if<ChainParams>(&spec.params)) {
      if (c->copies == 1) {
        m = c->m;
        chain = c->chain;
      }
    } else {
      m = FiniteAbelianGroup(std::vector<std::int64_t>(std::get<Z2PowerParams>(spec.params).depth, 2));
      chain = coordinate_chain(m);
    }
    if (!chain.empty()) add("finite_faces", "true", show(verify_faces(m, chain, h)));
  }
  return out;
}

std::vector<GrowthRow> defect_growth(const std::vector<FamilySpec>& grid, std::size_t k_profile_len) {
  std::vector<GrowthRow> rows;
  for (const auto& spec : grid) {
    const FamilyInstance inst = build(spec);
    const auto* h = std::get_if<ProductSubgroup>(&inst);
    if (!h) throw PreconditionFailed("defect_growth needs a product-subgroup family");
    GrowthRow row;
    row.parameter = spec.describe();
    row.defect = uniformity_defect(*h, {0}).defect;
    row.controllable = is_controllable(*h).holds;
    row.strong_index = strong_index(*h, effective_window(*h).span());
    for (std::size_t k = 0; k < k_profile_len; ++k) row.k_profile.push_back(is_k_controllable(*h, k).holds);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace groupctl
