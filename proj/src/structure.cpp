#include "groupctl/structure.hpp"

namespace groupctl {

TorsionDensity torsion_density(const ProductSubgroup&) {
  return {true, "all generators torsion: every coordinate group is finite"};
}

TorsionDensity torsion_density(const TorusSeqSubgroup&) {
  return {true, "all generators torsion: every entry lies in Q/Z"};
}

DecompositionReport decompose(const ProductSubgroup& h) {
  return DecompositionReport{invariant_factors(as_finite_group(h)), subgroup_order(h), torsion_density(h),
                             is_weakly_controllable_discrete(h)};
}

DecompositionReport decompose(const TorusSeqSubgroup& h) {
  DecompositionReport r = decompose(to_product_subgroup(h).h);
  r.torsion = torsion_density(h);
  return r;
}

}  // namespace groupctl
