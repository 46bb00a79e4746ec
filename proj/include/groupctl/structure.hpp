#pragma once

// Cyclic decomposition of finitely generated subgroups, paired with their
// controllability verdict. The character-duality side is not modelled; only
// its computable conclusion, the invariant factors.

#include <string>
#include <vector>

#include "groupctl/control.hpp"
#include "groupctl/torus.hpp"

namespace groupctl {

struct TorsionDensity {
  bool dense = true;
  std::string reason;
};

struct DecompositionReport {
  std::vector<BigInt> factors;  ///< d_1 | d_2 | ..., product = order
  BigInt order;
  TorsionDensity torsion;
  Verdict weakly_controllable;
};

DecompositionReport decompose(const ProductSubgroup& h);
/// Decomposes the product embedding; the verdict is the engine's on that embedding.
DecompositionReport decompose(const TorusSeqSubgroup& h);

TorsionDensity torsion_density(const ProductSubgroup& h);
TorsionDensity torsion_density(const TorusSeqSubgroup& h);

}  // namespace groupctl
