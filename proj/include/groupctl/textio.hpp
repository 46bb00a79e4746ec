#pragma once

// Plain-text subgroup specifications.
//
//   # comment
//   schema prefix=Z/4,Z/2+Z/2 tail=Z/2
//   gen 1 0:1 | 1          values of Z/a+Z/b are written a:b
//   gen 0 1:1 1 | 0 1
//
//   family z2_power depth=5
//   family block p=2 blocks=2,3
//   family dense_trivial_sum k=Z/2 l=3 window=12
//   family torsion_torus n=4
//   family chain m=Z/2+Z/2 chain=[1:0];[1:0,0:1] copies=1
//
//   torus y=1/3,1/5
//   qgen f_0 1/3 | 0
//   qgen c_1/2 | 1/2

#include <string>
#include <variant>

#include "groupctl/families.hpp"

namespace groupctl {

using InputSpec = std::variant<ProductSubgroup, FamilySpec, TorusSeqSubgroup>;

/// Throws ParseError on malformed or unknown input.
InputSpec parse_input(const std::string& text);
FiniteAbelianGroup parse_group(const std::string& s);
GroupElement parse_value(const FiniteAbelianGroup& g, const std::string& s);

std::string to_text(const ProductSubgroup& h);
std::string to_text(const FamilySpec& spec);
std::string to_text(const TorusSeqSubgroup& h);
std::string value_text(const GroupElement& x);

}  // namespace groupctl
