#pragma once

#include <string>
#include <vector>

#include "ptf/core.hpp"

namespace ptf::reference {

struct NamedMask {
  std::string op;
  TernaryMask mask;
};

/// Hand-verified ternary masks for the 16 two-variable operations
/// (basis order [1, a, b, ab]). Every mask evaluates its operation exactly
/// and with strict margin >= 1.
const std::vector<NamedMask>& masks_n2();

/// Reference masks for the 10 three-variable operations (basis order
/// [1, a, b, c, ab, ac, bc, abc]). These pin the semantics of the n=3
/// operation group; each is exact under the -1=TRUE, sign(0)=+1 conventions.
const std::vector<NamedMask>& masks_n3();

/// Recorded masks for the 10 four-variable operations (basis order
/// [1, d, c, cd, ..., abcd]). Kept as data for support statistics; they were
/// recorded under the opposite output polarity and are not used as oracles.
const std::vector<NamedMask>& masks_n4();

struct LinearCompositionRow {
  std::string target;
  std::string parent;
  Sign sign;
};

/// The eight sign-modulated routings of the two-variable primitives:
/// target = sign * parent over the parent set {xor, and, or, implies}.
const std::vector<LinearCompositionRow>& linear_composition_rows();

/// Primitive parent masks by operation name, from masks_n2().
TernaryMask primitive_mask(const std::string& op_name);

/// Constant-FALSE mask [+1, 0, 0, 0]; the CONST member of the convex-hull
/// primitive set used by the no-sign routing bound.
const TernaryMask& const_false_mask();

}  // namespace ptf::reference
