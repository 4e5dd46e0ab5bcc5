#pragma once

#include "cubicbir/types.hpp"

#include <vector>

namespace cubicbir {

// Picard lattice of a cubic surface in the basis E0, ..., E6 of a blow-down to P^2.
IMat picard_form();
IVec canonical_class();
Integer picard_dot(const IVec& a, const IVec& b);

// E_i, then E0 - E_i - E_j (lex), then 2E0 - sum_{j != i} E_j.
std::vector<IVec> line_classes();

struct TwistedCubicPair {
  IVec gamma1, gamma1_dual, gamma2, gamma2_dual;
};
// Duals are -2K - gamma; both inputs must have square 1 and degree 3.
TwistedCubicPair twisted_cubic_pair(const IVec& gamma1, const IVec& gamma2);

struct LineComponents {
  std::vector<size_t> bisecant, mixed, dual_bisecant;  // indices into line_classes()
};
LineComponents component_classes(const IVec& gamma, const IVec& gamma_dual);

// Rows P1, S1, P1dual; columns P2, S2, P2dual; entries count shared lines.
IMat intersection_table(const TwistedCubicPair& pair);

}  // namespace cubicbir
