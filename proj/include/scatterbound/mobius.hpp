#pragma once

#include "scatterbound/potential.hpp"

namespace scatterbound {

// Rewrites a named Eckart-lineage family (or a Poschl-Teller form) as the Mobius
// potential V = V0 + V1 [(A + B w)/(C + D w)]^2, w = exp(-2x/a), exactly.
//
// Supported: Eckart, RosenMorse, ManningRosen (A != 0), Morse, Tietz, Hua (q != 0),
// PoschlTeller (V0 != 0), and Mobius itself (identity). Hulthen is rejected: it is
// linear in coth(x/2a) (a simple pole), while the squared-Mobius form only produces
// double poles; the Manning-Rosen completion constant -B^2/(4A) diverges at the
// A = 0 reduction the Hulthen family sits on.
MobiusPotential canonicalize_mobius(const PotentialSpec& p);

} // namespace scatterbound
