#pragma once

#include "qcoh/diagram.hpp"

namespace qcoh {

// The projective line as a three-vertex diagram:
//   u0 (Q[x]) <= u01 (Q[x,x^-1]) >= u1 (Q[x^-1])
RingRepPtr p1_ringrep();

// The twist O(n): free of rank one at each vertex, transitions 1 and x^n.
DiagModule p1_twist(long n);

// The projective plane as a seven-vertex diagram; rings are multivariate and
// stored as opaque data only — no module algebra is available over them.
RingRepPtr p2_ringrep();

} // namespace qcoh
