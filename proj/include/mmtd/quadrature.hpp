#pragma once

#include "mmtd/poly.hpp"

// Moments of the 2D wave-kernel measure
//   L[u | B] = 1/(2 pi c dt) * integral_B u(xi) ((c dt)^2 - |xi|^2)^(-1/2) dxi
// restricted to one quadrant of the disk B(0, d_c), d_c = c*dt, evaluated on
// the 16 monomials xi1^k xi2^l, k,l <= 3.  Closed forms plus an independent
// polar-quadrature oracle that validates them.

namespace mmtd::quad {

// Quadrant-1 moments of the unit disk (d_c = 1); entry idx(k,l).
const poly::Vec16& unit_moment_constants();

// Row vector with entry idx(k,l) = lam^k * mu^l * unit constant.  Signed
// arguments produce the other quadrants' moments in ratio form.
poly::Vec16 lambda_row(double lam, double mu);

// Closed-form moment vector over quadrant q of B(0, d_c).  Quadrants are
// numbered counterclockwise from (+,+).  Requires d_c > 0.
poly::Vec16 quadrant_moments(int quadrant, double d_c);

// Numerical-quadrature evaluation of a single moment, independent of the
// closed forms above; absolute accuracy well below 1e-10.
double quadrant_moment_oracle(int xpow, int ypow, int quadrant, double d_c);

}  // namespace mmtd::quad
