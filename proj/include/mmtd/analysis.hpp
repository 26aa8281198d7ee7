#pragma once

#include <array>
#include <complex>
#include <vector>

#include "mmtd/stencil.hpp"

// Von-Neumann stability of the four-moment scheme: per-mode 4x4 symbols of
// the neighbor blocks, the stacked 12x12 amplification matrix, and frequency
// scans of its spectral radius.

namespace mmtd::analysis {

using Complex = std::complex<double>;

// Row-major 4x4 complex symbol of one block family at phase angles
// (theta1, theta2).
using SymbolMatrix = std::array<Complex, 16>;

SymbolMatrix symbol(const std::array<poly::Mat4, 9>& blocks, double theta1, double theta2);

// 12x12 complex amplification matrix; block order (h, ex, ey).
struct Amplification {
  std::array<Complex, 144> m{};
  double lambda = 0.0;
  double theta1 = 0.0, theta2 = 0.0;

  Complex& at(int r, int c) { return m[12 * r + c]; }
  Complex at(int r, int c) const { return m[12 * r + c]; }
};

// Uniform-grid amplification matrix at CFL ratio lambda in (0, 1]; material
// constants enter through the coupling coefficients.  Built at unit grid
// spacing; eigenvalue magnitudes are invariant under the moment rescaling
// that maps to other spacings.
Amplification amplification(double lambda, double theta1, double theta2, double eps = 1.0,
                            double mu = 1.0);

// Amplification matrix of a concrete stencil set (any spacing); the material
// constants must be consistent with the stencil wave speed.  One step of a
// periodic Fourier mode is exactly multiplication by this matrix.
Amplification amplification_from(const stencil::StencilSet& stencils, double theta1,
                                 double theta2, double eps = 1.0, double mu = 1.0);

// Magnitudes of all twelve eigenvalues, descending.
std::array<double, 12> eigen_magnitudes(const Amplification& m);

// Independent route to the same magnitudes: characteristic polynomial via
// the Faddeev-LeVerrier trace recursion, then the companion matrix.
std::array<double, 12> eigen_magnitudes_companion(const Amplification& m);

struct StabilityScan {
  double lambda = 0.0;
  int grid_n = 0;
  std::vector<double> theta1, theta2;  // grid_n values each
  std::vector<double> max_magnitude;   // row-major grid_n x grid_n
  double global_max = 0.0;
};

// Scans max |eigenvalue| over the uniform grid_n x grid_n lattice covering
// [-pi, 0]^2 (the rest of the square is conjugate-redundant).
StabilityScan stability_scan(double lambda, int grid_n, double eps = 1.0, double mu = 1.0);

}  // namespace mmtd::analysis
