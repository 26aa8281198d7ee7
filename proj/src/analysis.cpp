#include "mmtd/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmtd::analysis {

namespace {

constexpr double kPi = std::numbers::pi;

using EMat = Eigen::Matrix<Complex, 12, 12>;

EMat to_eigen(const Amplification& a) {
  EMat m;
  for (int r = 0; r < 12; ++r)
    for (int c = 0; c < 12; ++c) m(r, c) = a.at(r, c);
  return m;
}

std::array<double, 12> sorted_magnitudes(const Eigen::Matrix<Complex, 12, 1>& ev) {
  std::array<double, 12> out;
  for (int i = 0; i < 12; ++i) out[i] = std::abs(ev(i));
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

}  // namespace

SymbolMatrix symbol(const std::array<poly::Mat4, 9>& blocks, double theta1, double theta2) {
  // Neighbor k at offset (dx, dy) contributes with phase exp(i(dx*t1+dy*t2)).
  static constexpr int off[9][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {0, 0},
                                    {1, 0},   {-1, 1}, {0, 1},  {1, 1}};
  SymbolMatrix g{};
  for (int k = 0; k < 9; ++k) {
    const double phase = off[k][0] * theta1 + off[k][1] * theta2;
    const Complex w = std::polar(1.0, phase);
    for (int i = 0; i < 16; ++i) g[i] += w * blocks[k].a[i];
  }
  return g;
}

Amplification amplification_from(const stencil::StencilSet& st, double theta1, double theta2,
                                 double eps, double mu) {
  const double c = 1.0 / std::sqrt(eps * mu);
  if (std::abs(st.geom.c - c) > 1e-12 * c)
    throw std::invalid_argument("amplification_from: materials do not match the stencil wave speed");

  const SymbolMatrix ga = symbol(st.a, theta1, theta2);
  const SymbolMatrix gb = symbol(st.b, theta1, theta2);
  const SymbolMatrix gc = symbol(st.c, theta1, theta2);
  const double kh = 1.0 / (c * mu);
  const double ke = 1.0 / (c * eps);

  Amplification out;
  out.lambda = c * st.geom.dt / st.geom.d1_right;
  out.theta1 = theta1;
  out.theta2 = theta2;
  for (int r = 0; r < 4; ++r)
    for (int cidx = 0; cidx < 4; ++cidx) {
      const Complex va = ga[4 * r + cidx];
      const Complex vb = gb[4 * r + cidx];
      const Complex vc = gc[4 * r + cidx];
      out.at(r, cidx) = va;
      out.at(r, 4 + cidx) = kh * vc;
      out.at(r, 8 + cidx) = -kh * vb;
      out.at(4 + r, cidx) = ke * vc;
      out.at(4 + r, 4 + cidx) = va;
      out.at(8 + r, cidx) = -ke * vb;
      out.at(8 + r, 8 + cidx) = va;
    }
  return out;
}

namespace {

Amplification make_amplification(double lambda, double theta1, double theta2, double eps,
                                 double mu) {
  const double c = 1.0 / std::sqrt(eps * mu);
  const stencil::StencilSet& st = stencil::cached_stencils(
      stencil::StencilGeometry::uniform(1.0, lambda / c, c), /*enforce_cfl=*/false);
  return amplification_from(st, theta1, theta2, eps, mu);
}

}  // namespace

Amplification amplification(double lambda, double theta1, double theta2, double eps,
                            double mu) {
  if (!(lambda > 0.0) || lambda > 1.0 + 1e-12)
    throw std::invalid_argument("amplification: lambda must lie in (0, 1]");
  return make_amplification(lambda, theta1, theta2, eps, mu);
}

std::array<double, 12> eigen_magnitudes(const Amplification& m) {
  Eigen::ComplexEigenSolver<EMat> solver(to_eigen(m), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigen_magnitudes: eigenvalue iteration failed to converge");
  return sorted_magnitudes(solver.eigenvalues());
}

std::array<double, 12> eigen_magnitudes_companion(const Amplification& m) {
  // Characteristic polynomial z^12 + c1 z^11 + ... + c12 from the trace
  // recursion M_{k+1} = M (M_k + c_k I), c_k = -tr(M_k)/k.
  const EMat a = to_eigen(m);
  std::array<Complex, 13> coef{};
  coef[0] = 1.0;
  EMat mk = a;
  for (int k = 1; k <= 12; ++k) {
    coef[k] = -mk.trace() / static_cast<double>(k);
    if (k < 12) {
      EMat shifted = mk;
      for (int i = 0; i < 12; ++i) shifted(i, i) += coef[k];
      mk = a * shifted;
    }
  }

  EMat comp = EMat::Zero();
  for (int i = 1; i < 12; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < 12; ++i) comp(i, 11) = -coef[12 - i];
  Eigen::ComplexEigenSolver<EMat> solver(comp, false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigen_magnitudes_companion: eigenvalue iteration failed");
  return sorted_magnitudes(solver.eigenvalues());
}

StabilityScan stability_scan(double lambda, int grid_n, double eps, double mu) {
  if (grid_n < 2) throw std::invalid_argument("stability_scan: need at least 2 samples per axis");
  if (!(lambda > 0.0)) throw std::invalid_argument("stability_scan: lambda must be positive");
  StabilityScan scan;
  scan.lambda = lambda;
  scan.grid_n = grid_n;
  scan.theta1.resize(grid_n);
  scan.theta2.resize(grid_n);
  for (int k = 0; k < grid_n; ++k) {
    const double th = -kPi + kPi * k / (grid_n - 1);
    scan.theta1[k] = th;
    scan.theta2[k] = th;
  }
  scan.max_magnitude.resize(static_cast<size_t>(grid_n) * grid_n);
  for (int j = 0; j < grid_n; ++j)
    for (int i = 0; i < grid_n; ++i) {
      const auto mags =
          eigen_magnitudes(make_amplification(lambda, scan.theta1[i], scan.theta2[j], eps, mu));
      const double mx = mags[0];
      scan.max_magnitude[static_cast<size_t>(j) * grid_n + i] = mx;
      scan.global_max = std::max(scan.global_max, mx);
    }
  return scan;
}

}  // namespace mmtd::analysis
