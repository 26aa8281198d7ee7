#pragma once

#include <vector>

#include "mmtd/planewave.hpp"

// Fourth-order (space and time) staggered-grid FDTD comparator.  Spatial
// first derivatives use the standard fourth-order staggered stencil
// (27/24, -1/24); fourth-order accuracy in time comes from the
// modified-equation correction, which augments each leapfrog curl with a
// (c dt)^2/24 repeated-curl term evaluated with second-order differences
// (that term already carries dt^2, so the overall error stays fourth order
// at fixed CFL ratio).

namespace mmtd::fdtd {

// Staggered placement, one convention used everywhere:
//   h  at (i, j)           sampled at time t_h
//   ex at (i, j + 1/2)     sampled at time t_e = t_h - dt/2
//   ey at (i + 1/2, j)     sampled at time t_e
// Storage index (i, j) holds the sample whose offset is written above;
// indexing wraps mod n.
struct YeeState {
  int n = 0;
  double dx = 0.0;
  double x0 = 0.0, y0 = 0.0;
  double eps = 1.0, mu = 1.0;
  double t_h = 0.0, t_e = 0.0;
  std::vector<double> h, ex, ey;

  double wave_speed() const;
  int idx(int i, int j) const { return j * n + i; }
};

// One leapfrog step: E fields advance to t_h + dt/2, then H to t_h + dt.
// Requires c*dt/dx <= 1/sqrt(2).
YeeState fdtd4_step(const YeeState& state, double dt);

// Exact plane-wave start: h at t = 0, the E fields at t = -dt/2 at their
// staggered positions.
YeeState yee_init_exact(const wave::PlaneWave& pw, int n, double dx, double dt, double eps,
                        double mu, double x0, double y0);

// Fourth-order staggered periodic difference along one axis: output k is the
// derivative half a sample to the right of input k.
std::vector<double> staggered_diff4(const std::vector<double>& v, int n, double dx,
                                    bool along_x);

// Max-norm value error against the plane-wave solution, each field compared
// at its own staggered position and time.
double error_eps1(const YeeState& state, const wave::PlaneWave& pw);

// Relative first-derivative error; derivatives reconstructed with
// staggered_diff4 and compared at the points where the stencil lands.  Per
// field and axis the max-norm error is divided by the max-norm of the exact
// derivative; pairs below guard_rel times the largest are excluded.
double error_eps2(const YeeState& state, const wave::PlaneWave& pw, double guard_rel = 1e-8);

// Max |D4x ex + D4y ey| over cell centers (the discrete divergence the
// staggered curls preserve).
double discrete_divergence_max(const YeeState& state);

}  // namespace mmtd::fdtd
