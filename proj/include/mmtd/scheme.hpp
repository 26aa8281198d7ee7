#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "mmtd/stencil.hpp"

// Field containers and the time steppers: the four-moment scheme driven by a
// StencilSet, and the derivative-free nine-point variant.

namespace mmtd::scheme {

// Value and derivatives of one field at one node, in physical units:
// (f, df/dx, df/dy, d2f/dxdy).
using Moment = std::array<double, 4>;

// Periodic n x n grid of moment vectors for H_z, E_x, E_y.  Node (i, j) sits
// at (x0 + i*dx, y0 + j*dx); indexing wraps mod n in both axes.
struct FieldState {
  int n = 0;
  double dx = 0.0;
  double x0 = 0.0, y0 = 0.0;
  double eps = 1.0, mu = 1.0;
  double t = 0.0;
  std::int64_t step_count = 0;
  std::vector<Moment> h, ex, ey;

  double wave_speed() const;
  int idx(int i, int j) const { return j * n + i; }
  double x_of(int i) const { return x0 + i * dx; }
  double y_of(int j) const { return y0 + j * dx; }

  static FieldState zeros(int n, double dx, double eps, double mu, double x0 = 0.0,
                          double y0 = 0.0);
};

// Values-only state for the derivative-free scheme.
struct BilinearState {
  int n = 0;
  double dx = 0.0;
  double x0 = 0.0, y0 = 0.0;
  double eps = 1.0, mu = 1.0;
  double t = 0.0;
  std::vector<double> h, ex, ey;

  double wave_speed() const;
  int idx(int i, int j) const { return j * n + i; }

  static BilinearState zeros(int n, double dx, double eps, double mu, double x0 = 0.0,
                             double y0 = 0.0);
};

// Analytic evaluators used for exact initialization; each returns the four
// moments at a point.
struct AnalyticMoments {
  std::function<Moment(double x, double y)> h, ex, ey;
};

// One simultaneous update of all nodes; the input state is left untouched.
// Requires stencils assembled for exactly this grid spacing, dt and wave
// speed (uniform geometry).  Throws std::invalid_argument otherwise.
FieldState step_multimoment(const FieldState& state, const stencil::StencilSet& stencils,
                            double dt);

// Same update walking only the nonzero stencil masks; accumulates the number
// of fused multiply-adds performed into fma_count.
FieldState step_multimoment_counted(const FieldState& state, const stencil::StencilSet& stencils,
                                    double dt, std::int64_t& fma_count);

// The nine-point scalar stencils of the derivative-free variant, as functions
// of lam = c*dt/dx; neighbor order f1..f9 (row-major from the lower-left).
struct BilinearRows {
  std::array<double, 9> l1, l2, l3;
};
BilinearRows bilinear_rows(double lam);

// One step of the derivative-free scheme at CFL ratio lam in (0, 1].
BilinearState step_bilinear(const BilinearState& state, double lam);

FieldState init_from_closures(int n, double dx, double eps, double mu,
                              const AnalyticMoments& fns, double x0 = 0.0, double y0 = 0.0);

// Builds moments from grid values alone: first derivatives by fourth-order
// centered periodic differences, the mixed one by composing them.
FieldState init_derivatives_by_fd(const std::vector<double>& h_values,
                                  const std::vector<double>& ex_values,
                                  const std::vector<double>& ey_values, int n, double dx,
                                  double eps, double mu, double x0 = 0.0, double y0 = 0.0);

// H = 1 on the closed square [0.25,0.75]^2 of the unit domain [0,1), all
// derivative moments zero, E = 0.
FieldState init_sharp_square(int n, double dx);

}  // namespace mmtd::scheme
