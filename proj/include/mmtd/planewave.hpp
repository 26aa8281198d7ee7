#pragma once

#include <vector>

#include "mmtd/scheme.hpp"

// The one-way plane-wave solution family used by the accuracy studies: a
// superposition of rotated, periodically extended gaussian pulses
//   H_z = sum_m f(x cos(t_m) - y sin(t_m) - t),  t_m = atan(m),
//   E_x = sum_m sin(t_m) f(...),  E_y = sum_m cos(t_m) f(...),
// each mode extended with period L_m = cos(t_m) along its phase so the sum
// is 1-periodic in both axes on the unit square (eps = mu = 1).

namespace mmtd::wave {

struct PlaneWave {
  double sigma = 1.0;             // gaussian width
  std::vector<int> modes{0, 1, 2, 3};

  scheme::Moment h_moments(double x, double y, double t) const;
  scheme::Moment ex_moments(double x, double y, double t) const;
  scheme::Moment ey_moments(double x, double y, double t) const;

  double h_value(double x, double y, double t) const { return h_moments(x, y, t)[0]; }
  double ex_value(double x, double y, double t) const { return ex_moments(x, y, t)[0]; }
  double ey_value(double x, double y, double t) const { return ey_moments(x, y, t)[0]; }

  // Evaluators bound to one time, for exact-moment initialization.
  scheme::AnalyticMoments evaluators(double t) const;

  static PlaneWave from_sigma_inv2(double sigma_inv2, std::vector<int> modes = {0, 1, 2, 3});
};

// Periodized gaussian exp(-s^2/sigma^2) with period L: value and first two
// derivatives with respect to s.
struct PeriodicGaussian {
  double value = 0.0, d1 = 0.0, d2 = 0.0;
};
PeriodicGaussian periodized_gaussian(double s, double period, double sigma);

}  // namespace mmtd::wave
