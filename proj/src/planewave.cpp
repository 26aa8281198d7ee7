#include "mmtd/planewave.hpp"

#include <cmath>
#include <stdexcept>

namespace mmtd::wave {

PeriodicGaussian periodized_gaussian(double s, double period, double sigma) {
  // Image sum over copies shifted by multiples of the period; beyond
  // ~27 sigma the terms underflow, so the window is small.
  const double inv_s2 = 1.0 / (sigma * sigma);
  s -= period * std::round(s / period);
  const int nimg = static_cast<int>(std::ceil((27.5 * sigma + 0.5 * period) / period));
  PeriodicGaussian g;
  for (int k = -nimg; k <= nimg; ++k) {
    const double u = s - k * period;
    const double e = std::exp(-u * u * inv_s2);
    g.value += e;
    g.d1 += -2.0 * u * inv_s2 * e;
    g.d2 += (4.0 * u * u * inv_s2 * inv_s2 - 2.0 * inv_s2) * e;
  }
  return g;
}

namespace {

struct Mode {
  double cos_t, sin_t, period;
};

Mode mode_geometry(int m) {
  const double r = std::sqrt(1.0 + static_cast<double>(m) * m);
  return {1.0 / r, m / r, 1.0 / r};
}

// weight: per-mode amplitude factor (1 for H, sin for Ex, cos for Ey)
enum class Field { h, ex, ey };

scheme::Moment field_moments(const PlaneWave& pw, Field which, double x, double y, double t) {
  scheme::Moment out{};
  for (int m : pw.modes) {
    const Mode md = mode_geometry(m);
    const double s = x * md.cos_t - y * md.sin_t - t;
    const PeriodicGaussian g = periodized_gaussian(s, md.period, pw.sigma);
    double w = 1.0;
    if (which == Field::ex) w = md.sin_t;
    if (which == Field::ey) w = md.cos_t;
    out[0] += w * g.value;
    out[1] += w * g.d1 * md.cos_t;
    out[2] += w * g.d1 * (-md.sin_t);
    out[3] += w * g.d2 * md.cos_t * (-md.sin_t);
  }
  return out;
}

}  // namespace

scheme::Moment PlaneWave::h_moments(double x, double y, double t) const {
  return field_moments(*this, Field::h, x, y, t);
}
scheme::Moment PlaneWave::ex_moments(double x, double y, double t) const {
  return field_moments(*this, Field::ex, x, y, t);
}
scheme::Moment PlaneWave::ey_moments(double x, double y, double t) const {
  return field_moments(*this, Field::ey, x, y, t);
}

scheme::AnalyticMoments PlaneWave::evaluators(double t) const {
  scheme::AnalyticMoments fns;
  const PlaneWave pw = *this;
  fns.h = [pw, t](double x, double y) { return pw.h_moments(x, y, t); };
  fns.ex = [pw, t](double x, double y) { return pw.ex_moments(x, y, t); };
  fns.ey = [pw, t](double x, double y) { return pw.ey_moments(x, y, t); };
  return fns;
}

PlaneWave PlaneWave::from_sigma_inv2(double sigma_inv2, std::vector<int> modes) {
  if (!(sigma_inv2 > 0.0)) throw std::invalid_argument("sigma_inv2 must be positive");
  PlaneWave pw;
  pw.sigma = 1.0 / std::sqrt(sigma_inv2);
  pw.modes = std::move(modes);
  return pw;
}

}  // namespace mmtd::wave
