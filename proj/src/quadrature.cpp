#include "mmtd/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mmtd::quad {

namespace {

constexpr double kPi = std::numbers::pi;

poly::Vec16 build_unit_constants() {
  poly::Vec16 k{};
  k[poly::index16(0, 0)] = 1.0 / 4.0;
  k[poly::index16(0, 1)] = 1.0 / 8.0;
  k[poly::index16(0, 2)] = 1.0 / 12.0;
  k[poly::index16(0, 3)] = 1.0 / 16.0;
  k[poly::index16(1, 0)] = 1.0 / 8.0;
  k[poly::index16(1, 1)] = 1.0 / (6.0 * kPi);
  k[poly::index16(1, 2)] = 1.0 / 32.0;
  k[poly::index16(1, 3)] = 1.0 / (15.0 * kPi);
  k[poly::index16(2, 0)] = 1.0 / 12.0;
  k[poly::index16(2, 1)] = 1.0 / 32.0;
  k[poly::index16(2, 2)] = 1.0 / 60.0;
  k[poly::index16(2, 3)] = 1.0 / 96.0;
  k[poly::index16(3, 0)] = 1.0 / 16.0;
  k[poly::index16(3, 1)] = 1.0 / (15.0 * kPi);
  k[poly::index16(3, 2)] = 1.0 / 96.0;
  k[poly::index16(3, 3)] = 2.0 / (105.0 * kPi);
  return k;
}

void quadrant_signs(int quadrant, double& sx, double& sy) {
  switch (quadrant) {
    case 1: sx = 1.0; sy = 1.0; break;
    case 2: sx = -1.0; sy = 1.0; break;
    case 3: sx = -1.0; sy = -1.0; break;
    case 4: sx = 1.0; sy = -1.0; break;
    default:
      throw std::invalid_argument("quadrant must be in 1..4");
  }
}

struct GaussRule {
  std::vector<double> x, w;  // nodes/weights on [-1, 1]
};

// Gauss-Legendre nodes by Newton iteration on the recurrence-evaluated
// Legendre polynomial; standard Chebyshev initial guesses.
GaussRule gauss_legendre(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const GaussRule& rule64() {
  static const GaussRule r = gauss_legendre(64);
  return r;
}

// integral over [a,b] of f
template <typename F>
double integrate(F f, double a, double b) {
  const GaussRule& r = rule64();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(mid + half * r.x[i]);
  return s * half;
}

}  // namespace

const poly::Vec16& unit_moment_constants() {
  static const poly::Vec16 k = build_unit_constants();
  return k;
}

poly::Vec16 lambda_row(double lam, double mu) {
  const poly::Vec16& k = unit_moment_constants();
  const double px[4] = {1.0, lam, lam * lam, lam * lam * lam};
  const double py[4] = {1.0, mu, mu * mu, mu * mu * mu};
  poly::Vec16 out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      out[poly::index16(a, b)] = k[poly::index16(a, b)] * px[a] * py[b];
  return out;
}

poly::Vec16 quadrant_moments(int quadrant, double d_c) {
  if (!(d_c > 0.0)) throw std::invalid_argument("quadrant_moments: d_c must be positive");
  double sx, sy;
  quadrant_signs(quadrant, sx, sy);
  return lambda_row(sx * d_c, sy * d_c);
}

double quadrant_moment_oracle(int xpow, int ypow, int quadrant, double d_c) {
  if (!(d_c > 0.0)) throw std::invalid_argument("quadrant_moment_oracle: d_c must be positive");
  if (xpow < 0 || xpow > 3 || ypow < 0 || ypow > 3)
    throw std::invalid_argument("quadrant_moment_oracle: powers must be in 0..3");
  double sx, sy;
  quadrant_signs(quadrant, sx, sy);
  (void)sx;
  (void)sy;

  // Polar coordinates split the moment into a radial factor and an angular
  // factor.  The substitution r = sin(u) removes the (1-r^2)^(-1/2) endpoint
  // singularity: the radial integral becomes int_0^{pi/2} sin(u)^{p+1} du.
  const int p = xpow + ypow;
  const double radial =
      integrate([p](double u) { return std::pow(std::sin(u), p + 1); }, 0.0, 0.5 * kPi);
  const double phi0 = (quadrant - 1) * 0.5 * kPi;
  const double angular = integrate(
      [xpow, ypow](double phi) {
        return std::pow(std::cos(phi), xpow) * std::pow(std::sin(phi), ypow);
      },
      phi0, phi0 + 0.5 * kPi);
  return std::pow(d_c, p) / (2.0 * kPi) * radial * angular;
}

}  // namespace mmtd::quad
