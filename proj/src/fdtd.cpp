#include "mmtd/fdtd.hpp"

#include <cmath>
#include <stdexcept>

namespace mmtd::fdtd {

double YeeState::wave_speed() const { return 1.0 / std::sqrt(eps * mu); }

std::vector<double> staggered_diff4(const std::vector<double>& v, int n, double dx,
                                    bool along_x) {
  std::vector<double> out(v.size());
  const double inv = 1.0 / (24.0 * dx);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      int p1, p2, m1;
      if (along_x) {
        p1 = j * n + (i + 1) % n;
        p2 = j * n + (i + 2) % n;
        m1 = j * n + (i + n - 1) % n;
      } else {
        p1 = ((j + 1) % n) * n + i;
        p2 = ((j + 2) % n) * n + i;
        m1 = ((j + n - 1) % n) * n + i;
      }
      const int at = j * n + i;
      out[at] = (27.0 * (v[p1] - v[at]) - (v[p2] - v[m1])) * inv;
    }
  return out;
}

YeeState fdtd4_step(const YeeState& state, double dt) {
  const int n = state.n;
  if (n < 5) throw std::invalid_argument("fdtd4_step: grid must be at least 5x5");
  const double c = state.wave_speed();
  const double lam = c * dt / state.dx;
  if (lam > 1.0 / std::sqrt(2.0) + 1e-12)
    throw std::invalid_argument("fdtd4_step: CFL violation, c*dt/dx must not exceed 1/sqrt(2)");

  const double dx = state.dx;
  const double corr = c * c * dt * dt / 24.0;
  const double inv24 = 1.0 / (24.0 * dx);
  const double invdx = 1.0 / dx;

  YeeState out = state;
  out.t_h = state.t_h + dt;
  out.t_e = state.t_e + dt;

  // h with the second-order Laplacian correction.
  std::vector<double> ht(state.h.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int at = j * n + i;
      const double lap =
          (state.h[j * n + (i + 1) % n] + state.h[j * n + (i + n - 1) % n] +
           state.h[((j + 1) % n) * n + i] + state.h[((j + n - 1) % n) * n + i] -
           4.0 * state.h[at]) *
          invdx * invdx;
      ht[at] = state.h[at] + corr * lap;
    }

  // E update: ex at (i, j+1/2) takes the y-derivative of h, ey at (i+1/2, j)
  // the negative x-derivative.
  const double ce = dt / state.eps;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int at = j * n + i;
      const double dyh = (27.0 * (ht[((j + 1) % n) * n + i] - ht[at]) -
                          (ht[((j + 2) % n) * n + i] - ht[((j + n - 1) % n) * n + i])) *
                         inv24;
      const double dxh = (27.0 * (ht[j * n + (i + 1) % n] - ht[at]) -
                          (ht[j * n + (i + 2) % n] - ht[j * n + (i + n - 1) % n])) *
                         inv24;
      out.ex[at] = state.ex[at] + ce * dyh;
      out.ey[at] = state.ey[at] - ce * dxh;
    }

  // Second-order curl of the updated E at nodes, then the corrected fields.
  std::vector<double> w(state.h.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int at = j * n + i;
      const double dyex = (out.ex[at] - out.ex[((j + n - 1) % n) * n + i]) * invdx;
      const double dxey = (out.ey[at] - out.ey[j * n + (i + n - 1) % n]) * invdx;
      w[at] = dyex - dxey;
    }
  std::vector<double> ext(state.h.size()), eyt(state.h.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int at = j * n + i;
      ext[at] = out.ex[at] + corr * (w[((j + 1) % n) * n + i] - w[at]) * invdx;
      eyt[at] = out.ey[at] - corr * (w[j * n + (i + 1) % n] - w[at]) * invdx;
    }

  // H update from the corrected E.
  const double ch = dt / state.mu;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int at = j * n + i;
      const double dyex = (27.0 * (ext[at] - ext[((j + n - 1) % n) * n + i]) -
                           (ext[((j + 1) % n) * n + i] - ext[((j + n - 2) % n) * n + i])) *
                          inv24;
      const double dxey = (27.0 * (eyt[at] - eyt[j * n + (i + n - 1) % n]) -
                           (eyt[j * n + (i + 1) % n] - eyt[j * n + (i + n - 2) % n])) *
                          inv24;
      out.h[at] = state.h[at] + ch * (dyex - dxey);
    }
  return out;
}

YeeState yee_init_exact(const wave::PlaneWave& pw, int n, double dx, double dt, double eps,
                        double mu, double x0, double y0) {
  YeeState s;
  s.n = n;
  s.dx = dx;
  s.x0 = x0;
  s.y0 = y0;
  s.eps = eps;
  s.mu = mu;
  s.t_h = 0.0;
  s.t_e = -0.5 * dt;
  s.h.resize(static_cast<size_t>(n) * n);
  s.ex.resize(s.h.size());
  s.ey.resize(s.h.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double x = x0 + i * dx, y = y0 + j * dx;
      s.h[s.idx(i, j)] = pw.h_value(x, y, 0.0);
      s.ex[s.idx(i, j)] = pw.ex_value(x, y + 0.5 * dx, s.t_e);
      s.ey[s.idx(i, j)] = pw.ey_value(x + 0.5 * dx, y, s.t_e);
    }
  return s;
}

double error_eps1(const YeeState& state, const wave::PlaneWave& pw) {
  const int n = state.n;
  double err = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double x = state.x0 + i * state.dx, y = state.y0 + j * state.dx;
      const int at = state.idx(i, j);
      err = std::max(err, std::abs(state.h[at] - pw.h_value(x, y, state.t_h)));
      err = std::max(err,
                     std::abs(state.ex[at] - pw.ex_value(x, y + 0.5 * state.dx, state.t_e)));
      err = std::max(err,
                     std::abs(state.ey[at] - pw.ey_value(x + 0.5 * state.dx, y, state.t_e)));
    }
  return err;
}

namespace {

struct DerivSamples {
  std::vector<double> numeric;
  std::vector<double> exact;
};

// Per sample set, max-norm error over the max-norm of the exact derivative;
// sets with negligible exact derivative are excluded (same convention as the
// moment-scheme eps2).
double guarded_relative_max(const std::vector<DerivSamples>& sets, double guard_rel) {
  std::vector<double> set_max(sets.size(), 0.0);
  double overall = 0.0;
  for (size_t s = 0; s < sets.size(); ++s) {
    for (double e : sets[s].exact) set_max[s] = std::max(set_max[s], std::abs(e));
    overall = std::max(overall, set_max[s]);
  }
  if (overall == 0.0) return 0.0;

  double err = 0.0;
  for (size_t s = 0; s < sets.size(); ++s) {
    if (set_max[s] <= guard_rel * overall) continue;
    double e = 0.0;
    for (size_t k = 0; k < sets[s].exact.size(); ++k)
      e = std::max(e, std::abs(sets[s].numeric[k] - sets[s].exact[k]));
    err = std::max(err, e / set_max[s]);
  }
  return err;
}

}  // namespace

double error_eps2(const YeeState& state, const wave::PlaneWave& pw, double guard_rel) {
  const int n = state.n;
  const double dx = state.dx;
  const double hx = 0.5 * dx;

  // Field sample offsets: h (0,0) at t_h; ex (0,1/2), ey (1/2,0) at t_e.
  struct FieldSpec {
    const std::vector<double>* data;
    double ox, oy, t;
    scheme::Moment (wave::PlaneWave::*moments)(double, double, double) const;
  };
  const FieldSpec fields[3] = {
      {&state.h, 0.0, 0.0, state.t_h, &wave::PlaneWave::h_moments},
      {&state.ex, 0.0, hx, state.t_e, &wave::PlaneWave::ex_moments},
      {&state.ey, hx, 0.0, state.t_e, &wave::PlaneWave::ey_moments},
  };

  std::vector<DerivSamples> sets;
  for (const auto& f : fields) {
    for (int axis = 0; axis < 2; ++axis) {
      const bool along_x = axis == 0;
      DerivSamples s;
      s.numeric = staggered_diff4(*f.data, n, dx, along_x);
      s.exact.resize(s.numeric.size());
      const double ox = f.ox + (along_x ? hx : 0.0);
      const double oy = f.oy + (along_x ? 0.0 : hx);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const scheme::Moment m =
              (pw.*f.moments)(state.x0 + i * dx + ox, state.y0 + j * dx + oy, f.t);
          s.exact[state.idx(i, j)] = along_x ? m[1] : m[2];
        }
      sets.push_back(std::move(s));
    }
  }
  return guarded_relative_max(sets, guard_rel);
}

double discrete_divergence_max(const YeeState& state) {
  const int n = state.n;
  // D4x ex lands at (i+1/2, j+1/2) and D4y ey at the same points.
  const std::vector<double> dxex = staggered_diff4(state.ex, n, state.dx, true);
  const std::vector<double> dyey = staggered_diff4(state.ey, n, state.dx, false);
  double mx = 0.0;
  for (size_t k = 0; k < dxex.size(); ++k) mx = std::max(mx, std::abs(dxex[k] + dyey[k]));
  return mx;
}

}  // namespace mmtd::fdtd
