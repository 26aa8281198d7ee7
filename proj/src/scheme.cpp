#include "mmtd/scheme.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmtd::scheme {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid(int n) {
  if (n < 3) throw std::invalid_argument("grid must be at least 3x3");
}

void check_step(const FieldState& s, const stencil::StencilSet& st, double dt) {
  check_grid(s.n);
  const auto& g = st.geom;
  const bool uniform = g.d1_left == s.dx && g.d1_right == s.dx && g.d2_down == s.dx &&
                       g.d2_up == s.dx;
  if (!uniform) throw std::invalid_argument("step_multimoment: stencil geometry does not match grid");
  if (g.dt != dt) throw std::invalid_argument("step_multimoment: stencil assembled for a different dt");
  const double c = s.wave_speed();
  if (std::abs(g.c - c) > 1e-14 * c)
    throw std::invalid_argument("step_multimoment: stencil assembled for a different wave speed");
  if (c * dt > s.dx * (1.0 + 1e-12))
    throw std::invalid_argument("step_multimoment: CFL violation");
}

inline void gather36(const std::vector<Moment>& f, int im, int i, int ip, int jm_row,
                     int j_row, int jp_row, double* out) {
  const int cols[9] = {jm_row + im, jm_row + i, jm_row + ip, j_row + im, j_row + i,
                       j_row + ip,  jp_row + im, jp_row + i, jp_row + ip};
  for (int k = 0; k < 9; ++k) {
    const Moment& m = f[cols[k]];
    out[4 * k + 0] = m[0];
    out[4 * k + 1] = m[1];
    out[4 * k + 2] = m[2];
    out[4 * k + 3] = m[3];
  }
}

inline double dot36(const double* row, const double* v) {
  double s = 0.0;
  for (int c = 0; c < 36; ++c) s += row[c] * v[c];
  return s;
}

}  // namespace

double FieldState::wave_speed() const { return 1.0 / std::sqrt(eps * mu); }
double BilinearState::wave_speed() const { return 1.0 / std::sqrt(eps * mu); }

FieldState FieldState::zeros(int n, double dx, double eps, double mu, double x0, double y0) {
  check_grid(n);
  FieldState s;
  s.n = n;
  s.dx = dx;
  s.x0 = x0;
  s.y0 = y0;
  s.eps = eps;
  s.mu = mu;
  s.h.assign(static_cast<size_t>(n) * n, Moment{});
  s.ex.assign(static_cast<size_t>(n) * n, Moment{});
  s.ey.assign(static_cast<size_t>(n) * n, Moment{});
  return s;
}

BilinearState BilinearState::zeros(int n, double dx, double eps, double mu, double x0,
                                   double y0) {
  check_grid(n);
  BilinearState s;
  s.n = n;
  s.dx = dx;
  s.x0 = x0;
  s.y0 = y0;
  s.eps = eps;
  s.mu = mu;
  s.h.assign(static_cast<size_t>(n) * n, 0.0);
  s.ex.assign(static_cast<size_t>(n) * n, 0.0);
  s.ey.assign(static_cast<size_t>(n) * n, 0.0);
  return s;
}

FieldState step_multimoment(const FieldState& state, const stencil::StencilSet& stencils,
                            double dt) {
  check_step(state, stencils, dt);
  const int n = state.n;
  const double c = state.wave_speed();
  const double kh = 1.0 / (c * state.mu);   // couples E into the H update
  const double ke = 1.0 / (c * state.eps);  // couples H into the E updates

  FieldState out = state;
  out.t = state.t + dt;
  out.step_count = state.step_count + 1;

  const double* pa = stencils.pa.data();
  const double* pb = stencils.pb.data();
  const double* pc = stencils.pc.data();

  double h36[36], ex36[36], ey36[36];
  for (int j = 0; j < n; ++j) {
    const int jm_row = ((j + n - 1) % n) * n;
    const int j_row = j * n;
    const int jp_row = ((j + 1) % n) * n;
    for (int i = 0; i < n; ++i) {
      const int im = (i + n - 1) % n;
      const int ip = (i + 1) % n;
      gather36(state.h, im, i, ip, jm_row, j_row, jp_row, h36);
      gather36(state.ex, im, i, ip, jm_row, j_row, jp_row, ex36);
      gather36(state.ey, im, i, ip, jm_row, j_row, jp_row, ey36);

      const int at = j_row + i;
      for (int r = 0; r < 4; ++r) {
        const double* ra = pa + 36 * r;
        const double* rb = pb + 36 * r;
        const double* rc = pc + 36 * r;
        out.h[at][r] = dot36(ra, h36) + kh * dot36(rc, ex36) - kh * dot36(rb, ey36);
        out.ex[at][r] = ke * dot36(rc, h36) + dot36(ra, ex36);
        out.ey[at][r] = -ke * dot36(rb, h36) + dot36(ra, ey36);
      }
    }
  }
  return out;
}

FieldState step_multimoment_counted(const FieldState& state, const stencil::StencilSet& stencils,
                                    double dt, std::int64_t& fma_count) {
  check_step(state, stencils, dt);
  const int n = state.n;
  const double c = state.wave_speed();
  const double kh = 1.0 / (c * state.mu);
  const double ke = 1.0 / (c * state.eps);

  FieldState out = state;
  out.t = state.t + dt;
  out.step_count = state.step_count + 1;

  auto masked_dot = [&fma_count](const double* row, const unsigned char* mask, const double* v) {
    double s = 0.0;
    for (int c2 = 0; c2 < 36; ++c2)
      if (mask[c2]) {
        s += row[c2] * v[c2];
        ++fma_count;
      }
    return s;
  };

  double h36[36], ex36[36], ey36[36];
  for (int j = 0; j < n; ++j) {
    const int jm_row = ((j + n - 1) % n) * n;
    const int j_row = j * n;
    const int jp_row = ((j + 1) % n) * n;
    for (int i = 0; i < n; ++i) {
      const int im = (i + n - 1) % n;
      const int ip = (i + 1) % n;
      gather36(state.h, im, i, ip, jm_row, j_row, jp_row, h36);
      gather36(state.ex, im, i, ip, jm_row, j_row, jp_row, ex36);
      gather36(state.ey, im, i, ip, jm_row, j_row, jp_row, ey36);

      const int at = j_row + i;
      for (int r = 0; r < 4; ++r) {
        const double* ra = stencils.pa.data() + 36 * r;
        const double* rb = stencils.pb.data() + 36 * r;
        const double* rc = stencils.pc.data() + 36 * r;
        const unsigned char* ma = stencils.mask_a.data() + 36 * r;
        const unsigned char* mb = stencils.mask_b.data() + 36 * r;
        const unsigned char* mc = stencils.mask_c.data() + 36 * r;
        out.h[at][r] = masked_dot(ra, ma, h36) + kh * masked_dot(rc, mc, ex36) -
                       kh * masked_dot(rb, mb, ey36);
        out.ex[at][r] = ke * masked_dot(rc, mc, h36) + masked_dot(ra, ma, ex36);
        out.ey[at][r] = -ke * masked_dot(rb, mb, h36) + masked_dot(ra, ma, ey36);
      }
    }
  }
  return out;
}

BilinearRows bilinear_rows(double lam) {
  BilinearRows r;
  const double corner = lam * lam / (2.0 * kPi);
  const double edge = (kPi - 2.0 * lam) * lam / (2.0 * kPi);
  const double center = 1.0 - 2.0 * lam + 2.0 * lam * lam / kPi;
  r.l1 = {corner, edge, corner, edge, center, edge, corner, edge, corner};

  const double dn = lam / 8.0;
  const double de = (2.0 - lam) / 4.0;
  r.l2 = {-dn, -de, -dn, 0.0, 0.0, 0.0, dn, de, dn};
  r.l3 = {-dn, 0.0, dn, -de, 0.0, de, -dn, 0.0, dn};
  return r;
}

BilinearState step_bilinear(const BilinearState& state, double lam) {
  check_grid(state.n);
  if (!(lam > 0.0) || lam > 1.0 + 1e-12)
    throw std::invalid_argument("step_bilinear: CFL ratio must lie in (0, 1]");
  const int n = state.n;
  const double c = state.wave_speed();
  const double dt = lam * state.dx / c;
  // The coupling stencils carry a c*dt scaling, so the material prefactors
  // pick up one power of lam on top of 1/(c*mu), 1/(c*eps).
  const double kh = lam / (c * state.mu);
  const double ke = lam / (c * state.eps);
  const BilinearRows rows = bilinear_rows(lam);

  BilinearState out = state;
  out.t = state.t + dt;

  for (int j = 0; j < n; ++j) {
    const int jm_row = ((j + n - 1) % n) * n;
    const int j_row = j * n;
    const int jp_row = ((j + 1) % n) * n;
    for (int i = 0; i < n; ++i) {
      const int im = (i + n - 1) % n;
      const int ip = (i + 1) % n;
      const int nb[9] = {jm_row + im, jm_row + i, jm_row + ip, j_row + im, j_row + i,
                         j_row + ip,  jp_row + im, jp_row + i, jp_row + ip};
      double s1h = 0.0, s1x = 0.0, s1y = 0.0, s2h = 0.0, s2x = 0.0, s3h = 0.0, s3y = 0.0;
      for (int k = 0; k < 9; ++k) {
        const double hk = state.h[nb[k]];
        const double xk = state.ex[nb[k]];
        const double yk = state.ey[nb[k]];
        s1h += rows.l1[k] * hk;
        s1x += rows.l1[k] * xk;
        s1y += rows.l1[k] * yk;
        s2h += rows.l2[k] * hk;
        s2x += rows.l2[k] * xk;
        s3h += rows.l3[k] * hk;
        s3y += rows.l3[k] * yk;
      }
      const int at = j_row + i;
      out.h[at] = s1h + kh * s2x - kh * s3y;
      out.ex[at] = ke * s2h + s1x;
      out.ey[at] = -ke * s3h + s1y;
    }
  }
  return out;
}

FieldState init_from_closures(int n, double dx, double eps, double mu,
                              const AnalyticMoments& fns, double x0, double y0) {
  FieldState s = FieldState::zeros(n, dx, eps, mu, x0, y0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double x = s.x_of(i), y = s.y_of(j);
      const int at = s.idx(i, j);
      if (fns.h) s.h[at] = fns.h(x, y);
      if (fns.ex) s.ex[at] = fns.ex(x, y);
      if (fns.ey) s.ey[at] = fns.ey(x, y);
    }
  return s;
}

namespace {

// Fourth-order centered periodic difference of a grid function along one
// axis; stride selects the axis.
std::vector<double> fd4(const std::vector<double>& v, int n, double dx, bool along_x) {
  std::vector<double> out(v.size());
  const double inv = 1.0 / (12.0 * dx);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      int ip1, ip2, im1, im2;
      if (along_x) {
        ip1 = j * n + (i + 1) % n;
        ip2 = j * n + (i + 2) % n;
        im1 = j * n + (i + n - 1) % n;
        im2 = j * n + (i + n - 2) % n;
      } else {
        ip1 = ((j + 1) % n) * n + i;
        ip2 = ((j + 2) % n) * n + i;
        im1 = ((j + n - 1) % n) * n + i;
        im2 = ((j + n - 2) % n) * n + i;
      }
      out[j * n + i] = (-v[ip2] + 8.0 * v[ip1] - 8.0 * v[im1] + v[im2]) * inv;
    }
  return out;
}

void fill_moments(std::vector<Moment>& dst, const std::vector<double>& v, int n, double dx) {
  const std::vector<double> vx = fd4(v, n, dx, true);
  const std::vector<double> vy = fd4(v, n, dx, false);
  const std::vector<double> vxy = fd4(vx, n, dx, false);
  for (size_t k = 0; k < v.size(); ++k) dst[k] = {v[k], vx[k], vy[k], vxy[k]};
}

}  // namespace

FieldState init_derivatives_by_fd(const std::vector<double>& h_values,
                                  const std::vector<double>& ex_values,
                                  const std::vector<double>& ey_values, int n, double dx,
                                  double eps, double mu, double x0, double y0) {
  const size_t sz = static_cast<size_t>(n) * n;
  if (h_values.size() != sz || ex_values.size() != sz || ey_values.size() != sz)
    throw std::invalid_argument("init_derivatives_by_fd: value grids must be n*n");
  FieldState s = FieldState::zeros(n, dx, eps, mu, x0, y0);
  fill_moments(s.h, h_values, n, dx);
  fill_moments(s.ex, ex_values, n, dx);
  fill_moments(s.ey, ey_values, n, dx);
  return s;
}

FieldState init_sharp_square(int n, double dx) {
  FieldState s = FieldState::zeros(n, dx, 1.0, 1.0, 0.0, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double x = s.x_of(i), y = s.y_of(j);
      // Boundary nodes belong to the closed square.
      if (x >= 0.25 && x <= 0.75 && y >= 0.25 && y <= 0.75) s.h[s.idx(i, j)][0] = 1.0;
    }
  return s;
}

}  // namespace mmtd::scheme
