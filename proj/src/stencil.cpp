#include "mmtd/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "mmtd/quadrature.hpp"

namespace mmtd::stencil {

StencilGeometry StencilGeometry::uniform(double dx, double dt, double c) {
  StencilGeometry g;
  g.d1_left = g.d1_right = g.d2_down = g.d2_up = dx;
  g.dt = dt;
  g.c = c;
  return g;
}

void StencilGeometry::validate(bool enforce_cfl) const {
  if (!(d1_left > 0.0 && d1_right > 0.0 && d2_down > 0.0 && d2_up > 0.0))
    throw std::invalid_argument("StencilGeometry: cell widths must be positive");
  if (!(dt > 0.0) || !(c > 0.0))
    throw std::invalid_argument("StencilGeometry: dt and c must be positive");
  const double dmin = std::min(std::min(d1_left, d1_right), std::min(d2_down, d2_up));
  if (enforce_cfl && c * dt > dmin * (1.0 + 1e-12))
    throw std::invalid_argument("StencilGeometry: CFL violation, c*dt must not exceed cell width");
}

CellMatrices assemble_A(const StencilGeometry& geom, poly::KernelOp family, bool enforce_cfl) {
  geom.validate(enforce_cfl);
  const double dc = geom.c * geom.dt;

  // Per-cell widths, counterclockwise from the upper-right cell, and the
  // signs putting each cell's quadrant into the signed moment row.
  const double w1[4] = {geom.d1_right, geom.d1_left, geom.d1_left, geom.d1_right};
  const double w2[4] = {geom.d2_up, geom.d2_up, geom.d2_down, geom.d2_down};
  const double sx[4] = {1.0, -1.0, -1.0, 1.0};
  const double sy[4] = {1.0, 1.0, -1.0, -1.0};

  const poly::Mat4 id = poly::identity4();
  const poly::Mat4 tm1 = poly::translate_matrix(-1.0);
  const poly::Mat16& interp = poly::interpolation_matrix();

  CellMatrices out;
  for (int k = 0; k < 4; ++k) {
    poly::Mat16 shift;
    switch (k) {
      case 0: shift = poly::identity16(); break;
      case 1: shift = poly::kron(tm1, id); break;
      case 2: shift = poly::kron(tm1, tm1); break;
      case 3: shift = poly::kron(id, tm1); break;
    }
    const poly::Mat16 cell_map =
        poly::mul(shift, poly::mul(interp, poly::scaling_matrix({w1[k], w2[k]})));

    const double lam = dc / w1[k];
    const double mu = dc / w2[k];
    const poly::Vec16 moment_row = quad::lambda_row(sx[k] * lam, sy[k] * mu);

    for (int row = 0; row < 4; ++row) {
      const int ax = (row == 1 || row == 3) ? 1 : 0;
      const int ay = (row == 2 || row == 3) ? 1 : 0;
      poly::Vec16 r = poly::mul_row(moment_row, poly::kernel_op_matrix(family, ax, ay));
      r = poly::mul_row(r, cell_map);

      double pref = 1.0;
      if (ax) pref /= w1[k];
      if (ay) pref /= w2[k];
      if (family == poly::KernelOp::ddx) pref *= lam;
      if (family == poly::KernelOp::ddy) pref *= mu;
      for (int c = 0; c < 16; ++c) out.cell[k][16 * row + c] = pref * r[c];
    }
  }
  return out;
}

std::array<poly::Mat4, 9> slice_blocks(const CellMatrices& cm) {
  // t-block b of cell matrix A_k covers columns 4b..4b+3.
  auto block = [&](int cell, int tb) {
    poly::Mat4 m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = cm.cell[cell][16 * r + 4 * tb + c];
    return m;
  };
  auto add = [](poly::Mat4& dst, const poly::Mat4& src) {
    for (int i = 0; i < 16; ++i) dst.a[i] += src.a[i];
  };

  std::array<poly::Mat4, 9> n{};
  // Cells 0..3 = C1..C4; their corner vectors touch the nine neighbors as
  // C1:(5,6,9,8) C2:(4,5,8,7) C3:(1,2,5,4) C4:(2,3,6,5) in 1-based labels.
  add(n[0], block(2, 0));                    // f1 <- A3 t1
  add(n[1], block(2, 1));                    // f2 <- A3 t2
  add(n[1], block(3, 0));                    //       + A4 t1
  add(n[2], block(3, 1));                    // f3 <- A4 t2
  add(n[3], block(2, 3));                    // f4 <- A3 t4
  add(n[3], block(1, 0));                    //       + A2 t1
  add(n[4], block(0, 0));                    // f5 <- A1 t1
  add(n[4], block(1, 1));                    //       + A2 t2
  add(n[4], block(2, 2));                    //       + A3 t3
  add(n[4], block(3, 3));                    //       + A4 t4
  add(n[5], block(0, 1));                    // f6 <- A1 t2
  add(n[5], block(3, 2));                    //       + A4 t3
  add(n[6], block(1, 3));                    // f7 <- A2 t4
  add(n[7], block(0, 3));                    // f8 <- A1 t4
  add(n[7], block(1, 2));                    //       + A2 t3
  add(n[8], block(0, 2));                    // f9 <- A1 t3
  return n;
}

namespace {

void pack_family(const std::array<poly::Mat4, 9>& blocks, std::array<double, 144>& packed,
                 std::array<unsigned char, 144>& mask, int& nnz) {
  double amax = 0.0;
  for (int k = 0; k < 9; ++k)
    for (int i = 0; i < 16; ++i) amax = std::max(amax, std::abs(blocks[k].a[i]));
  // Entries that vanish only through cancellation sit at roundoff scale;
  // treat anything below 1e-13 of the largest entry as structurally zero.
  const double tol = amax * 1e-13;
  nnz = 0;
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 9; ++k)
      for (int m = 0; m < 4; ++m) {
        const int col = 4 * k + m;
        const double v = blocks[k](r, m);
        const bool nz = std::abs(v) > tol;
        packed[36 * r + col] = nz ? v : 0.0;
        mask[36 * r + col] = nz ? 1 : 0;
        nnz += nz ? 1 : 0;
      }
}

}  // namespace

StencilSet assemble_stencils(const StencilGeometry& geom, bool enforce_cfl) {
  StencilSet s;
  s.geom = geom;
  s.a = slice_blocks(assemble_A(geom, poly::KernelOp::advect, enforce_cfl));
  s.b = slice_blocks(assemble_A(geom, poly::KernelOp::ddx, enforce_cfl));
  s.c = slice_blocks(assemble_A(geom, poly::KernelOp::ddy, enforce_cfl));
  pack_family(s.a, s.pa, s.mask_a, s.nnz_a);
  pack_family(s.b, s.pb, s.mask_b, s.nnz_b);
  pack_family(s.c, s.pc, s.mask_c, s.nnz_c);
  return s;
}

const StencilSet& cached_stencils(const StencilGeometry& geom, bool enforce_cfl) {
  using Key = std::array<double, 6>;
  static std::map<Key, StencilSet> cache;
  static std::mutex mtx;
  const Key key{geom.d1_left, geom.d1_right, geom.d2_down, geom.d2_up, geom.dt, geom.c};
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, assemble_stencils(geom, enforce_cfl)).first;
  return it->second;
}

}  // namespace mmtd::stencil
