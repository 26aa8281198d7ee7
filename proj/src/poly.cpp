#include "mmtd/poly.hpp"

#include <stdexcept>

namespace mmtd::poly {

Mat4 identity4() {
  Mat4 m;
  for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
  return m;
}

Mat16 identity16() {
  Mat16 m;
  for (int i = 0; i < 16; ++i) m(i, i) = 1.0;
  return m;
}

Mat4 mul(const Mat4& A, const Mat4& B) {
  Mat4 out;
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k) {
      const double a = A(r, k);
      if (a == 0.0) continue;
      for (int c = 0; c < 4; ++c) out(r, c) += a * B(k, c);
    }
  return out;
}

Mat16 mul(const Mat16& A, const Mat16& B) {
  Mat16 out;
  for (int r = 0; r < 16; ++r)
    for (int k = 0; k < 16; ++k) {
      const double a = A(r, k);
      if (a == 0.0) continue;
      for (int c = 0; c < 16; ++c) out(r, c) += a * B(k, c);
    }
  return out;
}

Vec4 mul(const Mat4& A, const Vec4& v) {
  Vec4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r] += A(r, c) * v[c];
  return out;
}

Vec16 mul(const Mat16& A, const Vec16& v) {
  Vec16 out{};
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) out[r] += A(r, c) * v[c];
  return out;
}

Vec16 mul_row(const Vec16& row, const Mat16& M) {
  Vec16 out{};
  for (int r = 0; r < 16; ++r) {
    const double x = row[r];
    if (x == 0.0) continue;
    for (int c = 0; c < 16; ++c) out[c] += x * M(r, c);
  }
  return out;
}

double dot(const Vec16& a, const Vec16& b) {
  double s = 0.0;
  for (int i = 0; i < 16; ++i) s += a[i] * b[i];
  return s;
}

Vec16 basis_row(double x1, double x2) {
  const double px[4] = {1.0, x1, x1 * x1, x1 * x1 * x1};
  const double py[4] = {1.0, x2, x2 * x2, x2 * x2 * x2};
  Vec16 e;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) e[index16(k, l)] = px[k] * py[l];
  return e;
}

double eval16(const Vec16& coeffs, double x1, double x2) {
  return dot(basis_row(x1, x2), coeffs);
}

Mat4 derivative_matrix() {
  Mat4 d;
  d(0, 1) = 1.0;
  d(1, 2) = 2.0;
  d(2, 3) = 3.0;
  return d;
}

Mat4 power_raise_matrix() {
  Mat4 m;
  m(1, 0) = 1.0;
  m(2, 1) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

Mat4 scale_arg_matrix(double alpha) {
  Mat4 m;
  double p = 1.0;
  for (int i = 0; i < 4; ++i) {
    m(i, i) = p;
    p *= alpha;
  }
  return m;
}

Mat4 translate_matrix(double s) {
  // Rows expand (x-s)^j in powers of x: binomials with alternating signs.
  Mat4 t;
  t(0, 0) = 1.0;
  t(0, 1) = -s;
  t(0, 2) = s * s;
  t(0, 3) = -s * s * s;
  t(1, 1) = 1.0;
  t(1, 2) = -2.0 * s;
  t(1, 3) = 3.0 * s * s;
  t(2, 2) = 1.0;
  t(2, 3) = -3.0 * s;
  t(3, 3) = 1.0;
  return t;
}

Mat16 kron(const Mat4& A, const Mat4& B) {
  Mat16 out;
  for (int ra = 0; ra < 4; ++ra)
    for (int ca = 0; ca < 4; ++ca) {
      const double a = A(ra, ca);
      if (a == 0.0) continue;
      for (int rb = 0; rb < 4; ++rb)
        for (int cb = 0; cb < 4; ++cb)
          out(4 * ra + rb, 4 * ca + cb) = a * B(rb, cb);
    }
  return out;
}

namespace {

// The four 16x4 corner blocks of the interpolation matrix, row r gives the
// bi-cubic coefficient idx(k,l) = r, columns are the corner's (f, fx, fy,
// fxy) in unit-cell scaling.
constexpr int kQ1[16][4] = {
    {1, 0, 0, 0},   {0, 0, 1, 0},    {-3, 0, -2, 0},  {2, 0, 1, 0},
    {0, 1, 0, 0},   {0, 0, 0, 1},    {0, -3, 0, -2},  {0, 2, 0, 1},
    {-3, -2, 0, 0}, {0, 0, -3, -2},  {9, 6, 6, 4},    {-6, -4, -3, -2},
    {2, 1, 0, 0},   {0, 0, 2, 1},    {-6, -3, -4, -2}, {4, 2, 2, 1}};

constexpr int kQ2[16][4] = {
    {0, 0, 0, 0},  {0, 0, 0, 0},   {0, 0, 0, 0},   {0, 0, 0, 0},
    {0, 0, 0, 0},  {0, 0, 0, 0},   {0, 0, 0, 0},   {0, 0, 0, 0},
    {3, -1, 0, 0}, {0, 0, 3, -1},  {-9, 3, -6, 2}, {6, -2, 3, -1},
    {-2, 1, 0, 0}, {0, 0, -2, 1},  {6, -3, 4, -2}, {-4, 2, -2, 1}};

constexpr int kQ3[16][4] = {
    {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0},   {0, 0, 0, 0},
    {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0},   {0, 0, 0, 0},
    {0, 0, 0, 0}, {0, 0, 0, 0}, {9, -3, -3, 1}, {-6, 2, 3, -1},
    {0, 0, 0, 0}, {0, 0, 0, 0}, {-6, 3, 2, -1}, {4, -2, -2, 1}};

constexpr int kQ4[16][4] = {
    {0, 0, 0, 0},  {0, 0, 0, 0},  {3, 0, -1, 0},   {-2, 0, 1, 0},
    {0, 0, 0, 0},  {0, 0, 0, 0},  {0, 3, 0, -1},   {0, -2, 0, 1},
    {0, 0, 0, 0},  {0, 0, 0, 0},  {-9, -6, 3, 2},  {6, 4, -3, -2},
    {0, 0, 0, 0},  {0, 0, 0, 0},  {6, 3, -2, -1},  {-4, -2, 2, 1}};

Mat16 build_interpolation_matrix() {
  Mat16 q;
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 4; ++c) {
      q(r, c) = kQ1[r][c];
      q(r, 4 + c) = kQ2[r][c];
      q(r, 8 + c) = kQ3[r][c];
      q(r, 12 + c) = kQ4[r][c];
    }
  return q;
}

}  // namespace

const Mat16& interpolation_matrix() {
  static const Mat16 q = build_interpolation_matrix();
  return q;
}

Mat16 scaling_matrix(const CellGeometry& geom) {
  if (!(geom.d1 > 0.0) || !(geom.d2 > 0.0))
    throw std::invalid_argument("scaling_matrix: cell widths must be positive");
  Mat4 d;
  d(0, 0) = 1.0;
  d(1, 1) = geom.d1;
  d(2, 2) = geom.d2;
  d(3, 3) = geom.d1 * geom.d2;
  return kron(identity4(), d);
}

Mat16 kernel_op_matrix(KernelOp op, int ax, int ay) {
  if ((ax != 0 && ax != 1) || (ay != 0 && ay != 1))
    throw std::invalid_argument("kernel_op_matrix: derivative orders must be 0 or 1");
  const Mat4 id = identity4();
  const Mat4 d = derivative_matrix();
  const Mat16 dalpha = kron(ax ? d : id, ay ? d : id);

  Mat16 front;
  switch (op) {
    case KernelOp::advect: {
      // I + x1*d/dx1 + x2*d/dx2 in coefficient space.
      const Mat4 md = mul(power_raise_matrix(), d);
      front = identity16();
      const Mat16 mdi = kron(md, id), imd = kron(id, md);
      for (int i = 0; i < 256; ++i) front.a[i] += mdi.a[i] + imd.a[i];
      break;
    }
    case KernelOp::ddx:
      front = kron(d, id);
      break;
    case KernelOp::ddy:
      front = kron(id, d);
      break;
  }
  return mul(front, dalpha);
}

}  // namespace mmtd::poly
