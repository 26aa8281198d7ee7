#pragma once

#include <array>

// Fixed-size polynomial algebra for cubic and bi-cubic representations.
//
// A bi-cubic on the unit cell is sum_{k,l<=3} q[k,l] * x1^k * x2^l with the
// coefficient vector flattened as idx(k,l) = 4*k + l (x-power outer, y-power
// inner).  Every 16-dimensional object in this project (coefficient vectors,
// moment rows, corner-data vectors) uses that same flattening, and every
// Kronecker product respects it: the left factor acts on the 4-blocks, the
// right factor inside each block.

namespace mmtd::poly {

using Vec4 = std::array<double, 4>;
using Vec16 = std::array<double, 16>;

constexpr int index16(int xpow, int ypow) { return 4 * xpow + ypow; }

struct Mat4 {
  std::array<double, 16> a{};
  double& operator()(int r, int c) { return a[4 * r + c]; }
  double operator()(int r, int c) const { return a[4 * r + c]; }
};

struct Mat16 {
  std::array<double, 256> a{};
  double& operator()(int r, int c) { return a[16 * r + c]; }
  double operator()(int r, int c) const { return a[16 * r + c]; }
};

// Widths of one grid cell.
struct CellGeometry {
  double d1 = 1.0;  // x extent
  double d2 = 1.0;  // y extent
};

Mat4 identity4();
Mat16 identity16();
Mat4 mul(const Mat4& A, const Mat4& B);
Mat16 mul(const Mat16& A, const Mat16& B);
Vec4 mul(const Mat4& A, const Vec4& v);
Vec16 mul(const Mat16& A, const Vec16& v);
// row^T * M; moment functionals act on coefficient vectors from the left.
Vec16 mul_row(const Vec16& row, const Mat16& M);
double dot(const Vec16& a, const Vec16& b);

// Monomial basis row e(x): entry idx(k,l) = x1^k * x2^l.
Vec16 basis_row(double x1, double x2);

// Evaluate a coefficient vector at a point.
double eval16(const Vec16& coeffs, double x1, double x2);

// Coefficient-space operators for a cubic p(x) = (1,x,x^2,x^3) . a:
Mat4 derivative_matrix();             // a -> coefficients of p'
Mat4 power_raise_matrix();            // a -> coefficients of x*p (top degree drops)
Mat4 scale_arg_matrix(double alpha);  // a -> coefficients of p(alpha*x)
Mat4 translate_matrix(double s);      // a -> coefficients of p(x - s)

// Kronecker product consistent with index16.
Mat16 kron(const Mat4& A, const Mat4& B);

// Bogner-Fox-Schmit interpolation matrix: maps the unit-cell corner moment
// vector (corner-major, corners ordered counterclockwise from the cell
// origin: (0,0), (1,0), (1,1), (0,1); per corner the moments f, fx, fy, fxy)
// to bi-cubic coefficients.  Entries are small integers.
const Mat16& interpolation_matrix();

// I (x) diag(1, d1, d2, d1*d2): rescales physical-derivative corner moments
// to unit-cell moments.
Mat16 scaling_matrix(const CellGeometry& geom);

// The three integrand operators appearing in the exact one-step update.
enum class KernelOp {
  advect,  // (1 + xi . grad)
  ddx,     // d/dxi1
  ddy,     // d/dxi2
};

// Coefficient-space matrix of `op` composed with d^ax/dx1^ax d^ay/dx2^ay,
// ax, ay in {0,1}.  The derivative factors act first.
Mat16 kernel_op_matrix(KernelOp op, int ax, int ay);

}  // namespace mmtd::poly
