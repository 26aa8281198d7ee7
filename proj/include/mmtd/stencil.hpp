#pragma once

#include <array>

#include "mmtd/poly.hpp"

// Per-node update blocks of the exact one-step integrator.  For each of the
// three integrand families (advect / d-dx / d-dy) the four cells around a
// node contribute a 4x16 matrix acting on that cell's corner moments; column
// slices of those matrices accumulate into nine 4x4 neighbor blocks.

namespace mmtd::stencil {

// Cell widths around one node plus the step parameters.  The left/right
// widths are the x extents of the cells west/east of the node, down/up the
// y extents south/north.
struct StencilGeometry {
  double d1_left = 1.0;
  double d1_right = 1.0;
  double d2_down = 1.0;
  double d2_up = 1.0;
  double dt = 1.0;
  double c = 1.0;

  static StencilGeometry uniform(double dx, double dt, double c);
  // Throws std::invalid_argument on non-positive widths or if c*dt exceeds
  // any cell width (the nine-point support would no longer hold).  The CFL
  // check can be waived for diagnostic assemblies past the validity limit.
  void validate(bool enforce_cfl = true) const;
};

// Row-major 4x16 block: rows = output moments (f, fx, fy, fxy), columns = a
// cell's corner-moment vector.
using Mat4x16 = std::array<double, 64>;

// The four per-cell matrices of one operator family; cells are numbered
// counterclockwise from the upper-right.
struct CellMatrices {
  std::array<Mat4x16, 4> cell;
};

CellMatrices assemble_A(const StencilGeometry& geom, poly::KernelOp family,
                        bool enforce_cfl = true);

// Column slices t1..t4 accumulated onto the nine neighbor blocks
// (neighbors numbered row-major from the lower-left: f1=(-1,-1) .. f9=(+1,+1);
// corner-shared nodes add).
std::array<poly::Mat4, 9> slice_blocks(const CellMatrices& cm);

struct StencilSet {
  std::array<poly::Mat4, 9> a, b, c;

  // Packed 4x36 kernels, column index = 4*neighbor + moment, for the
  // gather-then-multiply step loop.
  std::array<double, 144> pa{}, pb{}, pc{};
  std::array<unsigned char, 144> mask_a{}, mask_b{}, mask_c{};
  int nnz_a = 0, nnz_b = 0, nnz_c = 0;

  StencilGeometry geom;
};

StencilSet assemble_stencils(const StencilGeometry& geom, bool enforce_cfl = true);

// Memoized assembly keyed on the exact geometry values; returned references
// stay valid for the program lifetime and are safe to share across threads.
const StencilSet& cached_stencils(const StencilGeometry& geom, bool enforce_cfl = true);

}  // namespace mmtd::stencil
