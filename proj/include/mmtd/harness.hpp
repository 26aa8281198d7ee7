#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmtd/fdtd.hpp"
#include "mmtd/planewave.hpp"
#include "mmtd/scheme.hpp"

// Experiment drivers: plane-wave accuracy runs with the eps1/eps2 metrics,
// grid-refinement studies, the sharp-square and hidden-resolution problems,
// bi-cubic surface export, and the operation-count report.

namespace mmtd::harness {

enum class SchemeId { multimoment, bilinear, fdtd4 };
enum class InitMode { exact_moments, fd_derivatives };

std::string scheme_name(SchemeId id);

// Max-norm value error over nodes and all three fields at the state's time.
double error_eps1(const scheme::FieldState& state, const wave::PlaneWave& pw);
double error_eps1(const scheme::BilinearState& state, const wave::PlaneWave& pw);

// Relative first-derivative error: per field and axis, the max-norm of the
// derivative error divided by the max-norm of the exact derivative, maxed
// over the six (field, axis) pairs.  Pairs whose exact derivative is below
// guard_rel times the largest pair are excluded (e.g. the identically-zero
// E_x of the axis-aligned mode).  Derivatives come from the stored moments.
double error_eps2(const scheme::FieldState& state, const wave::PlaneWave& pw,
                  double guard_rel = 1e-8);
// Values-only variant: derivatives reconstructed by fourth-order centered
// differences of the grid values.
double error_eps2(const scheme::BilinearState& state, const wave::PlaneWave& pw,
                  double guard_rel = 1e-8);

// Step count landing the run on the target time: N steps per unit time at
// lambda = 1; the 1/sqrt(2) runs take round(1.4*N) steps per unit time (so
// they stop at 1.4/sqrt(2) ~ 0.98995); otherwise the last partial step is
// dropped.
int step_count_for(double lambda, int n, double t_end);

struct ConvergenceRow {
  int n = 0;
  double t_final = 0.0;
  double eps1 = 0.0, eps2 = 0.0;
  double order1 = 0.0, order2 = 0.0;  // NaN in the first row
};

struct ConvergenceTable {
  SchemeId scheme = SchemeId::multimoment;
  double lambda = 1.0;
  double sigma_inv2 = 500.0;
  std::vector<ConvergenceRow> rows;
};

struct ConvergenceConfig {
  SchemeId scheme = SchemeId::multimoment;
  double lambda = 1.0;
  double sigma_inv2 = 500.0;
  std::vector<int> n_values{50, 100, 150, 200};
  double t_end = 1.0;
  InitMode init = InitMode::exact_moments;
  std::vector<int> modes{0, 1, 2, 3};
  double guard_rel = 1e-8;
  int threads = 1;  // independent refinement runs fan out across a pool
};

ConvergenceTable convergence_study(const ConvergenceConfig& cfg);

// One plane-wave run of the four-moment scheme; returns the final state.
scheme::FieldState run_multimoment(const wave::PlaneWave& pw, int n, double lambda, int steps,
                                   InitMode init);
scheme::BilinearState run_bilinear(const wave::PlaneWave& pw, int n, double lambda, int steps);
fdtd::YeeState run_fdtd4(const wave::PlaneWave& pw, int n, double lambda, int steps);

struct SharpProfileResult {
  std::vector<double> times;
  std::vector<scheme::FieldState> snapshots;
  std::vector<double> overshoot;   // max(h) - 1 per snapshot
  std::vector<double> undershoot;  // -min(h) per snapshot
};

SharpProfileResult run_sharp_profile(double dx = 0.01, double lambda = 1.0,
                                     std::vector<double> times = {0.15, 0.25});

// H = exp(-1000 x^2) on [-1/2,1/2)^2 with analytic derivative moments, E = 0:
// a ridge roughly one cell wide at the default resolution.
scheme::FieldState init_hidden_resolution(int n = 40);

// Per-cell bi-cubic reconstruction of h sampled on an s x s sub-lattice
// (endpoints included, so shared cell edges appear in both tiles).
struct BicubicSurface {
  int n_cells = 0;
  int samples = 0;  // s >= 2
  std::vector<double> x, y;        // n_cells*s coordinates per axis
  std::vector<double> value, ddx;  // row-major (n_cells*s)^2, y-major
};

BicubicSurface export_bicubic(const scheme::FieldState& state, int samples);

// The node grid resampled onto the same lattice with bi-linear interpolation
// (the conventional way to plot values-only output).
std::vector<double> bilinear_resample(const std::vector<double>& node_values, int n,
                                      int samples);

// Sum of absolute differences between lattice neighbors along both axes.
double total_variation(const std::vector<double>& values, int m);

struct OpCountReport {
  int nnz_a = 0, nnz_b = 0, nnz_c = 0;
  std::int64_t per_node_per_step = 0;
  std::int64_t total = 0;
};

// Fused multiply-add budget of the four-moment update at the given CFL
// ratio, from the stencil nonzero masks.
OpCountReport op_count_report(int n, int steps, double lambda = 1.0);

}  // namespace mmtd::harness
