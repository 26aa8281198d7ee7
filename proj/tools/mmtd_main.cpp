// Command-line driver: convergence studies, stability scans, single runs,
// bi-cubic surface export, and operation-count reports.  All numeric output
// goes to CSV files in --out; a manifest.json echoing the configuration is
// written alongside.  Exit codes: 0 success, 2 configuration error, 3
// numerical failure.

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mmtd/io.hpp"

namespace fs = std::filesystem;
using namespace mmtd;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
  std::string out = "out";
  int threads = static_cast<int>(std::thread::hardware_concurrency());
};

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::string join_doubles(const std::vector<double>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << io::fmt17(v[i]);
  return os.str();
}

harness::SchemeId parse_scheme(const std::string& s) {
  if (s == "multimoment") return harness::SchemeId::multimoment;
  if (s == "bilinear") return harness::SchemeId::bilinear;
  if (s == "fdtd4") return harness::SchemeId::fdtd4;
  throw CLI::ValidationError("--scheme", "unknown scheme: " + s);
}

void check_lambda(harness::SchemeId scheme, double lambda) {
  const double limit =
      scheme == harness::SchemeId::fdtd4 ? 1.0 / std::sqrt(2.0) : 1.0;
  if (!(lambda > 0.0) || lambda > limit + 1e-12) {
    std::ostringstream os;
    os << "CFL error: lambda " << lambda << " outside (0, " << limit << "] for scheme "
       << harness::scheme_name(scheme);
    throw CLI::ValidationError("--lambda", os.str());
  }
}

fs::path prepare_out(const CommonOpts& common) {
  fs::create_directories(common.out);
  return fs::path(common.out);
}

int cmd_convergence(const CommonOpts& common, const std::string& scheme_str, double lambda,
                    double sigma_inv2, std::vector<int> n_values, double t_end,
                    const std::string& init_str, const std::vector<int>& modes) {
  harness::ConvergenceConfig cfg;
  cfg.scheme = parse_scheme(scheme_str);
  check_lambda(cfg.scheme, lambda);
  cfg.lambda = lambda;
  cfg.sigma_inv2 = sigma_inv2;
  cfg.n_values = std::move(n_values);
  cfg.t_end = t_end;
  cfg.init = init_str == "fd" ? harness::InitMode::fd_derivatives
                              : harness::InitMode::exact_moments;
  cfg.modes = modes;
  cfg.threads = common.threads;

  const harness::ConvergenceTable table = harness::convergence_study(cfg);

  const fs::path dir = prepare_out(common);
  std::ostringstream name;
  name << "convergence_" << scheme_str << "_lambda" << lambda << "_sigma" << sigma_inv2
       << ".csv";
  const std::string csv = (dir / name.str()).string();
  io::write_convergence_csv(csv, {table});

  std::printf("# scheme=%s lambda=%s sigma_inv2=%s\n", scheme_str.c_str(),
              io::fmt17(lambda).c_str(), io::fmt17(sigma_inv2).c_str());
  std::printf("%6s %12s %8s %12s %8s\n", "N", "eps1", "order1", "eps2", "order2");
  for (const auto& r : table.rows)
    std::printf("%6d %12.4e %8.3f %12.4e %8.3f\n", r.n, r.eps1, r.order1, r.eps2, r.order2);

  io::write_manifest((dir / "manifest.json").string(), "convergence",
                     {{"scheme", scheme_str},
                      {"lambda", io::fmt17(lambda)},
                      {"sigma_inv2", io::fmt17(sigma_inv2)},
                      {"N", join_ints(cfg.n_values)},
                      {"T", io::fmt17(t_end)},
                      {"init", init_str},
                      {"modes", join_ints(modes)},
                      {"threads", std::to_string(common.threads)}},
                     {csv});
  return 0;
}

int cmd_stability(const CommonOpts& common, const std::vector<double>& lambdas, int grid_n) {
  const fs::path dir = prepare_out(common);
  std::vector<std::string> outputs;
  for (double lam : lambdas) {
    const analysis::StabilityScan scan = analysis::stability_scan(lam, grid_n);
    std::ostringstream name;
    name << "stability_lambda" << lam << ".csv";
    const std::string csv = (dir / name.str()).string();
    io::write_stability_csv(csv, scan);
    outputs.push_back(csv);
    std::printf("lambda=%s grid=%d max|eig|=%s\n", io::fmt17(lam).c_str(), grid_n,
                io::fmt17(scan.global_max).c_str());
  }
  io::write_manifest((dir / "manifest.json").string(), "stability",
                     {{"lambda", join_doubles(lambdas)}, {"grid", std::to_string(grid_n)}},
                     outputs);
  return 0;
}

scheme::FieldState run_ic(const std::string& ic, int n, double lambda, double sigma_inv2,
                          int steps, const std::string& init_str) {
  if (ic == "sharp_square") {
    const double dx = 1.0 / n;
    scheme::FieldState s = scheme::init_sharp_square(n, dx);
    const auto& st = stencil::cached_stencils(stencil::StencilGeometry::uniform(dx, lambda * dx, 1.0));
    for (int k = 0; k < steps; ++k) s = scheme::step_multimoment(s, st, lambda * dx);
    return s;
  }
  if (ic == "hidden_resolution") {
    scheme::FieldState s = harness::init_hidden_resolution(n);
    const double dx = s.dx;
    const auto& st = stencil::cached_stencils(stencil::StencilGeometry::uniform(dx, lambda * dx, 1.0));
    for (int k = 0; k < steps; ++k) s = scheme::step_multimoment(s, st, lambda * dx);
    return s;
  }
  if (ic == "planewave4") {
    const wave::PlaneWave pw = wave::PlaneWave::from_sigma_inv2(sigma_inv2);
    const harness::InitMode init = init_str == "fd" ? harness::InitMode::fd_derivatives
                                                    : harness::InitMode::exact_moments;
    return harness::run_multimoment(pw, n, lambda, steps, init);
  }
  throw CLI::ValidationError("--ic", "unknown initial condition: " + ic);
}

int cmd_run(const CommonOpts& common, const std::string& scheme_str, const std::string& ic,
            int n, double lambda, double sigma_inv2, double t_end, int steps,
            const std::string& init_str) {
  const harness::SchemeId scheme = parse_scheme(scheme_str);
  check_lambda(scheme, lambda);
  const fs::path dir = prepare_out(common);
  std::vector<std::string> outputs;

  if (scheme == harness::SchemeId::multimoment && ic == "sharp_square") {
    // The sharp-profile experiment reports snapshots at fixed times.
    std::vector<double> times = t_end > 0.0 ? std::vector<double>{0.15, t_end}
                                            : std::vector<double>{0.15, 0.25};
    if (t_end > 0.0 && t_end <= 0.15) times = {t_end};
    const double dx = 1.0 / n;
    const harness::SharpProfileResult res = harness::run_sharp_profile(dx, lambda, times);
    for (size_t k = 0; k < res.snapshots.size(); ++k) {
      std::ostringstream name;
      name << "snapshot_T" << res.times[k] << ".csv";
      const std::string csv = (dir / name.str()).string();
      io::write_field_csv(csv, res.snapshots[k]);
      outputs.push_back(csv);
      std::printf("T=%s overshoot=%s undershoot=%s\n", io::fmt17(res.times[k]).c_str(),
                  io::fmt17(res.overshoot[k]).c_str(), io::fmt17(res.undershoot[k]).c_str());
    }
  } else {
    const int nsteps = steps > 0 ? steps : harness::step_count_for(lambda, n, t_end);
    if (scheme == harness::SchemeId::multimoment) {
      const scheme::FieldState s = run_ic(ic, n, lambda, sigma_inv2, nsteps, init_str);
      const std::string csv = (dir / "field_h.csv").string();
      io::write_field_csv(csv, s);
      outputs.push_back(csv);
      if (ic == "planewave4") {
        const wave::PlaneWave pw = wave::PlaneWave::from_sigma_inv2(sigma_inv2);
        std::printf("N=%d steps=%d T=%s eps1=%s eps2=%s\n", n, nsteps, io::fmt17(s.t).c_str(),
                    io::fmt17(harness::error_eps1(s, pw)).c_str(),
                    io::fmt17(harness::error_eps2(s, pw)).c_str());
      }
    } else if (scheme == harness::SchemeId::bilinear) {
      const wave::PlaneWave pw = wave::PlaneWave::from_sigma_inv2(sigma_inv2);
      const scheme::BilinearState s = harness::run_bilinear(pw, n, lambda, nsteps);
      std::printf("N=%d steps=%d T=%s eps1=%s\n", n, nsteps, io::fmt17(s.t).c_str(),
                  io::fmt17(harness::error_eps1(s, pw)).c_str());
    } else {
      const wave::PlaneWave pw = wave::PlaneWave::from_sigma_inv2(sigma_inv2);
      const fdtd::YeeState s = harness::run_fdtd4(pw, n, lambda, nsteps);
      std::printf("N=%d steps=%d T=%s eps1=%s eps2=%s\n", n, nsteps, io::fmt17(s.t_h).c_str(),
                  io::fmt17(fdtd::error_eps1(s, pw)).c_str(),
                  io::fmt17(fdtd::error_eps2(s, pw)).c_str());
    }
  }

  io::write_manifest((dir / "manifest.json").string(), "run",
                     {{"scheme", scheme_str},
                      {"ic", ic},
                      {"N", std::to_string(n)},
                      {"lambda", io::fmt17(lambda)},
                      {"sigma_inv2", io::fmt17(sigma_inv2)},
                      {"T", io::fmt17(t_end)},
                      {"steps", std::to_string(steps)},
                      {"init", init_str}},
                     outputs);
  return 0;
}

int cmd_export(const CommonOpts& common, const std::string& ic, int n, double lambda,
               int steps, int samples) {
  check_lambda(harness::SchemeId::multimoment, lambda);
  const scheme::FieldState s = run_ic(ic, n, lambda, 500.0, steps, "exact");
  const harness::BicubicSurface surf = harness::export_bicubic(s, samples);

  const fs::path dir = prepare_out(common);
  const std::string csv_h = (dir / "bicubic_h.csv").string();
  const std::string csv_dx = (dir / "bicubic_dhdx.csv").string();
  io::write_surface_csv(csv_h, surf.x, surf.y, surf.value);
  io::write_surface_csv(csv_dx, surf.x, surf.y, surf.ddx);
  std::printf("exported %dx%d samples of h and dh/dx\n", n * samples, n * samples);

  io::write_manifest((dir / "manifest.json").string(), "export",
                     {{"ic", ic},
                      {"N", std::to_string(n)},
                      {"lambda", io::fmt17(lambda)},
                      {"steps", std::to_string(steps)},
                      {"samples", std::to_string(samples)}},
                     {csv_h, csv_dx});
  return 0;
}

int cmd_opcount(const CommonOpts& common, int n, int steps, double lambda) {
  const harness::OpCountReport rep = harness::op_count_report(n, steps, lambda);
  std::printf("nnz(a)=%d nnz(b)=%d nnz(c)=%d per-node=%lld total=%s\n", rep.nnz_a, rep.nnz_b,
              rep.nnz_c, static_cast<long long>(rep.per_node_per_step),
              io::fmt17(static_cast<double>(rep.total)).c_str());
  const fs::path dir = prepare_out(common);
  io::write_manifest((dir / "manifest.json").string(), "opcount",
                     {{"N", std::to_string(n)},
                      {"steps", std::to_string(steps)},
                      {"lambda", io::fmt17(lambda)}},
                     {});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-dimensional time-domain Maxwell solver (four-moment scheme, "
               "derivative-free variant, fourth-order FDTD comparator)"};
  app.set_config("--config");
  app.require_subcommand(1);
  app.fallthrough();  // common options may follow the subcommand

  CommonOpts common;
  app.add_option("--out", common.out, "output directory")->capture_default_str();
  app.add_option("--threads", common.threads, "worker pool size for independent runs")
      ->capture_default_str();

  // convergence
  auto* conv = app.add_subcommand("convergence", "grid-refinement accuracy study");
  std::string scheme = "multimoment";
  double lambda = 1.0, sigma_inv2 = 500.0, t_end = 1.0;
  std::vector<int> n_values{50, 100, 150, 200};
  std::string init = "exact";
  std::vector<int> modes{0, 1, 2, 3};
  conv->add_option("--scheme", scheme, "multimoment|bilinear|fdtd4")->capture_default_str();
  conv->add_option("--lambda", lambda, "CFL ratio")->capture_default_str();
  conv->add_option("--sigma-inv2", sigma_inv2, "inverse squared gaussian width")
      ->capture_default_str();
  conv->add_option("--N", n_values, "grid sizes")->delimiter(',')->capture_default_str();
  conv->add_option("--T", t_end, "target time")->capture_default_str();
  conv->add_option("--init", init, "exact|fd moment initialization")->capture_default_str();
  conv->add_option("--modes", modes, "plane-wave mode indices")->delimiter(',');

  // stability
  auto* stab = app.add_subcommand("stability", "von-Neumann spectral-radius scan");
  std::vector<double> lambdas{0.2, 0.5, 1.0};
  int grid_n = 101;
  stab->add_option("--lambda", lambdas, "CFL ratios to scan")
      ->delimiter(',')
      ->capture_default_str();
  stab->add_option("--grid", grid_n, "samples per axis over [-pi,0]")->capture_default_str();

  // run
  auto* run = app.add_subcommand("run", "single simulation run");
  std::string ic = "planewave4";
  int n = 100, steps = 0;
  double run_t = 0.0;
  run->add_option("--scheme", scheme, "multimoment|bilinear|fdtd4")->capture_default_str();
  run->add_option("--ic", ic, "planewave4|sharp_square|hidden_resolution")
      ->capture_default_str();
  run->add_option("--N", n, "grid size")->capture_default_str();
  run->add_option("--lambda", lambda, "CFL ratio")->capture_default_str();
  run->add_option("--sigma-inv2", sigma_inv2, "inverse squared gaussian width")
      ->capture_default_str();
  run->add_option("--T", run_t, "target time");
  run->add_option("--steps", steps, "step count (overrides --T)");
  run->add_option("--init", init, "exact|fd moment initialization")->capture_default_str();

  // export
  auto* exp = app.add_subcommand("export", "run and export the bi-cubic surface of h");
  int samples = 8, exp_n = 40, exp_steps = 10;
  std::string exp_ic = "hidden_resolution";
  exp->add_option("--ic", exp_ic, "initial condition")->capture_default_str();
  exp->add_option("--N", exp_n, "grid size")->capture_default_str();
  exp->add_option("--lambda", lambda, "CFL ratio")->capture_default_str();
  exp->add_option("--steps", exp_steps, "step count")->capture_default_str();
  exp->add_option("--samples", samples, "samples per cell and axis")->capture_default_str();

  // opcount
  auto* opc = app.add_subcommand("opcount", "operation-count report");
  int opc_n = 50, opc_steps = 50;
  opc->add_option("--N", opc_n, "grid size")->capture_default_str();
  opc->add_option("--steps", opc_steps, "step count")->capture_default_str();
  opc->add_option("--lambda", lambda, "CFL ratio")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (conv->parsed())
      return cmd_convergence(common, scheme, lambda, sigma_inv2, n_values, t_end, init, modes);
    if (stab->parsed()) return cmd_stability(common, lambdas, grid_n);
    if (run->parsed())
      return cmd_run(common, scheme, ic, n, lambda, sigma_inv2, run_t, steps, init);
    if (exp->parsed()) return cmd_export(common, exp_ic, exp_n, lambda, exp_steps, samples);
    if (opc->parsed()) return cmd_opcount(common, opc_n, opc_steps, lambda);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
