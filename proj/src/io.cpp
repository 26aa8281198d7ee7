#include "mmtd/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "mmtd/version.hpp"

namespace mmtd::io {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string version_string() { return MMTD_VERSION; }

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

}  // namespace

void write_convergence_csv(const std::string& path,
                           const std::vector<harness::ConvergenceTable>& tables) {
  std::ofstream out = open_out(path);
  out << "scheme,lambda,sigma_inv2,N,eps1,order1,eps2,order2\n";
  for (const auto& t : tables)
    for (const auto& r : t.rows) {
      out << harness::scheme_name(t.scheme) << ',' << fmt17(t.lambda) << ','
          << fmt17(t.sigma_inv2) << ',' << r.n << ',' << fmt17(r.eps1) << ','
          << (std::isnan(r.order1) ? "" : fmt17(r.order1)) << ',' << fmt17(r.eps2) << ','
          << (std::isnan(r.order2) ? "" : fmt17(r.order2)) << '\n';
    }
}

void write_stability_csv(const std::string& path, const analysis::StabilityScan& scan) {
  std::ofstream out = open_out(path);
  out << "theta1,theta2,maxmag\n";
  for (int j = 0; j < scan.grid_n; ++j)
    for (int i = 0; i < scan.grid_n; ++i)
      out << fmt17(scan.theta1[i]) << ',' << fmt17(scan.theta2[j]) << ','
          << fmt17(scan.max_magnitude[static_cast<size_t>(j) * scan.grid_n + i]) << '\n';
}

void write_surface_csv(const std::string& path, const std::vector<double>& x,
                       const std::vector<double>& y, const std::vector<double>& values) {
  if (values.size() != x.size() * y.size())
    throw std::invalid_argument("write_surface_csv: size mismatch");
  std::ofstream out = open_out(path);
  out << "x,y,value\n";
  for (size_t j = 0; j < y.size(); ++j)
    for (size_t i = 0; i < x.size(); ++i)
      out << fmt17(x[i]) << ',' << fmt17(y[j]) << ',' << fmt17(values[j * x.size() + i])
          << '\n';
}

void write_field_csv(const std::string& path, const scheme::FieldState& state, int moment) {
  std::ofstream out = open_out(path);
  out << "x,y,value\n";
  for (int j = 0; j < state.n; ++j)
    for (int i = 0; i < state.n; ++i)
      out << fmt17(state.x_of(i)) << ',' << fmt17(state.y_of(j)) << ','
          << fmt17(state.h[state.idx(i, j)][moment]) << '\n';
}

void write_manifest(const std::string& path, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& config,
                    const std::vector<std::string>& outputs) {
  nlohmann::json j;
  j["command"] = command;
  j["version"] = version_string();
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = cfg;
  j["outputs"] = outputs;
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace mmtd::io
