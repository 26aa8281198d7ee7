#pragma once

#include <string>
#include <vector>

#include "mmtd/analysis.hpp"
#include "mmtd/harness.hpp"

// CSV and manifest output.  Numbers are printed with 17 significant digits
// so files round-trip exactly and repeated runs are byte-identical.

namespace mmtd::io {

std::string fmt17(double v);

std::string version_string();

void write_convergence_csv(const std::string& path,
                           const std::vector<harness::ConvergenceTable>& tables);

void write_stability_csv(const std::string& path, const analysis::StabilityScan& scan);

// Columns x, y, value; y-major row order.
void write_surface_csv(const std::string& path, const std::vector<double>& x,
                       const std::vector<double>& y, const std::vector<double>& values);

// Node-value snapshot of one field of a FieldState.
void write_field_csv(const std::string& path, const scheme::FieldState& state, int moment = 0);

// JSON echo of the command and its configuration, with the version string.
void write_manifest(const std::string& path, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& config,
                    const std::vector<std::string>& outputs);

}  // namespace mmtd::io
