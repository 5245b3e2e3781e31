#pragma once

#include <string>
#include <vector>

#include "chimhd/config.hpp"
#include "chimhd/experiments.hpp"

namespace chimhd {

/// Runs one case: writes <out>/diagnostics.csv and, when snapshots are on,
/// <out>/fields_XXXX.vtk. Returns the process exit status.
int cmd_run(const RunConfig& cfg);

/// Runs the temporal or space-time refinement sweep, writes <out>/rates.csv
/// and prints a markdown table in the layout of the reference tables.
int cmd_converge(const RunConfig& cfg);

/// Verification gate: manufactured-forcing residual oracle for both
/// manufactured cases, the structural invariant suite, and the inf-sup
/// estimates. Nonzero exit on any failure. `inject_forcing_error` corrupts
/// one forcing term to exercise the failure path.
int cmd_check(const RunConfig& cfg, bool inject_forcing_error = false);

/// rates.csv serialization shared by cmd_converge and the tests.
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_markdown(const std::vector<SweepRow>& rows);

}  // namespace chimhd
