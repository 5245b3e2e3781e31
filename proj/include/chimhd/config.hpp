#pragma once

#include <optional>
#include <string>

#include "chimhd/problem.hpp"

namespace chimhd {

/// One run's settings: a case name plus overrides of its defaults.
/// Config files use flat key=value lines under [case] / [params] / [output]
/// section headers; a file whose first non-blank character is '{' is parsed
/// as JSON with the same keys grouped into the same sections.
struct RunConfig {
  std::string case_name = "square-bubble";
  std::optional<double> tau, T, h;
  std::optional<int> nx, ny, steps;
  std::optional<double> lambda, epsilon, mobility, eta1, eta2, sigma1, sigma2, b;
  std::optional<double> gravity_x, gravity_y;
  double gamma = 0.01;  // surface tension choice of the gravity case
  std::string coupling_index = "n";  // "n" or "n+1"
  std::string out_dir = "out";
  int snapshot_every = 0;  // 0 disables VTK snapshots
  unsigned seed = 1234;
  int jobs = 1;
  int levels = 6;            // sweep rows for `converge`
  std::string mode = "time"; // `converge` mode: time | space
};

RunConfig load_config_file(const std::string& path);

/// Builds the problem, applying every override in the config.
ProblemCase configure_case(const RunConfig& cfg);

}  // namespace chimhd
