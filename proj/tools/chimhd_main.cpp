#include <cstdlib>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "chimhd/cli.hpp"

using namespace chimhd;

namespace {

struct Flags {
  std::string config_file;
  std::string case_name;
  std::optional<double> tau, h, T;
  std::optional<int> steps, snapshot_every, jobs, levels;
  std::optional<double> gamma;
  std::optional<unsigned> seed;
  std::string out_dir;
  std::string coupling;
  std::string mode;
  bool inject_forcing_error = false;
};

void add_common(CLI::App* app, Flags& fl) {
  app->add_option("--config", fl.config_file, "key=value or JSON config file");
  app->add_option("--case", fl.case_name, "problem case name");
  app->add_option("--tau", fl.tau, "time step");
  app->add_option("--h", fl.h, "grid spacing (1/n)");
  app->add_option("--T", fl.T, "final time");
  app->add_option("--steps", fl.steps, "number of steps (overrides T)");
  app->add_option("--out", fl.out_dir, "output directory");
  app->add_option("--snap-every", fl.snapshot_every, "VTK snapshot cadence (steps)");
  app->add_option("--seed", fl.seed, "random seed for property checks");
  app->add_option("--jobs", fl.jobs, "parallel sweep entries");
  app->add_option("--gamma", fl.gamma, "surface tension of the gravity case");
  app->add_option("--coupling-index", fl.coupling, "n | n+1 coupling time level")
      ->check(CLI::IsMember({"n", "n+1"}));
}

RunConfig build_config(const Flags& fl) {
  RunConfig cfg;
  if (!fl.config_file.empty()) cfg = load_config_file(fl.config_file);
  if (!fl.case_name.empty()) cfg.case_name = fl.case_name;
  if (fl.tau) cfg.tau = fl.tau;
  if (fl.h) cfg.h = fl.h;
  if (fl.T) cfg.T = fl.T;
  if (fl.steps) cfg.steps = fl.steps;
  if (!fl.out_dir.empty()) cfg.out_dir = fl.out_dir;
  if (fl.snapshot_every) cfg.snapshot_every = *fl.snapshot_every;
  if (fl.seed) cfg.seed = *fl.seed;
  if (fl.jobs) cfg.jobs = *fl.jobs;
  if (fl.levels) cfg.levels = *fl.levels;
  if (fl.gamma) cfg.gamma = *fl.gamma;
  if (!fl.coupling.empty()) cfg.coupling_index = fl.coupling;
  if (!fl.mode.empty()) cfg.mode = fl.mode;
  if (const char* env = std::getenv("CHIMHD_OUT")) cfg.out_dir = env;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chimhd - two-phase inductionless MHD phase-field simulator"};
  app.set_help_flag("--help", "print help");  // keep -h free for --h
  app.require_subcommand(1);

  Flags run_fl, conv_fl, check_fl;
  CLI::App* run = app.add_subcommand("run", "run one case");
  add_common(run, run_fl);
  CLI::App* converge = app.add_subcommand("converge", "refinement sweep with error tables");
  add_common(converge, conv_fl);
  converge->add_option("--mode", conv_fl.mode, "time | space")
      ->check(CLI::IsMember({"time", "space"}));
  converge->add_option("--levels", conv_fl.levels, "number of refinement rows (default 6)");
  CLI::App* check = app.add_subcommand("check", "forcing oracle + invariant suite");
  add_common(check, check_fl);
  check->add_flag("--inject-forcing-error", check_fl.inject_forcing_error,
                  "corrupt one forcing term (self-test of the oracle)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(build_config(run_fl));
    if (converge->parsed()) {
      RunConfig cfg = build_config(conv_fl);
      // `--case temporal|spatial` is accepted as an alias for --mode.
      if (conv_fl.mode.empty() && !conv_fl.case_name.empty())
        cfg.mode = (conv_fl.case_name == "spatial") ? "space" : "time";
      return cmd_converge(cfg);
    }
    if (check->parsed()) return cmd_check(build_config(check_fl), check_fl.inject_forcing_error);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "chimhd: %s\n", e.what());
    return 1;
  }
  return 2;
}
