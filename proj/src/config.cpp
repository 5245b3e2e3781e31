#include "chimhd/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "chimhd/experiments.hpp"

namespace chimhd {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

void apply_key(RunConfig& cfg, const std::string& section, const std::string& key,
               const std::string& value) {
  auto num = [&]() { return std::stod(value); };
  auto integer = [&]() { return std::stoi(value); };
  if (section == "case") {
    if (key == "name") {
      cfg.case_name = value;
      return;
    }
  } else if (section == "params") {
    if (key == "tau") { cfg.tau = num(); return; }
    if (key == "T") { cfg.T = num(); return; }
    if (key == "h") { cfg.h = num(); return; }
    if (key == "nx") { cfg.nx = integer(); return; }
    if (key == "ny") { cfg.ny = integer(); return; }
    if (key == "steps") { cfg.steps = integer(); return; }
    if (key == "lambda" || key == "gamma_surface") { cfg.lambda = num(); return; }
    if (key == "epsilon") { cfg.epsilon = num(); return; }
    if (key == "mobility") { cfg.mobility = num(); return; }
    if (key == "eta1") { cfg.eta1 = num(); return; }
    if (key == "eta2") { cfg.eta2 = num(); return; }
    if (key == "sigma1") { cfg.sigma1 = num(); return; }
    if (key == "sigma2") { cfg.sigma2 = num(); return; }
    if (key == "b") { cfg.b = num(); return; }
    if (key == "gravity_x") { cfg.gravity_x = num(); return; }
    if (key == "gravity_y") { cfg.gravity_y = num(); return; }
    if (key == "gamma") { cfg.gamma = num(); return; }
    if (key == "coupling_index") { cfg.coupling_index = value; return; }
  } else if (section == "output") {
    if (key == "dir") { cfg.out_dir = value; return; }
    if (key == "snapshot_every") { cfg.snapshot_every = integer(); return; }
    if (key == "seed") { cfg.seed = static_cast<unsigned>(std::stoul(value)); return; }
    if (key == "jobs") { cfg.jobs = integer(); return; }
    if (key == "levels") { cfg.levels = integer(); return; }
    if (key == "mode") { cfg.mode = value; return; }
  }
  throw std::invalid_argument("config: unknown key [" + section + "] " + key);
}

RunConfig parse_json(const std::string& text) {
  RunConfig cfg;
  const nlohmann::json j = nlohmann::json::parse(text);
  for (const auto& [section, table] : j.items()) {
    if (!table.is_object()) throw std::invalid_argument("config: sections must be objects");
    for (const auto& [key, value] : table.items()) {
      std::string v;
      if (value.is_string())
        v = value.get<std::string>();
      else {
        std::ostringstream os;
        os.precision(17);
        os << value;
        v = os.str();
      }
      apply_key(cfg, section, key, v);
    }
  }
  return cfg;
}

}  // namespace

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json(text);

  RunConfig cfg;
  std::istringstream lines(text);
  std::string line, section;
  while (std::getline(lines, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key=value, got: " + line);
    apply_key(cfg, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

ProblemCase configure_case(const RunConfig& cfg) {
  ProblemCase pc = case_by_name(cfg.case_name, cfg.gamma);
  if (cfg.h) {
    pc.nx = std::max(1, static_cast<int>(std::llround((pc.x1 - pc.x0) / *cfg.h)));
    pc.ny = std::max(1, static_cast<int>(std::llround((pc.y1 - pc.y0) / *cfg.h)));
  }
  if (cfg.nx) pc.nx = *cfg.nx;
  if (cfg.ny) pc.ny = *cfg.ny;
  if (cfg.tau) pc.params.tau = *cfg.tau;
  if (cfg.T) pc.params.T = *cfg.T;
  if (cfg.steps) pc.params.T = *cfg.steps * pc.params.tau;
  if (cfg.lambda) pc.params.lambda = *cfg.lambda;
  if (cfg.epsilon) pc.params.epsilon = *cfg.epsilon;
  if (cfg.mobility) pc.params.mobility = *cfg.mobility;
  if (cfg.eta1) pc.params.eta1 = *cfg.eta1;
  if (cfg.eta2) pc.params.eta2 = *cfg.eta2;
  if (cfg.sigma1) pc.params.sigma1 = *cfg.sigma1;
  if (cfg.sigma2) pc.params.sigma2 = *cfg.sigma2;
  if (cfg.b) pc.params.b = *cfg.b;
  if (cfg.gravity_x || cfg.gravity_y) {
    pc.params.gravity = Vec2(cfg.gravity_x.value_or(pc.params.gravity.x()),
                             cfg.gravity_y.value_or(pc.params.gravity.y()));
    pc.params.use_gravity = true;
  }
  if (cfg.coupling_index == "n")
    pc.params.coupling = CouplingIndex::PhiN;
  else if (cfg.coupling_index == "n+1")
    pc.params.coupling = CouplingIndex::PhiNp1;
  else
    throw std::invalid_argument("config: coupling_index must be 'n' or 'n+1'");
  return pc;
}

}  // namespace chimhd
