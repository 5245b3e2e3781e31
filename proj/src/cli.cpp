#include "chimhd/cli.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "chimhd/scheme.hpp"
#include "chimhd/vtk.hpp"

namespace chimhd {

namespace {

void write_snapshot(const std::string& path, const Stepper& st, const State& s) {
  const Mesh& mesh = st.mesh();
  const int V = mesh.num_vertices();
  const int T = mesh.num_cells();
  VtkSnapshot snap;
  snap.point_scalars.emplace_back("phi", s.phi);
  snap.point_scalars.emplace_back("mu", s.mu);
  snap.point_scalars.emplace_back("p", s.p);
  std::vector<Vec2> vel(V);
  for (int v = 0; v < V; ++v) vel[v] = Vec2(s.u[2 * v], s.u[2 * v + 1]);
  snap.point_vectors.emplace_back("velocity", std::move(vel));
  snap.cell_scalars.emplace_back("phi_pot", s.phi_pot);
  DenseVector divj(T);
  std::vector<Vec2> jcell(T);
  const FESpace& Dh = st.current_space();
  for (int t = 0; t < T; ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    divj[t] = div_rt0(Dh, s.J, t, g);
    jcell[t] = eval_rt0(Dh, s.J, t, g, (g.x[0] + g.x[1] + g.x[2]) / 3.0);
  }
  snap.cell_scalars.emplace_back("div_j", std::move(divj));
  snap.cell_vectors.emplace_back("J", std::move(jcell));
  write_legacy_vtk(path, mesh, snap);
}

FILE* open_or_throw(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  return f;
}

}  // namespace

int cmd_run(const RunConfig& cfg) {
  const ProblemCase pc = configure_case(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  Stepper stepper(pc);
  State state = stepper.initial_state();
  const int N = pc.params.num_steps();

  FILE* csv = open_or_throw(cfg.out_dir + "/diagnostics.csv");
  std::fprintf(csv, "n,t,energy,dissipation,mass,div_j_norm,res_ch,res_j,res_ns\n");
  auto on_row = [&](const DiagnosticsRow& r) {
    std::fprintf(csv, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.n, r.t, r.energy,
                 r.dissipation, r.mass, r.div_j_norm, r.res_ch, r.res_j, r.res_ns);
    std::fflush(csv);
  };
  auto on_state = [&](const State& s) {
    if (cfg.snapshot_every <= 0) return;
    if (s.n % cfg.snapshot_every != 0 && s.n != N) return;
    char name[64];
    std::snprintf(name, sizeof(name), "/fields_%04d.vtk", s.n);
    write_snapshot(cfg.out_dir + name, stepper, s);
  };

  try {
    run(stepper, state, on_row, on_state);
  } catch (const std::exception& e) {
    std::fclose(csv);  // keep the partial log
    std::fprintf(stderr, "chimhd run failed: %s\n", e.what());
    return 1;
  }
  std::fclose(csv);
  return 0;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "tau,h,e_u_l2,ord_u_l2,e_u_h1,ord_u_h1,e_p_l2,ord_p_l2,e_j_div,ord_j_div,"
      "e_phipot_l2,ord_phipot_l2,e_phi_l2,ord_phi_l2,e_phi_h1,ord_phi_h1,"
      "e_mu_l2,ord_mu_l2,e_mu_h1,ord_mu_h1,div_j\n";
  char buf[1024];
  for (size_t i = 0; i < rows.size(); ++i) {
    const ErrorReport& e = rows[i].err;
    auto ord = [&](double now, double prev) {
      return i == 0 ? std::string("-")
                    : [&] {
                        char b[64];
                        std::snprintf(b, sizeof(b), "%.2f", observed_order(prev, now));
                        return std::string(b);
                      }();
    };
    const ErrorReport& pe = rows[i == 0 ? 0 : i - 1].err;
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.6e,%s,%.6e,%s,%.6e,%s,%.6e,%s,%.6e,%s,%.6e,%s,%.6e,%s,%.6e,%s,"
                  "%.6e,%s,%.6e\n",
                  rows[i].tau, rows[i].h, e.u_l2, ord(e.u_l2, pe.u_l2).c_str(), e.u_h1,
                  ord(e.u_h1, pe.u_h1).c_str(), e.p_l2, ord(e.p_l2, pe.p_l2).c_str(), e.j_div,
                  ord(e.j_div, pe.j_div).c_str(), e.phipot_l2,
                  ord(e.phipot_l2, pe.phipot_l2).c_str(), e.phi_l2,
                  ord(e.phi_l2, pe.phi_l2).c_str(), e.phi_h1, ord(e.phi_h1, pe.phi_h1).c_str(),
                  e.mu_l2, ord(e.mu_l2, pe.mu_l2).c_str(), e.mu_h1,
                  ord(e.mu_h1, pe.mu_h1).c_str(), rows[i].div_j_final);
    out += buf;
  }
  return out;
}

std::string sweep_markdown(const std::vector<SweepRow>& rows) {
  std::string out =
      "| tau | h | e_u L2 | grad e_u L2 | e_p L2 | e_J Hdiv | e_phipot L2 | e_phi L2 | grad "
      "e_phi L2 | e_mu L2 | grad e_mu L2 | div J |\n"
      "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  char buf[1024];
  auto cell = [](double err, double order, bool first) {
    char b[96];
    if (first)
      std::snprintf(b, sizeof(b), "%.4e(-)", err);
    else
      std::snprintf(b, sizeof(b), "%.4e(%.2f)", err, order);
    return std::string(b);
  };
  for (size_t i = 0; i < rows.size(); ++i) {
    const ErrorReport& e = rows[i].err;
    const ErrorReport& pe = rows[i == 0 ? 0 : i - 1].err;
    const bool first = i == 0;
    std::snprintf(
        buf, sizeof(buf), "| %.5g | %.5g | %s | %s | %s | %s | %s | %s | %s | %s | %s | %.2e |\n",
        rows[i].tau, rows[i].h, cell(e.u_l2, observed_order(pe.u_l2, e.u_l2), first).c_str(),
        cell(e.u_h1, observed_order(pe.u_h1, e.u_h1), first).c_str(),
        cell(e.p_l2, observed_order(pe.p_l2, e.p_l2), first).c_str(),
        cell(e.j_div, observed_order(pe.j_div, e.j_div), first).c_str(),
        cell(e.phipot_l2, observed_order(pe.phipot_l2, e.phipot_l2), first).c_str(),
        cell(e.phi_l2, observed_order(pe.phi_l2, e.phi_l2), first).c_str(),
        cell(e.phi_h1, observed_order(pe.phi_h1, e.phi_h1), first).c_str(),
        cell(e.mu_l2, observed_order(pe.mu_l2, e.mu_l2), first).c_str(),
        cell(e.mu_h1, observed_order(pe.mu_h1, e.mu_h1), first).c_str(), rows[i].div_j_final);
    out += buf;
  }
  return out;
}

int cmd_converge(const RunConfig& cfg) {
  std::vector<SweepRow> rows;
  if (cfg.mode == "time")
    rows = run_temporal_sweep(cfg.levels, cfg.jobs);
  else if (cfg.mode == "space")
    rows = run_spatial_sweep(cfg.levels, cfg.jobs);
  else {
    std::fprintf(stderr, "chimhd converge: mode must be 'time' or 'space'\n");
    return 2;
  }

  std::filesystem::create_directories(cfg.out_dir);
  FILE* f = open_or_throw(cfg.out_dir + "/rates.csv");
  const std::string csv = sweep_csv(rows);
  std::fwrite(csv.data(), 1, csv.size(), f);
  std::fclose(f);
  std::printf("# %s refinement (eta=sigma=M=lambda=epsilon=1, B=(0,0,1))\n",
              cfg.mode.c_str());
  std::printf("%s", sweep_markdown(rows).c_str());
  return 0;
}

int cmd_check(const RunConfig& cfg, bool inject_forcing_error) {
  int failures = 0;
  auto report = [&](const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %s%s%s\n", pass ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : ": ", detail.c_str());
    if (!pass) ++failures;
  };

  for (const std::string name : {"temporal", "spatial"}) {
    ProblemCase pc = case_by_name(name);
    if (inject_forcing_error) {
      const ScalarFn orig = pc.forcing->f_phi;
      pc.forcing->f_phi = [orig](const Vec2& x, double t) { return orig(x, t) + 1.0; };
    }
    const ForcingReport rep = verify_forcing(pc, 200, 20, cfg.seed);
    report("forcing oracle (" + name + ")", rep.pass, rep.summary());
  }

  for (const CheckResult& c : run_invariant_suite(cfg.seed)) report(c.name, c.pass, c.detail);

  return failures == 0 ? 0 : 1;
}

}  // namespace chimhd
