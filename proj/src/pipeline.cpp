#include "halfplane/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <thread>

#include "halfplane/csv.hpp"
#include "halfplane/verify.hpp"

namespace halfplane {

namespace {

namespace fs = std::filesystem;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::string sweep_label(SweepKind kind, double value) {
  char buf[48];
  if (kind == SweepKind::kK0) {
    std::snprintf(buf, sizeof(buf), "k0_%g", value);
  } else {
    std::snprintf(buf, sizeof(buf), "theta0_%g", value);
  }
  return buf;
}

struct RunOutcome {
  ReportRow row;
  bool converged = true;
};

RunOutcome execute_one(const RunConfig& base, SweepKind kind, double value,
                       const std::string& label, const std::string& dir) {
  RunConfig cfg = base;
  if (kind == SweepKind::kK0) {
    cfg.material.k0 = value;
  } else if (kind == SweepKind::kTheta0) {
    cfg.solver.theta0 = value * std::numbers::pi / 180.0;
  }

  const Mapping map(cfg.mapping_coefficients());
  const RhsExpansion rhs = make_rhs_expansion(map.coeffs(), cfg.material,
                                              cfg.solver.M, cfg.solver.delta);
  const SpectralSolution sol = solve(map, cfg.material, cfg.solver, rhs);
  const FieldEvaluator fields(map, sol, cfg.material,
                              FieldOptions::from_solver(cfg.solver));

  fs::create_directories(dir);
  write_surface_csv(dir + "/surface.csv",
                    fields.surface_profile(cfg.outputs.surface_samples));
  write_periphery_csv(dir + "/periphery.csv",
                      fields.periphery_profile(cfg.outputs.periphery_samples));
  write_grid_csv(dir + "/grid.csv",
                 fields.grid(cfg.outputs.grid_n_rho, cfg.outputs.grid_n_theta));
  if (cfg.outputs.emit_plots) write_plot_scripts(dir);

  VerificationReport report;
  report.iterations = sol.iterations;
  report.converged = sol.converged;
  const double H = reference_depth(map);
  std::tie(report.sigma_rho_norm, report.sigma_rhotheta_norm) =
      periphery_residuals(fields, H);
  std::tie(report.surface_disp_residual, report.surface_traction_residual) =
      surface_conditions(fields, cfg.solver.theta0,
                         5.0 * std::numbers::pi / 180.0);
  report.equilibrium_residual = equilibrium_check(sol, map, cfg.material);
  report.boundary_residual = boundary_residual(sol, map, cfg.material, rhs);

  RunOutcome outcome;
  outcome.converged = sol.converged;
  outcome.row.run = label;
  outcome.row.case_label =
      cfg.case_id ? std::to_string(*cfg.case_id) : "custom";
  outcome.row.k0 = cfg.material.k0;
  outcome.row.theta0_deg = cfg.solver.theta0 * kRadToDeg;
  outcome.row.gamma = cfg.material.gamma;
  outcome.row.report = report;
  return outcome;
}

}  // namespace

int worker_count(int runs) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  int cap = hw;
  if (const char* env = std::getenv("HALFPLANE_TUNNEL_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) cap = std::min(cap, v);
  }
  return std::max(1, std::min(cap, runs));
}

int run_solve(const RunConfig& config, const std::string& out_dir) {
  fs::create_directories(out_dir);

  struct Entry {
    double value;
    std::string label;
    std::string dir;
  };
  std::vector<Entry> entries;
  if (config.sweep == SweepKind::kNone) {
    entries.push_back({0.0, "-", out_dir});
  } else {
    for (double v : config.sweep_values) {
      const std::string label = sweep_label(config.sweep, v);
      entries.push_back({v, label, out_dir + "/" + label});
    }
  }

  std::vector<RunOutcome> outcomes(entries.size());
  std::vector<std::string> errors(entries.size());
  std::atomic<std::size_t> next{0};
  const int workers = worker_count(static_cast<int>(entries.size()));

  auto work = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= entries.size()) break;
      try {
        outcomes[i] = execute_one(config, config.sweep, entries[i].value,
                                  entries[i].label, entries[i].dir);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  bool all_converged = true;
  std::vector<ReportRow> rows;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << "error: run '" << entries[i].label << "': " << errors[i]
                << "\n";
      return 1;
    }
    rows.push_back(outcomes[i].row);
    all_converged = all_converged && outcomes[i].converged;
  }
  write_report_csv(out_dir + "/report.csv", rows);

  for (const auto& r : rows) {
    std::cout << "run " << r.run << ": Sigma_rho=" << format_double(r.report.sigma_rho_norm)
              << " Sigma_rhotheta=" << format_double(r.report.sigma_rhotheta_norm)
              << " iterations=" << r.report.iterations
              << (r.report.converged ? "" : " (NOT CONVERGED)") << "\n";
  }
  return all_converged ? 0 : 2;
}

int run_verify(const std::vector<int>& case_ids) {
  for (int id : case_ids) {
    if (id < 1 || id > kPresetCount) {
      std::cerr << "error: unknown case id " << id << " (presets are 1..5)\n";
      return 1;
    }
  }
  std::printf("%-5s %-12s %-12s %-12s %-12s %-6s %-6s\n", "case", "Sigma_rho",
              "Sigma_rhoth", "equilibrium", "boundary", "iters", "pass");
  bool all_pass = true;
  for (int id : case_ids) {
    const CaseConfig cfg = reference_config(id);
    const VerificationReport r = run_reference_case(id);
    const bool pass = report_passes(r, cfg.sigma_threshold);
    all_pass = all_pass && pass;
    std::printf("%-5d %-12.4e %-12.4e %-12.4e %-12.4e %-6d %-6s\n", id,
                r.sigma_rho_norm, r.sigma_rhotheta_norm,
                r.equilibrium_residual, r.boundary_residual, r.iterations,
                pass ? "yes" : "NO");
  }
  return all_pass ? 0 : 1;
}

int list_presets() {
  std::printf("%-5s %-12s %-13s %-2s  %s\n", "case", "a", "r", "K", "b_1..b_K");
  for (int id = 1; id <= kPresetCount; ++id) {
    const MappingCoefficients c = load_case(id);
    std::printf("%-5d %-12.7f %-13.8e %-2d ", id, c.a, c.r, c.term_count());
    if (c.b.empty()) {
      std::printf(" -");
    } else {
      for (double bk : c.b) std::printf(" %.7e", bk);
    }
    std::printf("\n");
  }
  return 0;
}

}  // namespace halfplane
