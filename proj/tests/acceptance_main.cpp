// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit status is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "halfplane/traction_forms.hpp"
#include "halfplane/boundary_expansion.hpp"
#include "halfplane/fields.hpp"
#include "halfplane/mapping.hpp"
#include "halfplane/rh_solver.hpp"
#include "halfplane/series_kernels.hpp"
#include "halfplane/verify.hpp"
#include "test_util.hpp"

using halfplane::Complex;
using halfplane::FieldEvaluator;
using halfplane::FieldOptions;
using halfplane::Mapping;
using halfplane::MaterialParams;
using halfplane::SolverConfig;
using halfplane::load_case;
using halfplane::reference_config;
using halfplane::solve;
using testutil::kPi;

namespace {

struct Criterion {
  std::string name;
  std::function<std::optional<std::string>()> run;  // failure message or empty
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

SolverConfig soft_arc45_config() {
  SolverConfig cfg;
  cfg.theta0 = 45.0 * kPi / 180.0;
  return cfg;
}

MaterialParams soft_ground_material() {
  MaterialParams m;
  m.gamma = 20.0;
  m.k0 = 0.8;
  m.nu = 0.3;
  m.E = 1000.0;
  return m;
}

std::optional<std::string> criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const auto report = halfplane::run_reference_case(5);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (!report.converged) return "solve did not converge";
  if (report.sigma_rho_norm > 0.005) {
    return "Sigma_rho = " + fmt("%.3e", report.sigma_rho_norm) + " > 0.005";
  }
  if (report.sigma_rhotheta_norm > 0.005) {
    return "Sigma_rhotheta = " + fmt("%.3e", report.sigma_rhotheta_norm) +
           " > 0.005";
  }
  if (secs > 30.0) return "runtime " + fmt("%.1f", secs) + " s > 30 s";
  std::printf("    Sigma_rho = %.4e, Sigma_rhotheta = %.4e, %.2f s\n",
              report.sigma_rho_norm, report.sigma_rhotheta_norm, secs);
  return std::nullopt;
}

std::optional<std::string> criterion2() {
  for (int id = 1; id <= 4; ++id) {
    const auto report = halfplane::run_reference_case(id);
    if (!report.converged) return "case " + std::to_string(id) + ": no convergence";
    if (report.sigma_rho_norm >= 1e-2 || report.sigma_rhotheta_norm >= 1e-2) {
      return "case " + std::to_string(id) + ": Sigma_rho = " +
             fmt("%.3e", report.sigma_rho_norm) + ", Sigma_rhotheta = " +
             fmt("%.3e", report.sigma_rhotheta_norm);
    }
    std::printf("    case %d: Sigma_rho = %.4e, Sigma_rhotheta = %.4e\n", id,
                report.sigma_rho_norm, report.sigma_rhotheta_norm);
  }
  return std::nullopt;
}

std::optional<std::string> criterion3() {
  const Mapping m1(load_case(1));
  const double x0_1 = m1.free_surface_halfwidth(45.0 * kPi / 180.0);
  if (std::abs(x0_1 - 8.75) > 0.01) {
    return "case 1: x0 = " + fmt("%.4f", x0_1) + " not within 8.75 +- 0.01";
  }
  const Mapping m5(load_case(5));
  const double x0_5 = m5.free_surface_halfwidth(20.0 * kPi / 180.0);
  if (std::abs(x0_5 - 49.11) > 0.01) {
    return "case 5: x0 = " + fmt("%.4f", x0_5) + " not within 49.11 +- 0.01";
  }
  std::printf("    x0(case1, 45deg) = %.4f m, x0(case5, 20deg) = %.4f m\n",
              x0_1, x0_5);
  return std::nullopt;
}

std::optional<std::string> criterion4() {
  const double w5 = halfplane::excavated_area(load_case(5));
  if (std::abs(w5 - 12.5) > 1e-6 * 12.5) {
    return "case 5: W = " + fmt("%.9f", w5) + " not within 12.5 (1e-6 rel)";
  }
  for (int id = 1; id <= 4; ++id) {
    const auto c = load_case(id);
    const Mapping map(c);
    const int n = 8192;
    double twice_area = 0.0;
    Complex prev = map.z(std::polar(c.r, 0.0));
    for (int j = 1; j <= n; ++j) {
      const Complex cur = map.z(std::polar(c.r, j * 2.0 * kPi / n));
      twice_area += prev.real() * cur.imag() - cur.real() * prev.imag();
      prev = cur;
    }
    const double w_oracle = std::abs(twice_area / 2.0) / (2.0 * kPi);
    const double w = halfplane::excavated_area(c);
    if (std::abs(w - w_oracle) > 1e-6 * w_oracle) {
      return "case " + std::to_string(id) + ": W = " + fmt("%.9f", w) +
             " vs shoelace " + fmt("%.9f", w_oracle);
    }
  }
  return std::nullopt;
}

std::optional<std::string> criterion5() {
  for (int id = 1; id <= 5; ++id) {
    const auto cfg = reference_config(id);
    const Mapping map(load_case(id));
    const auto sol = solve(map, cfg.material, cfg.solver);
    const double kappa = cfg.material.kappa();
    const double wg = sol.W * cfg.material.gamma;
    const double single = std::abs(kappa * sol.A[-1] + sol.B[-1]);
    const double equil = std::abs(sol.A[-1] - sol.B[-1] + wg);
    if (single > 1e-8 * std::abs(wg) || equil > 1e-8 * std::abs(wg)) {
      return "case " + std::to_string(id) + ": |kA-1+B-1| = " +
             fmt("%.2e", single) + ", |A-1-B-1+Wg| = " + fmt("%.2e", equil);
    }
  }
  return std::nullopt;
}

std::optional<std::string> criterion6() {
  const Mapping map(load_case(1));
  const auto sol = solve(map, soft_ground_material(), soft_arc45_config());
  if (!sol.converged) return "no convergence";
  if (sol.iterations < 10 || sol.iterations > 100) {
    return "iterations = " + std::to_string(sol.iterations) +
           " outside [10, 100]";
  }
  const auto& norms = sol.increment_norms;
  for (std::size_t q = 3; q + 1 < norms.size(); ++q) {
    if (!(norms[q + 1] < norms[q])) {
      return "increment norms not monotone at q = " + std::to_string(q);
    }
  }
  std::printf("    converged at q = %d with max|d^(q)| = %.2e\n",
              sol.iterations, norms.back());
  return std::nullopt;
}

std::optional<std::string> criterion7() {
  testutil::Rng rng(1234);
  for (int trial = 0; trial < 5; ++trial) {
    const double th0 = rng.uniform(5.0, 60.0) * kPi / 180.0;
    const double lam = rng.uniform(0.0, 0.2);
    const auto alpha = halfplane::alpha_coeffs(th0, lam, 31);
    const auto beta = halfplane::beta_coeffs(th0, lam, 31);
    auto X = [&](Complex z) { return halfplane::eval_X(th0, lam, z); };
    for (int k = 0; k <= 30; ++k) {
      const Complex ak = testutil::taylor_coefficient(X, k, 0.8);
      if (testutil::rel_err(Complex{alpha[static_cast<std::size_t>(k)], 0.0},
                            ak) > 1e-8) {
        return "alpha_" + std::to_string(k) + " off at theta0 = " +
               fmt("%.3f", th0) + ", lambda = " + fmt("%.3f", lam);
      }
      const Complex bk = testutil::taylor_coefficient(X, -k, 1.25);
      if (std::abs(beta[static_cast<std::size_t>(k)] - bk.real()) >
          1e-8 * std::max(1.0, std::abs(bk))) {
        return "beta_" + std::to_string(k) + " off at theta0 = " +
               fmt("%.3f", th0);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> criterion8() {
  // The antiderivative identity is differenced on the long double
  // instantiation of the same closed forms: the deep-tunnel E_2 terms cancel
  // from ~1e8 down to O(10), which double-precision differencing cannot
  // certify at 1e-7.
  using LD = long double;
  using CL = std::complex<LD>;
  testutil::Rng rng(77);
  for (int id = 1; id <= 5; ++id) {
    const auto c = load_case(id);
    const halfplane::detail::TractionForms<LD> forms(c);
    const auto dl = forms.dj();
    const LD h = 2e-4L;
    for (int t = 0; t < 32; ++t) {
      const CL s = std::polar(LD(1), static_cast<LD>(rng.uniform(-kPi, kPi)));
      auto central = [&](int j, LD step) {
        const auto p = forms.ej(s * std::polar(LD(1), step));
        const auto m = forms.ej(s * std::polar(LD(1), -step));
        return (p[static_cast<std::size_t>(j)] -
                m[static_cast<std::size_t>(j)]) /
               (CL(0, 2) * step * s);
      };
      const auto cj = forms.cj(s);
      const LD scale = std::max({std::abs(cj[0] + cj[1] + cj[2]), LD(1e-6)});
      for (int j = 0; j < 3; ++j) {
        const CL want = cj[static_cast<std::size_t>(j)] -
                        dl[static_cast<std::size_t>(j)] / s;
        const CL fd = (LD(4) * central(j, h) - central(j, 2 * h)) / LD(3);
        const double rel = static_cast<double>(
            std::abs(fd - want) / std::max(std::abs(want), scale));
        if (rel > 1e-7) {
          return "case " + std::to_string(id) + ": dE_" +
                 std::to_string(j + 1) + "/dsigma mismatch " + fmt("%.2e", rel);
        }
      }
    }
    const auto d = halfplane::dj_constants(c);
    for (int j = 0; j < 3; ++j) {
      const Complex quad = testutil::contour_mean(
          [&](Complex s) {
            return halfplane::cj_eval(c, s)[static_cast<std::size_t>(j)];
          },
          1.0, 4096);
      if (std::abs(quad - Complex{d[static_cast<std::size_t>(j)], 0.0}) >
          1e-8 * (std::abs(d[static_cast<std::size_t>(j)]) + 1e-8)) {
        return "case " + std::to_string(id) + ": residue of C_" +
               std::to_string(j + 1) + " off";
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> criterion9() {
  for (int id = 1; id <= 5; ++id) {
    const auto cfg = reference_config(id);
    const Mapping map(load_case(id));
    const auto rhs = halfplane::make_rhs_expansion(
        map.coeffs(), cfg.material, cfg.solver.M, cfg.solver.delta);
    const auto sol = solve(map, cfg.material, cfg.solver, rhs);
    const double res = halfplane::boundary_residual(sol, map, cfg.material, rhs);
    if (res > 1e-6) {
      return "case " + std::to_string(id) + ": residual = " + fmt("%.2e", res);
    }
    std::printf("    case %d: re-substitution residual = %.2e\n", id, res);
  }
  return std::nullopt;
}

std::optional<std::string> criterion10() {
  const Mapping map(load_case(1));
  const auto mat = soft_ground_material();
  const auto cfg = soft_arc45_config();
  const auto sol = solve(map, mat, cfg);
  const FieldEvaluator on(map, sol, mat, FieldOptions::from_solver(cfg));
  FieldOptions raw = FieldOptions::from_solver(cfg);
  raw.lanczos = false;
  const FieldEvaluator off(map, sol, mat, raw);

  const double trans = 5.0 * kPi / 180.0;
  const auto [disp_on, trac_on] =
      halfplane::surface_conditions(on, cfg.theta0, trans);
  const auto [disp_off, trac_off] =
      halfplane::surface_conditions(off, cfg.theta0, trans);

  double peak_v = 0.0;
  for (const auto& p : on.surface_profile(720)) {
    peak_v = std::max(peak_v, std::abs(p.displacement.v));
  }
  const double gh = mat.gamma * halfplane::reference_depth(map);
  if (disp_on > 0.01 * peak_v) {
    return "constrained-segment displacement = " + fmt("%.2e", disp_on) +
           " m exceeds 1% of peak " + fmt("%.2e", peak_v);
  }
  if (trac_on > 0.01 * gh) {
    return "free-segment traction = " + fmt("%.2e", trac_on) +
           " kPa exceeds 1% of gamma H = " + fmt("%.2f", gh);
  }
  if (disp_off < 5.0 * disp_on) {
    return "filter off: displacement residual only " +
           fmt("%.1f", disp_off / disp_on) + "x larger";
  }
  if (trac_off < 5.0 * trac_on) {
    return "filter off: traction residual only " +
           fmt("%.1f", trac_off / trac_on) + "x larger";
  }
  std::printf(
      "    on: %.2e m / %.3f kPa; off: %.1fx / %.1fx larger\n", disp_on,
      trac_on, disp_off / disp_on, trac_off / trac_on);
  return std::nullopt;
}

std::optional<std::string> criterion11() {
  const Mapping map(load_case(1));
  auto mat = soft_ground_material();
  std::vector<std::vector<double>> hoops;
  for (double deg : {45.0, 20.0, 10.0}) {
    SolverConfig cfg;
    cfg.theta0 = deg * kPi / 180.0;
    const auto sol = solve(map, mat, cfg);
    if (!sol.converged) return "theta0 = " + fmt("%.0f", deg) + ": no convergence";
    const FieldEvaluator fields(map, sol, mat, FieldOptions::from_solver(cfg));
    std::vector<double> hoop;
    for (const auto& p : fields.periphery_profile(64)) {
      hoop.push_back(p.total_polar.s_theta);
    }
    hoops.push_back(std::move(hoop));
  }
  double peak = 0.0;
  for (const auto& h : hoops) {
    for (double v : h) peak = std::max(peak, std::abs(v));
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < hoops.size(); ++a) {
    for (std::size_t b = a + 1; b < hoops.size(); ++b) {
      for (std::size_t j = 0; j < hoops[a].size(); ++j) {
        worst = std::max(worst, std::abs(hoops[a][j] - hoops[b][j]));
      }
    }
  }
  if (worst > 0.02 * peak) {
    return "profiles deviate by " + fmt("%.2f", 100.0 * worst / peak) +
           "% of the peak hoop stress";
  }
  std::printf("    max profile deviation = %.2f%% of peak\n",
              100.0 * worst / peak);
  return std::nullopt;
}

std::optional<std::string> criterion12() {
  // Figure-shape reproduction is not quantitatively checkable; assert the
  // symmetry invariants the curves must obey instead.
  const Mapping map(load_case(1));
  const auto mat = soft_ground_material();
  const auto cfg = soft_arc45_config();
  const auto sol = solve(map, mat, cfg);
  const FieldEvaluator fields(map, sol, mat, FieldOptions::from_solver(cfg));

  const auto surface = fields.surface_profile(512);
  double peak_v = 0.0;
  for (const auto& p : surface) peak_v = std::max(peak_v, std::abs(p.displacement.v));
  const std::size_t n = surface.size();
  for (std::size_t j = 0; j < n / 2; ++j) {
    const auto& a = surface[j];
    const auto& b = surface[n - 1 - j];
    if (std::abs(a.displacement.u + b.displacement.u) > 1e-8 * peak_v) {
      return "surface u is not odd in x";
    }
    if (std::abs(a.displacement.v - b.displacement.v) > 1e-8 * peak_v) {
      return "surface v is not even in x";
    }
  }
  const auto periphery = fields.periphery_profile(256);
  double peak_h = 0.0;
  for (const auto& p : periphery) {
    peak_h = std::max(peak_h, std::abs(p.total_polar.s_theta));
  }
  const std::size_t np = periphery.size();
  for (std::size_t j = 0; j < np / 2; ++j) {
    if (std::abs(periphery[j].total_polar.s_theta -
                 periphery[np - 1 - j].total_polar.s_theta) > 1e-8 * peak_h) {
      return "periphery hoop stress is not even in theta";
    }
  }
  return std::nullopt;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1. circle periphery residuals <= 0.005 within 30 s", criterion1},
      {"2. noncircular periphery residuals < 1e-2", criterion2},
      {"3. free-surface half-widths 8.75 m / 49.11 m (+- 0.01)", criterion3},
      {"4. excavated-area identity (12.5 m^2; shoelace within 1e-6)", criterion4},
      {"5. equilibrium and single-valuedness constraints to 1e-8", criterion5},
      {"6. reference iteration converges in 10..100 monotone steps", criterion6},
      {"7. kernel Taylor families vs quadrature oracle to 1e-8", criterion7},
      {"8. antiderivative and residue oracles to 1e-7 / 1e-8", criterion8},
      {"9. boundary re-substitution residual <= 1e-6", criterion9},
      {"10. surface conditions <= 1%, filter-off at least 5x worse", criterion10},
      {"11. hoop profiles stable within 2% across constraining arcs", criterion11},
      {"12. symmetry invariants (u odd, v even, hoop even)", criterion12},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::optional<std::string> failure;
    try {
      failure = c.run();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    if (failure) {
      ++failures;
      std::printf("FAIL  %s\n      %s\n", c.name.c_str(), failure->c_str());
    } else {
      std::printf("PASS  %s\n", c.name.c_str());
    }
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
