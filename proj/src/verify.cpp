#include "halfplane/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace halfplane {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};
}  // namespace

std::pair<double, double> periphery_residuals(const FieldEvaluator& fields,
                                              double H, int n) {
  if (!(H > 0.0)) throw std::domain_error("periphery_residuals: H must be > 0");
  const double gh = fields.material().gamma * H;
  if (gh == 0.0) return {0.0, 0.0};
  double max_rho = 0.0;
  double max_tau = 0.0;
  for (const auto& s : fields.periphery_profile(n)) {
    max_rho = std::max(max_rho, std::abs(s.total_polar.s_rho));
    max_tau = std::max(max_tau, std::abs(s.total_polar.t_rho_theta));
  }
  return {max_rho / gh, max_tau / gh};
}

std::pair<double, double> surface_conditions(const FieldEvaluator& fields,
                                             double theta0,
                                             double transition_cone, int n) {
  const double cone = 0.25 * kPi / 180.0;  // exclusion around zeta = 1
  double disp = 0.0;
  double trac = 0.0;
  const double lo_c = cone;
  const double hi_c = theta0 - transition_cone;
  if (hi_c > lo_c) {
    for (int j = 0; j < n; ++j) {
      const double th = lo_c + (j + 0.5) * (hi_c - lo_c) / n;
      for (double sgn : {-1.0, 1.0}) {
        const auto d = fields.displacement_at({1.0, sgn * th});
        disp = std::max({disp, std::abs(d.u), std::abs(d.v)});
      }
    }
  }
  const double lo_f = theta0 + transition_cone;
  if (lo_f < kPi) {
    for (int j = 0; j < n; ++j) {
      const double th = lo_f + (j + 0.5) * (kPi - lo_f) / n;
      for (double sgn : {-1.0, 1.0}) {
        const auto s = fields.sample({1.0, sgn * th});
        trac = std::max(
            {trac, std::abs(s.total_rect.s_y), std::abs(s.total_rect.t_xy)});
      }
    }
  }
  return {disp, trac};
}

double equilibrium_check(const SpectralSolution& sol, const Mapping& map,
                         const MaterialParams& material, int n) {
  const double scale = 2.0 * kPi * sol.W * material.gamma;
  if (scale == 0.0) return 0.0;
  const int N = sol.order();

  // Surface side: oint e^{i th} z'(sigma) [s_rho + i tau](sigma) d th; the
  // product with z' is the plain series i sum (A_k - B_k) sigma^k, bounded
  // through theta = 0. Midpoint rule is spectrally exact here.
  Complex surface{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const double th = (j + 0.5) * 2.0 * kPi / n;
    const Complex sigma = std::polar(1.0, th);
    Complex series{0.0, 0.0};
    Complex spow = std::pow(sigma, -N - 1);
    for (int k = -N; k <= N; ++k) {
      spow *= sigma;
      series += (sol.A[k] - sol.B[k]) * spow;
    }
    surface += kI * series * sigma;
  }
  surface *= 2.0 * kPi / n;

  // Periphery side: clockwise resultant of the excavation tractions,
  // evaluated from the geometry alone.
  Complex periphery{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const double th = (j + 0.5) * 2.0 * kPi / n;
    const Complex ti = excavation_traction(map, material, th);
    const double speed = std::abs(map.dz(std::polar(map.r(), th))) * map.r();
    periphery += ti * speed;
  }
  periphery *= 2.0 * kPi / n;

  return std::abs(surface + periphery) / std::abs(scale);
}

double boundary_residual(const SpectralSolution& sol, const Mapping& map,
                      const MaterialParams& material, const RhsExpansion& rhs,
                      int n, bool band_limited) {
  const int N = sol.order();
  const int M = rhs.I.half();
  if (n <= 0) n = 2 * M + 1;
  const double r = map.r();
  const double gamma = material.gamma;

  // Product term sum_l I_l sigma^l * sum_k A_{-k} r^{-k} sigma^k. Band-limited
  // mode m carries sum_j I_{j+m} A_j r^j.
  std::vector<double> prod_coeff;
  if (band_limited) {
    prod_coeff.assign(static_cast<std::size_t>(2 * N + 1), 0.0);
    for (int m = -N; m <= N; ++m) {
      double acc = 0.0;
      for (int j = -N; j <= N; ++j) {
        const double il = rhs.I.at_or_zero(j + m);
        if (il == 0.0) continue;
        acc += il * sol.A[j] * std::pow(r, j);
      }
      prod_coeff[static_cast<std::size_t>(m + N)] = acc;
    }
  }

  const double log_r_term =
      (sol.A.at_or_zero(-1) + sol.B.at_or_zero(-1)) * std::log(r);

  std::vector<Complex> lhs(static_cast<std::size_t>(n));
  std::vector<Complex> rhs_vals(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double th = 2.0 * kPi * j / n;
    const Complex sigma = std::polar(1.0, th);
    Complex t{log_r_term, 0.0};
    Complex sp{1.0, 0.0};
    Complex sm{1.0, 0.0};
    const Complex sinv = std::conj(sigma);
    double rk = 1.0;
    double rmk = 1.0;
    for (int k = 1; k <= N; ++k) {
      sp *= sigma;
      sm *= sinv;
      rk *= r;
      rmk /= r;
      t += sol.A.at_or_zero(-k - 1) * (rmk / -static_cast<double>(k)) * sm;
      t += sol.A.at_or_zero(k - 1) * (rk / k) * sp;
      t += sol.B.at_or_zero(k - 1) * (rmk / -static_cast<double>(k)) * sp;
      t += sol.B.at_or_zero(-k - 1) * (rk / k) * sm;
    }
    if (band_limited) {
      Complex spow = std::pow(sigma, -N - 1);
      for (int m = -N; m <= N; ++m) {
        spow *= sigma;
        t += prod_coeff[static_cast<std::size_t>(m + N)] * spow;
      }
    } else {
      Complex iser{0.0, 0.0};
      for (int l = -M; l <= M; ++l) {
        const double il = rhs.I[l];
        if (il == 0.0) continue;
        iser += il * std::pow(sigma, l);
      }
      Complex aser{0.0, 0.0};
      for (int k = -N; k <= N; ++k) {
        aser += sol.A[-k] * std::pow(r, -k) * std::pow(sigma, k);
      }
      t += iser * aser;
    }
    lhs[static_cast<std::size_t>(j)] = t;

    const auto e = ej_eval(map.coeffs(), sigma);
    rhs_vals[static_cast<std::size_t>(j)] =
        gamma * (f_eval(map.coeffs(), material.k0, sigma) + e[0] + e[1] + e[2]);
  }

  Complex lhs_mean{0.0, 0.0};
  Complex rhs_mean{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    lhs_mean += lhs[static_cast<std::size_t>(j)];
    rhs_mean += rhs_vals[static_cast<std::size_t>(j)];
  }
  lhs_mean /= n;
  rhs_mean /= n;

  double max_diff = 0.0;
  double max_rhs = 0.0;
  for (int j = 0; j < n; ++j) {
    const Complex diff = (lhs[static_cast<std::size_t>(j)] - lhs_mean) -
                         (rhs_vals[static_cast<std::size_t>(j)] - rhs_mean);
    max_diff = std::max(max_diff, std::abs(diff));
    max_rhs =
        std::max(max_rhs, std::abs(rhs_vals[static_cast<std::size_t>(j)] - rhs_mean));
  }
  if (max_rhs == 0.0) return 0.0;
  return max_diff / max_rhs;
}

CaseConfig reference_config(int case_id) {
  CaseConfig cfg;
  cfg.case_id = case_id;
  cfg.material.nu = 0.3;
  cfg.material.plane = PlaneCondition::kStrain;
  cfg.material.E = 20000.0;
  cfg.solver.theta0 = 20.0 * kPi / 180.0;
  cfg.solver.N = 80;
  cfg.solver.M = 360;
  switch (case_id) {
    case 1:
    case 2:
      cfg.material.gamma = 27.0;
      cfg.material.k0 = 0.25;
      break;
    case 3:
    case 4:
      cfg.material.gamma = 27.0;
      cfg.material.k0 = 1.5;
      break;
    case 5:
      cfg.material.gamma = 20.0;
      cfg.material.k0 = 0.8;
      cfg.sigma_threshold = 5e-3;
      break;
    default:
      throw std::out_of_range("reference_config: unknown case id");
  }
  return cfg;
}

double reference_depth(const Mapping& map) {
  double ymax = -1e300;
  double ymin = 1e300;
  const int n = 2048;
  for (int j = 0; j < n; ++j) {
    const double y = map.z(std::polar(map.r(), (j + 0.5) * 2.0 * kPi / n)).imag();
    ymax = std::max(ymax, y);
    ymin = std::min(ymin, y);
  }
  return -(ymax + ymin) / 2.0;
}

VerificationReport run_verification(const Mapping& map,
                                    const MaterialParams& material,
                                    const SolverConfig& config) {
  const RhsExpansion rhs =
      make_rhs_expansion(map.coeffs(), material, config.M, config.delta);
  const SpectralSolution sol = solve(map, material, config, rhs);
  const FieldEvaluator fields(map, sol, material,
                              FieldOptions::from_solver(config));

  VerificationReport report;
  report.iterations = sol.iterations;
  report.converged = sol.converged;
  const double H = reference_depth(map);
  std::tie(report.sigma_rho_norm, report.sigma_rhotheta_norm) =
      periphery_residuals(fields, H);
  std::tie(report.surface_disp_residual, report.surface_traction_residual) =
      surface_conditions(fields, config.theta0, 5.0 * kPi / 180.0);
  report.equilibrium_residual = equilibrium_check(sol, map, material);
  report.boundary_residual = boundary_residual(sol, map, material, rhs);
  return report;
}

VerificationReport run_reference_case(int case_id) {
  const CaseConfig cfg = reference_config(case_id);
  const Mapping map(load_case(case_id));
  return run_verification(map, cfg.material, cfg.solver);
}

bool report_passes(const VerificationReport& r, double sigma_threshold) {
  return r.converged && r.sigma_rho_norm <= sigma_threshold &&
         r.sigma_rhotheta_norm <= sigma_threshold &&
         r.equilibrium_residual <= 1e-4 && r.boundary_residual <= 1e-6;
}

}  // namespace halfplane
