#include "halfplane/rh_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace halfplane {

void SolverConfig::validate() const {
  if (!(theta0 > 0.0) || !(theta0 < std::numbers::pi)) {
    throw std::domain_error("solver: theta0 must lie in (0, pi)");
  }
  if (N < 8) throw std::domain_error("solver: truncation order N must be >= 8");
  if (M < 2 * N) throw std::domain_error("solver: collocation order M must be >= 2N");
  if (!(epsilon > 0.0) || !(epsilon <= 1e-8)) {
    throw std::domain_error("solver: epsilon must lie in (0, 1e-8]");
  }
  if (!(delta >= 0.0)) throw std::domain_error("solver: delta must be >= 0");
  if (max_iter < 1) throw std::domain_error("solver: max_iter must be >= 1");
}

Eigen::MatrixXd assemble_negative_system(const std::vector<double>& alpha,
                                         int N) {
  if (static_cast<int>(alpha.size()) < N) {
    throw std::invalid_argument("assemble_negative_system: alpha too short");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N, N);
  for (int k = 0; k < N; ++k) {
    for (int n = k + 1; n <= N; ++n) {
      m(k, n - 1) = alpha[static_cast<std::size_t>(n - k - 1)];
    }
  }
  return m;
}

Eigen::MatrixXd assemble_positive_system(const std::vector<double>& beta,
                                         int N) {
  if (static_cast<int>(beta.size()) < N + 2) {
    throw std::invalid_argument("assemble_positive_system: beta too short");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int k = 0; k <= N; ++k) {
    for (int n = k; n <= N; ++n) {
      m(k, n) = beta[static_cast<std::size_t>(n - k + 1)];
    }
  }
  return m;
}

void ab_from_d(const OffsetArray<double>& d, const std::vector<double>& alpha,
               const std::vector<double>& beta, OffsetArray<double>& A,
               OffsetArray<double>& B) {
  const int N = d.half();
  A = OffsetArray<double>(N);
  B = OffsetArray<double>(N);
  for (int k = -N; k <= N; ++k) {
    double a_acc = 0.0;
    for (int n = std::max(-k, -N); n <= N; ++n) {
      a_acc += alpha[static_cast<std::size_t>(n + k)] * d[-n];
    }
    A[k] = a_acc;
    double b_acc = 0.0;
    for (int n = std::max(k, -N); n <= N; ++n) {
      b_acc += beta[static_cast<std::size_t>(n - k)] * d[n];
    }
    B[k] = b_acc;
  }
}

double c0_constant(const OffsetArray<double>& A, const OffsetArray<double>& B,
                   int N, double kappa) {
  // Truncated at k = N like the displacement series it pins to zero at
  // sigma = 1; a longer range here would leave g(1) offset by the tail.
  double c0 = 0.0;
  for (int k = 1; k <= N; ++k) {
    c0 += (kappa * A.at_or_zero(-k - 1) + B.at_or_zero(-k - 1)) / k;
    c0 -= (kappa * A.at_or_zero(k - 1) + B.at_or_zero(k - 1)) / k;
  }
  return c0;
}

IterationSystems::IterationSystems(const std::vector<double>& alpha,
                                   const std::vector<double>& beta, int N)
    : N_(N),
      lu_neg_(assemble_negative_system(alpha, N)),
      lu_pos_(assemble_positive_system(beta, N)) {
  rcond_neg_ = lu_neg_.rcond();
  rcond_pos_ = lu_pos_.rcond();
  if (!(rcond_neg_ > 0.0) || !std::isfinite(rcond_neg_) ||
      !(rcond_pos_ > 0.0) || !std::isfinite(rcond_pos_)) {
    throw std::runtime_error(
        "rh_solver: iteration system is singular (rcond_neg = " +
        std::to_string(rcond_neg_) + ", rcond_pos = " +
        std::to_string(rcond_pos_) + ")");
  }
}

OffsetArray<double> IterationSystems::solve(
    const Eigen::VectorXd& rhs_negative,
    const Eigen::VectorXd& rhs_positive) const {
  const Eigen::VectorXd dn = lu_neg_.solve(rhs_negative);  // d_{-1}..d_{-N}
  const Eigen::VectorXd dp = lu_pos_.solve(rhs_positive);  // d_0..d_N
  OffsetArray<double> d(N_);
  for (int n = 1; n <= N_; ++n) d[-n] = dn(n - 1);
  for (int n = 0; n <= N_; ++n) d[n] = dp(n);
  return d;
}

void initial_rhs(const RhsExpansion& rhs, double r, double W_gamma,
                 double kappa, int N, Eigen::VectorXd& rhs_negative,
                 Eigen::VectorXd& rhs_positive) {
  rhs_negative = Eigen::VectorXd::Zero(N);
  rhs_positive = Eigen::VectorXd::Zero(N + 1);
  rhs_negative(0) = -W_gamma / (1.0 + kappa);
  rhs_positive(0) = kappa * W_gamma / (1.0 + kappa);
  double rk = 1.0;
  for (int k = 1; k <= N; ++k) {
    rk *= r;
    if (k <= N - 1) rhs_negative(k) = -k * rk * rhs.J.at_or_zero(-k);
    rhs_positive(k) = -k * rk * rhs.J.at_or_zero(k);
  }
}

namespace {

double i_sum(const RhsExpansion& rhs, const OffsetArray<double>& A, double r,
             int shift) {
  // sum_l r^l I_l A_{shift + l}, clipped to the stored ranges.
  const int N = A.half();
  const int lo = std::max(-rhs.I.half(), -N - shift);
  const int hi = std::min(rhs.I.half(), N - shift);
  double acc = 0.0;
  for (int l = lo; l <= hi; ++l) {
    const double il = rhs.I[l];
    if (il == 0.0) continue;
    acc += std::pow(r, l) * il * A[shift + l];
  }
  return acc;
}

}  // namespace

void iterate_rhs(const OffsetArray<double>& A, const OffsetArray<double>& B,
                 const RhsExpansion& rhs, double r, int N,
                 Eigen::VectorXd& rhs_negative, Eigen::VectorXd& rhs_positive) {
  rhs_negative = Eigen::VectorXd::Zero(N);
  rhs_positive = Eigen::VectorXd::Zero(N + 1);
  double r2k = 1.0;
  const double r2 = r * r;
  for (int k = 1; k <= N; ++k) {
    r2k *= r2;
    if (k <= N - 1) {
      rhs_negative(k) =
          r2k * B.at_or_zero(-k - 1) + k * r2k * i_sum(rhs, A, r, k);
    }
    rhs_positive(k) = r2k * A.at_or_zero(k - 1) + k * i_sum(rhs, A, r, -k);
  }
}

SpectralSolution solve(const Mapping& map, const MaterialParams& material,
                       const SolverConfig& config) {
  const RhsExpansion rhs =
      make_rhs_expansion(map.coeffs(), material, config.M, config.delta);
  return solve(map, material, config, rhs);
}

SpectralSolution solve(const Mapping& map, const MaterialParams& material,
                       const SolverConfig& config, const RhsExpansion& rhs) {
  config.validate();
  material.validate();
  const int N = config.N;
  const double r = map.r();
  const double kappa = material.kappa();
  const double lambda = lambda_param(kappa);
  const double W_gamma = rhs.W * material.gamma;

  const KernelCoefficients kernel =
      make_kernel_coefficients(config.theta0, lambda, N);
  const auto& alpha = kernel.alpha;
  const auto& beta = kernel.beta;
  const IterationSystems systems(alpha, beta, N);

  SpectralSolution sol;
  sol.W = rhs.W;
  sol.lambda = lambda;
  sol.d = OffsetArray<double>(N);

  Eigen::VectorXd rn, rp;
  initial_rhs(rhs, r, W_gamma, kappa, N, rn, rp);
  OffsetArray<double> increment = systems.solve(rn, rp);
  OffsetArray<double> A_inc(N), B_inc(N);

  auto max_norm = [](const OffsetArray<double>& v) {
    double m = 0.0;
    for (double x : v.raw()) m = std::max(m, std::abs(x));
    return m;
  };

  int grow_streak = 0;
  for (int q = 0; q <= config.max_iter; ++q) {
    for (int k = -N; k <= N; ++k) sol.d[k] += increment[k];
    const double norm = max_norm(increment);
    sol.increment_norms.push_back(norm);
    sol.iterations = q;
    if (norm <= config.epsilon) {
      sol.converged = true;
      break;
    }
    if (sol.increment_norms.size() >= 2 &&
        norm > sol.increment_norms[sol.increment_norms.size() - 2]) {
      if (++grow_streak >= 5) break;  // diverging
    } else {
      grow_streak = 0;
    }
    if (q == config.max_iter) break;
    ab_from_d(increment, alpha, beta, A_inc, B_inc);
    iterate_rhs(A_inc, B_inc, rhs, r, N, rn, rp);
    increment = systems.solve(rn, rp);
  }

  ab_from_d(sol.d, alpha, beta, sol.A, sol.B);
  sol.C0 = c0_constant(sol.A, sol.B, N, kappa);
  for (double x : sol.d.raw()) {
    if (!std::isfinite(x)) {
      throw std::runtime_error("rh_solver: solution left finite range");
    }
  }
  return sol;
}

}  // namespace halfplane
