#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "halfplane/rh_solver.hpp"
#include "halfplane/verify.hpp"
#include "test_util.hpp"

using halfplane::MappingCoefficients;
using halfplane::Mapping;
using halfplane::MaterialParams;
using halfplane::OffsetArray;
using halfplane::SolverConfig;
using halfplane::SpectralSolution;
using halfplane::alpha_coeffs;
using halfplane::beta_coeffs;
using halfplane::load_case;
using halfplane::solve;
using testutil::kPi;

namespace {

SolverConfig soft_arc45_config() {
  SolverConfig cfg;
  cfg.theta0 = 45.0 * kPi / 180.0;
  cfg.N = 80;
  cfg.M = 360;
  return cfg;
}

MaterialParams soft_ground_material() {
  MaterialParams m;
  m.gamma = 20.0;
  m.k0 = 0.8;
  m.nu = 0.3;
  m.E = 1000.0;  // 1 MPa
  return m;
}

}  // namespace

TEST_CASE("system assembly index structure") {
  const double th0 = 0.6;
  const double lam = 0.08;
  const int N = 12;
  const auto alpha = alpha_coeffs(th0, lam, 2 * N + 1);
  const auto beta = beta_coeffs(th0, lam, 2 * N + 2);

  const auto mn = halfplane::assemble_negative_system(alpha, N);
  REQUIRE(mn.rows() == N);
  REQUIRE(mn.cols() == N);
  for (int k = 0; k < N; ++k) {
    for (int n = 1; n <= N; ++n) {
      const double want =
          n >= k + 1 ? alpha[static_cast<std::size_t>(n - k - 1)] : 0.0;
      CHECK(mn(k, n - 1) == want);
    }
  }
  // row 0 is the constraint over alpha_{n-1}
  CHECK(mn(0, 0) == alpha[0]);
  CHECK(mn(0, N - 1) == alpha[static_cast<std::size_t>(N - 1)]);

  const auto mp = halfplane::assemble_positive_system(beta, N);
  REQUIRE(mp.rows() == N + 1);
  REQUIRE(mp.cols() == N + 1);
  for (int k = 0; k <= N; ++k) {
    for (int n = 0; n <= N; ++n) {
      const double want = n >= k ? beta[static_cast<std::size_t>(n - k + 1)] : 0.0;
      CHECK(mp(k, n) == want);
    }
    CHECK(mp(k, k) == 1.0);  // beta_1 on the diagonal
  }
}

TEST_CASE("iteration systems are invertible at the reference size") {
  const double lam = halfplane::lambda_param(1.8);
  const auto alpha = alpha_coeffs(45.0 * kPi / 180.0, lam, 161);
  const auto beta = beta_coeffs(45.0 * kPi / 180.0, lam, 162);
  const halfplane::IterationSystems systems(alpha, beta, 80);
  CHECK(systems.rcond_negative() > 0.0);
  CHECK(std::isfinite(systems.rcond_negative()));
  CHECK(systems.rcond_positive() > 0.0);
}

TEST_CASE("A,B from a unit coefficient vector") {
  const double th0 = 0.5;
  const double lam = 0.1;
  const int N = 10;
  const auto alpha = alpha_coeffs(th0, lam, 2 * N + 1);
  const auto beta = beta_coeffs(th0, lam, 2 * N + 2);
  OffsetArray<double> d(N);
  d[0] = 1.0;  // only d_0
  OffsetArray<double> A, B;
  halfplane::ab_from_d(d, alpha, beta, A, B);
  for (int k = -N; k <= N; ++k) {
    if (k >= 0) {
      CHECK(A[k] == alpha[static_cast<std::size_t>(k)]);
      CHECK(B[k] == (k == 0 ? beta[0] : 0.0));
    } else {
      CHECK(A[k] == 0.0);
      CHECK(B[k] == beta[static_cast<std::size_t>(-k)]);
    }
  }
}

TEST_CASE("initial guess honors the constraint rows and load linearity") {
  const auto map = Mapping(load_case(1));
  const MaterialParams mat = soft_ground_material();
  const SolverConfig cfg = soft_arc45_config();
  const auto rhs =
      halfplane::make_rhs_expansion(map.coeffs(), mat, cfg.M, cfg.delta);
  const double lam = halfplane::lambda_param(mat.kappa());
  const auto alpha = alpha_coeffs(cfg.theta0, lam, 2 * cfg.N + 1);
  const auto beta = beta_coeffs(cfg.theta0, lam, 2 * cfg.N + 2);
  const halfplane::IterationSystems systems(alpha, beta, cfg.N);

  Eigen::VectorXd rn, rp;
  halfplane::initial_rhs(rhs, map.r(), rhs.W * mat.gamma, mat.kappa(), cfg.N,
                         rn, rp);
  const auto d0 = systems.solve(rn, rp);

  // re-substitution residual of both triangular systems
  const auto mn = halfplane::assemble_negative_system(alpha, cfg.N);
  const auto mp = halfplane::assemble_positive_system(beta, cfg.N);
  Eigen::VectorXd dn(cfg.N), dp(cfg.N + 1);
  for (int n = 1; n <= cfg.N; ++n) dn(n - 1) = d0[-n];
  for (int n = 0; n <= cfg.N; ++n) dp(n) = d0[n];
  CHECK((mn * dn - rn).norm() <= 1e-10 * rn.norm());
  CHECK((mp * dp - rp).norm() <= 1e-10 * rp.norm());

  // zero unit weight: homogeneous system, zero guess
  Eigen::VectorXd rn0, rp0;
  halfplane::RhsExpansion zero_rhs = rhs;
  for (auto& v : zero_rhs.J.raw()) v = 0.0;
  halfplane::initial_rhs(zero_rhs, map.r(), 0.0, mat.kappa(), cfg.N, rn0, rp0);
  const auto dz = systems.solve(rn0, rp0);
  for (double v : dz.raw()) CHECK(v == 0.0);

  // doubling gamma doubles the guess exactly
  halfplane::RhsExpansion rhs2 = rhs;
  for (auto& v : rhs2.J.raw()) v *= 2.0;
  Eigen::VectorXd rn2, rp2;
  halfplane::initial_rhs(rhs2, map.r(), 2.0 * rhs.W * mat.gamma, mat.kappa(),
                         cfg.N, rn2, rp2);
  const auto d2 = systems.solve(rn2, rp2);
  for (int k = -cfg.N; k <= cfg.N; ++k) {
    CHECK(d2[k] == doctest::Approx(2.0 * d0[k]).epsilon(1e-14));
  }
}

TEST_CASE("converged circle solution hits the closed-form constraints") {
  const auto map = Mapping(load_case(5));
  MaterialParams mat;
  mat.gamma = 20.0;
  mat.k0 = 0.8;
  mat.nu = 0.3;
  mat.E = 20000.0;
  SolverConfig cfg;
  cfg.theta0 = 20.0 * kPi / 180.0;
  const auto sol = solve(map, mat, cfg);
  REQUIRE(sol.converged);

  const double wg = sol.W * mat.gamma;  // 250 kN/m to the preset digits
  CHECK(sol.A[-1] == doctest::Approx(-250.0 / 2.8).epsilon(1e-6));
  CHECK(sol.B[-1] == doctest::Approx(1.8 * 250.0 / 2.8).epsilon(1e-6));
  CHECK(sol.A[-1] - sol.B[-1] == doctest::Approx(-wg).epsilon(1e-10));
  CHECK(sol.A[-1] - sol.B[-1] == doctest::Approx(-250.0).epsilon(1e-6));
  CHECK(std::abs(1.8 * sol.A[-1] + sol.B[-1]) <= 1e-8 * std::abs(wg));
}

TEST_CASE("post-solve identities for all reference cases") {
  for (int id = 1; id <= 5; ++id) {
    const auto cfg = halfplane::reference_config(id);
    const Mapping map(load_case(id));
    const auto sol = solve(map, cfg.material, cfg.solver);
    REQUIRE(sol.converged);
    const double kappa = cfg.material.kappa();
    const double wg = sol.W * cfg.material.gamma;
    CHECK(std::abs(kappa * sol.A[-1] + sol.B[-1]) <= 1e-8 * std::abs(wg));
    CHECK(std::abs(sol.A[-1] - sol.B[-1] + wg) <= 1e-8 * std::abs(wg));
    CHECK(std::abs(sol.A[-1] + wg / (1.0 + kappa)) <= 1e-8 * std::abs(wg));
    for (double v : sol.d.raw()) CHECK(std::isfinite(v));
  }
}

TEST_CASE("iteration behavior at the reference configuration") {
  const Mapping map(load_case(1));
  const auto sol = solve(map, soft_ground_material(), soft_arc45_config());
  REQUIRE(sol.converged);
  CHECK(sol.iterations >= 10);
  CHECK(sol.iterations <= 100);
  // increment norms decrease monotonically after the first few steps
  const auto& norms = sol.increment_norms;
  REQUIRE(norms.size() >= 10);
  for (std::size_t q = 3; q + 1 < norms.size(); ++q) {
    CHECK(norms[q + 1] < norms[q]);
  }
  CHECK(norms.back() <= 1e-16);
}

TEST_CASE("deep tunnels contract fast") {
  const auto cfg = halfplane::reference_config(2);
  const Mapping map(load_case(2));
  const auto sol = solve(map, cfg.material, cfg.solver);
  REQUIRE(sol.converged);
  CHECK(sol.iterations <= 40);
  const auto& norms = sol.increment_norms;
  for (std::size_t q = 2; q + 1 < norms.size(); ++q) {
    CHECK(norms[q + 1] / norms[q] <= 0.25);
  }
}

TEST_CASE("zero unit weight gives the zero solution immediately") {
  const Mapping map(load_case(5));
  MaterialParams mat;
  mat.gamma = 0.0;
  SolverConfig cfg;
  const auto sol = solve(map, mat, cfg);
  CHECK(sol.converged);
  CHECK(sol.iterations == 0);
  for (double v : sol.d.raw()) CHECK(v == 0.0);
  for (double v : sol.A.raw()) CHECK(v == 0.0);
  CHECK(sol.C0 == 0.0);
}

TEST_CASE("solution is linear in gamma") {
  const Mapping map(load_case(3));
  auto cfg = halfplane::reference_config(3);
  auto mat2 = cfg.material;
  mat2.gamma *= 2.0;
  const auto s1 = solve(map, cfg.material, cfg.solver);
  const auto s2 = solve(map, mat2, cfg.solver);
  REQUIRE(s1.converged);
  REQUIRE(s2.converged);
  double worst = 0.0;
  double scale = 0.0;
  for (int k = -cfg.solver.N; k <= cfg.solver.N; ++k) {
    worst = std::max({worst, std::abs(s2.d[k] - 2.0 * s1.d[k]),
                      std::abs(s2.A[k] - 2.0 * s1.A[k]),
                      std::abs(s2.B[k] - 2.0 * s1.B[k])});
    scale = std::max(scale, std::abs(s1.A[k]));
  }
  CHECK(worst <= 1e-12 * scale);
  CHECK(s2.C0 == doctest::Approx(2.0 * s1.C0).epsilon(1e-12));
}

TEST_CASE("best-effort result when the iteration budget is too small") {
  const Mapping map(load_case(1));
  auto cfg = soft_arc45_config();
  cfg.max_iter = 2;
  const auto sol = solve(map, soft_ground_material(), cfg);
  CHECK_FALSE(sol.converged);
  CHECK(sol.iterations == 2);
  for (double v : sol.d.raw()) CHECK(std::isfinite(v));
}

TEST_CASE("C0 accumulates the one-sided families") {
  OffsetArray<double> A(4), B(4);
  CHECK(halfplane::c0_constant(A, B, 4, 1.8) == 0.0);
  A[-2] = 1.0;  // contributes at k = 1 in the first sum
  B[0] = 2.0;   // contributes at k = 1 in the second sum
  const double c0 = halfplane::c0_constant(A, B, 4, 2.0);
  CHECK(c0 == doctest::Approx(2.0 * 1.0 / 1.0 - 2.0 / 1.0).epsilon(1e-15));
}

TEST_CASE("configuration validation") {
  const Mapping map(load_case(5));
  MaterialParams mat;
  SolverConfig cfg;
  cfg.N = 4;
  CHECK_THROWS_AS((void)solve(map, mat, cfg), std::domain_error);
  cfg = SolverConfig{};
  cfg.M = 100;
  CHECK_THROWS_AS((void)solve(map, mat, cfg), std::domain_error);
  cfg = SolverConfig{};
  cfg.epsilon = 1e-6;
  CHECK_THROWS_AS((void)solve(map, mat, cfg), std::domain_error);
  cfg = SolverConfig{};
  cfg.theta0 = -0.1;
  CHECK_THROWS_AS((void)solve(map, mat, cfg), std::domain_error);
  mat.nu = 0.7;
  CHECK_THROWS_AS((void)solve(map, mat, SolverConfig{}), std::domain_error);
}

TEST_CASE("truncation stability of the periphery hoop stress") {
  // N = 40 vs N = 80 at 32 probe angles. The circle is insensitive; shapes
  // whose z' has zeros just inside the inner circle respond at the percent
  // level, so the bound is looser there.
  struct Probe {
    int id;
    SolverConfig cfg;
    MaterialParams mat;
    double tol;
  };
  std::vector<Probe> probes;
  probes.push_back({5, SolverConfig{}, MaterialParams{}, 0.005});
  probes.back().cfg.theta0 = 20.0 * kPi / 180.0;
  probes.push_back({1, soft_arc45_config(), soft_ground_material(), 0.025});
  for (const auto& p : probes) {
    const Mapping map(load_case(p.id));
    auto cfg40 = p.cfg;
    cfg40.N = 40;
    cfg40.M = 360;
    const auto s80 = solve(map, p.mat, p.cfg);
    const auto s40 = solve(map, p.mat, cfg40);
    const halfplane::FieldEvaluator f80(map, s80, p.mat,
                                        halfplane::FieldOptions::from_solver(p.cfg));
    const halfplane::FieldEvaluator f40(map, s40, p.mat,
                                        halfplane::FieldOptions::from_solver(cfg40));
    double diff = 0.0;
    double scale = 0.0;
    for (int j = 0; j < 32; ++j) {
      const double th = -kPi + (j + 0.5) * 2.0 * kPi / 32.0;
      const auto a = f80.sample({map.r(), th}).total_polar.s_theta;
      const auto b = f40.sample({map.r(), th}).total_polar.s_theta;
      diff = std::max(diff, std::abs(a - b));
      scale = std::max(scale, std::abs(a));
    }
    CHECK(diff / scale <= p.tol);
  }
}
