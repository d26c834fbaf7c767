#include "halfplane/series_kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace halfplane {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};
}  // namespace

double kolosov(double nu, PlaneCondition plane) {
  if (!(nu >= 0.0) || !(nu < 0.5)) {
    throw std::domain_error("kolosov: nu must lie in [0, 0.5)");
  }
  return plane == PlaneCondition::kStrain ? 3.0 - 4.0 * nu
                                          : (3.0 - nu) / (1.0 + nu);
}

double lambda_param(double kappa) {
  if (!(kappa > 0.0)) {
    throw std::domain_error("lambda_param: kappa must be positive");
  }
  return std::log(kappa) / (2.0 * kPi);
}

double MaterialParams::kappa() const { return kolosov(nu, plane); }

void MaterialParams::validate() const {
  // gamma = 0 and k0 = 0 are legal unloaded/degenerate configurations.
  if (!(gamma >= 0.0)) throw std::domain_error("material: gamma must be >= 0");
  if (!(k0 >= 0.0)) throw std::domain_error("material: k0 must be >= 0");
  if (!(E > 0.0)) throw std::domain_error("material: E must be positive");
  kolosov(nu, plane);
}

Complex eval_X(double theta0, double lambda, Complex zeta) {
  const Complex t_minus = std::polar(1.0, -theta0);  // e^{-i theta0}
  const Complex t_plus = std::polar(1.0, theta0);
  if (std::abs(zeta - t_minus) < 1e-12 || std::abs(zeta - t_plus) < 1e-12) {
    throw std::domain_error("eval_X: zeta at a branch point of the kernel");
  }
  const Complex e_minus{-0.5, -lambda};  // exponent paired with e^{-i theta0}
  const Complex e_plus{-0.5, lambda};
  if (std::abs(zeta) <= 1.0) {
    // zeta - e^{-i t0} = -e^{-i t0} (1 - zeta e^{i t0}); both log arguments
    // stay in the right half-plane for |zeta| < 1, so the principal branch is
    // analytic in the whole open disk.
    const double x0 = -std::exp(-2.0 * lambda * theta0);
    return x0 * std::exp(e_minus * std::log(1.0 - zeta * t_plus) +
                         e_plus * std::log(1.0 - zeta * t_minus));
  }
  // Exterior form normalized to X ~ 1/zeta at infinity.
  return 1.0 / zeta *
         std::exp(e_minus * std::log(1.0 - t_minus / zeta) +
                  e_plus * std::log(1.0 - t_plus / zeta));
}

namespace detail {

// Both Taylor families are Cauchy products of one binomial series with its
// conjugate family. p_k = (1/k!) prod_{l=1..k} (1/2 - i lambda - l) e^{i k t0}
// is accumulated multiplicatively; |p_k| ~ k^{-1/2}, so there is no overflow.
namespace {
std::vector<Complex> product_terms(double theta0, double lambda, int count,
                                   double rotation_sign) {
  std::vector<Complex> p(static_cast<std::size_t>(count));
  p[0] = {1.0, 0.0};
  const Complex rot = std::polar(1.0, rotation_sign * theta0);
  for (int k = 1; k < count; ++k) {
    const Complex factor = Complex{0.5 - static_cast<double>(k), -lambda} /
                           static_cast<double>(k);
    p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k - 1)] * factor * rot;
  }
  return p;
}

Complex cauchy_bracket(const std::vector<Complex>& p, int k) {
  Complex sum{0.0, 0.0};
  for (int l = 0; l <= k; ++l) {
    sum += p[static_cast<std::size_t>(l)] *
           std::conj(p[static_cast<std::size_t>(k - l)]);
  }
  return sum;
}
}  // namespace

std::vector<Complex> alpha_coeffs_complex(double theta0, double lambda,
                                          int count) {
  const auto p = product_terms(theta0, lambda, count, +1.0);
  const double x0 = -std::exp(-2.0 * lambda * theta0);
  std::vector<Complex> alpha(static_cast<std::size_t>(count));
  double sign = 1.0;
  for (int k = 0; k < count; ++k) {
    alpha[static_cast<std::size_t>(k)] = x0 * sign * cauchy_bracket(p, k);
    sign = -sign;
  }
  return alpha;
}

std::vector<Complex> beta_coeffs_complex(double theta0, double lambda,
                                         int count) {
  std::vector<Complex> beta(static_cast<std::size_t>(count));
  if (count == 0) return beta;
  beta[0] = {0.0, 0.0};
  const auto q = product_terms(theta0, lambda, count, -1.0);
  double sign = 1.0;  // (-1)^{k-1} for k = 1, 2, ...
  for (int k = 1; k < count; ++k) {
    beta[static_cast<std::size_t>(k)] = sign * cauchy_bracket(q, k - 1);
    sign = -sign;
  }
  return beta;
}

}  // namespace detail

namespace {
std::vector<double> realify(const std::vector<Complex>& c, const char* what) {
  std::vector<double> out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double re = c[k].real();
    const double im = c[k].imag();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw std::range_error(std::string(what) +
                             ": coefficient recurrence left finite range");
    }
    if (std::abs(im) > 1e-12 * std::abs(re) + 1e-300) {
      throw std::range_error(std::string(what) +
                             ": coefficient has non-negligible imaginary part");
    }
    out[k] = re;
  }
  return out;
}
}  // namespace

std::vector<double> alpha_coeffs(double theta0, double lambda, int count) {
  if (count < 1) throw std::domain_error("alpha_coeffs: count must be >= 1");
  return realify(detail::alpha_coeffs_complex(theta0, lambda, count), "alpha_coeffs");
}

std::vector<double> beta_coeffs(double theta0, double lambda, int count) {
  if (count < 1) throw std::domain_error("beta_coeffs: count must be >= 1");
  auto out = realify(detail::beta_coeffs_complex(theta0, lambda, count), "beta_coeffs");
  out[0] = 0.0;
  if (out.size() > 1) out[1] = 1.0;
  return out;
}

KernelCoefficients make_kernel_coefficients(double theta0, double lambda,
                                            int N) {
  KernelCoefficients k;
  k.lambda = lambda;
  k.theta0 = theta0;
  k.alpha = alpha_coeffs(theta0, lambda, 2 * N + 1);
  k.beta = beta_coeffs(theta0, lambda, 2 * N + 2);
  return k;
}

}  // namespace halfplane
