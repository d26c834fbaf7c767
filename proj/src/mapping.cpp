#include "halfplane/mapping.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace halfplane {

namespace {

constexpr double kPi = std::numbers::pi;

// Powers zeta^k and zeta^-k accumulated pairwise; K stays small (<= 8 for the
// presets) so direct accumulation is exact enough.
Complex shape_sum(const std::vector<double>& b, Complex zeta,
                  auto&& term) {
  Complex acc{0.0, 0.0};
  Complex zp{1.0, 0.0};                 // zeta^k
  const Complex zinv = 1.0 / zeta;
  Complex zm{1.0, 0.0};                 // zeta^-k
  for (std::size_t i = 0; i < b.size(); ++i) {
    zp *= zeta;
    zm *= zinv;
    acc += term(static_cast<int>(i) + 1, b[i], zp, zm);
  }
  return acc;
}

}  // namespace

Mapping::Mapping(MappingCoefficients coeffs) : c_(std::move(coeffs)) {
  validate();
}

void Mapping::check_domain(Complex zeta) const {
  const double m = std::abs(zeta);
  const double lo = c_.r * (1.0 - 1e-12);
  const double hi = (1.0 / c_.r) * (1.0 + 1e-12);
  if (m < lo || m > hi) {
    throw std::domain_error("mapping: |zeta| = " + std::to_string(m) +
                            " outside annulus [r, 1/r]");
  }
  if (std::abs(zeta - Complex{1.0, 0.0}) < 1e-14) {
    throw std::domain_error("mapping: zeta = 1 maps to infinity");
  }
}

Complex Mapping::z(Complex zeta) const {
  check_domain(zeta);
  const Complex i{0.0, 1.0};
  Complex value = -i * c_.a * (1.0 + zeta) / (1.0 - zeta);
  value += i * shape_sum(c_.b, zeta,
                         [](int, double bk, Complex zp, Complex zm) {
                           return bk * (zp - zm);
                         });
  return value;
}

Complex Mapping::dz(Complex zeta) const {
  check_domain(zeta);
  const Complex i{0.0, 1.0};
  const Complex one_minus = 1.0 - zeta;
  Complex value = -2.0 * i * c_.a / (one_minus * one_minus);
  // d/dzeta of b_k (zeta^k - zeta^-k) = k b_k (zeta^{k-1} + zeta^{-k-1})
  value += i / zeta *
           shape_sum(c_.b, zeta, [](int k, double bk, Complex zp, Complex zm) {
             return static_cast<double>(k) * bk * (zp + zm);
           });
  return value;
}

Complex Mapping::d2z(Complex zeta) const {
  check_domain(zeta);
  const Complex i{0.0, 1.0};
  const Complex one_minus = 1.0 - zeta;
  Complex value = -4.0 * i * c_.a / (one_minus * one_minus * one_minus);
  const Complex zeta2 = zeta * zeta;
  value += i / zeta2 *
           shape_sum(c_.b, zeta, [](int k, double bk, Complex zp, Complex zm) {
             const double kk = static_cast<double>(k);
             return kk * bk * ((kk - 1.0) * zp - (kk + 1.0) * zm);
           });
  return value;
}

double Mapping::free_surface_halfwidth(double theta0) const {
  if (!(theta0 > 0.0) || !(theta0 < kPi)) {
    throw std::domain_error("free_surface_halfwidth: theta0 must lie in (0, pi)");
  }
  double x0 = c_.a * std::sin(theta0) / (1.0 - std::cos(theta0));
  for (std::size_t i = 0; i < c_.b.size(); ++i) {
    x0 -= 2.0 * c_.b[i] * std::sin(static_cast<double>(i + 1) * theta0);
  }
  return x0;
}

double Mapping::crown_depth() const {
  double ymax = -1e300;
  const int n = 2048;
  for (int j = 0; j < n; ++j) {
    const double th = (j + 0.5) * 2.0 * kPi / n;
    ymax = std::max(ymax, z(std::polar(c_.r, th)).imag());
  }
  return -ymax;
}

void Mapping::validate() const {
  if (!(c_.a > 0.0)) {
    throw std::invalid_argument("mapping: scale a must be positive");
  }
  if (!(c_.r > 0.0) || !(c_.r < 1.0)) {
    throw std::invalid_argument("mapping: inner radius r must satisfy 0 < r < 1");
  }
  for (double bk : c_.b) {
    if (!std::isfinite(bk)) {
      throw std::invalid_argument("mapping: non-finite shape coefficient");
    }
  }

  // Non-degeneracy: z' must not vanish anywhere on the closed annulus.
  const int n_rho = 64;
  const int n_theta = 256;
  for (int ir = 0; ir < n_rho; ++ir) {
    const double rho = c_.r + (1.0 - c_.r) * ir / (n_rho - 1);
    for (int it = 0; it < n_theta; ++it) {
      const double th = (it + 0.5) * 2.0 * kPi / n_theta;
      const Complex zeta = std::polar(rho, th);
      if (std::abs(zeta - Complex{1.0, 0.0}) < 1e-6) continue;
      if (std::abs(dz(zeta)) <= 1e-8 * c_.a) {
        throw std::invalid_argument(
            "mapping: z'(zeta) vanishes on the annulus, map is degenerate");
      }
    }
  }

  // Zeros between grid points escape the sampled check, so also count the
  // zeros of z' inside r <= |zeta| <= 1 - 1e-3 by the argument principle
  // (the outer rim is excluded: z' has its pole at zeta = 1).
  auto winding = [this](double radius) {
    const int n = 8192;
    double total = 0.0;
    double prev = std::arg(dz(std::polar(radius, 0.5 * 2.0 * kPi / n)));
    for (int j = 1; j <= n; ++j) {
      const double th = (j + 0.5) * 2.0 * kPi / n;
      const double cur = std::arg(dz(std::polar(radius, th)));
      double step = cur - prev;
      while (step > kPi) step -= 2.0 * kPi;
      while (step < -kPi) step += 2.0 * kPi;
      total += step;
      prev = cur;
    }
    return total / (2.0 * kPi);
  };
  const double zero_count = winding(1.0 - 1e-3) - winding(c_.r);
  if (std::abs(zero_count) > 0.5) {
    throw std::invalid_argument(
        "mapping: z'(zeta) has zeros inside the annulus, map is degenerate");
  }

  // Ground-surface realness: the unit circle must land on y = 0.
  for (int j = 1; j < 720; ++j) {
    const double th = -kPi + j * 2.0 * kPi / 720.0;
    if (std::abs(th) < 1e-9) continue;
    if (std::abs(z(std::polar(1.0, th)).imag()) > 1e-9 * c_.a) {
      throw std::invalid_argument(
          "mapping: unit circle does not map onto the ground surface");
    }
  }
}

MappingCoefficients load_case(int id) {
  switch (id) {
    case 1:
      return {3.628290, 2.7780510e-1,
              {1.4741707e-2, -3.7750916e-3, -2.4711951e-3, -7.8826493e-4,
               -1.7980317e-4, -3.0605208e-5, -3.4798795e-6, -9.9314818e-8}};
    case 2:
      return {20.129710, 5.4057535e-2,
              {2.4127561e-4, -4.9415696e-4, -3.0263293e-5, -8.8660255e-7,
               -5.7930598e-9, 6.1401095e-10, 2.8342474e-11}};
    case 3:
      return {3.5782933, 2.7684460e-1,
              {-1.4576164e-2, -8.8445228e-3, -2.0210147e-3, -2.2367365e-4,
               1.1456264e-5, 6.3018406e-6, 2.3385462e-6, 3.4944773e-7}};
    case 4:
      return {20.038580, 5.3478912e-2,
              {-6.1574816e-3, -4.1469518e-4, -4.7331423e-6, 3.0791176e-7,
               9.9983977e-9, -4.8124310e-11}};
    case 5:
      return {8.6602543, 2.6794916e-1, {}};
    default:
      throw std::out_of_range("load_case: unknown preset id " +
                              std::to_string(id));
  }
}

}  // namespace halfplane
