#include "halfplane/boundary_expansion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "halfplane/traction_forms.hpp"

namespace halfplane {

namespace {

constexpr double kPi = std::numbers::pi;

using Forms = detail::TractionForms<double>;

}  // namespace

std::array<double, 3> dj_constants(const MappingCoefficients& c) {
  return Forms(c).dj();
}

double excavated_area(const MappingCoefficients& c) {
  const auto d = dj_constants(c);
  const double w = -(d[0] + d[1] + d[2]);
  if (!(w > 0.0)) {
    throw std::domain_error("excavated_area: mapping encloses non-positive area");
  }
  return w;
}

BoundaryCoords boundary_coords(const MappingCoefficients& c, Complex sigma) {
  const auto xy = Forms(c).xy(sigma);
  return {xy[0], xy[1]};
}

std::array<Complex, 3> cj_eval(const MappingCoefficients& c, Complex sigma) {
  return Forms(c).cj(sigma);
}

std::array<Complex, 3> ej_eval(const MappingCoefficients& c, Complex sigma) {
  const Complex num = 1.0 - c.r / sigma;
  const Complex den = 1.0 - c.r * sigma;
  if (!(num.real() > 0.0) || !(den.real() > 0.0)) {
    throw std::domain_error(
        "boundary_expansion: log argument left the right half-plane");
  }
  return Forms(c).ej(sigma);
}

Complex f_eval(const MappingCoefficients& c, double k0, Complex sigma) {
  return Forms(c).f(k0, sigma);
}

namespace detail {

OffsetArray<Complex> collocate_complex(const Mapping& map, double rho, int M) {
  const int n = 2 * M + 1;
  std::vector<Complex> vals(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double th = 2.0 * kPi * j / n;
    const Complex zeta = std::polar(rho, th);
    if (std::abs(zeta - Complex{1.0, 0.0}) < 1e-13) {
      // rho -> 1, theta -> 0: the defining ratio tends to zero with the
      // surface-realness of the map.
      vals[static_cast<std::size_t>(j)] = {0.0, 0.0};
      continue;
    }
    const Complex z = map.z(zeta);
    const Complex dzbar = std::conj(map.dz(zeta));
    vals[static_cast<std::size_t>(j)] = -(z - std::conj(z)) / dzbar;
  }
  OffsetArray<Complex> coeff(M);
  for (int k = -M; k <= M; ++k) {
    Complex acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      const double th = -2.0 * kPi * j * k / n;
      acc += vals[static_cast<std::size_t>(j)] * std::polar(1.0, th);
    }
    coeff[k] = acc / static_cast<double>(n);
  }
  return coeff;
}

}  // namespace detail

namespace {

OffsetArray<double> realify_thresholded(const OffsetArray<Complex>& c,
                                        double delta, const char* what) {
  double scale = 0.0;
  for (const auto& v : c.raw()) scale = std::max(scale, std::abs(v));
  // The absolute floor keeps the realness check meaningful when the whole
  // array is at round-off level (H at rho = 1 vanishes identically).
  const double im_tol = 1e-9 * scale + std::max(delta, 1e-300);
  OffsetArray<double> out(c.half());
  for (int k = -c.half(); k <= c.half(); ++k) {
    if (std::abs(c[k].imag()) > im_tol) {
      throw std::domain_error(std::string(what) +
                              ": collocated coefficient is not real; mapping "
                              "is not axisymmetric");
    }
    double re = c[k].real();
    if (std::abs(re) <= delta) re = 0.0;
    out[k] = re;
  }
  return out;
}

}  // namespace

OffsetArray<double> collocate_I(const Mapping& map, int M, double delta) {
  if (M < 4 * map.coeffs().term_count()) {
    throw std::domain_error("collocate_I: M must be at least 4K");
  }
  return realify_thresholded(detail::collocate_complex(map, map.r(), M), delta,
                             "collocate_I");
}

OffsetArray<double> collocate_I(const MappingCoefficients& c, int M,
                                double delta) {
  return collocate_I(Mapping(c), M, delta);
}

OffsetArray<double> collocate_H(const Mapping& map, double rho, int M,
                                double delta) {
  if (!(rho >= map.r() * (1.0 - 1e-12)) || !(rho <= 1.0 + 1e-12)) {
    throw std::domain_error("collocate_H: rho outside [r, 1]");
  }
  return realify_thresholded(detail::collocate_complex(map, rho, M), delta,
                             "collocate_H");
}

OffsetArray<double> collocate_H(const MappingCoefficients& c, double rho, int M,
                                double delta) {
  return collocate_H(Mapping(c), rho, M, delta);
}

OffsetArray<double> collocate_J(const MappingCoefficients& c,
                                const MaterialParams& material, int M) {
  const Forms forms(c);
  const int n = 2 * M + 1;
  std::vector<Complex> vals(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const Complex sigma = std::polar(1.0, 2.0 * kPi * j / n);
    const auto e = forms.ej(sigma);
    vals[static_cast<std::size_t>(j)] =
        forms.f(material.k0, sigma) + e[0] + e[1] + e[2];
  }
  OffsetArray<Complex> coeff(M);
  double scale = 0.0;
  for (int k = -M; k <= M; ++k) {
    Complex acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      acc += vals[static_cast<std::size_t>(j)] *
             std::polar(1.0, -2.0 * kPi * j * k / n);
    }
    coeff[k] = acc / static_cast<double>(n);
    scale = std::max(scale, std::abs(coeff[k]));
  }
  OffsetArray<double> out(M);
  for (int k = -M; k <= M; ++k) {
    if (std::abs(coeff[k].imag()) > 1e-9 * scale + 1e-300) {
      throw std::domain_error("collocate_J: coefficient is not real");
    }
    out[k] = material.gamma * coeff[k].real();
  }
  return out;
}

RhsExpansion make_rhs_expansion(const MappingCoefficients& c,
                                const MaterialParams& material, int M,
                                double delta) {
  RhsExpansion rhs;
  rhs.D = dj_constants(c);
  rhs.W = excavated_area(c);
  rhs.I = collocate_I(c, M, delta);
  rhs.J = collocate_J(c, material, M);
  rhs.M = M;
  rhs.delta = delta;
  return rhs;
}

}  // namespace halfplane
