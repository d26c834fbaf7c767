#pragma once

#include <complex>
#include <vector>

#include "halfplane/mapping.hpp"

namespace halfplane {

enum class PlaneCondition { kStrain, kStress };

/// Geomaterial parameters. Stresses are kPa, lengths m throughout the library;
/// compression is negative (gravity acts on y <= 0).
struct MaterialParams {
  double gamma = 20.0;  ///< unit weight (kN/m^3)
  double k0 = 0.8;      ///< lateral stress coefficient
  double E = 20000.0;   ///< elastic modulus (kPa)
  double nu = 0.3;      ///< Poisson ratio
  PlaneCondition plane = PlaneCondition::kStrain;

  double kappa() const;
  double shear_modulus() const { return E / (2.0 * (1.0 + nu)); }

  void validate() const;
};

/// Kolosov coefficient: 3 - 4 nu (plane strain) or (3 - nu)/(1 + nu) (plane stress).
double kolosov(double nu, PlaneCondition plane);

/// lambda = ln(kappa) / (2 pi), the imaginary-exponent parameter of the kernel.
double lambda_param(double kappa);

/// Plemelj kernel of the mixed surface condition,
///   X(zeta) = (zeta - e^{-i theta0})^{-1/2 - i lambda}
///             (zeta - e^{+i theta0})^{-1/2 + i lambda},
/// on the branch that is analytic off the constrained arc |theta| <= theta0 of
/// the unit circle, normalized so X ~ 1/zeta at infinity (and hence
/// X(0) = -e^{-2 lambda theta0}). Used as an oracle for the Taylor families.
Complex eval_X(double theta0, double lambda, Complex zeta);

/// Taylor coefficients of X about 0: X(zeta) = sum_k alpha_k zeta^k, |zeta| < 1.
std::vector<double> alpha_coeffs(double theta0, double lambda, int count);

/// Coefficients at infinity: X(zeta) = sum_k beta_k zeta^-k, |zeta| > 1;
/// beta_0 = 0 and beta_1 = 1 exactly.
std::vector<double> beta_coeffs(double theta0, double lambda, int count);

/// Both Taylor families of the kernel for one (theta0, kappa) pair. The
/// arrays extend to index 2N because A_k at k = N consumes alpha up to 2N.
struct KernelCoefficients {
  double lambda = 0.0;
  double theta0 = 0.0;
  std::vector<double> alpha;  ///< index 0..2N
  std::vector<double> beta;   ///< index 0..2N+1
};

KernelCoefficients make_kernel_coefficients(double theta0, double lambda,
                                            int N);

namespace detail {
// Complex-valued Cauchy-product intermediates; the public functions take the
// real part after checking the imaginary residue is at round-off level.
std::vector<Complex> alpha_coeffs_complex(double theta0, double lambda, int count);
std::vector<Complex> beta_coeffs_complex(double theta0, double lambda, int count);
}  // namespace detail

}  // namespace halfplane
