#pragma once

#include <array>
#include <complex>

#include "halfplane/mapping.hpp"
#include "halfplane/offset_array.hpp"
#include "halfplane/series_kernels.hpp"

namespace halfplane {

/// Everything on the right-hand side of the tunnel-boundary condition:
/// the contour constants D_j and excavated-area measure W, the closed-form
/// antiderivatives E_j, the gravity load term F, and the collocated Fourier
/// families I_k, J_k (and the per-radius H_k used by field reconstruction).

/// Constants D_1..D_3 of the indefinite integrals int C_j = E_j + D_j Ln(sigma):
///   D_1 = -2 a^2 r^2 / (1 - r^2)^2
///   D_2 =  2 a sum_k k b_k r^{2k}
///   D_3 = -(1/2) sum_k k b_k^2 (r^{2k} - r^{-2k})
std::array<double, 3> dj_constants(const MappingCoefficients& c);

/// Excavated area divided by 2 pi: W = -(D_1 + D_2 + D_3). The buoyancy
/// resultant is F_y = 2 pi W gamma. Throws if W is not positive.
double excavated_area(const MappingCoefficients& c);

/// Integrand split C_1..C_3 of -y dx/dsigma (times i), on |sigma| = 1.
std::array<Complex, 3> cj_eval(const MappingCoefficients& c, Complex sigma);

/// Closed-form antiderivatives E_1..E_3, principal log branch (both log
/// arguments stay in the right half-plane for r < 1).
std::array<Complex, 3> ej_eval(const MappingCoefficients& c, Complex sigma);

/// Gravity load term F(sigma) = -(k0/2) y(sigma)^2; real-valued on |sigma| = 1.
Complex f_eval(const MappingCoefficients& c, double k0, Complex sigma);

/// Boundary coordinate series x(sigma), y(sigma) of the mapped tunnel
/// periphery z(r sigma) = x + i y, continued analytically off |sigma| = 1.
struct BoundaryCoords {
  Complex x;
  Complex y;
};
BoundaryCoords boundary_coords(const MappingCoefficients& c, Complex sigma);

/// Collocated Fourier coefficients over the 2M+1 uniform matching points
/// theta_i = (i-1) 2 pi / (2M+1). Entries with |I_k| <= delta are zeroed to
/// keep the iteration stable against the r^l amplification of tiny tails.
OffsetArray<double> collocate_I(const Mapping& map, int M, double delta);
OffsetArray<double> collocate_I(const MappingCoefficients& c, int M,
                                double delta);

/// J_k with the gamma factor included: sum J_k sigma^k ~ gamma F + gamma sum E_j.
OffsetArray<double> collocate_J(const MappingCoefficients& c,
                                const MaterialParams& material, int M);

/// Per-radius analogue of I_k used in interior field reconstruction,
///   sum H_k sigma^k ~ -(z(rho sigma) - conj z(rho sigma)) / conj z'(rho sigma);
/// coincides with I at rho = r and vanishes identically at rho = 1.
OffsetArray<double> collocate_H(const Mapping& map, double rho, int M,
                                double delta);
OffsetArray<double> collocate_H(const MappingCoefficients& c, double rho, int M,
                                double delta);

/// Bundle consumed by the solver.
struct RhsExpansion {
  std::array<double, 3> D{};
  double W = 0.0;
  OffsetArray<double> I;  ///< dimensionless, delta-thresholded
  OffsetArray<double> J;  ///< kPa*m, includes the gamma factor
  int M = 0;
  double delta = 0.0;
};

RhsExpansion make_rhs_expansion(const MappingCoefficients& c,
                                const MaterialParams& material, int M,
                                double delta);

namespace detail {
// Complex DFT projection onto modes -M..M before the realness check.
OffsetArray<Complex> collocate_complex(const Mapping& map, double rho, int M);
}  // namespace detail

}  // namespace halfplane
