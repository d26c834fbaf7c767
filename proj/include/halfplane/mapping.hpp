#pragma once

#include <complex>
#include <vector>

namespace halfplane {

using Complex = std::complex<double>;

/// Parameters of the annulus -> half-plane conformal map
///
///   z(zeta) = -i a (1 + zeta)/(1 - zeta) + i sum_k b_k (zeta^k - zeta^-k)
///
/// The unit circle |zeta| = 1 maps onto the ground surface y = 0, the inner
/// circle |zeta| = r onto the tunnel periphery, and zeta = 1 onto infinity.
/// All b_k = 0 degenerates to the classical circular-tunnel map.
struct MappingCoefficients {
  double a = 1.0;          ///< scale length (m)
  double r = 0.5;          ///< inner annulus radius, 0 < r < 1
  std::vector<double> b{};  ///< shape terms b_1..b_K (m)

  int term_count() const { return static_cast<int>(b.size()); }
};

/// Point of the closed annulus r <= rho <= 1 in polar form.
struct AnnulusPoint {
  double rho = 1.0;
  double theta = 0.0;  ///< radians, (-pi, pi]

  Complex zeta() const { return std::polar(rho, theta); }
};

/// Validated conformal map. Construction checks that the coefficients define
/// a non-degenerate map (z' != 0 on a dense annulus grid) whose unit circle
/// lands on the real axis; invalid coefficients are rejected immediately.
/// Immutable after construction; evaluation is pure and thread-safe.
class Mapping {
 public:
  explicit Mapping(MappingCoefficients coeffs);

  const MappingCoefficients& coeffs() const { return c_; }
  double a() const { return c_.a; }
  double r() const { return c_.r; }

  /// z(zeta). Domain: r <= |zeta| <= 1/r, zeta != 1 (maps to infinity).
  Complex z(Complex zeta) const;
  /// z'(zeta) = -2ia/(1-zeta)^2 + i sum_k k b_k (zeta^{k-1} + zeta^{-k-1})
  Complex dz(Complex zeta) const;
  /// z''(zeta) = -4ia/(1-zeta)^3 + i sum_k k b_k ((k-1) zeta^{k-2} - (k+1) zeta^{-k-2})
  Complex d2z(Complex zeta) const;

  /// Half-width x0 of the traction-free surface segment for a constraining
  /// arc of polar half-angle theta0:
  ///   x0 = a sin(theta0)/(1 - cos(theta0)) - 2 sum_k b_k sin(k theta0)
  double free_surface_halfwidth(double theta0) const;

  /// Depth of the shallowest periphery point, -max_theta Im z(r e^{i theta}).
  double crown_depth() const;

 private:
  void check_domain(Complex zeta) const;
  void validate() const;

  MappingCoefficients c_;
};

/// Preset mapping coefficients for the five reference tunnel shapes
/// (1-2: vertical-wall semicircles, 3-4: horseshoes, 5: 5 m circle at 10 m).
MappingCoefficients load_case(int id);

inline constexpr int kPresetCount = 5;

}  // namespace halfplane
