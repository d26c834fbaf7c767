#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "halfplane/boundary_expansion.hpp"
#include "halfplane/mapping.hpp"
#include "halfplane/rh_solver.hpp"

namespace halfplane {

struct PolarStress {
  double s_rho = 0.0;
  double s_theta = 0.0;
  double t_rho_theta = 0.0;
};

struct RectStress {
  double s_x = 0.0;
  double s_y = 0.0;
  double t_xy = 0.0;
};

struct Displacement {
  double u = 0.0;
  double v = 0.0;
};

/// One evaluated point: mapped/physical coordinates, excavation-induced
/// stresses in both frames, totals after superposing the initial field, and
/// displacement. Polar/rect pairs share the first invariant exactly.
struct FieldSample {
  AnnulusPoint annulus;
  Complex physical{0.0, 0.0};
  PolarStress induced_polar;
  RectStress induced_rect;
  RectStress total_rect;
  PolarStress total_polar;
  Displacement displacement;
};

/// Initial geostatic stresses at elevation y <= 0 (kPa):
/// sigma_x0 = k0 gamma y, sigma_y0 = gamma y, tau0 = 0.
RectStress initial_stress(const MaterialParams& material, double y);

/// Excavation traction X_i + i Y_i per unit arc length at the periphery point
/// z(r e^{i theta}), with the normal pointing into the cavity.
Complex excavation_traction(const Mapping& map, const MaterialParams& material,
                            double theta);

/// Lanczos sigma window L_k = sin(k pi / N)/(k pi / N), L_0 = 1, L_N = 0.
struct LanczosWindow {
  int N = 0;
  std::vector<double> L;  ///< index 0..N

  double operator()(int k) const {
    const int m = k < 0 ? -k : k;
    return m <= N ? L[static_cast<std::size_t>(m)] : 0.0;
  }
};

LanczosWindow lanczos_window(int N);

struct FieldOptions {
  bool lanczos = true;
  int M = 360;                ///< collocation order for per-radius H rows
  double delta = 1e-12;       ///< H zeroing threshold (same as the solver's)
  double exclusion_cone = 0.25 * std::numbers::pi / 180.0;  ///< around zeta = 1

  static FieldOptions from_solver(const SolverConfig& cfg) {
    FieldOptions o;
    o.lanczos = cfg.lanczos;
    o.M = cfg.M;
    o.delta = cfg.delta;
    return o;
  }
};

/// Evaluates stress and displacement fields from a converged solution.
/// Per-radius harmonic rows are cached keyed on rho quantized to 1e-12; the
/// cache is mutex-guarded so samples may be drawn concurrently.
class FieldEvaluator {
 public:
  FieldEvaluator(const Mapping& map, const SpectralSolution& solution,
                 const MaterialParams& material, FieldOptions options);

  /// Excavation-induced polar stresses at an interior point.
  PolarStress stress_at(const AnnulusPoint& p) const;

  /// Displacement (u, v); finite on the whole closed annulus including
  /// sigma = 1, where it vanishes by the C0 pin.
  Displacement displacement_at(const AnnulusPoint& p) const;

  /// Full record including rect/total frames; rejects points inside the
  /// exclusion cone around zeta = 1 (z is unbounded there).
  FieldSample sample(const AnnulusPoint& p) const;

  /// Ground-surface profile: symmetric theta samples of (cone, pi] mirrored
  /// to negative theta, rho = 1, ordered by increasing theta.
  std::vector<FieldSample> surface_profile(int n_samples) const;

  /// Tunnel-periphery profile at rho = r, uniform midpoint theta grid.
  std::vector<FieldSample> periphery_profile(int n_samples) const;

  /// Annulus grid; points inside the exclusion cone are skipped.
  std::vector<FieldSample> grid(int n_rho, int n_theta) const;

  bool lanczos_enabled() const { return opt_.lanczos; }
  const Mapping& mapping() const { return map_; }
  const MaterialParams& material() const { return mat_; }

 private:
  struct Row;  // per-rho harmonic coefficients
  const Row& row_for(double rho) const;
  FieldSample sample_with_row(const Row& row, const AnnulusPoint& p) const;

  Mapping map_;
  SpectralSolution sol_;
  MaterialParams mat_;
  FieldOptions opt_;
  LanczosWindow win_;
  double c0_effective_;  // filter-consistent C0, keeps g(1) = 0 either way
  double kappa_;

  mutable std::mutex cache_mutex_;
  mutable std::map<long long, std::shared_ptr<const Row>> row_cache_;
};

/// Superposition and frame rotations for one point: fills induced rect, total
/// rect, and total polar from induced polar stresses.
void complete_stresses(const Mapping& map, const MaterialParams& material,
                       FieldSample& s);

}  // namespace halfplane
