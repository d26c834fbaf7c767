#include "halfplane/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace halfplane {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};
}  // namespace

RectStress initial_stress(const MaterialParams& material, double y) {
  if (y > 0.0) {
    throw std::domain_error("initial_stress: y must be <= 0 (below the surface)");
  }
  return {material.k0 * material.gamma * y, material.gamma * y, 0.0};
}

Complex excavation_traction(const Mapping& map, const MaterialParams& material,
                            double theta) {
  const Complex zeta = std::polar(map.r(), theta);
  const Complex z = map.z(zeta);
  // Tangent of the periphery under increasing theta; the image runs
  // counterclockwise around the cavity, so the into-cavity normal is the
  // left normal (-y', x') of the tangent.
  const Complex z_dot = map.dz(zeta) * kI * zeta;
  const double speed = std::abs(z_dot);
  const double nx = -z_dot.imag() / speed;
  const double ny = z_dot.real() / speed;
  const double y = z.imag();
  const double xi = -material.k0 * material.gamma * y * nx;
  const double yi = -material.gamma * y * ny;
  return {xi, yi};
}

LanczosWindow lanczos_window(int N) {
  if (N < 1) throw std::domain_error("lanczos_window: N must be >= 1");
  LanczosWindow w;
  w.N = N;
  w.L.resize(static_cast<std::size_t>(N) + 1);
  w.L[0] = 1.0;
  for (int k = 1; k < N; ++k) {
    const double x = k * kPi / N;
    w.L[static_cast<std::size_t>(k)] = std::sin(x) / x;
  }
  w.L[static_cast<std::size_t>(N)] = 0.0;
  return w;
}

// Harmonic coefficient rows at fixed rho. For sigma = e^{i theta}:
//   s_theta + s_rho           = 4 Re[ i/z' sum_k trace[k] L_k sigma^k ]
//   s_rho + i t_rho_theta     =   i/z' sum_k full[k] L_k sigma^k
//   g = 2G (u + iv) = i sum_{k>=1} (gp[k] sigma^k - gn[k] sigma^-k) L_k
//       + i C0_eff - i sum_k gh[k] L_k sigma^k + i (kappa A_-1 - B_-1) ln rho
struct FieldEvaluator::Row {
  double rho = 0.0;
  OffsetArray<double> trace;  // A_k rho^k
  OffsetArray<double> full;   // A_k rho^k - B_k rho^{-k-2} + (k+1) sum_l H_l A_{l-k-1} rho^{l-k-2}
  OffsetArray<double> gh;     // sum_l H_l A_{l-k} rho^{l-k}
  std::vector<double> gp;     // (kappa A_{k-1} rho^k + B_{k-1} rho^{-k})/k, k = 1..N
  std::vector<double> gn;     // (kappa A_{-k-1} rho^{-k} + B_{-k-1} rho^k)/k
};

FieldEvaluator::FieldEvaluator(const Mapping& map,
                               const SpectralSolution& solution,
                               const MaterialParams& material,
                               FieldOptions options)
    : map_(map),
      sol_(solution),
      mat_(material),
      opt_(options),
      win_(lanczos_window(solution.order())),
      kappa_(material.kappa()) {
  const int N = sol_.order();
  // With filtering on, the displacement pin g(1) = 0 must hold for the
  // filtered series, so the constant is accumulated with the same weights
  // over the same k range as the evaluated series.
  double c0 = 0.0;
  for (int k = 1; k <= N; ++k) {
    const double w = opt_.lanczos ? win_(k) : 1.0;
    c0 += w * (kappa_ * sol_.A.at_or_zero(-k - 1) + sol_.B.at_or_zero(-k - 1)) / k;
    c0 -= w * (kappa_ * sol_.A.at_or_zero(k - 1) + sol_.B.at_or_zero(k - 1)) / k;
  }
  c0_effective_ = c0;
}

const FieldEvaluator::Row& FieldEvaluator::row_for(double rho) const {
  const long long key = std::llround(rho * 1e12);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = row_cache_.find(key);
    if (it != row_cache_.end()) return *it->second;
  }

  const int N = sol_.order();
  auto row = std::make_shared<Row>();
  row->rho = rho;
  row->trace = OffsetArray<double>(N);
  row->full = OffsetArray<double>(N);
  row->gh = OffsetArray<double>(N);
  row->gp.assign(static_cast<std::size_t>(N) + 1, 0.0);
  row->gn.assign(static_cast<std::size_t>(N) + 1, 0.0);

  OffsetArray<double> H(opt_.M);
  if (rho < 1.0 - 1e-12) {
    H = collocate_H(map_, rho, opt_.M, opt_.delta);
  }
  std::vector<std::pair<int, double>> h_nz;
  for (int l = -opt_.M; l <= opt_.M; ++l) {
    if (H[l] != 0.0) h_nz.emplace_back(l, H[l]);
  }

  for (int k = -N; k <= N; ++k) {
    const double ak = sol_.A[k];
    row->trace[k] = ak * std::pow(rho, k);
    double hsum = 0.0;
    for (const auto& [l, hl] : h_nz) {
      const int j = l - k - 1;
      if (j < -N || j > N) continue;
      hsum += hl * sol_.A[j] * std::pow(rho, l - k - 2);
    }
    row->full[k] = ak * std::pow(rho, k) - sol_.B[k] * std::pow(rho, -k - 2) +
                   (k + 1) * hsum;
    double ghsum = 0.0;
    for (const auto& [l, hl] : h_nz) {
      const int j = l - k;
      if (j < -N || j > N) continue;
      ghsum += hl * sol_.A[j] * std::pow(rho, l - k);
    }
    row->gh[k] = ghsum;
  }
  for (int k = 1; k <= N; ++k) {
    row->gp[static_cast<std::size_t>(k)] =
        (kappa_ * sol_.A.at_or_zero(k - 1) * std::pow(rho, k) +
         sol_.B.at_or_zero(k - 1) * std::pow(rho, -k)) /
        k;
    row->gn[static_cast<std::size_t>(k)] =
        (kappa_ * sol_.A.at_or_zero(-k - 1) * std::pow(rho, -k) +
         sol_.B.at_or_zero(-k - 1) * std::pow(rho, k)) /
        k;
  }

  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto [it, inserted] = row_cache_.emplace(key, std::move(row));
  return *it->second;
}

PolarStress FieldEvaluator::stress_at(const AnnulusPoint& p) const {
  return sample(p).induced_polar;
}

Displacement FieldEvaluator::displacement_at(const AnnulusPoint& p) const {
  const Row& row = row_for(p.rho);
  const int N = sol_.order();
  const Complex sigma = std::polar(1.0, p.theta);
  Complex g{0.0, 0.0};
  Complex sp{1.0, 0.0};
  Complex sm{1.0, 0.0};
  const Complex sinv = std::conj(sigma);
  for (int k = 1; k <= N; ++k) {
    sp *= sigma;
    sm *= sinv;
    const double w = opt_.lanczos ? win_(k) : 1.0;
    g += kI * w *
         (row.gp[static_cast<std::size_t>(k)] * sp -
          row.gn[static_cast<std::size_t>(k)] * sm);
  }
  Complex spow = std::pow(sigma, -N - 1);
  for (int k = -N; k <= N; ++k) {
    spow *= sigma;
    if (row.gh[k] == 0.0) continue;
    const double w = opt_.lanczos ? win_(k) : 1.0;
    g -= kI * w * row.gh[k] * spow;
  }
  g += kI * c0_effective_;
  g += kI * (kappa_ * sol_.A.at_or_zero(-1) - sol_.B.at_or_zero(-1)) *
       std::log(p.rho);
  const double two_g = 2.0 * mat_.shear_modulus();
  return {g.real() / two_g, g.imag() / two_g};
}

FieldSample FieldEvaluator::sample_with_row(const Row& row,
                                            const AnnulusPoint& p) const {
  const Complex zeta = p.zeta();
  if (std::abs(zeta - Complex{1.0, 0.0}) <
      2.0 * std::sin(opt_.exclusion_cone / 2.0)) {
    throw std::domain_error(
        "fields: point inside the exclusion cone around zeta = 1");
  }
  const int N = sol_.order();
  const Complex sigma = std::polar(1.0, p.theta);
  const Complex zp = map_.dz(zeta);
  if (std::abs(zp) < 1e-12 * map_.a()) {
    throw std::domain_error("fields: z'(zeta) vanishes at the sample point");
  }

  Complex trace_sum{0.0, 0.0};
  Complex full_sum{0.0, 0.0};
  Complex spow = std::pow(sigma, -N - 1);
  for (int k = -N; k <= N; ++k) {
    spow *= sigma;
    const double w = opt_.lanczos ? win_(k) : 1.0;
    trace_sum += w * row.trace[k] * spow;
    full_sum += w * row.full[k] * spow;
  }
  const double trace = 4.0 * (kI / zp * trace_sum).real();
  const Complex rho_tau = kI / zp * full_sum;

  FieldSample s;
  s.annulus = p;
  s.physical = map_.z(zeta);
  s.induced_polar.s_rho = rho_tau.real();
  s.induced_polar.t_rho_theta = rho_tau.imag();
  s.induced_polar.s_theta = trace - s.induced_polar.s_rho;
  s.displacement = displacement_at(p);
  complete_stresses(map_, mat_, s);
  return s;
}

FieldSample FieldEvaluator::sample(const AnnulusPoint& p) const {
  if (p.rho < map_.r() * (1.0 - 1e-12) || p.rho > 1.0 + 1e-12) {
    throw std::domain_error("fields: rho outside [r, 1]");
  }
  return sample_with_row(row_for(p.rho), p);
}

std::vector<FieldSample> FieldEvaluator::surface_profile(int n_samples) const {
  if (n_samples < 16) {
    throw std::domain_error("surface_profile: need at least 16 samples");
  }
  const Row& row = row_for(1.0);
  const int half = n_samples / 2;
  const double cone = opt_.exclusion_cone;
  std::vector<FieldSample> out;
  out.reserve(static_cast<std::size_t>(2 * half));
  for (int j = half; j >= 1; --j) {
    const double th = cone + (j - 0.5) * (kPi - cone) / half;
    out.push_back(sample_with_row(row, {1.0, -th}));
  }
  for (int j = 1; j <= half; ++j) {
    const double th = cone + (j - 0.5) * (kPi - cone) / half;
    out.push_back(sample_with_row(row, {1.0, th}));
  }
  return out;
}

std::vector<FieldSample> FieldEvaluator::periphery_profile(
    int n_samples) const {
  if (n_samples < 64) {
    throw std::domain_error("periphery_profile: need at least 64 samples");
  }
  const Row& row = row_for(map_.r());
  std::vector<FieldSample> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  for (int j = 0; j < n_samples; ++j) {
    const double th = -kPi + (j + 0.5) * 2.0 * kPi / n_samples;
    out.push_back(sample_with_row(row, {map_.r(), th}));
  }
  return out;
}

std::vector<FieldSample> FieldEvaluator::grid(int n_rho, int n_theta) const {
  if (n_rho < 2 || n_theta < 8) {
    throw std::domain_error("grid: need n_rho >= 2 and n_theta >= 8");
  }
  std::vector<FieldSample> out;
  out.reserve(static_cast<std::size_t>(n_rho) * n_theta);
  const double cone_chord = 2.0 * std::sin(opt_.exclusion_cone / 2.0);
  for (int ir = 0; ir < n_rho; ++ir) {
    const double rho = map_.r() + (1.0 - map_.r()) * ir / (n_rho - 1);
    const Row& row = row_for(rho);
    for (int it = 0; it < n_theta; ++it) {
      const double th = -kPi + (it + 0.5) * 2.0 * kPi / n_theta;
      if (std::abs(std::polar(rho, th) - Complex{1.0, 0.0}) <= cone_chord) {
        continue;  // flagged gap around zeta = 1
      }
      out.push_back(sample_with_row(row, {rho, th}));
    }
  }
  return out;
}

void complete_stresses(const Mapping& map, const MaterialParams& material,
                       FieldSample& s) {
  const Complex zeta = s.annulus.zeta();
  const Complex zp = map.dz(zeta);
  const Complex rot = std::conj(zeta) / zeta * std::conj(zp) / zp;

  const double trace = s.induced_polar.s_theta + s.induced_polar.s_rho;
  const Complex dev_polar{s.induced_polar.s_theta - s.induced_polar.s_rho,
                          2.0 * s.induced_polar.t_rho_theta};
  const Complex dev_rect = dev_polar * rot;  // sigma_y - sigma_x + 2 i tau_xy
  s.induced_rect.s_y = 0.5 * (trace + dev_rect.real());
  s.induced_rect.s_x = 0.5 * (trace - dev_rect.real());
  s.induced_rect.t_xy = 0.5 * dev_rect.imag();

  double y = s.physical.imag();
  if (y > 0.0) {
    if (y > 1e-6 * map.a()) {
      throw std::domain_error("fields: sample above the ground surface");
    }
    y = 0.0;  // round-off on the mapped surface
  }
  const RectStress init = initial_stress(material, y);
  s.total_rect.s_x = s.induced_rect.s_x + init.s_x;
  s.total_rect.s_y = s.induced_rect.s_y + init.s_y;
  s.total_rect.t_xy = s.induced_rect.t_xy + init.t_xy;

  const double trace_t = s.total_rect.s_x + s.total_rect.s_y;
  const Complex dev_rect_t{s.total_rect.s_y - s.total_rect.s_x,
                           2.0 * s.total_rect.t_xy};
  const Complex dev_polar_t = dev_rect_t / rot;
  s.total_polar.s_theta = 0.5 * (trace_t + dev_polar_t.real());
  s.total_polar.s_rho = 0.5 * (trace_t - dev_polar_t.real());
  s.total_polar.t_rho_theta = 0.5 * dev_polar_t.imag();
}

}  // namespace halfplane
