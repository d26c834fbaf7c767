#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "halfplane/mapping.hpp"

namespace halfplane::detail {

/// Scalar-generic closed forms of the boundary integrand split C_j, its
/// antiderivatives E_j, the contour constants D_j, and the periphery
/// coordinate series. The double instantiation backs the public API; the
/// long double one exists because the E_j terms cancel catastrophically for
/// deep tunnels (b_k r^{-2k} reaches 1e8) and verifying the antiderivative
/// identity needs more headroom than the values themselves.
template <class T>
struct TractionForms {
  using C = std::complex<T>;

  T a;
  T r;
  std::vector<T> b;

  explicit TractionForms(const MappingCoefficients& mc)
      : a(static_cast<T>(mc.a)), r(static_cast<T>(mc.r)) {
    b.reserve(mc.b.size());
    for (double v : mc.b) b.push_back(static_cast<T>(v));
  }

  int K() const { return static_cast<int>(b.size()); }

  static T ipow(T x, int n) {
    T acc = T(1);
    const T base = n >= 0 ? x : T(1) / x;
    for (int i = 0; i < (n >= 0 ? n : -n); ++i) acc *= base;
    return acc;
  }
  static C cpow(C s, int n) {
    C acc = C(T(1), T(0));
    const C base = n >= 0 ? s : C(T(1), T(0)) / s;
    for (int i = 0; i < (n >= 0 ? n : -n); ++i) acc *= base;
    return acc;
  }

  C log_ratio(C sigma) const {
    return std::log(C(T(1), T(0)) - r / sigma) -
           std::log(C(T(1), T(0)) - r * sigma);
  }

  std::array<T, 3> dj() const {
    const T r2 = r * r;
    const T one = T(1);
    T d1 = -T(2) * a * a * r2 / ((one - r2) * (one - r2));
    T d2 = T(0);
    T d3 = T(0);
    for (int k = 1; k <= K(); ++k) {
      const T bk = b[static_cast<std::size_t>(k - 1)];
      d2 += T(2) * a * T(k) * bk * ipow(r, 2 * k);
      d3 += -T(0.5) * T(k) * bk * bk * (ipow(r, 2 * k) - ipow(r, -2 * k));
    }
    return {d1, d2, d3};
  }

  /// x(sigma), y(sigma) of the mapped periphery, analytic off sigma = r, 1/r.
  std::array<C, 2> xy(C sigma) const {
    const C one = C(T(1), T(0));
    const C i = C(T(0), T(1));
    const C p = (one + r * sigma) / (one - r * sigma);
    const C m = (sigma + r) / (sigma - r);
    C x = -i * (a / T(2)) * (p - m);
    C y = -(a / T(2)) * (p + m);
    for (int k = 1; k <= K(); ++k) {
      const T bk = b[static_cast<std::size_t>(k - 1)];
      const C sk = cpow(sigma, k);
      const C smk = cpow(sigma, -k);
      x += i * (bk / T(2)) * (ipow(r, k) + ipow(r, -k)) * (sk - smk);
      y += (bk / T(2)) * (ipow(r, k) - ipow(r, -k)) * (sk + smk);
    }
    return {x, y};
  }

  C f(T k0, C sigma) const {
    const C y = xy(sigma)[1];
    return -(k0 / T(2)) * y * y;
  }

  std::array<C, 3> cj(C sigma) const {
    const C one = C(T(1), T(0));
    const C q1 = one - r * sigma;
    const C q2 = sigma - r;
    const C c1 = -a * a * r *
                 (one / (q1 * q1 * q1) + r / (q2 * q2 * q2) +
                  (T(1) - r * r) / (q1 * q1 * q2 * q2));
    C c2 = C(T(0), T(0));
    C c3 = C(T(0), T(0));
    if (K() > 0) {
      const C p = (one + r * sigma) / q1;
      const C m = (sigma + r) / q2;
      const C sq1 = one / (q1 * q1);
      const C sq2 = one / (q2 * q2);
      for (int k = 1; k <= K(); ++k) {
        const T bk = b[static_cast<std::size_t>(k - 1)];
        const T rp = ipow(r, k) + ipow(r, -k);
        const T rm = ipow(r, k) - ipow(r, -k);
        const C sk1 = cpow(sigma, k - 1);
        const C smk1 = cpow(sigma, -k - 1);
        c2 += (a / T(4)) * T(k) * bk * rp * ((p + m) * (sk1 + smk1));
        c2 += (a / T(2)) * bk * rm * r * (cpow(sigma, k) + cpow(sigma, -k)) *
              (sq1 + sq2);
        for (int l = 1; l <= K(); ++l) {
          const T bl = b[static_cast<std::size_t>(l - 1)];
          c3 += -T(0.25) * bk * rm * T(l) * bl * (ipow(r, l) + ipow(r, -l)) *
                (cpow(sigma, k + l - 1) + cpow(sigma, -k - l - 1) +
                 cpow(sigma, k - l - 1) + cpow(sigma, -k + l - 1));
        }
      }
    }
    return {c1, c2, c3};
  }

  std::array<C, 3> ej(C sigma) const {
    const C one = C(T(1), T(0));
    const T a2 = a * a;
    const T r2 = r * r;
    const C q1 = one - r * sigma;
    const C q2 = sigma - r;
    const C lr = log_ratio(sigma);
    const C e1 = -a2 / (T(2) * q1 * q1) + a2 * r2 / (T(2) * q2 * q2) +
                 a2 * r / ((T(1) - r2) * q2) - a2 * r2 / ((T(1) - r2) * q1) -
                 T(2) * a2 * r2 / ((T(1) - r2) * (T(1) - r2)) * lr;
    C e2 = C(T(0), T(0));
    C e3 = C(T(0), T(0));
    if (K() > 0) {
      const C inv_q1 = one / q1;
      const C r_over_q2 = r / q2;
      for (int k = 1; k <= K(); ++k) {
        const T bk = b[static_cast<std::size_t>(k - 1)];
        e2 += a * bk * (ipow(r, 2 * k) - ipow(r, -2 * k)) * (inv_q1 - r_over_q2);
        for (int l = 1; l <= k; ++l) {
          e2 += a * bk * (T(k - l) / T(l)) *
                (ipow(r, 2 * k - l) - ipow(r, -2 * k + l)) *
                (cpow(sigma, l) - cpow(sigma, -l));
        }
        e2 += a * T(k) * bk * (ipow(r, 2 * k) + ipow(r, -2 * k)) * lr;
        e2 += (a / T(2)) * bk * (ipow(r, k) + ipow(r, -k)) *
              (inv_q1 + r_over_q2) * (cpow(sigma, k) - cpow(sigma, -k));

        const T rmk = ipow(r, k) - ipow(r, -k);
        for (int l = 1; l <= K(); ++l) {
          if (l == k) continue;
          const T bl = b[static_cast<std::size_t>(l - 1)];
          e3 += -T(0.25) * bk * rmk * T(l) * bl * (ipow(r, l) + ipow(r, -l)) *
                (cpow(sigma, k + l) / T(k + l) -
                 cpow(sigma, -k - l) / T(k + l) +
                 cpow(sigma, k - l) / T(k - l) +
                 cpow(sigma, -k + l) / T(l - k));
        }
        e3 += -T(0.125) * bk * bk * (ipow(r, 2 * k) - ipow(r, -2 * k)) *
              (cpow(sigma, 2 * k) - cpow(sigma, -2 * k));
      }
    }
    return {e1, e2, e3};
  }

  /// Magnitude of the largest single term entering E_2/E_3; the achievable
  /// absolute accuracy of the double evaluation is this times epsilon.
  T cancellation_scale() const {
    T peak = a * a;
    for (int k = 1; k <= K(); ++k) {
      const T bk = std::abs(b[static_cast<std::size_t>(k - 1)]);
      peak = std::max(peak, a * bk * ipow(r, -2 * k));
    }
    return peak;
  }
};

}  // namespace halfplane::detail
