#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace halfplane {

/// Dense array indexed by a symmetric integer range [-half, half].
///
/// Series coefficients in this library (d_n, A_k, B_k, I_k, J_k, H_k) live on
/// symmetric index ranges; reads outside the range count as zero, matching the
/// truncation convention used throughout the solver.
template <class T>
class OffsetArray {
 public:
  OffsetArray() = default;
  explicit OffsetArray(int half, T init = T{})
      : half_(half), v_(static_cast<std::size_t>(2 * half + 1), init) {
    assert(half >= 0);
  }

  int half() const { return half_; }
  int min_index() const { return -half_; }
  int max_index() const { return half_; }
  std::size_t size() const { return v_.size(); }

  bool in_range(int k) const { return k >= -half_ && k <= half_; }

  T& operator[](int k) {
    assert(in_range(k));
    return v_[static_cast<std::size_t>(k + half_)];
  }
  const T& operator[](int k) const {
    assert(in_range(k));
    return v_[static_cast<std::size_t>(k + half_)];
  }

  /// Value at index k, or zero when k falls outside the truncation range.
  T at_or_zero(int k) const {
    return in_range(k) ? v_[static_cast<std::size_t>(k + half_)] : T{};
  }

  const std::vector<T>& raw() const { return v_; }
  std::vector<T>& raw() { return v_; }

  friend bool operator==(const OffsetArray&, const OffsetArray&) = default;

 private:
  int half_ = 0;
  std::vector<T> v_{T{}};
};

}  // namespace halfplane
