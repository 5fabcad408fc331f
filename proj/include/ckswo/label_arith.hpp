#pragma once

#include <climits>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "ckswo/rational.hpp"

namespace ckswo {

enum class LabelMode { Exact, Approx };

/// Label codes shared by both modes.  kZeroCode marks an opened supplier,
/// kInfCode an unreached vertex.  A finite code c >= 1 stands for the value c
/// in exact mode and for (1 + delta)^(c - 1) in approximate mode.
inline constexpr int kZeroCode = 0;
inline constexpr int kInfCode = INT_MAX;

inline bool finite_nonzero(int code) { return code != kZeroCode && code != kInfCode; }

/// Label value set for one cost rho, with the satisfaction predicate
///   exact:  dl(u) >= dl(v) + d
///   approx: dl(u) >= dl(v) + d / (1 + eps),  delta = eps / (2 height).
/// Comparisons of powers are exact; a floating estimate only picks where to look.
class LabelScale {
 public:
  static LabelScale exact(std::int64_t rho);
  static LabelScale approx(std::int64_t rho, const Rational& eps, int height);

  [[nodiscard]] LabelMode mode() const { return mode_; }
  [[nodiscard]] std::int64_t rho() const { return rho_; }
  [[nodiscard]] const Rational& eps() const { return eps_; }
  [[nodiscard]] const Rational& delta() const { return delta_; }
  [[nodiscard]] int height() const { return height_; }
  /// Largest finite code; 0 when no positive value fits under the cap.
  [[nodiscard]] int max_code() const { return max_code_; }

  /// Least finite code u with the predicate true against a neighbour labelled v
  /// at distance d; kInfCode if v is infinite or no code fits.
  int threshold(int v, std::int64_t d) const;
  bool satisfies(int u, int v, std::int64_t d) const {
    return finite_nonzero(u) && v != kInfCode && threshold(v, d) <= u;
  }

  [[nodiscard]] double approx_value(int code) const;
  /// "0", "inf", the integer value, or "(1+delta)^i".
  [[nodiscard]] std::string describe(int code) const;

 private:
  LabelScale() = default;
  int exact_threshold(int v, std::int64_t d) const;
  int approx_threshold(int v, std::int64_t d) const;
  // value(code_i) >= value(code_j) + d/(1+eps), exponents i and j (j < 0 for the zero label).
  bool power_ge(std::int64_t i, std::int64_t j, std::int64_t d) const;

  LabelMode mode_ = LabelMode::Exact;
  std::int64_t rho_ = 0;
  Rational eps_{0};
  Rational delta_{0};
  int height_ = 1;
  int max_code_ = 0;
  double log_base_ = 0;
  mutable std::unordered_map<std::uint64_t, int> memo_;
};

}  // namespace ckswo
