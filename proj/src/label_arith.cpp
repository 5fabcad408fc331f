#include "ckswo/label_arith.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace ckswo {

using boost::multiprecision::cpp_int;
using boost::multiprecision::pow;

namespace {

// Exponent estimates closer than this to an integer are settled exactly.
constexpr double kTieBand = 1e-6;

bool near_integer(double x) { return std::fabs(x - std::round(x)) < kTieBand * std::max(1.0, std::fabs(x)); }

}  // namespace

LabelScale LabelScale::exact(std::int64_t rho) {
  if (rho < 0) throw std::invalid_argument("rho must be non-negative");
  LabelScale s;
  s.mode_ = LabelMode::Exact;
  s.rho_ = rho;
  if (rho >= INT_MAX) throw std::invalid_argument("rho too large for exact labels");
  s.max_code_ = static_cast<int>(rho);
  return s;
}

LabelScale LabelScale::approx(std::int64_t rho, const Rational& eps, int height) {
  if (rho < 0) throw std::invalid_argument("rho must be non-negative");
  if (eps <= Rational(0) || eps.is_infinite()) throw std::invalid_argument("eps must be positive");
  if (height < 1) throw std::invalid_argument("height must be positive");
  LabelScale s;
  s.mode_ = LabelMode::Approx;
  s.rho_ = rho;
  s.eps_ = eps;
  s.height_ = height;
  s.delta_ = eps / Rational(2 * static_cast<std::int64_t>(height));
  s.log_base_ = std::log1p(s.delta_.to_double());

  // Largest i with (1+delta)^i <= (1+eps) rho.
  const Rational cap = (Rational(1) + eps) * Rational(rho);
  if (cap < Rational(1)) return s;
  const cpp_int A = s.delta_.den() + s.delta_.num(), B = s.delta_.den();
  auto fits = [&](std::int64_t i) {
    return cpp_int(pow(A, static_cast<unsigned>(i))) * cap.den() <= cpp_int(pow(B, static_cast<unsigned>(i))) * cap.num();
  };
  double est = std::log(cap.to_double()) / s.log_base_;
  std::int64_t i = static_cast<std::int64_t>(std::floor(est));
  if (near_integer(est)) {
    i = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::round(est)) - 1);
    while (fits(i + 1)) ++i;
  }
  if (i + 1 >= INT_MAX) throw std::invalid_argument("label range too large");
  s.max_code_ = static_cast<int>(i + 1);
  return s;
}

int LabelScale::threshold(int v, std::int64_t d) const {
  if (v == kInfCode) return kInfCode;
  if (d < 0 || d >= (std::int64_t{1} << 32)) throw std::invalid_argument("edge length out of label range");
  const std::uint64_t key = (static_cast<std::uint64_t>(v) << 32) | static_cast<std::uint64_t>(d);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  int t = mode_ == LabelMode::Exact ? exact_threshold(v, d) : approx_threshold(v, d);
  memo_.emplace(key, t);
  return t;
}

int LabelScale::exact_threshold(int v, std::int64_t d) const {
  std::int64_t t = std::max<std::int64_t>(1, (v == kZeroCode ? 0 : v) + d);
  return t <= max_code_ ? static_cast<int>(t) : kInfCode;
}

bool LabelScale::power_ge(std::int64_t i, std::int64_t j, std::int64_t d) const {
  const cpp_int A = delta_.den() + delta_.num(), B = delta_.den();
  const cpp_int r = cpp_int(d) * eps_.den(), s = cpp_int(eps_.den()) + eps_.num();
  const auto ui = static_cast<unsigned>(i);
  if (j < 0) return s * pow(A, ui) >= r * pow(B, ui);
  const auto uj = static_cast<unsigned>(j);
  return s * pow(A, ui) * pow(B, uj) >= s * pow(A, uj) * pow(B, ui) + r * pow(B, ui + uj);
}

int LabelScale::approx_threshold(int v, std::int64_t d) const {
  const std::int64_t j = v == kZeroCode ? -1 : v - 1;
  const double step = static_cast<double>(d) * eps_.den() / static_cast<double>(eps_.den() + eps_.num());
  const double target = (j < 0 ? 0.0 : std::exp(static_cast<double>(j) * log_base_)) + step;
  const double est = std::log(target) / log_base_;
  std::int64_t i = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(est)));
  if (near_integer(est) || est < kTieBand) {
    i = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::round(est)) - 1);
    while (!power_ge(i, j, d)) {
      if (i + 1 > max_code_) return kInfCode;
      ++i;
    }
  }
  return i + 1 <= max_code_ ? static_cast<int>(i + 1) : kInfCode;
}

double LabelScale::approx_value(int code) const {
  if (code == kZeroCode) return 0.0;
  if (code == kInfCode) return HUGE_VAL;
  if (mode_ == LabelMode::Exact) return code;
  return std::exp(static_cast<double>(code - 1) * log_base_);
}

std::string LabelScale::describe(int code) const {
  if (code == kZeroCode) return "0";
  if (code == kInfCode) return "inf";
  if (mode_ == LabelMode::Exact) return std::to_string(code);
  return "(1+" + delta_.to_string() + ")^" + std::to_string(code - 1);
}

}  // namespace ckswo
