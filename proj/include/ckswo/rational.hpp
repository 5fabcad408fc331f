#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ckswo {

/// Exact non-negative-or-signed rational with an explicit +infinity state.
///
/// Values are kept normalized (gcd-reduced, positive denominator). Arithmetic
/// runs through 128-bit intermediates and throws std::overflow_error when a
/// result does not fit back into 64 bits. Infinity is only meaningful as a
/// distance sentinel: it compares greater than every finite value and absorbs
/// addition.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  static constexpr Rational infinity() {
    Rational r;
    r.num_ = 1;
    r.den_ = 0;
    return r;
  }

  /// Parses "3", "-2", "1.25", "3/4" (and "inf"). Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  [[nodiscard]] constexpr bool is_infinite() const { return den_ == 0; }
  [[nodiscard]] constexpr bool is_finite() const { return den_ != 0; }
  [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }
  [[nodiscard]] constexpr std::int64_t num() const { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const { return den_; }

  [[nodiscard]] double to_double() const;
  /// Integral value; throws std::domain_error unless is_integer().
  [[nodiscard]] std::int64_t to_integer() const;
  /// Shortest exact text: integer, terminating decimal, or "p/q".
  [[nodiscard]] std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Smallest integer >= r (r finite).
std::int64_t ceil_to_integer(const Rational& r);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace ckswo

template <>
struct std::hash<ckswo::Rational> {
  std::size_t operator()(const ckswo::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
  }
};
