#pragma once

#include <compare>
#include <concepts>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace coinstop {

using Integer = mpz_class;

// Raised for inputs outside a function's mathematical domain (p outside
// (0,1), non-positive targets, division by zero, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact rational number, always held in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral T>
  Rational(T v) : value_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

  template <std::unsigned_integral T>
  Rational(T v) : value_(static_cast<unsigned long>(v)) {}  // NOLINT(google-explicit-constructor)

  Rational(const Integer& v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  Rational(const Integer& numerator, const Integer& denominator);

  explicit Rational(const mpq_class& v);

  // Skips reduction; `v` must already be in lowest terms.
  static Rational from_canonical(mpq_class v);

  /// Accepts "A/B", integers, decimals ("0.125", "-3.5") and decimal
  /// scientific notation ("1e-12"). Decimals convert exactly.
  static Rational parse(std::string_view text);

  [[nodiscard]] Integer numerator() const { return value_.get_num(); }
  [[nodiscard]] Integer denominator() const { return value_.get_den(); }
  [[nodiscard]] const mpq_class& gmp() const { return value_; }

  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }

  [[nodiscard]] double to_double() const { return value_.get_d(); }

  /// "num/den", or just "num" for integers.
  [[nodiscard]] std::string str() const;

  [[nodiscard]] Rational reciprocal() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& x);

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

Rational pow(const Rational& base, long exponent);
Rational abs(const Rational& x);

std::ostream& operator<<(std::ostream& os, const Rational& x);

}  // namespace coinstop
