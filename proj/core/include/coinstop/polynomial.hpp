#pragma once

#include <initializer_list>
#include <vector>

#include "coinstop/rational.hpp"

namespace coinstop {

/// Dense univariate polynomial with exact rational coefficients; index i
/// holds the coefficient of x^i. Trailing zeros are always trimmed.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  Polynomial(std::initializer_list<Rational> coefficients);

  static Polynomial monomial(const Rational& coefficient, long power);

  /// -1 for the zero polynomial.
  [[nodiscard]] long degree() const { return static_cast<long>(coefficients_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coefficients_.empty(); }

  /// Coefficient of x^power; zero outside the stored range.
  [[nodiscard]] Rational coefficient(long power) const;
  [[nodiscard]] const std::vector<Rational>& coefficients() const { return coefficients_; }

  [[nodiscard]] Rational evaluate(const Rational& x) const;
  [[nodiscard]] Polynomial derivative() const;

  /// Drops every term of degree above `max_degree`.
  [[nodiscard]] Polynomial truncated(long max_degree) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

 private:
  void trim();

  std::vector<Rational> coefficients_;
};

/// Product of `a` and `b` with terms above `max_degree` discarded.
Polynomial multiply_truncated(const Polynomial& a, const Polynomial& b, long max_degree);

/// base^exponent with terms above `max_degree` discarded at every step.
Polynomial pow_truncated(const Polynomial& base, unsigned long exponent, long max_degree);

/// Taylor expansion of 1 / (1 - ratio x) through x^max_degree.
Polynomial geometric_series(const Rational& ratio, long max_degree);

}  // namespace coinstop
