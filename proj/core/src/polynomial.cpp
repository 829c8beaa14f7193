#include "coinstop/polynomial.hpp"

#include <algorithm>
#include <utility>

namespace coinstop {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {
  trim();
}

Polynomial::Polynomial(std::initializer_list<Rational> coefficients) : coefficients_(coefficients) {
  trim();
}

Polynomial Polynomial::monomial(const Rational& coefficient, long power) {
  if (power < 0) throw DomainError("negative monomial power");
  std::vector<Rational> c(static_cast<std::size_t>(power) + 1);
  c.back() = coefficient;
  return Polynomial(std::move(c));
}

Rational Polynomial::coefficient(long power) const {
  if (power < 0 || power > degree()) return 0;
  return coefficients_[static_cast<std::size_t>(power)];
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coefficients_.size() <= 1) return {};
  std::vector<Rational> d(coefficients_.size() - 1);
  for (std::size_t i = 1; i < coefficients_.size(); ++i) {
    d[i - 1] = coefficients_[i] * Rational(static_cast<long>(i));
  }
  return Polynomial(std::move(d));
}

Polynomial Polynomial::truncated(long max_degree) const {
  if (max_degree < 0) return {};
  if (max_degree >= degree()) return *this;
  return Polynomial(std::vector<Rational>(coefficients_.begin(),
                                          coefficients_.begin() + max_degree + 1));
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coefficients_.size() > coefficients_.size()) coefficients_.resize(rhs.coefficients_.size());
  for (std::size_t i = 0; i < rhs.coefficients_.size(); ++i) coefficients_[i] += rhs.coefficients_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coefficients_.size() > coefficients_.size()) coefficients_.resize(rhs.coefficients_.size());
  for (std::size_t i = 0; i < rhs.coefficients_.size(); ++i) coefficients_[i] -= rhs.coefficients_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  for (auto& c : coefficients_) c *= scalar;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return multiply_truncated(a, b, a.degree() + b.degree());
}

void Polynomial::trim() {
  while (!coefficients_.empty() && coefficients_.back().is_zero()) coefficients_.pop_back();
}

Polynomial multiply_truncated(const Polynomial& a, const Polynomial& b, long max_degree) {
  if (a.is_zero() || b.is_zero() || max_degree < 0) return {};
  const long top = std::min(max_degree, a.degree() + b.degree());
  std::vector<Rational> c(static_cast<std::size_t>(top) + 1);
  const auto& ac = a.coefficients();
  const auto& bc = b.coefficients();
  for (long i = 0; i <= std::min(a.degree(), top); ++i) {
    if (ac[i].is_zero()) continue;
    for (long j = 0; j <= std::min(b.degree(), top - i); ++j) {
      c[i + j] += ac[i] * bc[j];
    }
  }
  return Polynomial(std::move(c));
}

Polynomial pow_truncated(const Polynomial& base, unsigned long exponent, long max_degree) {
  Polynomial result{Rational(1)};
  Polynomial square = base.truncated(max_degree);
  while (exponent > 0) {
    if (exponent & 1UL) result = multiply_truncated(result, square, max_degree);
    exponent >>= 1;
    if (exponent > 0) square = multiply_truncated(square, square, max_degree);
  }
  return result.truncated(max_degree);
}

Polynomial geometric_series(const Rational& ratio, long max_degree) {
  if (max_degree < 0) return {};
  std::vector<Rational> c(static_cast<std::size_t>(max_degree) + 1);
  Rational term = 1;
  for (auto& coefficient : c) {
    coefficient = term;
    term *= ratio;
  }
  return Polynomial(std::move(c));
}

}  // namespace coinstop
