#include "coinstop/rational.hpp"

#include <cctype>
#include <ostream>
#include <utility>

namespace coinstop {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  Integer v(std::string(s), 10);
  return negative ? Integer(-v) : v;
}

Integer power_of_ten(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Rational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    const Integer e = parse_integer(s.substr(epos + 1));
    if (!e.fits_slong_p() || abs(e) > 100000) {
      throw std::invalid_argument("exponent out of range");
    }
    exponent = e.get_si();
    s = s.substr(0, epos);
  }
  std::string digits;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto whole = s.substr(0, dot);
    const auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("malformed decimal");
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) throw std::invalid_argument("malformed number");
    digits = std::string(s);
  }
  Integer mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  if (exponent >= 0) return Rational(Integer(mantissa * power_of_ten(exponent)));
  return Rational(mantissa, power_of_ten(static_cast<unsigned long>(-exponent)));
}

}  // namespace

Rational::Rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(const mpq_class& v) : value_(v) { value_.canonicalize(); }

Rational Rational::from_canonical(mpq_class v) {
  Rational r;
  r.value_ = std::move(v);
  return r;
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(text.substr(0, slash));
    const Integer den = parse_integer(text.substr(slash + 1));
    return Rational(num, den);
  }
  return parse_decimal(text);
}

std::string Rational::str() const { return value_.get_str(10); }

Rational Rational::reciprocal() const {
  if (is_zero()) throw DomainError("reciprocal of zero");
  return Rational(value_.get_den(), value_.get_num());
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational operator-(const Rational& x) { return Rational::from_canonical(mpq_class(-x.value_)); }

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return pow(base.reciprocal(), -exponent);
  Integer num;
  Integer den;
  const auto e = static_cast<unsigned long>(exponent);
  mpz_pow_ui(num.get_mpz_t(), base.gmp().get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.gmp().get_den_mpz_t(), e);
  // Powers of coprime integers stay coprime, so no reduction is needed.
  mpq_class r;
  mpz_swap(mpq_numref(r.get_mpq_t()), num.get_mpz_t());
  mpz_swap(mpq_denref(r.get_mpq_t()), den.get_mpz_t());
  return Rational::from_canonical(std::move(r));
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

}  // namespace coinstop
