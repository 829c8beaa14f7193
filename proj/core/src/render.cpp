#include "coinstop/render.hpp"

#include <stdexcept>

namespace coinstop {

namespace {

Integer pow10(long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

Rational pow10_rational(long e) {
  return e >= 0 ? Rational(pow10(e)) : Rational(Integer(1), pow10(-e));
}

// floor(log10(a)) for a > 0.
long decimal_exponent(const Rational& a) {
  long e = static_cast<long>(mpz_sizeinbase(a.gmp().get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.gmp().get_den_mpz_t(), 10));
  while (a < pow10_rational(e)) --e;
  while (a >= pow10_rational(e + 1)) ++e;
  return e;
}

}  // namespace

std::string to_decimal(const Rational& x, int significant_digits) {
  if (significant_digits < 1) throw std::invalid_argument("significant digits must be positive");
  if (x.is_zero()) return "0";
  // Exact integers that fit print as integers.
  if (x.is_integer() && mpz_sizeinbase(abs(x).gmp().get_num_mpz_t(), 10) <= static_cast<std::size_t>(significant_digits)) {
    const std::string s = x.numerator().get_str();
    if (s.size() - (x.sign() < 0 ? 1 : 0) <= static_cast<std::size_t>(significant_digits)) return s;
  }

  const Rational a = abs(x);
  long e = decimal_exponent(a);
  const Rational scaled = a * pow10_rational(significant_digits - 1 - e);

  Integer digits;
  mpz_fdiv_q(digits.get_mpz_t(), scaled.gmp().get_num_mpz_t(), scaled.gmp().get_den_mpz_t());
  const Rational remainder = scaled - Rational(digits);
  const Rational half(Integer(1), Integer(2));
  if (remainder > half || (remainder == half && mpz_odd_p(digits.get_mpz_t()))) digits += 1;
  if (digits == pow10(significant_digits)) {
    digits /= 10;
    ++e;
  }

  const std::string s = digits.get_str();
  std::string out = x.sign() < 0 ? "-" : "";
  const long n = significant_digits;
  if (e >= 0 && e < n) {
    out += s.substr(0, static_cast<std::size_t>(e) + 1);
    if (e + 1 < n) out += "." + s.substr(static_cast<std::size_t>(e) + 1);
  } else if (e < 0 && e >= -5) {
    out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + s;
  } else {
    out += s.substr(0, 1);
    if (n > 1) out += "." + s.substr(1);
    out += "e" + std::to_string(e);
  }
  return out;
}

}  // namespace coinstop
