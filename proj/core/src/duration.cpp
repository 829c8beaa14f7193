#include "coinstop/duration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "coinstop/combinatorics.hpp"
#include "coinstop/polynomial.hpp"

namespace coinstop {

namespace {

Polynomial integer_poly(std::initializer_list<long> coefficients) {
  std::vector<Rational> c;
  c.reserve(coefficients.size());
  for (long v : coefficients) c.emplace_back(v);
  return Polynomial(std::move(c));
}

void check_result(const ExpectationResult& r, long n, long m) {
  // Cheap range guard on every returned expectation.
  const bool ok = r.rule == Rule::Or
                      ? (r.value >= Rational(std::min(n, m)) && r.value <= Rational(n + m - 1))
                      : r.value >= Rational(n + m);
  if (!ok) throw std::logic_error("expectation outside its admissible range: " + r.value.str());
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Recurrence: return "recurrence";
    case Method::DirectSum: return "direct";
    case Method::ClosedForm: return "closed";
    case Method::CatalanSum: return "catalan";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  if (text == "recurrence") return Method::Recurrence;
  if (text == "direct") return Method::DirectSum;
  if (text == "closed") return Method::ClosedForm;
  if (text == "catalan") return Method::CatalanSum;
  throw std::invalid_argument("unknown method '" + std::string(text) + "'");
}

SeedGrid initial_conditions(const CoinSpec& coin, Rule rule) {
  const Rational& p = coin.p();
  SeedGrid g;
  if (rule == Rule::Or) {
    // Coefficients in increasing powers of p.
    g[0] = {integer_poly({1}).evaluate(p), integer_poly({2, -1}).evaluate(p),
            integer_poly({3, -3, 1}).evaluate(p)};
    g[1] = {integer_poly({1, 1}).evaluate(p), integer_poly({2, 2, -2}).evaluate(p),
            integer_poly({3, 3, -7, 3}).evaluate(p)};
    g[2] = {integer_poly({1, 1, 1}).evaluate(p), integer_poly({2, 2, 2, -3}).evaluate(p),
            integer_poly({3, 3, 3, -12, 6}).evaluate(p)};
    return g;
  }
  const Rational pq = p * coin.q();
  const auto over_pq = [&](std::initializer_list<long> c) { return integer_poly(c).evaluate(p) / pq; };
  g[0] = {over_pq({1, -1, 1}), over_pq({1, -1, 3, -1}), over_pq({1, -1, 6, -4, 1})};
  g[1] = {over_pq({2, -2, 0, 1}), over_pq({2, -2, 0, 4, -2}), over_pq({2, -2, 0, 10, -10, 3})};
  g[2] = {over_pq({3, -3, 0, 0, 1}), over_pq({3, -3, 0, 0, 5, -3}),
          over_pq({3, -3, 0, 0, 15, -18, 6})};
  return g;
}

Rational advance_heads(const Rational& p, long n, long m, const Rational& back1,
                       const Rational& back2, const Rational& back3) {
  const Rational c1 = p * Rational(n + m - 2) + Rational(2 * n - 2);
  const Rational c2 = p * Rational(2 * n + 2 * m - 4) + Rational(n - 1);
  const Rational c3 = p * Rational(m - 2 + n);
  return (c1 * back1 - c2 * back2 + c3 * back3) / Rational(n - 1);
}

Rational advance_tails(const Rational& p, long n, long m, const Rational& back1,
                       const Rational& back2, const Rational& back3) {
  const Rational c1 = -(p * Rational(n + m - 2) - Rational(n + 3 * m - 4));
  const Rational c2 = p * Rational(2 * n + 2 * m - 4) - Rational(2 * n + 3 * m - 5);
  const Rational c3 = -((p - Rational(1)) * Rational(m - 2 + n));
  return (c1 * back1 + c2 * back2 + c3 * back3) / Rational(m - 1);
}

namespace {

// The recurrence run on U(n,m) = a (b-a) b^(n+m) L(n,m) for p = a/b in lowest
// terms. U is an integer for both rules, and the two recurrences become
//   U(n,m) = [C1 U(n-1,m) - C2 b U(n-2,m) + C3 b^2 U(n-3,m)] / (n-1)
//   U(n,m) = [D1 U(n,m-1) + D2 b U(n,m-2) + D3 b^2 U(n,m-3)] / (m-1)
// with integer C_i, D_i (the rational coefficients times b). Every step is
// a few linear-time integer products and one exact division.
class ScaledRecurrence {
 public:
  explicit ScaledRecurrence(const CoinSpec& coin)
      : a_(coin.p().numerator()), b_(coin.p().denominator()), b2_(b_ * b_), s_(a_ * (b_ - a_)) {}

  Integer scale_up(const Rational& value, long n, long m) const {
    const Rational scaled = value * Rational(Integer(s_ * power_of_b(n + m)));
    if (!scaled.is_integer()) throw std::logic_error("scaled seed is not an integer");
    return scaled.numerator();
  }

  Rational scale_down(const Integer& u, long n, long m) const {
    return Rational(u, Integer(s_ * power_of_b(n + m)));
  }

  Integer heads_step(long n, long m, const Integer& u1, const Integer& u2, const Integer& u3) const {
    const long k = n + m - 2;
    const Integer c1 = a_ * k + 2 * b_ * (n - 1);
    const Integer c2 = 2 * a_ * k + b_ * (n - 1);
    const Integer c3 = a_ * k;
    return exact_quotient(Integer(c1 * u1 - c2 * b_ * u2 + c3 * b2_ * u3), n - 1);
  }

  Integer tails_step(long n, long m, const Integer& u1, const Integer& u2, const Integer& u3) const {
    const long k = n + m - 2;
    const Integer d1 = b_ * (n + 3 * m - 4) - a_ * k;
    const Integer d2 = 2 * a_ * k - b_ * (2 * n + 3 * m - 5);
    const Integer d3 = (b_ - a_) * k;
    return exact_quotient(Integer(d1 * u1 + d2 * b_ * u2 + d3 * b2_ * u3), m - 1);
  }

 private:
  Integer power_of_b(long e) const {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b_.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
  }

  static Integer exact_quotient(const Integer& numerator, long divisor) {
    Integer q;
    Integer r;
    mpz_tdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), numerator.get_mpz_t(),
                   static_cast<unsigned long>(divisor));
    if (r != 0) throw std::logic_error("recurrence step left a fractional remainder");
    return q;
  }

  Integer a_, b_, b2_, s_;
};

}  // namespace

ExpectationResult expectation_recurrence(const CoinSpec& coin, Rule rule, long n, long m) {
  require_targets(n, m);
  const SeedGrid seeds = initial_conditions(coin, rule);
  ExpectationResult result{Rational(), Method::Recurrence, rule};
  if (n <= 3 && m <= 3) {
    result.value = seeds[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(m - 1)];
    check_result(result, n, m);
    return result;
  }

  const ScaledRecurrence rec(coin);
  // U(r, m) for r = 1..min(n,3): walk each seed row out along the Tails index.
  const long rows = std::min(n, 3L);
  std::array<Integer, 3> column;
  for (long r = 1; r <= rows; ++r) {
    const auto& seed_row = seeds[static_cast<std::size_t>(r - 1)];
    if (m <= 3) {
      column[static_cast<std::size_t>(r - 1)] =
          rec.scale_up(seed_row[static_cast<std::size_t>(m - 1)], r, m);
      continue;
    }
    Integer u3 = rec.scale_up(seed_row[0], r, 1);
    Integer u2 = rec.scale_up(seed_row[1], r, 2);
    Integer u1 = rec.scale_up(seed_row[2], r, 3);
    for (long c = 4; c <= m; ++c) {
      Integer next = rec.tails_step(r, c, u1, u2, u3);
      u3 = std::move(u2);
      u2 = std::move(u1);
      u1 = std::move(next);
    }
    column[static_cast<std::size_t>(r - 1)] = std::move(u1);
  }

  // Then walk column m out along the Heads index.
  Integer u = column[static_cast<std::size_t>(rows - 1)];
  if (n > 3) {
    Integer u3 = column[0], u2 = column[1], u1 = column[2];
    for (long r = 4; r <= n; ++r) {
      Integer next = rec.heads_step(r, m, u1, u2, u3);
      u3 = std::move(u2);
      u2 = std::move(u1);
      u1 = std::move(next);
    }
    u = std::move(u1);
  }
  result.value = rec.scale_down(u, n, m);
  check_result(result, n, m);
  return result;
}

ExpectationResult expectation_direct(const CoinSpec& coin, Rule rule, long n, long m) {
  require_targets(n, m);
  const Rational or_mean = pmf_or(coin, n, m).partial_mean();
  ExpectationResult result{or_mean, Method::DirectSum, rule};
  if (rule == Rule::And) {
    result.value = Rational(n) / coin.p() + Rational(m) / coin.q() - or_mean;
  }
  check_result(result, n, m);
  return result;
}

ExpectationResult expectation(const CoinSpec& coin, Rule rule, long n, long m, Method method) {
  require_targets(n, m);
  switch (method) {
    case Method::Recurrence: return expectation_recurrence(coin, rule, n, m);
    case Method::DirectSum: return expectation_direct(coin, rule, n, m);
    case Method::ClosedForm: {
      // p = A/B in lowest terms, so a = A and b = B - A are coprime and
      // (n, m) = (a t, b t) forces a | n.
      if (!coin.p().numerator().fits_slong_p() || !coin.p().denominator().fits_slong_p()) {
        throw DomainError("closed form: bias too large");
      }
      const long a = coin.p().numerator().get_si();
      const long b = coin.p().denominator().get_si() - a;
      if (n % a != 0 || m % b != 0 || n / a != m / b) {
        throw DomainError("closed form needs (n, m) = (a t, b t) with p = a/(a+b)");
      }
      ExpectationResult r{closed_form_balanced(a, b, n / a, rule), Method::ClosedForm, rule};
      check_result(r, n, m);
      return r;
    }
    case Method::CatalanSum: {
      if (n != m) throw DomainError("Catalan sum needs n = m");
      Rational v = catalan_sum_or(coin, n);
      if (rule == Rule::And) v = Rational(n) / coin.p() + Rational(n) / coin.q() - v;
      ExpectationResult r{std::move(v), Method::CatalanSum, rule};
      check_result(r, n, m);
      return r;
    }
  }
  throw std::invalid_argument("unknown method");
}

Rational closed_form_balanced(long a, long b, long n, Rule rule) {
  if (a < 1 || b < 1 || n < 1) throw DomainError("closed form needs a, b, n >= 1");
  const long total = (a + b) * n;
  Integer a_pow, b_pow, s_pow;
  mpz_ui_pow_ui(a_pow.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(a * n));
  mpz_ui_pow_ui(b_pow.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(b * n));
  mpz_ui_pow_ui(s_pow.get_mpz_t(), static_cast<unsigned long>(a + b),
                static_cast<unsigned long>(total));
  // ((a+b)n)! / ((an)! (bn)!) = C((a+b)n, an)
  const Rational term(Integer(binomial(total, a * n) * a_pow * b_pow), s_pow);
  const Rational one = 1;
  return Rational(total) * (rule == Rule::Or ? one - term : one + term);
}

double asymptotic_balanced(long a, long b, long n, Rule rule) {
  if (a < 1 || b < 1 || n < 1) throw DomainError("asymptotic form needs a, b, n >= 1");
  const double ab = static_cast<double>(a + b);
  const double correction =
      std::sqrt(ab / (2.0 * static_cast<double>(a * b) * std::numbers::pi)) /
      std::sqrt(static_cast<double>(n));
  const double sign = rule == Rule::Or ? -1.0 : 1.0;
  return ab * static_cast<double>(n) * (1.0 + sign * correction);
}

Rational catalan_sum_or(const CoinSpec& coin, long n) {
  require_targets(n, n);
  const Rational pq = coin.p() * coin.q();
  Rational sum;
  Rational pq_j = 1;
  for (long j = 0; j < n; ++j) {
    sum += Rational(catalan(static_cast<unsigned long>(j))) * pq_j;
    pq_j *= pq;
  }
  return Rational(n) * sum;
}

Rational expected_margin(const CoinSpec& coin, long n, long m) {
  require_targets(n, m);
  const Rational& p = coin.p();
  const Rational& q = coin.q();
  Rational sum;
  const Rational pn = pow(p, n);
  for (long t = 0; t < m; ++t) {
    sum += Rational(binomial(n + t - 1, n - 1)) * pn * pow(q, t) * Rational(n - t);
  }
  const Rational qm = pow(q, m);
  for (long h = 0; h < n; ++h) {
    sum += Rational(binomial(h + m - 1, m - 1)) * pow(p, h) * qm * Rational(h - m);
  }
  return sum;
}

Rational binomial_partial_expectation(long trials, const Rational& p, long k) {
  if (trials < 1) throw DomainError("binomial trials must be positive");
  if (k < 0 || k >= trials) throw DomainError("k must satisfy 0 <= k < N");
  // N! / ((N-k-1)! k!) = N C(N-1, k)
  const Integer coefficient = trials * binomial(trials - 1, k);
  return Rational(coefficient) * pow(p, k + 1) * pow(Rational(1) - p, trials - k);
}

}  // namespace coinstop
