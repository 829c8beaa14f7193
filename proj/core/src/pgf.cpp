#include "coinstop/pgf.hpp"

#include <algorithm>
#include <string>

#include "coinstop/combinatorics.hpp"

namespace coinstop {

CoinSpec CoinSpec::with_heads_probability(const Rational& p) {
  if (p <= Rational(0) || p >= Rational(1)) {
    throw DomainError("coin bias p must lie strictly between 0 and 1, got " + p.str());
  }
  return CoinSpec(p, Rational(1) - p);
}

std::string_view to_string(Rule rule) { return rule == Rule::Or ? "or" : "and"; }

Rule parse_rule(std::string_view text) {
  if (text == "or" || text == "OR") return Rule::Or;
  if (text == "and" || text == "AND") return Rule::And;
  throw std::invalid_argument("unknown rule '" + std::string(text) + "'");
}

void require_targets(long n, long m) {
  if (n < 1 || m < 1) {
    throw DomainError("targets must be positive, got n=" + std::to_string(n) +
                      " m=" + std::to_string(m));
  }
}

void GoalSpec::validate() const { require_targets(n_heads, m_tails); }

Rational Pmf::probability(long k) const {
  if (k < support_min || k > support_max()) return 0;
  return probs[static_cast<std::size_t>(k - support_min)];
}

Rational Pmf::total_mass() const {
  Rational s;
  for (const auto& pk : probs) s += pk;
  return s;
}

Rational Pmf::partial_mean() const {
  Rational s;
  long k = support_min;
  for (const auto& pk : probs) s += pk * Rational(k++);
  return s;
}

Pmf pmf_or(const CoinSpec& coin, long n, long m) {
  require_targets(n, m);
  Pmf pmf;
  pmf.support_min = std::min(n, m);
  pmf.probs.assign(static_cast<std::size_t>(n + m - pmf.support_min), Rational());

  // Tails reach m first, after h < n Heads: k = m + h.
  const Rational qm = pow(coin.q(), m);
  Rational ph = 1;
  for (long h = 0; h < n; ++h) {
    const long k = m + h;
    pmf.probs[static_cast<std::size_t>(k - pmf.support_min)] +=
        Rational(binomial(k - 1, m - 1)) * qm * ph;
    ph *= coin.p();
  }
  // Heads reach n first, after t < m Tails: k = n + t.
  const Rational pn = pow(coin.p(), n);
  Rational qt = 1;
  for (long t = 0; t < m; ++t) {
    const long k = n + t;
    pmf.probs[static_cast<std::size_t>(k - pmf.support_min)] +=
        Rational(binomial(k - 1, n - 1)) * pn * qt;
    qt *= coin.q();
  }
  return pmf;
}

Rational default_and_epsilon() { return pow(Rational(Integer(1), Integer(2)), 40); }

Rational negative_binomial_tail(const Rational& p, long successes, long tosses) {
  if (tosses < 0) throw DomainError("negative toss count");
  const Rational q = Rational(1) - p;
  Rational sum;
  const long top = std::min(successes - 1, tosses);
  for (long i = 0; i <= top; ++i) {
    sum += Rational(binomial(tosses, i)) * pow(p, i) * pow(q, tosses - i);
  }
  return sum;
}

Pmf pmf_and(const CoinSpec& coin, long n, long m, const Rational& epsilon) {
  require_targets(n, m);
  if (epsilon.sign() <= 0) throw DomainError("epsilon must be positive");
  Pmf pmf;
  pmf.support_min = n + m;
  pmf.truncated = true;

  const Rational qm = pow(coin.q(), m);
  const Rational pn = pow(coin.p(), n);
  // Running powers p^(k-m) and q^(k-n), starting at k = n + m.
  Rational p_run = pow(coin.p(), n);
  Rational q_run = pow(coin.q(), m);
  Rational remaining = 1;
  for (long k = n + m;; ++k) {
    // Last toss is the m-th Tail (k-m >= n Heads) or the n-th Head (k-n >= m Tails).
    Rational pk = Rational(binomial(k - 1, m - 1)) * qm * p_run +
                  Rational(binomial(k - 1, n - 1)) * pn * q_run;
    remaining -= pk;
    pmf.probs.push_back(std::move(pk));
    p_run *= coin.p();
    q_run *= coin.q();
    if (remaining > epsilon) continue;
    Rational bound = negative_binomial_tail(coin.p(), n, k) + negative_binomial_tail(coin.q(), m, k);
    if (bound <= epsilon) {
      pmf.tail_mass_bound = std::move(bound);
      break;
    }
  }
  return pmf;
}

Polynomial pgf_or(const CoinSpec& coin, long n, long m) {
  const Pmf pmf = pmf_or(coin, n, m);
  std::vector<Rational> c(static_cast<std::size_t>(pmf.support_min), Rational());
  c.insert(c.end(), pmf.probs.begin(), pmf.probs.end());
  return Polynomial(std::move(c));
}

Polynomial pgf_sum_closed_form(const CoinSpec& coin, long n, long m, long degree_cap) {
  require_targets(n, m);
  if (degree_cap < n + m) throw DomainError("degree cap must be at least n + m");
  const Polynomial tails_factor =
      multiply_truncated(Polynomial::monomial(coin.q(), 1), geometric_series(coin.p(), degree_cap),
                         degree_cap);
  const Polynomial heads_factor =
      multiply_truncated(Polynomial::monomial(coin.p(), 1), geometric_series(coin.q(), degree_cap),
                         degree_cap);
  return pow_truncated(tails_factor, static_cast<unsigned long>(m), degree_cap) +
         pow_truncated(heads_factor, static_cast<unsigned long>(n), degree_cap);
}

}  // namespace coinstop
