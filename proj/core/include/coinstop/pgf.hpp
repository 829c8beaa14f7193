#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "coinstop/polynomial.hpp"
#include "coinstop/rational.hpp"

namespace coinstop {

/// Coin with exact bias p = P(Heads) in (0,1); q = 1 - p.
class CoinSpec {
 public:
  /// Throws DomainError unless 0 < p < 1.
  static CoinSpec with_heads_probability(const Rational& p);

  [[nodiscard]] const Rational& p() const { return p_; }
  [[nodiscard]] const Rational& q() const { return q_; }

  /// The same coin with Heads and Tails relabelled.
  [[nodiscard]] CoinSpec swapped() const { return with_heads_probability(q_); }

  friend bool operator==(const CoinSpec&, const CoinSpec&) = default;

 private:
  CoinSpec(Rational p, Rational q) : p_(std::move(p)), q_(std::move(q)) {}

  Rational p_;
  Rational q_;
};

enum class Rule {
  Or,   ///< stop at n Heads or m Tails, whichever comes first
  And,  ///< stop once both n Heads and m Tails have been seen
};

std::string_view to_string(Rule rule);
Rule parse_rule(std::string_view text);

struct GoalSpec {
  Rule rule = Rule::Or;
  long n_heads = 1;
  long m_tails = 1;

  /// Throws DomainError unless both targets are >= 1.
  void validate() const;
};

/// Throws DomainError unless n >= 1 and m >= 1.
void require_targets(long n, long m);

/// Exact distribution of a stopping time over a contiguous support window.
struct Pmf {
  long support_min = 0;
  std::vector<Rational> probs;  ///< probs[i] = P(X = support_min + i)
  bool truncated = false;
  Rational tail_mass_bound;  ///< certified bound on P(X > support_max()); zero if not truncated

  [[nodiscard]] long support_max() const {
    return support_min + static_cast<long>(probs.size()) - 1;
  }
  [[nodiscard]] Rational probability(long k) const;
  [[nodiscard]] Rational total_mass() const;
  /// Sum of k P(X = k) over the stored window.
  [[nodiscard]] Rational partial_mean() const;
};

/// Distribution of the OR stopping time X1(n,m;p): coefficients of
///   (qx)^m sum_{h<n} C(h+m-1,m-1) (px)^h + (px)^n sum_{t<m} C(t+n-1,n-1) (qx)^t
/// on the support [min(n,m), n+m-1].
Pmf pmf_or(const CoinSpec& coin, long n, long m);

/// Default truncation threshold for pmf_and: 2^-40.
Rational default_and_epsilon();

/// Distribution of the AND stopping time X2(n,m;p), from n+m up to a cutoff
/// K. K is the first index at which both the exact remaining mass and the
/// negative-binomial certificate P(nu_H > K) + P(nu_T > K) are <= epsilon;
/// the certificate is stored in tail_mass_bound.
Pmf pmf_and(const CoinSpec& coin, long n, long m, const Rational& epsilon = default_and_epsilon());

/// P(more than `tosses` tosses are needed to see `successes` successes) for
/// success probability `p`, i.e. P(Bin(tosses, p) < successes).
Rational negative_binomial_tail(const Rational& p, long successes, long tosses);

/// Polynomial F1(n,m;p)(x); its coefficients are pmf_or's probabilities.
Polynomial pgf_or(const CoinSpec& coin, long n, long m);

/// Taylor expansion through x^degree_cap of
///   (qx / (1 - px))^m + (px / (1 - qx))^n,
/// which is F1 + F2. Built with truncated series arithmetic. Requires
/// degree_cap >= n + m.
Polynomial pgf_sum_closed_form(const CoinSpec& coin, long n, long m, long degree_cap);

}  // namespace coinstop
