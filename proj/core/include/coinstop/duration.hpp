#pragma once

#include <array>
#include <string_view>

#include "coinstop/pgf.hpp"
#include "coinstop/rational.hpp"

namespace coinstop {

enum class Method { Recurrence, DirectSum, ClosedForm, CatalanSum };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

struct ExpectationResult {
  Rational value;
  Method method = Method::Recurrence;
  Rule rule = Rule::Or;
};

/// L(r, c) for r, c in {1,2,3}, indexed [r-1][c-1]; exact polynomials (OR)
/// and rational functions (AND) of p.
using SeedGrid = std::array<std::array<Rational, 3>, 3>;
SeedGrid initial_conditions(const CoinSpec& coin, Rule rule);

/// One step of the third-order recurrence in the Heads target: L(n,m) from
/// L(n-1,m), L(n-2,m), L(n-3,m). Valid for n >= 4.
Rational advance_heads(const Rational& p, long n, long m, const Rational& back1,
                       const Rational& back2, const Rational& back3);

/// One step of the third-order recurrence in the Tails target: L(n,m) from
/// L(n,m-1), L(n,m-2), L(n,m-3). Valid for m >= 4.
Rational advance_tails(const Rational& p, long n, long m, const Rational& back1,
                       const Rational& back2, const Rational& back3);

/// E[X1] (OR) or E[X2] (AND). Starts from the 3x3 seed grid, walks rows
/// n = 1..3 out to m with the Tails recurrence, then walks column m out to n
/// with the Heads recurrence. O(n + m) exact steps.
ExpectationResult expectation_recurrence(const CoinSpec& coin, Rule rule, long n, long m);

/// Sum of k P(X1 = k) over the finite support; the AND value is
/// n/p + m/q - E[X1], which holds exactly.
ExpectationResult expectation_direct(const CoinSpec& coin, Rule rule, long n, long m);

/// Dispatches to the requested method. ClosedForm needs p = a/(a+b) with
/// (n, m) = (a t, b t); CatalanSum needs n = m. Otherwise DomainError.
ExpectationResult expectation(const CoinSpec& coin, Rule rule, long n, long m, Method method);

/// L1 or L2 at (a n, b n) with p = a/(a+b):
///   (a+b) n (1 -/+ ((a+b)n)! / ((an)! (bn)!) * (a^a b^b / (a+b)^(a+b))^n).
Rational closed_form_balanced(long a, long b, long n, Rule rule);

/// (a+b) n (1 -/+ sqrt((a+b) / (2 a b pi)) / sqrt(n)); minus for OR.
double asymptotic_balanced(long a, long b, long n, Rule rule);

/// L1(n,n;p) = n sum_{j<n} Cat_j (pq)^j.
Rational catalan_sum_or(const CoinSpec& coin, long n);

/// E[#Heads - #Tails] at the OR stopping time:
///   sum_{t<m} C(n+t-1,n-1) p^n q^t (n-t) + sum_{h<n} C(h+m-1,m-1) p^h q^m (h-m).
/// Wald's identity makes this equal to (p - q) L1(n,m;p).
Rational expected_margin(const CoinSpec& coin, long n, long m);

/// E[Np - B; B <= k] for B ~ Bin(N, p), in the closed form
/// N! / ((N-k-1)! k!) p^(k+1) (1-p)^(N-k). Requires 0 <= k < N.
Rational binomial_partial_expectation(long trials, const Rational& p, long k);

}  // namespace coinstop
