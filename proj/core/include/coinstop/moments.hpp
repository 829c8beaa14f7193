#pragma once

#include <optional>
#include <span>
#include <vector>

#include "coinstop/rational.hpp"

namespace coinstop {

// Moments of X = X1(n,n;1/2), the number of fair tosses until n Heads or
// n Tails. Vectors are indexed by order, with index 0 holding the
// zeroth moment.

/// A(n, r) = E[X (X-1) ... (X-r+1)] via the three-term recurrence in r
///   A(n,r) = 2n A(n,r-1) + (r-1)(r-2) A(n,r-2) - 4n (2n-1)_(r-2) C_n
/// seeded with A(n,1) = 2n - 2 C_n and A(n,2) = 4n^2 - 8n C_n.
Rational factorial_moment_or_fair(long n, long r);

/// A(n, 0..max_order), with A(n, 0) = 1.
std::vector<Rational> factorial_moments_or_fair(long n, long max_order);

/// E[X^r] = sum_i S(r,i) A(i) for r = 0..factorial.size()-1.
std::vector<Rational> raw_moments(std::span<const Rational> factorial);

/// E[(X - mean)^r] = sum_i C(r,i) (-mean)^(r-i) E[X^i].
std::vector<Rational> central_moments(std::span<const Rational> raw, const Rational& mean);

/// central[r] / sigma^r. Even orders convert central[r] / var^(r/2) once;
/// odd orders take the signed square root of central[r]^2 / var^r, so the
/// only rounding is the final conversion. Throws DomainError if
/// central[2] <= 0.
std::vector<double> scaled_central_moments(std::span<const Rational> central);

struct MomentTable {
  long n = 0;
  long max_order = 0;
  std::vector<Rational> factorial;
  std::vector<Rational> raw;
  std::vector<Rational> central;
  std::vector<double> scaled;  ///< empty when the variance is zero (n = 1)
  Rational mean;
  Rational variance;
};

MomentTable moment_table(long n, long max_order);

/// r-th factorial moment of X2(n,n;1/2): 2 D_r - A(n,r), where D_r is the
/// r-th derivative at x = 1 of (x / (2 - x))^n.
Rational and_factorial_moment_fair(long n, long r);

/// r-th factorial moment of the total number of tosses needed for n Heads,
/// whose PGF is (px / (1 - qx))^n:
///   sum_j C(r,j) (n)_j n^(r-j rising) (q/p)^(r-j).
Rational negbin_factorial_moment(long n, long r, const Rational& p);

/// E[Y^r] for Y = -|Z|, Z standard normal: (-1)^r 2^(r/2) Gamma((r+1)/2) / sqrt(pi).
double halfnormal_raw_moment(long r);

/// E[(Y - EY)^r] / sd(Y)^r for Y = -|Z|; order 1 is 0, order 2 is 1.
double halfnormal_scaled_moment(long r);

struct ConvergenceRow {
  long order = 0;
  long n = 0;
  double scaled = 0.0;
  double reference = 0.0;
  double deviation = 0.0;           ///< scaled - reference
  std::optional<double> ratio;      ///< |deviation| / |deviation at previous n|
};

/// Scaled central moments of X1(n,n;1/2) against the -|N(0,1)| limit, for
/// every order 1..max_order and every n in `n_grid` (strictly increasing,
/// n >= 2). Rows are ordered by order, then n.
std::vector<ConvergenceRow> limit_convergence_report(long max_order, std::span<const long> n_grid);

}  // namespace coinstop
