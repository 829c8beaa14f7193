#include "coinstop/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "coinstop/combinatorics.hpp"

namespace coinstop {

namespace {

void require_order(long n, long r) {
  if (n < 1) throw DomainError("n must be positive");
  if (r < 0) throw DomainError("moment order must be non-negative");
}

double signed_sqrt(int sign, const Rational& square) {
  const double magnitude = std::sqrt(square.to_double());
  return sign < 0 ? -magnitude : magnitude;
}

}  // namespace

std::vector<Rational> factorial_moments_or_fair(long n, long max_order) {
  require_order(n, max_order);
  std::vector<Rational> a(static_cast<std::size_t>(max_order) + 1);
  a[0] = 1;
  if (max_order == 0) return a;
  const Rational c = cn(n);
  const Rational two_n(2 * n);
  a[1] = two_n - Rational(2) * c;
  if (max_order == 1) return a;
  a[2] = Rational(4 * n * n) - Rational(8 * n) * c;
  const Rational four_n_c = Rational(4 * n) * c;
  for (long r = 3; r <= max_order; ++r) {
    const Integer falling = falling_factorial(Integer(2 * n - 1), static_cast<unsigned long>(r - 2));
    a[static_cast<std::size_t>(r)] = two_n * a[static_cast<std::size_t>(r - 1)] +
                                     Rational((r - 1) * (r - 2)) * a[static_cast<std::size_t>(r - 2)] -
                                     four_n_c * Rational(falling);
  }
  return a;
}

Rational factorial_moment_or_fair(long n, long r) {
  if (r < 1) throw DomainError("factorial moment order must be positive");
  return factorial_moments_or_fair(n, r).back();
}

std::vector<Rational> raw_moments(std::span<const Rational> factorial) {
  std::vector<Rational> raw(factorial.size());
  for (std::size_t r = 0; r < factorial.size(); ++r) {
    Rational s;
    for (std::size_t i = 0; i <= r; ++i) {
      const Integer st = stirling2(r, i);
      if (st != 0) s += Rational(st) * factorial[i];
    }
    raw[r] = std::move(s);
  }
  return raw;
}

std::vector<Rational> central_moments(std::span<const Rational> raw, const Rational& mean) {
  std::vector<Rational> central(raw.size());
  const Rational neg_mean = -mean;
  for (std::size_t r = 0; r < raw.size(); ++r) {
    Rational s;
    for (std::size_t i = 0; i <= r; ++i) {
      s += Rational(binomial(static_cast<long>(r), static_cast<long>(i))) *
           pow(neg_mean, static_cast<long>(r - i)) * raw[i];
    }
    central[r] = std::move(s);
  }
  return central;
}

std::vector<double> scaled_central_moments(std::span<const Rational> central) {
  if (central.size() < 3 || central[2].sign() <= 0) {
    throw DomainError("scaled moments need a positive variance");
  }
  const Rational& var = central[2];
  std::vector<double> scaled(central.size());
  for (std::size_t r = 0; r < central.size(); ++r) {
    const long half = static_cast<long>(r / 2);
    if (r % 2 == 0) {
      scaled[r] = (central[r] / pow(var, half)).to_double();
    } else {
      const Rational sq = central[r] * central[r] / pow(var, static_cast<long>(r));
      scaled[r] = signed_sqrt(central[r].sign(), sq);
    }
  }
  return scaled;
}

MomentTable moment_table(long n, long max_order) {
  if (max_order < 2) throw DomainError("moment table needs max_order >= 2");
  MomentTable t;
  t.n = n;
  t.max_order = max_order;
  t.factorial = factorial_moments_or_fair(n, max_order);
  t.raw = raw_moments(t.factorial);
  t.mean = t.raw[1];
  t.central = central_moments(t.raw, t.mean);
  t.variance = t.central[2];
  if (t.variance.sign() > 0) t.scaled = scaled_central_moments(t.central);
  return t;
}

Rational negbin_factorial_moment(long n, long r, const Rational& p) {
  if (n < 1 || r < 0) throw DomainError("negative-binomial moment needs n >= 1, r >= 0");
  if (p <= Rational(0) || p >= Rational(1)) throw DomainError("p must lie in (0,1)");
  const Rational odds = (Rational(1) - p) / p;
  Rational s;
  for (long j = 0; j <= std::min(r, n); ++j) {
    const auto uj = static_cast<unsigned long>(j);
    const auto rest = static_cast<unsigned long>(r - j);
    const Integer coefficient = binomial(r, j) * falling_factorial(Integer(n), uj) *
                                rising_factorial(Integer(n), rest);
    s += Rational(coefficient) * pow(odds, r - j);
  }
  return s;
}

Rational and_factorial_moment_fair(long n, long r) {
  if (r < 1) throw DomainError("factorial moment order must be positive");
  const Rational half(Integer(1), Integer(2));
  return Rational(2) * negbin_factorial_moment(n, r, half) - factorial_moment_or_fair(n, r);
}

double halfnormal_raw_moment(long r) {
  if (r < 0) throw DomainError("moment order must be non-negative");
  const long double rr = static_cast<long double>(r);
  const long double abs_moment = std::pow(2.0L, rr / 2) * std::tgamma((rr + 1) / 2) /
                                 std::sqrt(std::numbers::pi_v<long double>);
  return static_cast<double>(r % 2 == 0 ? abs_moment : -abs_moment);
}

double halfnormal_scaled_moment(long r) {
  if (r < 1) throw DomainError("moment order must be positive");
  if (r == 1) return 0.0;
  if (r == 2) return 1.0;
  const long double mean = halfnormal_raw_moment(1);
  const long double var = 1.0L - 2.0L / std::numbers::pi_v<long double>;
  long double central = 0.0L;
  for (long i = 0; i <= r; ++i) {
    long double binom = 1.0L;
    for (long j = 0; j < i; ++j) binom = binom * static_cast<long double>(r - j) / static_cast<long double>(j + 1);
    const long double raw_i = i == 0 ? 1.0L : static_cast<long double>(halfnormal_raw_moment(i));
    central += binom * std::pow(-mean, static_cast<long double>(r - i)) * raw_i;
  }
  return static_cast<double>(central / std::pow(var, static_cast<long double>(r) / 2));
}

std::vector<ConvergenceRow> limit_convergence_report(long max_order, std::span<const long> n_grid) {
  if (max_order < 3) throw DomainError("convergence report needs max_order >= 3");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 2 || (i > 0 && n_grid[i] <= n_grid[i - 1])) {
      throw DomainError("n grid must be strictly increasing with n >= 2");
    }
  }
  std::vector<std::vector<double>> scaled_by_n;
  scaled_by_n.reserve(n_grid.size());
  for (long n : n_grid) scaled_by_n.push_back(moment_table(n, max_order).scaled);

  std::vector<ConvergenceRow> rows;
  for (long r = 1; r <= max_order; ++r) {
    const double reference = halfnormal_scaled_moment(r);
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
      ConvergenceRow row;
      row.order = r;
      row.n = n_grid[i];
      row.scaled = scaled_by_n[i][static_cast<std::size_t>(r)];
      row.reference = reference;
      row.deviation = row.scaled - reference;
      if (i > 0) {
        const double prev = std::abs(rows.back().deviation);
        if (prev > 0.0) row.ratio = std::abs(row.deviation) / prev;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace coinstop
