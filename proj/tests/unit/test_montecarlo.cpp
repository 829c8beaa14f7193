#include <doctest.h>

#include <cmath>
#include <numbers>

#include "coinstop/duration.hpp"
#include "coinstop/montecarlo.hpp"
#include "coinstop/pgf.hpp"

using namespace coinstop;

namespace {
Rational r(const char* s) { return Rational::parse(s); }

SimConfig config(double p, Rule rule, long n, long m, std::uint64_t trials, std::uint64_t seed) {
  SimConfig c;
  c.p = p;
  c.goal = GoalSpec{rule, n, m};
  c.trials = trials;
  c.seed = seed;
  return c;
}
}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(simulate(config(0.0, Rule::Or, 1, 1, 10, 1)), DomainError);
  CHECK_THROWS_AS(simulate(config(1.0, Rule::Or, 1, 1, 10, 1)), DomainError);
  CHECK_THROWS_AS(simulate(config(0.5, Rule::Or, 0, 1, 10, 1)), DomainError);
  CHECK_THROWS_AS(simulate(config(0.5, Rule::Or, 1, 1, 0, 1)), DomainError);
  CHECK_THROWS_AS(simulate(config(0.5, Rule::Or, 1, 1, kMaxTrials + 1, 1)), DomainError);
  SimConfig c = config(0.5, Rule::Or, 1, 1, 10, 1);
  c.chunk_size = 0;
  CHECK_THROWS_AS(simulate(c), DomainError);
}

TEST_CASE("n = m = 1 stops after one toss") {
  for (double p : {0.5, 0.3}) {
    const SimSummary s = simulate(config(p, Rule::Or, 1, 1, 5000, 9));
    REQUIRE(s.histogram.size() == 1);
    CHECK(s.histogram.at(1) == 5000);
    CHECK(s.mean == 1.0);
    CHECK(s.variance == 0.0);
  }
}

TEST_CASE("identical configs give identical summaries, independent of jobs") {
  for (double p : {0.5, 1.0 / 3.0}) {
    SimConfig a = config(p, Rule::And, 7, 5, 20000, 42);
    a.chunk_size = 1000;
    SimConfig b = a;
    b.jobs = 4;
    const SimSummary x = simulate(a);
    const SimSummary y = simulate(a);
    const SimSummary z = simulate(b);
    CHECK(x.histogram == y.histogram);
    CHECK(x.histogram == z.histogram);
    CHECK(x.mean == z.mean);
    CHECK(x.variance == z.variance);
    CHECK(x.standardized_moments == z.standardized_moments);
    CHECK(x.margin_mean == z.margin_mean);
    SimConfig c = a;
    c.seed = 43;
    CHECK(simulate(c).histogram != x.histogram);
  }
}

TEST_CASE("support of simulated stopping times") {
  for (double p : {0.5, 0.2, 0.85}) {
    for (long n = 1; n <= 5; ++n) {
      for (long m = 1; m <= 5; ++m) {
        const SimSummary o = simulate(config(p, Rule::Or, n, m, 2000, 3));
        CHECK(o.histogram.begin()->first >= std::min(n, m));
        CHECK(o.histogram.rbegin()->first <= n + m - 1);
        const SimSummary a = simulate(config(p, Rule::And, n, m, 2000, 3));
        CHECK(a.histogram.begin()->first >= n + m);
        std::uint64_t total = 0;
        for (const auto& [k, count] : a.histogram) total += count;
        CHECK(total == 2000);
      }
    }
  }
}

TEST_CASE("histogram frequencies match pmf_or for n,m <= 6") {
  constexpr std::uint64_t trials = 1'000'000;
  for (const char* p : {"1/2", "1/3"}) {
    const CoinSpec coin = CoinSpec::with_heads_probability(r(p));
    double worst = 0.0;
    for (long n = 1; n <= 6; ++n) {
      for (long m = 1; m <= 6; ++m) {
        const SimSummary s = simulate(config(coin.p().to_double(), Rule::Or, n, m, trials, 7 + n * 10 + m));
        const Pmf pmf = pmf_or(coin, n, m);
        for (long k = pmf.support_min; k <= pmf.support_max(); ++k) {
          const auto it = s.histogram.find(k);
          const double freq = it == s.histogram.end() ? 0.0 : static_cast<double>(it->second) / trials;
          worst = std::max(worst, std::abs(freq - pmf.probability(k).to_double()));
        }
      }
    }
    CHECK(worst <= 5e-3);
  }
}

TEST_CASE("simulated means sit within 4 SE of exact values") {
  const CoinSpec fair = CoinSpec::with_heads_probability(r("1/2"));
  const SimSummary s = simulate(config(0.5, Rule::Or, 100, 100, 100000, 11));
  const double exact = expectation_recurrence(fair, Rule::Or, 100, 100).value.to_double();
  CHECK(std::abs(s.mean - exact) <= 4.0 * s.standard_error());
  CHECK(s.standardized_moments[0] == doctest::Approx(1.0));
  CHECK(std::abs(s.standardized_moments[1]) < 1e-9);
  CHECK(s.standardized_moments[2] == doctest::Approx(1.0));
}

TEST_CASE("toss streams") {
  TossStream a(5, 0, 0.5);
  TossStream b(5, 0, 0.5);
  TossStream c(5, 1, 0.5);
  int same = 0;
  int differ = 0;
  for (int i = 0; i < 256; ++i) {
    const bool x = a.heads();
    same += x == b.heads();
    differ += x != c.heads();
  }
  CHECK(same == 256);
  CHECK(differ > 64);
  CHECK(a.fair());
  CHECK_FALSE(TossStream(5, 0, 0.25).fair());
  TossStream d(8, 2, 0.5);
  for (int i = 0; i < 100; ++i) {
    const auto [tosses, heads] = d.block(17);
    CHECK(tosses >= 1);
    CHECK(tosses <= 17);
    CHECK(heads <= tosses);
  }
}

TEST_CASE("a path records both stopping times consistently") {
  TossStream s(77, 0, 0.5);
  for (int i = 0; i < 2000; ++i) {
    const PathOutcome o = run_path(s, 6, 6, true);
    CHECK(o.or_time == std::min(o.heads_time, o.tails_time));
    CHECK(o.and_time == std::max(o.heads_time, o.tails_time));
    CHECK(o.or_time <= 11);
    CHECK(o.and_time >= 12);
  }
}

TEST_CASE("limit-law experiments at small scale") {
  const LimitLawReport t = experiment_t1_t2(1000, 20000, 5);
  CHECK(t.max_or_minus_2n <= 0);
  CHECK(t.min_and_minus_2n >= 0);
  REQUIRE(t.or_moments.size() == 4);
  REQUIRE(t.and_moments.size() == 4);
  CHECK(t.or_moments[0].reference == doctest::Approx(-2.0 / std::sqrt(std::numbers::pi)));
  CHECK(t.and_moments[1].reference == doctest::Approx(2.0));
  // Finite-n bias is O(1/sqrt(n)); allow a little room beyond 4 SE.
  CHECK(std::abs(t.or_moments[0].empirical - t.or_moments[0].reference) < 0.05);
  CHECK(std::abs(t.and_moments[0].empirical - t.and_moments[0].reference) < 0.05);

  const CoupledSumReport xy = experiment_xy(2000, 20000, 5);
  CHECK(xy.identity_violations == 0);
  CHECK(xy.reference_variance == doctest::Approx(4.0 / std::sqrt(std::numbers::pi)));
  CHECK(std::abs(xy.mean) <= 4.0 * xy.mean_standard_error);
  CHECK(std::abs(xy.variance - xy.reference_variance) < 0.15 * xy.reference_variance);
}

TEST_CASE("Wald experiment") {
  const CoinSpec third = CoinSpec::with_heads_probability(r("1/3"));
  const WaldReport w = experiment_wald(third, 5, 5, 100000, 13);
  CHECK(w.exact_margin == w.wald_value);
  CHECK(std::abs(w.empirical_margin - w.exact_margin.to_double()) <= 4.0 * w.margin_standard_error);

  const CoinSpec three_quarters = CoinSpec::with_heads_probability(r("3/4"));
  const WaldReport v = experiment_wald(three_quarters, 10, 4, 100000, 17);
  CHECK(std::abs(v.empirical_margin - v.wald_value.to_double()) <= 4.0 * v.margin_standard_error);

  const CoinSpec fair = CoinSpec::with_heads_probability(r("1/2"));
  const WaldReport z = experiment_wald(fair, 8, 8, 50000, 19);
  CHECK(z.wald_value.is_zero());
  CHECK(std::abs(z.empirical_margin) <= 4.0 * z.margin_standard_error);
}
