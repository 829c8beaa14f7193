#include <doctest.h>

#include "coinstop/combinatorics.hpp"
#include "coinstop/pgf.hpp"
#include "support/oracles.hpp"

using namespace coinstop;

namespace {
Rational r(const char* s) { return Rational::parse(s); }
CoinSpec coin(const char* p) { return CoinSpec::with_heads_probability(r(p)); }
}  // namespace

TEST_CASE("coin spec rejects degenerate biases") {
  CHECK_THROWS_AS(coin("0"), DomainError);
  CHECK_THROWS_AS(coin("1"), DomainError);
  CHECK_THROWS_AS(coin("3/2"), DomainError);
  CHECK_THROWS_AS(coin("-1/2"), DomainError);
  const CoinSpec c = coin("2/7");
  CHECK(c.q() == r("5/7"));
  CHECK(c.swapped().p() == r("5/7"));
}

TEST_CASE("targets must be positive") {
  CHECK_THROWS_AS(pmf_or(coin("1/2"), 0, 3), DomainError);
  CHECK_THROWS_AS(pmf_and(coin("1/2"), 2, 0), DomainError);
  CHECK_THROWS_AS((GoalSpec{Rule::Or, 1, -1}.validate()), DomainError);
  CHECK_THROWS_AS(pmf_and(coin("1/2"), 1, 1, Rational(0)), DomainError);
}

TEST_CASE("pmf_or examples") {
  // All 8 length-3 sequences: HH?, TT? stop at 2; HTx, THx stop at 3.
  const Pmf fair22 = pmf_or(coin("1/2"), 2, 2);
  CHECK(fair22.support_min == 2);
  CHECK(fair22.support_max() == 3);
  CHECK(fair22.probability(2) == r("1/2"));
  CHECK(fair22.probability(3) == r("1/2"));
  CHECK_FALSE(fair22.truncated);

  // Outcomes H; TH; TT.
  for (const char* p : {"1/3", "1/2", "5/7"}) {
    const CoinSpec c = coin(p);
    const Pmf pmf = pmf_or(c, 1, 2);
    CHECK(pmf.probability(1) == c.p());
    CHECK(pmf.probability(2) == c.q());
  }

  const Pmf one = pmf_or(coin("1/2"), 1, 1);
  CHECK(one.probs.size() == 1);
  CHECK(one.probability(1) == Rational(1));
}

TEST_CASE("pmf_and examples") {
  const Rational eps = pow(r("1/2"), 20);
  const Pmf pmf = pmf_and(coin("1/2"), 1, 1, eps);
  CHECK(pmf.truncated);
  CHECK(pmf.support_min == 2);
  // P(X2 = k) = (1/2)^(k-1): a run of k-1 equal tosses then the other side.
  for (long k = pmf.support_min; k <= pmf.support_max(); ++k) {
    CHECK(pmf.probability(k) == pow(r("1/2"), k - 1));
  }
  CHECK(pmf.tail_mass_bound <= eps);
  CHECK(Rational(1) - pmf.total_mass() <= pmf.tail_mass_bound);

  for (const char* p : {"1/3", "3/5"}) {
    const CoinSpec c = coin(p);
    CHECK(pmf_and(c, 1, 1).probability(2) == Rational(2) * c.p() * c.q());
  }
  CHECK(pmf_and(coin("1/2"), 3, 4).support_min == 7);
}

TEST_CASE("pmf_and tail certificate holds across parameters") {
  for (const char* p : {"1/7", "1/2", "4/5"}) {
    for (long n = 1; n <= 6; ++n) {
      for (long m = 1; m <= 6; ++m) {
        const Rational eps = pow(r("1/2"), 30);
        const Pmf pmf = pmf_and(coin(p), n, m, eps);
        const Rational tail = Rational(1) - pmf.total_mass();
        CHECK(tail.sign() >= 0);
        CHECK(tail <= pmf.tail_mass_bound);
        CHECK(pmf.tail_mass_bound <= eps);
        for (const auto& pk : pmf.probs) CHECK(pk.sign() >= 0);
      }
    }
  }
}

TEST_CASE("pmf_or normalizes exactly for n,m <= 30") {
  for (const char* p : {"1/7", "1/3", "1/2", "2/3"}) {
    const CoinSpec c = coin(p);
    for (long n = 1; n <= 30; ++n) {
      for (long m = 1; m <= 30; ++m) {
        const Pmf pmf = pmf_or(c, n, m);
        REQUIRE(pmf.total_mass() == Rational(1));
        for (const auto& pk : pmf.probs) REQUIRE(pk.sign() >= 0);
      }
    }
  }
}

TEST_CASE("support endpoints") {
  for (const char* p : {"1/3", "1/2", "4/5"}) {
    const CoinSpec c = coin(p);
    for (long n = 1; n <= 8; ++n) {
      for (long m = 1; m <= 8; ++m) {
        const Pmf pmf = pmf_or(c, n, m);
        Rational first;
        if (n <= m) first += pow(c.p(), n);
        if (m <= n) first += pow(c.q(), m);
        CHECK(pmf.probability(std::min(n, m)) == first);
        CHECK(pmf.probability(n + m - 1).sign() > 0);
        CHECK(pmf.support_min == std::min(n, m));
        CHECK(pmf.support_max() == n + m - 1);
      }
    }
  }
}

TEST_CASE("Heads/Tails symmetry of both distributions") {
  for (const char* p : {"1/3", "2/9"}) {
    const CoinSpec c = coin(p);
    for (long n = 1; n <= 7; ++n) {
      for (long m = 1; m <= 7; ++m) {
        const Pmf a = pmf_or(c, n, m);
        const Pmf b = pmf_or(c.swapped(), m, n);
        CHECK(a.support_min == b.support_min);
        CHECK(a.probs == b.probs);
        const Pmf x = pmf_and(c, n, m);
        const Pmf y = pmf_and(c.swapped(), m, n);
        CHECK(x.probs == y.probs);
      }
    }
  }
}

TEST_CASE("closed-form sum expansion") {
  const Polynomial fair = pgf_sum_closed_form(coin("1/2"), 1, 1, 4);
  CHECK(fair == Polynomial{Rational(0), Rational(1), r("1/2"), r("1/4"), r("1/8")});
  CHECK_THROWS_AS(pgf_sum_closed_form(coin("1/2"), 3, 3, 5), DomainError);

  // F1 + F2 matches the closed form coefficient by coefficient.
  for (const char* p : {"1/3", "1/2", "3/5"}) {
    const CoinSpec c = coin(p);
    for (long n = 1; n <= 6; ++n) {
      for (long m = 1; m <= 6; ++m) {
        const long cap = n + m + 6;
        const Polynomial closed = pgf_sum_closed_form(c, n, m, cap);
        const Pmf f1 = pmf_or(c, n, m);
        const Pmf f2 = pmf_and(c, n, m);
        REQUIRE(f2.support_max() >= cap);
        CHECK(closed.coefficient(std::min(n, m)) == f1.probability(std::min(n, m)));
        for (long k = 0; k <= cap; ++k) {
          CHECK(closed.coefficient(k) == f1.probability(k) + f2.probability(k));
        }
      }
    }
  }
}

TEST_CASE("pgf_or polynomial carries the pmf") {
  const CoinSpec c = coin("2/5");
  const Polynomial f = pgf_or(c, 3, 4);
  CHECK(f.evaluate(Rational(1)) == Rational(1));
  // E[X] = F'(1)
  CHECK(f.derivative().evaluate(Rational(1)) == pmf_or(c, 3, 4).partial_mean());
}

TEST_CASE("pmfs match brute-force enumeration for small targets") {
  for (const char* p : {"1/3", "1/2"}) {
    const CoinSpec c = coin(p);
    for (long n = 1; n <= 5; ++n) {
      for (long m = 1; m + n <= 8; ++m) {
        const auto expected = oracle::enumerate_or_pmf(c.p(), n, m);
        const Pmf pmf = pmf_or(c, n, m);
        for (long k = pmf.support_min; k <= pmf.support_max(); ++k) {
          const auto it = expected.find(k);
          CHECK(pmf.probability(k) == (it == expected.end() ? Rational(0) : it->second));
        }
        const long top = n + m + 20;
        const auto lattice = oracle::lattice_and_pmf(c.p(), n, m, top);
        const Pmf and_pmf = pmf_and(c, n, m);
        REQUIRE(and_pmf.support_max() >= top);
        for (long k = n + m; k <= top; ++k) CHECK(and_pmf.probability(k) == lattice.at(k));
      }
    }
  }
}

TEST_CASE("negative binomial tail") {
  const Rational half = r("1/2");
  // Need 1 success: more than K tosses iff K failures.
  CHECK(negative_binomial_tail(half, 1, 3) == r("1/8"));
  CHECK(negative_binomial_tail(half, 2, 1) == Rational(1));
  CHECK(negative_binomial_tail(half, 2, 0) == Rational(1));
}
