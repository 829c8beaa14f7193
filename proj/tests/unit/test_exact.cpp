#include <doctest.h>

#include <random>
#include <thread>
#include <vector>

#include "coinstop/combinatorics.hpp"
#include "coinstop/polynomial.hpp"
#include "coinstop/rational.hpp"
#include "coinstop/render.hpp"
#include "support/oracles.hpp"

using namespace coinstop;

namespace {
Rational r(const char* s) { return Rational::parse(s); }
}  // namespace

TEST_CASE("rational arithmetic is exact and reduced") {
  const Rational a(Integer(6), Integer(-8));
  CHECK(a.numerator() == -3);
  CHECK(a.denominator() == 4);
  CHECK(r("1/3") + r("1/6") == r("1/2"));
  CHECK(r("2/3") * r("3/4") == r("1/2"));
  CHECK(r("1/2") / r("1/4") == Rational(2));
  CHECK(-r("1/2") < Rational(0));
  CHECK(pow(r("2/3"), 3) == r("8/27"));
  CHECK(pow(r("2/3"), -2) == r("9/4"));
  CHECK(abs(r("-5/7")) == r("5/7"));
  CHECK(r("7/1").is_integer());
}

TEST_CASE("division by zero is a domain error") {
  CHECK_THROWS_AS(r("1/2") / Rational(0), DomainError);
  CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), DomainError);
  CHECK_THROWS_AS((void)Rational(0).reciprocal(), DomainError);
  CHECK_THROWS_AS(r("3/0"), DomainError);
}

TEST_CASE("parsing accepts fractions, decimals and exponents exactly") {
  CHECK(r("0.1") == Rational(Integer(1), Integer(10)));
  CHECK(r("-3.25") == r("-13/4"));
  CHECK(r("1e-12") == Rational(Integer(1), Integer("1000000000000")));
  CHECK(r("2.5e2") == Rational(250));
  CHECK(r(" 42 ") == Rational(42));
  CHECK(r(".5") == r("1/2"));
  CHECK_THROWS_AS(r("abc"), std::invalid_argument);
  CHECK_THROWS_AS(r("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(r(""), std::invalid_argument);
  CHECK_THROWS_AS(r("."), std::invalid_argument);
}

TEST_CASE("randomized round trip (a/b + c/d) - c/d == a/b") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long> num(-1'000'000, 1'000'000);
  std::uniform_int_distribution<long> den(1, 1'000'000);
  for (int i = 0; i < 2000; ++i) {
    const Rational x(Integer(num(rng)), Integer(den(rng)));
    const Rational y(Integer(num(rng)), Integer(den(rng)));
    CHECK((x + y) - y == x);
    if (!y.is_zero()) CHECK((x * y) / y == x);
    CHECK(Rational::parse(x.str()) == x);
  }
}

TEST_CASE("binomial examples and out-of-range convention") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(0, 0) == 1);
  CHECK_THROWS_AS(binomial(-1, 0), DomainError);
  CHECK(binomial(200, 100) == oracle::product_binomial(200, 100));
}

TEST_CASE("binomial(200,100) matches the Pascal triangle") {
  std::vector<Integer> row{1};
  for (int n = 1; n <= 200; ++n) {
    std::vector<Integer> next(n + 1);
    next[0] = next[n] = 1;
    for (int k = 1; k < n; ++k) next[k] = row[k - 1] + row[k];
    row = std::move(next);
  }
  CHECK(binomial(200, 100) == row[100]);
  CHECK(row[100].get_str().size() == 59);
}

TEST_CASE("Pascal's rule holds for 0 <= k <= n <= 60") {
  for (long n = 1; n <= 60; ++n) {
    for (long k = 0; k <= n; ++k) {
      CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
}

TEST_CASE("catalan numbers against the Segner recurrence") {
  CHECK(catalan(0) == 1);
  CHECK(catalan(3) == 5);
  std::vector<Integer> segner{1};
  for (unsigned j = 1; j <= 30; ++j) {
    Integer s = 0;
    for (unsigned i = 0; i < j; ++i) s += segner[i] * segner[j - 1 - i];
    segner.push_back(s);
  }
  CHECK(segner[10] == 16796);
  for (unsigned j = 0; j <= 30; ++j) CHECK(catalan(j) == segner[j]);
}

TEST_CASE("stirling numbers of the second kind") {
  // Partitions of {1,2,3} into two blocks: {1}{23}, {2}{13}, {3}{12}.
  CHECK(stirling2(3, 2) == 3);
  for (unsigned r = 1; r <= 10; ++r) CHECK(stirling2(r, 0) == 0);
  CHECK(stirling2(0, 0) == 1);
  CHECK(stirling2(5, 5) == 1);
  CHECK(stirling2(4, 7) == 0);
}

TEST_CASE("sum_i S(r,i) x^(i falling) = x^r for r <= 12, x in 1..6") {
  for (unsigned r = 0; r <= 12; ++r) {
    for (long x = 1; x <= 6; ++x) {
      Integer s = 0;
      for (unsigned i = 0; i <= r; ++i) s += stirling2(r, i) * falling_factorial(Integer(x), i);
      Integer xr;
      mpz_ui_pow_ui(xr.get_mpz_t(), static_cast<unsigned long>(x), r);
      CHECK(s == xr);
    }
  }
}

TEST_CASE("cn examples") {
  CHECK(cn(1) == r("1/2"));
  CHECK(cn(2) == r("3/4"));
  CHECK(cn(5) == r("315/256"));
  CHECK_THROWS_AS(cn(0), DomainError);
}

TEST_CASE("binomial cache respects its capacity and is safe under concurrency") {
  const auto saved = binomial_cache_capacity();
  clear_binomial_cache();
  set_binomial_cache_capacity(50);
  for (long n = 0; n < 40; ++n) (void)binomial(n, n / 2);
  CHECK(binomial_cache_size() <= 50);

  set_binomial_cache_capacity(100000);
  std::vector<std::thread> workers;
  std::vector<int> mismatches(4, 0);
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([w, &mismatches] {
      for (long n = 0; n < 150; ++n) {
        for (long k = 0; k <= n; k += 3) {
          if (binomial(n, k) != oracle::product_binomial(n, k)) ++mismatches[w];
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  for (int m : mismatches) CHECK(m == 0);
  set_binomial_cache_capacity(saved);
}

TEST_CASE("polynomial arithmetic") {
  const Polynomial p{Rational(1), Rational(2)};   // 1 + 2x
  const Polynomial q{Rational(-1), Rational(0), Rational(1)};  // -1 + x^2
  CHECK((p * q) == Polynomial{Rational(-1), Rational(-2), Rational(1), Rational(2)});
  CHECK((p - p).degree() == -1);
  CHECK(Polynomial{Rational(3), Rational(0), Rational(0)}.degree() == 0);
  CHECK(q.evaluate(Rational(3)) == Rational(8));
  CHECK(q.derivative() == Polynomial{Rational(0), Rational(2)});
  CHECK(pow_truncated(p, 3, 10) == p * p * p);
  CHECK(pow_truncated(p, 3, 1) == Polynomial{Rational(1), Rational(6)});
  CHECK(q.coefficient(7) == Rational(0));
  CHECK(geometric_series(r("1/2"), 3) ==
        Polynomial{Rational(1), r("1/2"), r("1/4"), r("1/8")});
}

TEST_CASE("decimal rendering rounds half to even at the requested digits") {
  CHECK(to_decimal(r("1467229920/1000000"), 10) == "1467.229920");
  CHECK(to_decimal(r("5/2"), 1) == "2");
  CHECK(to_decimal(r("7/2"), 1) == "4");
  CHECK(to_decimal(r("25/1000"), 1) == "0.02");
  CHECK(to_decimal(r("-35/1000"), 1) == "-0.04");
  CHECK(to_decimal(r("9999/1000"), 3) == "10.0");
  CHECK(to_decimal(r("1/3"), 5) == "0.33333");
  CHECK(to_decimal(r("2/3"), 4) == "0.6667");
  CHECK(to_decimal(Rational(0), 10) == "0");
  CHECK(to_decimal(Rational(123456), 3) == "1.23e5");
  CHECK(to_decimal(r("1/1000000000"), 3) == "1.00e-9");
  CHECK(to_decimal(Rational(100), 3) == "100");
}

TEST_CASE("exact integers render without a fraction part") {
  CHECK(to_decimal(Rational(1), 10) == "1");
  CHECK(to_decimal(Rational(-42), 10) == "-42");
  CHECK(to_decimal(Rational(1234567890), 10) == "1234567890");
  CHECK(to_decimal(Rational(Integer("12345678901")), 10) == "1.234567890e10");
}
