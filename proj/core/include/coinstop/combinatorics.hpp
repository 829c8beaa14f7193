#pragma once

#include <cstddef>

#include "coinstop/rational.hpp"

namespace coinstop {

/// C(n, k); zero when k < 0 or k > n. Requires n >= 0.
///
/// Results are memoized process-wide (thread-safe) until the table holds
/// `binomial_cache_capacity()` entries; past that, values are computed on
/// demand without being stored.
Integer binomial(long n, long k);

void set_binomial_cache_capacity(std::size_t entries);
std::size_t binomial_cache_capacity();
std::size_t binomial_cache_size();
void clear_binomial_cache();

Integer factorial(unsigned long n);

/// x (x-1) ... (x-k+1); one when k = 0.
Integer falling_factorial(const Integer& x, unsigned long k);

/// x (x+1) ... (x+k-1); one when k = 0.
Integer rising_factorial(const Integer& x, unsigned long k);

/// (2j)! / (j! (j+1)!)
Integer catalan(unsigned long j);

/// Stirling numbers of the second kind from the triangle
/// S(r,i) = i S(r-1,i) + S(r-1,i-1), S(0,0) = 1. Rows are memoized.
Integer stirling2(unsigned long r, unsigned long i);

/// n C(2n,n) / 4^n, the fair-coin deficit constant: E[X] = 2n - 2 cn(n)
/// for the number of fair tosses to n Heads or n Tails. Requires n >= 1.
Rational cn(long n);

}  // namespace coinstop
