#include "coinstop/combinatorics.hpp"

#include <atomic>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace coinstop {

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<unsigned long, unsigned long>& key) const noexcept {
    return std::hash<unsigned long>{}(key.first) * 0x9e3779b97f4a7c15ULL ^
           std::hash<unsigned long>{}(key.second);
  }
};

class BinomialCache {
 public:
  Integer get(unsigned long n, unsigned long k) {
    // C(n,k) = C(n,n-k); store only the lower half.
    if (k > n - k) k = n - k;
    const auto key = std::make_pair(n, k);
    {
      std::shared_lock lock(mutex_);
      if (auto it = table_.find(key); it != table_.end()) return it->second;
    }
    Integer value;
    mpz_bin_uiui(value.get_mpz_t(), n, k);
    std::unique_lock lock(mutex_);
    if (table_.size() < capacity_.load()) table_.emplace(key, value);
    return value;
  }

  void set_capacity(std::size_t entries) {
    std::unique_lock lock(mutex_);
    capacity_ = entries;
    if (table_.size() > entries) table_.clear();
  }

  std::size_t capacity() const { return capacity_.load(); }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }

  void clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::atomic<std::size_t> capacity_{1'000'000};
  std::unordered_map<std::pair<unsigned long, unsigned long>, Integer, PairHash> table_;
};

BinomialCache& binomial_cache() {
  static BinomialCache cache;
  return cache;
}

class StirlingTriangle {
 public:
  Integer get(unsigned long r, unsigned long i) {
    if (i > r) return 0;
    {
      std::shared_lock lock(mutex_);
      if (r < rows_.size()) return rows_[r][i];
    }
    std::unique_lock lock(mutex_);
    if (rows_.empty()) rows_.push_back({Integer(1)});
    while (rows_.size() <= r) {
      const auto& prev = rows_.back();
      const unsigned long row = rows_.size();
      std::vector<Integer> next(row + 1);
      next[0] = 0;
      for (unsigned long j = 1; j <= row; ++j) {
        const Integer carried = j < prev.size() ? Integer(j * prev[j]) : Integer(0);
        next[j] = carried + prev[j - 1];
      }
      rows_.push_back(std::move(next));
    }
    return rows_[r][i];
  }

 private:
  std::shared_mutex mutex_;
  std::vector<std::vector<Integer>> rows_;
};

StirlingTriangle& stirling_triangle() {
  static StirlingTriangle triangle;
  return triangle;
}

}  // namespace

Integer binomial(long n, long k) {
  if (n < 0) throw DomainError("binomial: n must be non-negative");
  if (k < 0 || k > n) return 0;
  return binomial_cache().get(static_cast<unsigned long>(n), static_cast<unsigned long>(k));
}

void set_binomial_cache_capacity(std::size_t entries) { binomial_cache().set_capacity(entries); }
std::size_t binomial_cache_capacity() { return binomial_cache().capacity(); }
std::size_t binomial_cache_size() { return binomial_cache().size(); }
void clear_binomial_cache() { binomial_cache().clear(); }

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer falling_factorial(const Integer& x, unsigned long k) {
  Integer r = 1;
  for (unsigned long i = 0; i < k; ++i) r *= x - i;
  return r;
}

Integer rising_factorial(const Integer& x, unsigned long k) {
  Integer r = 1;
  for (unsigned long i = 0; i < k; ++i) r *= x + i;
  return r;
}

Integer catalan(unsigned long j) {
  Integer r = binomial(static_cast<long>(2 * j), static_cast<long>(j));
  mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), j + 1);
  return r;
}

Integer stirling2(unsigned long r, unsigned long i) { return stirling_triangle().get(r, i); }

Rational cn(long n) {
  if (n < 1) throw DomainError("cn: n must be positive");
  Integer den = 1;
  den <<= static_cast<mp_bitcnt_t>(2 * n);
  return Rational(Integer(n * binomial(2 * n, n)), den);
}

}  // namespace coinstop
