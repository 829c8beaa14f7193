#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "coinstop/pgf.hpp"
#include "coinstop/rational.hpp"

namespace coinstop {

/// Largest accepted trial count.
inline constexpr std::uint64_t kMaxTrials = std::uint64_t{1} << 40;

struct SimConfig {
  double p = 0.5;  ///< bias used for sampling (double precision)
  GoalSpec goal;
  std::uint64_t trials = 1;
  std::uint64_t seed = 1;
  std::uint64_t chunk_size = 4096;
  unsigned jobs = 1;  ///< worker threads; does not affect results

  /// Throws DomainError on an invalid bias, targets, or counts.
  void validate() const;
};

using Histogram = std::map<long, std::uint64_t>;

struct SimSummary {
  std::uint64_t trials = 0;
  double mean = 0.0;
  double variance = 0.0;  ///< population variance of the stopping times
  /// E[((X - mean) / sd)^k] for k = 0..8; zero beyond k = 1 if sd = 0.
  std::array<double, 9> standardized_moments{};
  Histogram histogram;  ///< stopping time -> count
  double margin_mean = 0.0;  ///< mean of #Heads - #Tails at the stop
  double margin_standard_error = 0.0;

  /// Standard error of `mean`.
  [[nodiscard]] double standard_error() const;
};

/// Seeded toss source. Chunk `stream` of a run with seed `seed` always sees
/// the same tosses. A fair coin is drawn one bit per toss; any other bias
/// compares a 53-bit uniform against p.
class TossStream {
 public:
  TossStream(std::uint64_t seed, std::uint64_t stream, double p);

  bool heads();

  /// Fair coin only: consumes between 1 and `limit` tosses at once and
  /// returns {tosses, heads}.
  std::pair<int, int> block(int limit);

  [[nodiscard]] bool fair() const { return fair_; }

 private:
  std::mt19937_64 engine_;
  double p_;
  bool fair_;
  std::uint64_t bits_ = 0;
  int bits_left_ = 0;
};

/// One coin path followed until the requested rule fires.
struct PathOutcome {
  long heads_time = 0;  ///< toss index of the n-th Head (0 if not reached)
  long tails_time = 0;  ///< toss index of the m-th Tail (0 if not reached)
  long or_time = 0;
  long and_time = 0;    ///< 0 unless the path was followed to the AND stop
  long or_margin = 0;   ///< #Heads - #Tails at or_time
  long and_margin = 0;
};

PathOutcome run_path(TossStream& stream, long n, long m, bool until_and);

SimSummary simulate(const SimConfig& config);

struct MomentCheck {
  int order = 0;
  double empirical = 0.0;
  double reference = 0.0;
  double standard_error = 0.0;
  /// |empirical - reference| / standard_error
  [[nodiscard]] double z_score() const;
};

struct LimitLawReport {
  long n = 0;
  std::uint64_t trials = 0;
  /// Raw moments 1..4 of (X_n - 2n)/sqrt(n) against -sqrt(2)|Z|.
  std::vector<MomentCheck> or_moments;
  /// Raw moments 1..4 of (Y_n - 2n)/sqrt(n) against +sqrt(2)|Z|.
  std::vector<MomentCheck> and_moments;
  long max_or_minus_2n = 0;  ///< must be <= 0
  long min_and_minus_2n = 0; ///< must be >= 0
};

/// Fair coin, n Heads / n Tails; X_n and Y_n observed on the same path.
LimitLawReport experiment_t1_t2(long n, std::uint64_t trials, std::uint64_t seed, unsigned jobs = 1);

struct CoupledSumReport {
  long n = 0;
  std::uint64_t trials = 0;
  double mean = 0.0;  ///< of (X_n + Y_n - 4n) / n^(1/4)
  double mean_standard_error = 0.0;
  double variance = 0.0;
  double variance_standard_error = 0.0;
  double reference_variance = 0.0;  ///< 2^(3/2) E|Z| = 4 / sqrt(pi)
  std::uint64_t identity_violations = 0;  ///< paths with X_n + Y_n != nu_H + nu_T
};

CoupledSumReport experiment_xy(long n, std::uint64_t trials, std::uint64_t seed, unsigned jobs = 1);

struct WaldReport {
  long n = 0;
  long m = 0;
  std::uint64_t trials = 0;
  double empirical_margin = 0.0;
  double margin_standard_error = 0.0;
  Rational exact_margin;  ///< closed sum for E[#Heads - #Tails at the OR stop]
  Rational wald_value;    ///< (p - q) L1(n,m;p)
};

WaldReport experiment_wald(const CoinSpec& coin, long n, long m, std::uint64_t trials,
                           std::uint64_t seed, unsigned jobs = 1);

}  // namespace coinstop
