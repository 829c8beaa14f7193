#include "coinstop/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <thread>

#include "coinstop/duration.hpp"
#include "coinstop/moments.hpp"

namespace coinstop {

namespace {

constexpr double kTwoPow53Inverse = 1.0 / 9007199254740992.0;

// Histograms are merged by integer addition, so the merged result is the
// same whatever order chunks finish in.
template <std::size_t K>
struct Tally {
  std::array<Histogram, K> histograms;

  void merge(const Tally& other) {
    for (std::size_t i = 0; i < K; ++i) {
      for (const auto& [value, count] : other.histograms[i]) histograms[i][value] += count;
    }
  }
};

template <std::size_t K>
using TrialFn = std::function<std::array<long, K>(TossStream&)>;

template <std::size_t K>
Tally<K> run_chunks(std::uint64_t trials, std::uint64_t seed, std::uint64_t chunk_size, unsigned jobs,
                    double p, const TrialFn<K>& trial) {
  const std::uint64_t chunks = (trials + chunk_size - 1) / chunk_size;
  std::atomic<std::uint64_t> next{0};
  std::mutex merge_mutex;
  Tally<K> total;

  auto worker = [&] {
    Tally<K> local;
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      TossStream stream(seed, c, p);
      const std::uint64_t begin = c * chunk_size;
      const std::uint64_t end = std::min(trials, begin + chunk_size);
      for (std::uint64_t t = begin; t < end; ++t) {
        const auto values = trial(stream);
        for (std::size_t i = 0; i < K; ++i) ++local.histograms[i][values[i]];
      }
    }
    std::lock_guard lock(merge_mutex);
    total.merge(local);
  };

  const unsigned threads = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(chunks)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return total;
}

struct Moments {
  std::uint64_t count = 0;
  long double mean = 0.0L;
  std::array<long double, 9> central{};  // E[(V - mean)^k]
};

// Moments of (value - shift) / scale over a histogram.
Moments describe(const Histogram& h, long double shift = 0.0L, long double scale = 1.0L) {
  Moments m;
  long double sum = 0.0L;
  for (const auto& [value, count] : h) {
    m.count += count;
    sum += static_cast<long double>(count) * ((static_cast<long double>(value) - shift) / scale);
  }
  if (m.count == 0) return m;
  const auto total = static_cast<long double>(m.count);
  m.mean = sum / total;
  for (const auto& [value, count] : h) {
    const long double d = (static_cast<long double>(value) - shift) / scale - m.mean;
    long double power = 1.0L;
    for (auto& c : m.central) {
      c += static_cast<long double>(count) * power;
      power *= d;
    }
  }
  for (auto& c : m.central) c /= total;
  return m;
}

// E[V^k] and its standard error, for V = (value - shift) / scale.
MomentCheck raw_moment_check(const Histogram& h, int order, long double shift, long double scale,
                             double reference) {
  long double first = 0.0L;
  long double second = 0.0L;
  std::uint64_t count = 0;
  for (const auto& [value, c] : h) {
    const long double v = (static_cast<long double>(value) - shift) / scale;
    const long double vk = std::pow(v, static_cast<long double>(order));
    first += static_cast<long double>(c) * vk;
    second += static_cast<long double>(c) * vk * vk;
    count += c;
  }
  const auto total = static_cast<long double>(count);
  first /= total;
  second /= total;
  MomentCheck check;
  check.order = order;
  check.empirical = static_cast<double>(first);
  check.reference = reference;
  check.standard_error = static_cast<double>(std::sqrt(std::max(0.0L, second - first * first) / total));
  return check;
}

void validate_run(long n, std::uint64_t trials) {
  if (n < 1) throw DomainError("n must be positive");
  if (trials < 1 || trials > kMaxTrials) throw DomainError("trial count out of range");
}

}  // namespace

void SimConfig::validate() const {
  goal.validate();
  if (!(p > 0.0 && p < 1.0)) throw DomainError("sampling bias must lie in (0,1)");
  if (trials < 1 || trials > kMaxTrials) throw DomainError("trial count out of range");
  if (chunk_size < 1) throw DomainError("chunk size must be positive");
}

double SimSummary::standard_error() const {
  return trials == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(trials));
}

double MomentCheck::z_score() const {
  const double diff = std::abs(empirical - reference);
  return standard_error > 0.0 ? diff / standard_error : (diff == 0.0 ? 0.0 : INFINITY);
}

TossStream::TossStream(std::uint64_t seed, std::uint64_t stream, double p)
    : p_(p), fair_(p == 0.5) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

bool TossStream::heads() {
  if (!fair_) return static_cast<double>(engine_() >> 11) * kTwoPow53Inverse < p_;
  if (bits_left_ == 0) {
    bits_ = engine_();
    bits_left_ = 64;
  }
  const bool h = (bits_ & 1U) != 0;
  bits_ >>= 1;
  --bits_left_;
  return h;
}

std::pair<int, int> TossStream::block(int limit) {
  if (bits_left_ == 0) {
    bits_ = engine_();
    bits_left_ = 64;
  }
  const int take = std::clamp(limit, 1, bits_left_);
  const std::uint64_t mask = take == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << take) - 1);
  const int h = std::popcount(bits_ & mask);
  bits_ = take == 64 ? 0 : bits_ >> take;
  bits_left_ -= take;
  return {take, h};
}

PathOutcome run_path(TossStream& stream, long n, long m, bool until_and) {
  PathOutcome out;
  long heads = 0;
  long tails = 0;
  long tosses = 0;
  for (;;) {
    long limit = 64;
    if (heads < n) limit = std::min(limit, n - heads - 1);
    if (tails < m) limit = std::min(limit, m - tails - 1);
    if (stream.fair() && limit >= 1) {
      const auto [b, h] = stream.block(static_cast<int>(limit));
      heads += h;
      tails += b - h;
      tosses += b;
      continue;
    }
    if (stream.heads()) {
      ++heads;
    } else {
      ++tails;
    }
    ++tosses;
    if (heads == n && out.heads_time == 0) out.heads_time = tosses;
    if (tails == m && out.tails_time == 0) out.tails_time = tosses;
    const bool any = out.heads_time != 0 || out.tails_time != 0;
    if (any && out.or_time == 0) {
      out.or_time = tosses;
      out.or_margin = heads - tails;
      if (!until_and) return out;
    }
    if (out.heads_time != 0 && out.tails_time != 0) {
      out.and_time = tosses;
      out.and_margin = heads - tails;
      return out;
    }
  }
}

SimSummary simulate(const SimConfig& config) {
  config.validate();
  const long n = config.goal.n_heads;
  const long m = config.goal.m_tails;
  const bool and_rule = config.goal.rule == Rule::And;
  const TrialFn<2> trial = [=](TossStream& s) {
    const PathOutcome o = run_path(s, n, m, and_rule);
    return and_rule ? std::array<long, 2>{o.and_time, o.and_margin}
                    : std::array<long, 2>{o.or_time, o.or_margin};
  };
  const Tally<2> tally =
      run_chunks<2>(config.trials, config.seed, config.chunk_size, config.jobs, config.p, trial);

  SimSummary summary;
  summary.histogram = tally.histograms[0];
  const Moments times = describe(tally.histograms[0]);
  summary.trials = times.count;
  summary.mean = static_cast<double>(times.mean);
  summary.variance = static_cast<double>(times.central[2]);
  const long double sd = std::sqrt(times.central[2]);
  summary.standardized_moments[0] = 1.0;
  for (std::size_t k = 1; k < summary.standardized_moments.size(); ++k) {
    summary.standardized_moments[k] =
        sd > 0.0L ? static_cast<double>(times.central[k] / std::pow(sd, static_cast<long double>(k))) : 0.0;
  }
  const Moments margins = describe(tally.histograms[1]);
  summary.margin_mean = static_cast<double>(margins.mean);
  summary.margin_standard_error =
      static_cast<double>(std::sqrt(margins.central[2] / static_cast<long double>(margins.count)));
  return summary;
}

LimitLawReport experiment_t1_t2(long n, std::uint64_t trials, std::uint64_t seed, unsigned jobs) {
  validate_run(n, trials);
  const TrialFn<2> trial = [n](TossStream& s) {
    const PathOutcome o = run_path(s, n, n, true);
    return std::array<long, 2>{o.or_time, o.and_time};
  };
  const Tally<2> tally = run_chunks<2>(trials, seed, 4096, jobs, 0.5, trial);

  LimitLawReport report;
  report.n = n;
  report.trials = trials;
  const long double shift = 2.0L * static_cast<long double>(n);
  const long double scale = std::sqrt(static_cast<long double>(n));
  for (int k = 1; k <= 4; ++k) {
    // E[(sqrt(2)|Z|)^k] = 2^(k/2) E|Z|^k; the OR limit carries the sign (-1)^k.
    const double reference = std::pow(2.0, k / 2.0) * std::abs(halfnormal_raw_moment(k));
    report.or_moments.push_back(
        raw_moment_check(tally.histograms[0], k, shift, scale, k % 2 == 0 ? reference : -reference));
    report.and_moments.push_back(raw_moment_check(tally.histograms[1], k, shift, scale, reference));
  }
  report.max_or_minus_2n = tally.histograms[0].rbegin()->first - 2 * n;
  report.min_and_minus_2n = tally.histograms[1].begin()->first - 2 * n;
  return report;
}

CoupledSumReport experiment_xy(long n, std::uint64_t trials, std::uint64_t seed, unsigned jobs) {
  validate_run(n, trials);
  const TrialFn<2> trial = [n](TossStream& s) {
    const PathOutcome o = run_path(s, n, n, true);
    const long violation = (o.or_time + o.and_time != o.heads_time + o.tails_time) ? 1 : 0;
    return std::array<long, 2>{o.or_time + o.and_time - 4 * n, violation};
  };
  const Tally<2> tally = run_chunks<2>(trials, seed, 4096, jobs, 0.5, trial);

  const long double scale = std::pow(static_cast<long double>(n), 0.25L);
  const Moments d = describe(tally.histograms[0], 0.0L, scale);
  const auto total = static_cast<long double>(d.count);
  CoupledSumReport report;
  report.n = n;
  report.trials = trials;
  report.mean = static_cast<double>(d.mean);
  report.mean_standard_error = static_cast<double>(std::sqrt(d.central[2] / total));
  report.variance = static_cast<double>(d.central[2]);
  report.variance_standard_error = static_cast<double>(
      std::sqrt(std::max(0.0L, d.central[4] - d.central[2] * d.central[2]) / total));
  report.reference_variance = 4.0 / std::sqrt(std::numbers::pi);
  if (auto it = tally.histograms[1].find(1); it != tally.histograms[1].end()) {
    report.identity_violations = it->second;
  }
  return report;
}

WaldReport experiment_wald(const CoinSpec& coin, long n, long m, std::uint64_t trials,
                           std::uint64_t seed, unsigned jobs) {
  require_targets(n, m);
  validate_run(n, trials);
  const TrialFn<1> trial = [n, m](TossStream& s) {
    return std::array<long, 1>{run_path(s, n, m, false).or_margin};
  };
  const Tally<1> tally = run_chunks<1>(trials, seed, 4096, jobs, coin.p().to_double(), trial);
  const Moments margin = describe(tally.histograms[0]);

  WaldReport report;
  report.n = n;
  report.m = m;
  report.trials = trials;
  report.empirical_margin = static_cast<double>(margin.mean);
  report.margin_standard_error =
      static_cast<double>(std::sqrt(margin.central[2] / static_cast<long double>(margin.count)));
  report.exact_margin = expected_margin(coin, n, m);
  report.wald_value = (coin.p() - coin.q()) * expectation_recurrence(coin, Rule::Or, n, m).value;
  return report;
}

}  // namespace coinstop
