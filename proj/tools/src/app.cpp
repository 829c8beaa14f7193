#include "coinstop/cli/app.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "coinstop/cli/report.hpp"
#include "coinstop/duration.hpp"
#include "coinstop/moments.hpp"
#include "coinstop/montecarlo.hpp"
#include "coinstop/pgf.hpp"

namespace coinstop::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Rational parse_rational(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const DomainError&) {
    throw;
  } catch (const std::invalid_argument&) {
    throw UsageError(flag + ": cannot read '" + text + "' as a rational (A/B or decimal)");
  }
}

CoinSpec parse_coin(const std::string& flag, const std::string& text) {
  return CoinSpec::with_heads_probability(parse_rational(flag, text));
}

Table single_row(std::vector<Column> columns, std::vector<Cell> row) {
  Table t{std::move(columns), {}};
  t.rows.push_back(std::move(row));
  return t;
}

std::int64_t as_int(long v) { return static_cast<std::int64_t>(v); }

// ---------------------------------------------------------------- options

struct Common {
  std::string format = "text";
  int digits = 10;
};

struct ExpectationArgs {
  std::string rule = "or";
  long heads = 0;
  long tails = 0;
  std::string p;
  std::string method = "recurrence";
};

struct SweepArgs {
  std::string rule = "or";
  long heads = 0;
  long tails = 0;
  std::string p_from = "0.1";
  std::string p_to = "0.9";
  long steps = 80;
  std::string method = "recurrence";
  unsigned jobs = 1;
};

struct PmfArgs {
  std::string rule = "or";
  long heads = 0;
  long tails = 0;
  std::string p;
  std::string epsilon;
  bool standardized = false;
};

struct MomentsArgs {
  long n = 0;
  long max_order = 50;
  std::string kind = "all";
  bool compare = false;
};

struct SimulateArgs {
  std::string experiment = "none";
  std::string rule = "or";
  long heads = 1;
  long tails = 1;
  std::string p = "1/2";
  long n = 0;
  std::uint64_t trials = 100000;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::uint64_t chunk_size = 4096;
};

struct BenchArgs {
  std::string suite = "seven-values";
  std::string p = "1/3";
  long count = 7;
  int repeat = 3;
};

// --------------------------------------------------------------- commands

Report cmd_expectation(const ExpectationArgs& a) {
  const CoinSpec coin = parse_coin("--p", a.p);
  const Rule rule = parse_rule(a.rule);
  const Method method = parse_method(a.method);
  const ExpectationResult res = expectation(coin, rule, a.heads, a.tails, method);
  Report r;
  r.command = "expectation";
  r.params = {{"rule", to_string(rule)}, {"heads", a.heads}, {"tails", a.tails},
              {"p", coin.p().str()},    {"method", to_string(method)}};
  r.rows = single_row({{"rule", Kind::Text},
                       {"heads", Kind::Integer},
                       {"tails", Kind::Integer},
                       {"p", Kind::Exact},
                       {"method", Kind::Text},
                       {"value", Kind::Exact}},
                      {std::string(to_string(rule)), as_int(a.heads), as_int(a.tails), coin.p(),
                       std::string(to_string(method)), res.value});
  r.scalar_text = true;
  return r;
}

Report cmd_sweep(const SweepArgs& a) {
  const Rational from = parse_rational("--p-from", a.p_from);
  const Rational to = parse_rational("--p-to", a.p_to);
  const Rule rule = parse_rule(a.rule);
  const Method method = parse_method(a.method);
  require_targets(a.heads, a.tails);

  std::vector<Rational> ps;
  for (long i = 0; i <= a.steps; ++i) ps.push_back(from + (to - from) * Rational(i) / Rational(a.steps));
  // Validate every bias before spawning work so errors surface in order.
  std::vector<CoinSpec> coins;
  for (const auto& p : ps) coins.push_back(CoinSpec::with_heads_probability(p));

  std::vector<Rational> values(coins.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < coins.size(); i = next++) {
      try {
        values[i] = expectation(coins[i], rule, a.heads, a.tails, method).value;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < a.jobs; ++j) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  Report r;
  r.command = "sweep";
  r.params = {{"rule", to_string(rule)}, {"heads", a.heads},        {"tails", a.tails},
              {"p_from", from.str()},   {"p_to", to.str()},         {"steps", a.steps},
              {"method", to_string(method)}};
  r.rows.columns = {{"p", Kind::Exact}, {"expectation", Kind::Exact}};
  for (std::size_t i = 0; i < coins.size(); ++i) r.rows.rows.push_back({coins[i].p(), values[i]});
  return r;
}

Report cmd_pmf(const PmfArgs& a) {
  const CoinSpec coin = parse_coin("--p", a.p);
  const Rule rule = parse_rule(a.rule);
  Rational eps = default_and_epsilon();
  if (!a.epsilon.empty()) {
    eps = parse_rational("--epsilon", a.epsilon);
    if (eps.sign() <= 0) throw DomainError("--epsilon must be positive");
  }
  const Pmf pmf = rule == Rule::Or ? pmf_or(coin, a.heads, a.tails) : pmf_and(coin, a.heads, a.tails, eps);

  // Moments over the stored window, normalized by its mass.
  const Rational mass = pmf.total_mass();
  const Rational mean = pmf.partial_mean() / mass;
  Rational second;
  for (long k = pmf.support_min; k <= pmf.support_max(); ++k)
    second += pmf.probability(k) * Rational(k) * Rational(k);
  const Rational variance = second / mass - mean * mean;
  const double sd = std::sqrt(variance.to_double());

  Report r;
  r.command = "pmf";
  r.params = {{"rule", to_string(rule)}, {"heads", a.heads}, {"tails", a.tails}, {"p", coin.p().str()},
              {"standardized", a.standardized}};
  if (rule == Rule::And) r.params["epsilon"] = eps.str();
  r.summary = {{"support_min", as_int(pmf.support_min)},
               {"support_max", as_int(pmf.support_max())},
               {"truncated", pmf.truncated},
               {"tail_mass_bound", pmf.tail_mass_bound},
               {"mass", mass},
               {"mean", mean},
               {"sd", sd}};
  r.rows.columns = {{"k", Kind::Integer}, {"probability", Kind::Exact}};
  if (a.standardized) r.rows.columns.push_back({"standardized", Kind::Real});
  const double mu = mean.to_double();
  for (long k = pmf.support_min; k <= pmf.support_max(); ++k) {
    std::vector<Cell> row{as_int(k), pmf.probability(k)};
    if (a.standardized) row.emplace_back(sd > 0 ? (static_cast<double>(k) - mu) / sd : 0.0);
    r.rows.rows.push_back(std::move(row));
  }
  return r;
}

Report cmd_moments(const MomentsArgs& a) {
  if (a.n < 1) throw DomainError("--n must be at least 1");
  const bool want_scaled = a.kind == "scaled" || a.kind == "all" || a.compare;
  if (a.n == 1 && (a.kind == "scaled" || a.compare))
    throw DomainError("scaled moments need a positive variance; X is constant for n = 1");
  const MomentTable t = moment_table(a.n, std::max<long>(a.max_order, 2));
  const bool have_scaled = want_scaled && !t.scaled.empty();

  Report r;
  r.command = "moments";
  r.params = {{"n", a.n}, {"max_order", a.max_order}, {"kind", a.kind}, {"compare_halfnormal", a.compare}};
  r.summary = {{"mean", t.mean}, {"variance", t.variance}};

  std::vector<Column>& cols = r.rows.columns;
  cols.push_back({"order", Kind::Integer});
  const bool all = a.kind == "all";
  if (all || a.kind == "factorial") cols.push_back({"factorial", Kind::Exact});
  if (all || a.kind == "raw") cols.push_back({"raw", Kind::Exact});
  if (all || a.kind == "central") cols.push_back({"central", Kind::Exact});
  if (have_scaled) cols.push_back({"scaled", Kind::Real});
  if (a.compare) {
    cols.push_back({"halfnormal", Kind::Real});
    cols.push_back({"deviation", Kind::Real});
  }
  for (long k = 1; k <= a.max_order; ++k) {
    std::vector<Cell> row{as_int(k)};
    if (all || a.kind == "factorial") row.emplace_back(t.factorial[k]);
    if (all || a.kind == "raw") row.emplace_back(t.raw[k]);
    if (all || a.kind == "central") row.emplace_back(t.central[k]);
    if (have_scaled) row.emplace_back(t.scaled[k]);
    if (a.compare) {
      const double ref = halfnormal_scaled_moment(k);
      row.emplace_back(ref);
      row.emplace_back(k <= 2 ? 0.0 : t.scaled[k] - ref);
    }
    r.rows.rows.push_back(std::move(row));
  }
  return r;
}

std::uint64_t resolve_seed(const SimulateArgs& a, std::string& source) {
  if (a.seed) {
    source = "flag";
    return *a.seed;
  }
  if (const char* env = std::getenv("COINSTOP_SEED"); env && *env) {
    source = "COINSTOP_SEED";
    try {
      std::size_t used = 0;
      const std::string s(env);
      if (s.find('-') != std::string::npos) throw std::invalid_argument("negative");
      const std::uint64_t v = std::stoull(s, &used, 10);
      if (used != s.size()) throw std::invalid_argument("trailing text");
      return v;
    } catch (const std::exception&) {
      throw UsageError(std::string("COINSTOP_SEED is not an unsigned 64-bit integer: '") + env + "'");
    }
  }
  source = "default";
  return 1;
}

Table moment_checks(const char* variable, const std::vector<MomentCheck>& checks, Table t) {
  for (const auto& c : checks) {
    t.rows.push_back({std::string(variable), std::int64_t{c.order}, c.empirical, c.reference,
                      c.standard_error, c.z_score()});
  }
  return t;
}

Report cmd_simulate(const SimulateArgs& a) {
  std::string seed_source;
  const std::uint64_t seed = resolve_seed(a, seed_source);
  if (a.jobs < 1) throw UsageError("--jobs must be at least 1");
  Report r;
  r.command = "simulate";
  r.params = {{"experiment", a.experiment}, {"trials", a.trials}, {"seed", seed},
              {"seed_source", seed_source}, {"jobs", a.jobs},     {"chunk_size", a.chunk_size}};

  if (a.experiment == "t1t2" || a.experiment == "xy") {
    const long n = a.n > 0 ? a.n : (a.experiment == "xy" ? 10000 : 1000);
    r.params["n"] = n;
    if (a.experiment == "t1t2") {
      const LimitLawReport rep = experiment_t1_t2(n, a.trials, seed, a.jobs);
      r.summary = {{"n", as_int(rep.n)},
                   {"trials", static_cast<std::int64_t>(rep.trials)},
                   {"max_or_minus_2n", as_int(rep.max_or_minus_2n)},
                   {"min_and_minus_2n", as_int(rep.min_and_minus_2n)}};
      Table t{{{"variable", Kind::Text},
               {"order", Kind::Integer},
               {"empirical", Kind::Real},
               {"reference", Kind::Real},
               {"standard_error", Kind::Real},
               {"z_score", Kind::Real}},
              {}};
      t = moment_checks("(X-2n)/sqrt(n)", rep.or_moments, std::move(t));
      r.rows = moment_checks("(Y-2n)/sqrt(n)", rep.and_moments, std::move(t));
    } else {
      const CoupledSumReport rep = experiment_xy(n, a.trials, seed, a.jobs);
      r.summary = {{"n", as_int(rep.n)},
                   {"trials", static_cast<std::int64_t>(rep.trials)},
                   {"mean", rep.mean},
                   {"mean_standard_error", rep.mean_standard_error},
                   {"variance", rep.variance},
                   {"variance_standard_error", rep.variance_standard_error},
                   {"reference_variance", rep.reference_variance},
                   {"relative_deviation", (rep.variance - rep.reference_variance) / rep.reference_variance},
                   {"identity_violations", static_cast<std::int64_t>(rep.identity_violations)}};
    }
    return r;
  }

  const CoinSpec coin = parse_coin("--p", a.p);
  r.params["p"] = coin.p().str();
  r.params["heads"] = a.heads;
  r.params["tails"] = a.tails;

  if (a.experiment == "wald") {
    const WaldReport rep = experiment_wald(coin, a.heads, a.tails, a.trials, seed, a.jobs);
    r.summary = {{"trials", static_cast<std::int64_t>(rep.trials)},
                 {"margin_mean", rep.empirical_margin},
                 {"margin_standard_error", rep.margin_standard_error},
                 {"exact_margin", rep.exact_margin},
                 {"wald_value", rep.wald_value},
                 {"z_score", rep.margin_standard_error > 0
                                 ? std::abs(rep.empirical_margin - rep.exact_margin.to_double()) /
                                       rep.margin_standard_error
                                 : 0.0}};
    return r;
  }

  const Rule rule = parse_rule(a.rule);
  r.params["rule"] = to_string(rule);
  SimConfig cfg;
  cfg.p = coin.p().to_double();
  cfg.goal = GoalSpec{rule, a.heads, a.tails};
  cfg.goal.validate();
  cfg.trials = a.trials;
  cfg.seed = seed;
  cfg.chunk_size = a.chunk_size;
  cfg.jobs = a.jobs;
  const SimSummary s = simulate(cfg);
  const Rational exact = expectation_recurrence(coin, rule, a.heads, a.tails).value;
  const double se = s.standard_error();
  r.summary = {{"trials", static_cast<std::int64_t>(s.trials)},
               {"mean", s.mean},
               {"standard_error", se},
               {"variance", s.variance},
               {"exact_mean", exact},
               {"z_score", se > 0 ? std::abs(s.mean - exact.to_double()) / se : 0.0},
               {"margin_mean", s.margin_mean},
               {"margin_standard_error", s.margin_standard_error}};
  for (int k = 3; k <= 8; ++k) r.summary.emplace_back("standardized_moment_" + std::to_string(k), s.standardized_moments[k]);
  r.rows.columns = {{"k", Kind::Integer}, {"count", Kind::Integer}, {"frequency", Kind::Real}};
  for (const auto& [k, count] : s.histogram) {
    r.rows.rows.push_back({as_int(k), static_cast<std::int64_t>(count),
                           static_cast<double>(count) / static_cast<double>(s.trials)});
  }
  return r;
}

template <class F>
double best_seconds(int repeat, F&& f) {
  double best = 0.0;
  for (int i = 0; i < repeat; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (i == 0 || dt < best) best = dt;
  }
  return best;
}

Report cmd_bench(const BenchArgs& a) {
  const CoinSpec coin = parse_coin("--p", a.p);
  struct Case {
    Rule rule;
    long i;
  };
  std::vector<Case> cases;
  for (Rule rule : {Rule::Or, Rule::And})
    for (long i = 1; i <= a.count; ++i) cases.push_back({rule, i});

  std::vector<Rational> rec(cases.size());
  std::vector<Rational> dir(cases.size());
  const double t_rec = best_seconds(a.repeat, [&] {
    for (std::size_t c = 0; c < cases.size(); ++c)
      rec[c] = expectation_recurrence(coin, cases[c].rule, 100 * cases[c].i, 200 * cases[c].i).value;
  });
  const double t_dir = best_seconds(a.repeat, [&] {
    for (std::size_t c = 0; c < cases.size(); ++c)
      dir[c] = expectation_direct(coin, cases[c].rule, 100 * cases[c].i, 200 * cases[c].i).value;
  });

  Report r;
  r.command = "bench";
  r.params = {{"suite", a.suite}, {"p", coin.p().str()}, {"count", a.count}, {"repeat", a.repeat}};
  r.rows.columns = {{"rule", Kind::Text},       {"i", Kind::Integer},      {"heads", Kind::Integer},
                    {"tails", Kind::Integer},   {"recurrence", Kind::Exact}, {"direct", Kind::Exact},
                    {"agree", Kind::Boolean}};
  bool all_agree = true;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const bool agree = rec[c] == dir[c];
    all_agree = all_agree && agree;
    r.rows.rows.push_back({std::string(to_string(cases[c].rule)), as_int(cases[c].i), as_int(100 * cases[c].i),
                           as_int(200 * cases[c].i), rec[c], dir[c], agree});
  }
  r.summary = {{"recurrence_seconds", t_rec},
               {"direct_seconds", t_dir},
               {"speedup", t_rec > 0 ? t_dir / t_rec : 0.0},
               {"values_agree", all_agree}};
  return r;
}

// ------------------------------------------------------------------ wiring

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  sub->add_option("--digits", c.digits, "Significant digits when rendering decimals")
      ->check(CLI::Range(1, 60))
      ->capture_default_str();
}

void add_rule(CLI::App* sub, std::string& rule) {
  sub->add_option("--rule", rule, "Stopping rule")->check(CLI::IsMember({"or", "and"}))->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and simulated statistics for coin-tossing stopping times", "coinstop"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "coinstop 0.1.0");

  Common common;
  ExpectationArgs ea;
  SweepArgs sa;
  PmfArgs pa;
  MomentsArgs ma;
  SimulateArgs sim;
  BenchArgs ba;
  std::function<Report()> action;

  auto* e = app.add_subcommand("expectation", "Expected number of tosses L1 (or) / L2 (and)");
  add_rule(e, ea.rule);
  e->add_option("--heads", ea.heads, "Heads target n")->required();
  e->add_option("--tails", ea.tails, "Tails target m")->required();
  e->add_option("--p", ea.p, "P(Heads) as A/B or a decimal")->required();
  e->add_option("--method", ea.method, "Evaluation method")
      ->check(CLI::IsMember({"recurrence", "direct", "closed", "catalan"}))
      ->capture_default_str();
  add_common(e, common);
  e->callback([&] { action = [&] { return cmd_expectation(ea); }; });

  auto* s = app.add_subcommand("sweep", "Expectation over an evenly spaced grid of biases");
  add_rule(s, sa.rule);
  s->add_option("--heads", sa.heads, "Heads target n")->required();
  s->add_option("--tails", sa.tails, "Tails target m")->required();
  s->add_option("--p-from", sa.p_from, "First bias")->capture_default_str();
  s->add_option("--p-to", sa.p_to, "Last bias")->capture_default_str();
  s->add_option("--steps", sa.steps, "Number of intervals K (K+1 points)")
      ->check(CLI::Range(1L, 1000000L))
      ->capture_default_str();
  s->add_option("--method", sa.method, "Evaluation method")
      ->check(CLI::IsMember({"recurrence", "direct", "closed", "catalan"}))
      ->capture_default_str();
  s->add_option("--jobs", sa.jobs, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
  add_common(s, common);
  s->callback([&] { action = [&] { return cmd_sweep(sa); }; });

  auto* p = app.add_subcommand("pmf", "Exact probability mass function");
  add_rule(p, pa.rule);
  p->add_option("--heads", pa.heads, "Heads target n")->required();
  p->add_option("--tails", pa.tails, "Tails target m")->required();
  p->add_option("--p", pa.p, "P(Heads) as A/B or a decimal")->required();
  p->add_option("--epsilon", pa.epsilon, "AND-rule tail threshold (default 2^-40)");
  p->add_flag("--standardized", pa.standardized, "Add a (k - mean)/sd column");
  add_common(p, common);
  p->callback([&] { action = [&] { return cmd_pmf(pa); }; });

  auto* m = app.add_subcommand("moments", "Moments of X1(n,n;1/2)");
  m->add_option("--n", ma.n, "Target n (fair coin, n Heads or n Tails)")->required();
  m->add_option("--max-order", ma.max_order, "Highest order R")->check(CLI::Range(1L, 100000L))->capture_default_str();
  m->add_option("--kind", ma.kind, "Which moments to list")
      ->check(CLI::IsMember({"all", "factorial", "raw", "central", "scaled"}))
      ->capture_default_str();
  m->add_flag("--compare-halfnormal", ma.compare, "Add -|N(0,1)| reference and deviation columns");
  add_common(m, common);
  m->callback([&] { action = [&] { return cmd_moments(ma); }; });

  auto* sm = app.add_subcommand("simulate", "Monte Carlo simulation and limit-law experiments");
  sm->add_option("--experiment", sim.experiment, "none, t1t2, xy or wald")
      ->check(CLI::IsMember({"none", "t1t2", "xy", "wald"}))
      ->capture_default_str();
  add_rule(sm, sim.rule);
  sm->add_option("--heads", sim.heads, "Heads target n")->capture_default_str();
  sm->add_option("--tails", sim.tails, "Tails target m")->capture_default_str();
  sm->add_option("--p", sim.p, "P(Heads) as A/B or a decimal")->capture_default_str();
  sm->add_option("--n", sim.n, "Target for t1t2 / xy (defaults 1000 / 10000)");
  sm->add_option("--trials", sim.trials, "Number of simulated paths")
      ->check(CLI::Range(std::uint64_t{1}, kMaxTrials))
      ->capture_default_str();
  sm->add_option("--seed", sim.seed, "RNG seed (falls back to COINSTOP_SEED, then 1)");
  sm->add_option("--jobs", sim.jobs, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
  sm->add_option("--chunk-size", sim.chunk_size, "Trials per deterministic sub-stream")
      ->check(CLI::Range(std::uint64_t{1}, kMaxTrials))
      ->capture_default_str();
  add_common(sm, common);
  sm->callback([&] { action = [&] { return cmd_simulate(sim); }; });

  auto* b = app.add_subcommand("bench", "Recurrence versus direct summation timing");
  b->add_option("--suite", ba.suite, "Benchmark suite")->check(CLI::IsMember({"seven-values"}))->capture_default_str();
  b->add_option("--p", ba.p, "P(Heads) as A/B or a decimal")->capture_default_str();
  b->add_option("--count", ba.count, "Use (100i, 200i) for i = 1..count")->check(CLI::Range(1L, 50L))->capture_default_str();
  b->add_option("--repeat", ba.repeat, "Timed repetitions; the fastest is kept")
      ->check(CLI::Range(1, 100))
      ->capture_default_str();
  add_common(b, common);
  b->callback([&] { action = [&] { return cmd_bench(ba); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Report report = action();
    write_report(report, RenderOptions{parse_format(common.format), common.digits}, out);
    return kExitOk;
  } catch (const DomainError& ex) {
    err << "coinstop: domain error: " << ex.what() << '\n';
    return kExitDomain;
  } catch (const std::invalid_argument& ex) {
    err << "coinstop: usage error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "coinstop: internal error: " << ex.what() << '\n';
    return 1;
  }
}

}  // namespace coinstop::cli
