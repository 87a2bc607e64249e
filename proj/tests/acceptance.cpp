// Acceptance suite: one line per criterion, nonzero exit if any fails.
//
// A1  golden Borda values of the two cycle datasets
// A2  MergeDTS converges on Cycle within one million steps (two parameter sets)
// A3  the Condorcet winner survives elimination in the theoretical regime
// A4  pair-comparison audit stays clean in the theoretical regime
// A5  per-step policy cost is batch-local (K=512 vs K=64)
// A6  Self-Sparring trails MergeDTS on Cycle by a wide margin
// A7  determinism and parallel/serial equivalence
// A8  statistical oracles: duel sampling, Beta posteriors, tournaments
// A9  oracle equivalence: purge predicate, regret resummation, UCB cells
// A10 Copeland regret mode wiring

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "duelbench/duelbench.hpp"

using namespace duelbench;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const char* id, const Outcome& outcome, double seconds) {
  std::printf("%-4s %s %s (%.1fs)\n", id, outcome.pass ? "PASS" : "FAIL",
              outcome.detail.c_str(), seconds);
  std::fflush(stdout);
  if (!outcome.pass) ++failures;
}

void run_criterion(const char* id, const std::function<Outcome()>& fn) {
  const auto started = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = fn();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  report(id, outcome,
         std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count());
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// ---- A1 -------------------------------------------------------------------

Outcome a1_golden_borda() {
  const auto borda1 = borda_scores(gen_cycle());
  const auto borda2 = borda_scores(gen_cycle2());
  double worst = 0.0;
  auto check = [&worst](double got, double want) {
    worst = std::max(worst, std::abs(got - want));
  };
  check(borda1[0], 10.19);
  for (int i = 1; i < 20; ++i) check(borda1[static_cast<std::size_t>(i)], 9.99);
  check(borda2[0], 11.90);
  for (int i = 1; i < 20; ++i) check(borda2[static_cast<std::size_t>(i)], 9.90);
  return {worst <= 1e-9, fmt("golden Borda values, max abs err %.2e (tol 1e-9)", worst)};
}

// ---- A2 -------------------------------------------------------------------

Outcome a2_cycle_convergence() {
  const Environment env = Environment::create(gen_cycle(), RegretMode::Condorcet);
  const std::int64_t horizon = 1000000;

  auto winners = [&](const MergeDtsParams& params) {
    int wins = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      MergeDts policy(20, params, false);
      const RegretTrace trace = run_trace(env, policy, horizon, {horizon}, seed);
      if (trace.reported_winner == 0) ++wins;
    }
    return wins;
  };

  MergeDtsParams tuned;
  tuned.alpha = 0.262144;  // 0.8^6
  tuned.batch_size_m = 16;
  tuned.horizon_t = horizon;
  tuned.c_override = 4.0e6;

  MergeDtsParams theory;
  theory.alpha = 1.01;
  theory.batch_size_m = 4;
  theory.horizon_t = horizon;  // epsilon defaults to 1/T

  const int tuned_wins = winners(tuned);
  const int theory_wins = winners(theory);
  return {tuned_wins >= 18 && theory_wins >= 18,
          fmt("Cycle winners: tuned %.0f/20, theory %.0f/20 (need >= 18 each)",
              tuned_wins, theory_wins)};
}

// ---- A3 / A4 ---------------------------------------------------------------

RunConfig theory_regime_config() {
  RunConfig config;
  config.environment.source = EnvironmentSpec::Source::RandomCondorcet;
  config.environment.k = 8;
  config.environment.delta_min = 0.1;
  config.environment.uninformative_fraction = 0.0;
  config.environment.gen_seed = 2024;
  config.policy.kind = PolicyKind::MergeDts;
  config.policy.alpha = 1.01;
  config.policy.batch_size_m = 4;  // epsilon defaults to 1/T
  config.horizon_t = 200000;
  config.repeats = 50;
  config.base_seed = 0;
  return config;
}

struct SafetyStats {
  int purged = 0;
  int dirty_audits = 0;
};

SafetyStats run_theory_regime() {
  const RunConfig config = theory_regime_config();
  const Environment env = realize_environment(config.environment);
  SafetyStats stats;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto policy = config.policy.build(env.k(), config.horizon_t);
    const RegretTrace trace =
        run_trace(env, *policy, config.horizon_t, {config.horizon_t}, seed);
    bool winner_alive = false;
    for (const auto& batch : dynamic_cast<MergeBandit&>(*policy).batches().batches()) {
      for (int arm : batch.arms) {
        if (arm == 0) winner_alive = true;
      }
    }
    if (!winner_alive) ++stats.purged;
    if (!lemma1_audit(trace, config).clean()) ++stats.dirty_audits;
  }
  return stats;
}

SafetyStats& theory_stats() {
  static SafetyStats stats = run_theory_regime();  // shared between A3 and A4
  return stats;
}

Outcome a3_elimination_safety() {
  const SafetyStats& stats = theory_stats();
  return {stats.purged <= 1,
          fmt("Condorcet winner purged in %.0f/50 runs (tolerate <= 1)",
              stats.purged)};
}

Outcome a4_lemma_audit() {
  const SafetyStats& stats = theory_stats();
  const double clean_rate = (50.0 - stats.dirty_audits) / 50.0;
  return {clean_rate >= 0.95,
          fmt("pair-comparison audit clean in %.1f%% of runs (need >= 95%%)",
              100.0 * clean_rate)};
}

// ---- A5 -------------------------------------------------------------------

double mean_active_step_ns(int k) {
  const PreferenceMatrix m = gen_random_condorcet(k, 0.15, 0.0, 2024);
  MergeDtsParams params;
  params.alpha = 0.262144;
  params.batch_size_m = 16;
  params.horizon_t = 2000000;
  params.c_override = 4.0e6;
  MergeDts policy(k, params, false);
  Rng policy_rng(7, kPolicyStream);
  Rng env_rng(7, kEnvStream);

  std::int64_t t = 1;
  for (; t <= 300000 && policy.stage() < 2; ++t) {
    const DuelChoice choice = policy.select_pair(t, policy_rng);
    policy.record_outcome(choice, choice.is_self_duel
                                      ? choice.first
                                      : sample_duel(m, choice.first, choice.second, env_rng));
  }
  if (policy.stage() < 2) return -1.0;

  double total_ns = 0.0;
  std::int64_t active = 0;
  for (std::int64_t i = 0; i < 100000; ++i, ++t) {
    if (policy.finished()) break;  // self-duel steps cost nothing on both sides
    const auto t0 = std::chrono::steady_clock::now();
    const DuelChoice choice = policy.select_pair(t, policy_rng);
    const ArmId winner = choice.is_self_duel
                             ? choice.first
                             : sample_duel(m, choice.first, choice.second, env_rng);
    policy.record_outcome(choice, winner);
    total_ns += std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - t0)
                    .count();
    ++active;
  }
  if (active < 500) return -1.0;
  return total_ns / static_cast<double>(active);
}

Outcome a5_batch_locality() {
  const double ns_64 = mean_active_step_ns(64);
  const double ns_512 = mean_active_step_ns(512);
  if (ns_64 <= 0.0 || ns_512 <= 0.0) {
    return {false, "insufficient active steps after stage 2"};
  }
  const double ratio = ns_512 / ns_64;
  return {ratio <= 3.0,
          fmt("per-step policy time K=512 vs K=64: %.0f ns vs %.0f ns, ratio %.2f (need <= 3)",
              ns_512, ns_64, ratio)};
}

// ---- A6 -------------------------------------------------------------------

Outcome a6_baseline_ordering() {
  RunConfig config;
  config.environment.source = EnvironmentSpec::Source::Cycle;
  config.horizon_t = 1000000;
  config.repeats = 10;
  config.base_seed = 100;
  config.parallelism = 2;

  config.policy.kind = PolicyKind::MergeDts;
  config.policy.alpha = 0.262144;
  config.policy.batch_size_m = 16;
  config.policy.c_override = 4.0e6;
  const BatchResult merge_runs = run_batch(config);

  config.policy = PolicySpec{};
  config.policy.kind = PolicyKind::SelfSparring;
  const BatchResult sparring_runs = run_batch(config);

  if (merge_runs.traces.size() != 10 || sparring_runs.traces.size() != 10) {
    return {false, "runs failed"};
  }
  const double merge_mean = aggregate(merge_runs.traces).mean_regret.back();
  const double sparring_mean = aggregate(sparring_runs.traces).mean_regret.back();
  const double ratio = sparring_mean / merge_mean;
  return {ratio >= 3.0,
          fmt("Cycle regret at 1e6 steps: Self-Sparring %.0f vs MergeDTS %.0f, ratio %.1f (need >= 3)",
              sparring_mean, merge_mean, ratio)};
}

// ---- A7 -------------------------------------------------------------------

Outcome a7_determinism() {
  RunConfig config;
  config.environment.source = EnvironmentSpec::Source::Cycle;
  config.policy.kind = PolicyKind::MergeDts;
  config.policy.alpha = 1.01;
  config.policy.batch_size_m = 4;
  config.horizon_t = 50000;
  config.repeats = 4;
  config.base_seed = 11;

  const RegretTrace once = run_single(config, 77);
  const RegretTrace twice = run_single(config, 77);
  const bool identical = once.cumulative_regret == twice.cumulative_regret &&
                         once.win_counts == twice.win_counts &&
                         once.self_duel_counts == twice.self_duel_counts &&
                         once.finished_at == twice.finished_at &&
                         once.reported_winner == twice.reported_winner &&
                         once.duels_recorded == twice.duels_recorded;

  config.parallelism = 1;
  const AggregateResult serial = aggregate(run_batch(config).traces);
  config.parallelism = 4;
  const AggregateResult parallel = aggregate(run_batch(config).traces);
  const bool equal_aggregates = serial.mean_regret == parallel.mean_regret &&
                                serial.stderr_regret == parallel.stderr_regret &&
                                serial.winner_rate == parallel.winner_rate;

  return {identical && equal_aggregates,
          std::string("repeat-run traces ") + (identical ? "identical" : "DIFFER") +
              ", serial vs 4-way aggregates " +
              (equal_aggregates ? "identical" : "DIFFER")};
}

// ---- A8 -------------------------------------------------------------------

Outcome a8_statistical_oracles() {
  std::string detail;
  bool pass = true;

  {  // duel sampling concentrates at p
    const PreferenceMatrix m = validate_matrix({{0.5, 0.7}, {0.3, 0.5}});
    Rng rng(81);
    const int n = 100000;
    int wins = 0;
    for (int i = 0; i < n; ++i) {
      if (sample_duel(m, 0, 1, rng) == 0) ++wins;
    }
    const double rate = static_cast<double>(wins) / n;
    const double sigma = std::sqrt(0.7 * 0.3 / n);
    if (std::abs(rate - 0.7) > 3.0 * sigma) pass = false;
    detail += fmt("duel rate %.4f (p 0.7, 3sigma %.4f); ", rate, 3.0 * sigma);
  }

  {  // Beta posterior sampler matches a/(a+b)
    Rng rng(82);
    const int n = 100000;
    for (const auto [a, b] : {std::pair<double, double>{1, 1}, {5, 2}, {100, 1}}) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += rng.beta(a, b);
      const double mean = sum / n;
      const double want = a / (a + b);
      const double sigma = std::sqrt(a * b / ((a + b) * (a + b) * (a + b + 1)) / n);
      if (std::abs(mean - want) > 3.0 * sigma) pass = false;
      detail += fmt("beta(%.0f,%.0f) ok; ", a, b);
    }
  }

  {  // tournament dominance and symmetry
    Rng rng(83);
    SquareArray<std::int64_t> w(2, 0);
    w(0, 1) = 1000000;
    const ComparisonCounts sure = ComparisonCounts::from_raw(std::move(w));
    int dominant = 0;
    for (int i = 0; i < 1000; ++i) {
      if (sample_tournament(sure, {0, 1}, rng) == 0) ++dominant;
    }
    if (dominant < 999) pass = false;
    detail += fmt("dominant pick %.0f/1000; ", dominant);

    const ComparisonCounts fresh(4);
    const int n = 30000;
    std::vector<int> first_counts(3, 0);
    for (int i = 0; i < n; ++i) {
      ++first_counts[static_cast<std::size_t>(sample_tournament(fresh, {0, 1, 2}, rng))];
    }
    const double sigma3 = 3.0 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / n);
    for (int arm = 0; arm < 3; ++arm) {
      if (std::abs(first_counts[static_cast<std::size_t>(arm)] / static_cast<double>(n) -
                   1.0 / 3.0) > sigma3) {
        pass = false;
      }
    }

    int returned_first = 0;
    std::vector<int> second_counts(4, 0);
    for (int i = 0; i < n; ++i) {
      const ArmId pick = relative_tournament(fresh, {0, 1, 2, 3}, 1, rng);
      if (pick == 1) ++returned_first;
      ++second_counts[static_cast<std::size_t>(pick)];
    }
    if (returned_first != 0) pass = false;
    for (int arm : {0, 2, 3}) {
      if (std::abs(second_counts[static_cast<std::size_t>(arm)] / static_cast<double>(n) -
                   1.0 / 3.0) > sigma3) {
        pass = false;
      }
    }
    detail += "tournament symmetry ok";
  }

  return {pass, detail};
}

// ---- A9 -------------------------------------------------------------------

Outcome a9_oracle_equivalence() {
  bool pass = true;
  std::string detail;

  {  // purge vs brute-force predicate
    Rng rng(91);
    int mismatches = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      const int size = 2 + static_cast<int>(rng.index(5));
      std::vector<int> batch(static_cast<std::size_t>(size));
      for (int i = 0; i < size; ++i) batch[static_cast<std::size_t>(i)] = i;
      SquareArray<std::int64_t> w(size, 0);
      for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
          if (i != j && rng.bernoulli(0.8)) w(i, j) = static_cast<std::int64_t>(rng.index(80));
        }
      }
      const ComparisonCounts counts = ComparisonCounts::from_raw(std::move(w));
      const std::int64_t t = 1 + static_cast<std::int64_t>(rng.index(10000));
      const double alpha = 0.2 + 1.5 * rng.uniform();
      const double c = 1.0 + 40.0 * rng.uniform();
      const SquareArray<double> u = ucb_matrix(counts, t, c, alpha);

      std::vector<int> expected;
      for (int i : batch) {
        for (int j : batch) {
          if (j != i && u(i, j) < 0.5) {
            expected.push_back(i);
            break;
          }
        }
      }
      if (purge_batch(batch, counts, t, c, alpha).removed != expected) ++mismatches;
    }
    if (mismatches > 0) pass = false;
    detail += fmt("purge oracle mismatches %.0f/10000; ", mismatches);
  }

  {  // regret resummation over the duel log
    RunConfig config;
    config.environment.source = EnvironmentSpec::Source::Cycle;
    config.policy.kind = PolicyKind::MergeDts;
    config.policy.alpha = 1.01;
    config.policy.batch_size_m = 4;
    config.horizon_t = 100000;
    const Environment env = realize_environment(config.environment);
    const RegretTrace trace = run_single(config, 9);
    double resummed = 0.0;
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        resummed += static_cast<double>(trace.win_counts(i, j)) * env.pair_regret(i, j);
      }
      resummed += static_cast<double>(trace.self_duel_counts[static_cast<std::size_t>(i)]) *
                  env.pair_regret(i, i);
    }
    const double err = std::abs(resummed - trace.cumulative_regret.back());
    if (err > 1e-9) pass = false;
    detail += fmt("regret resummation err %.1e; ", err);
  }

  {  // ucb matrix vs scalar recomputation
    Rng rng(92);
    int mismatches = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      const std::int64_t wij = static_cast<std::int64_t>(rng.index(500));
      const std::int64_t wji = static_cast<std::int64_t>(rng.index(500));
      const std::int64_t t = 1 + static_cast<std::int64_t>(rng.index(1000000));
      const double alpha = 0.2 + 2.0 * rng.uniform();
      const double c = 1.0 + 1.0e7 * rng.uniform();
      const double got = ucb_value(wij, wji, t, c, alpha);
      const std::int64_t n = wij + wji;
      if (n == 0) {
        if (!(std::isinf(got) && got > 0.5)) ++mismatches;
      } else {
        const double expected =
            static_cast<double>(wij) / static_cast<double>(n) +
            std::sqrt(alpha * std::log(static_cast<double>(t) + c) / static_cast<double>(n));
        if (std::abs(got - expected) > 1e-12 * std::max(1.0, std::abs(expected))) ++mismatches;
      }
    }
    if (mismatches > 0) pass = false;
    detail += fmt("ucb cell mismatches %.0f/10000", mismatches);
  }

  return {pass, detail};
}

// ---- A10 ------------------------------------------------------------------

Outcome a10_copeland_mode() {
  // 32 arms, two Copeland winners (0 and 1) each beating 30 others.
  SquareArray<double> p(32, 0.5);
  auto set = [&p](int i, int j, double v) {
    p(i, j) = v;
    p(j, i) = 1.0 - v;
  };
  set(0, 1, 0.8);
  for (int j = 2; j < 32; ++j) {
    set(0, j, j == 2 ? 0.4 : 0.8);
    set(1, j, 0.8);
  }
  for (int i = 2; i < 32; ++i) {
    for (int j = i + 1; j < 32; ++j) set(i, j, 0.6);
  }
  set(2, 3, 0.4);
  const PreferenceMatrix m = validate_matrix(std::move(p));

  bool pass = true;
  std::string detail;
  if (condorcet_winner(m)) pass = false;
  const auto zeta = copeland_scores(m);
  if (std::abs(zeta[0] - 30.0 / 31.0) > 1e-12 || std::abs(zeta[1] - 30.0 / 31.0) > 1e-12) {
    pass = false;
  }
  const double winner_pair_regret = copeland_step_regret(m, 0, 1);
  if (winner_pair_regret != 0.0) pass = false;
  detail += fmt("winner-pair regret %.1e; ", winner_pair_regret);

  const Environment env = Environment::create(m, RegretMode::Copeland);
  for (const PolicyKind kind : {PolicyKind::MergeDts, PolicyKind::Dts}) {
    PolicySpec spec;
    spec.kind = kind;
    spec.alpha = kind == PolicyKind::Dts ? 0.51 : 1.01;
    spec.batch_size_m = 4;
    auto policy = spec.build(32, 20000);
    const RegretTrace trace =
        run_trace(env, *policy, 20000, default_checkpoints(20000), 4);
    double previous = 0.0;
    for (double r : trace.cumulative_regret) {
      if (r < previous - 1e-12) pass = false;
      previous = r;
    }
  }
  detail += "copeland regret traces nondecreasing";
  return {pass, detail};
}

}  // namespace

int main() {
  std::printf("acceptance suite (library %s)\n", kVersion);
  run_criterion("A1", a1_golden_borda);
  run_criterion("A2", a2_cycle_convergence);
  run_criterion("A3", a3_elimination_safety);
  run_criterion("A4", a4_lemma_audit);
  run_criterion("A5", a5_batch_locality);
  run_criterion("A6", a6_baseline_ordering);
  run_criterion("A7", a7_determinism);
  run_criterion("A8", a8_statistical_oracles);
  run_criterion("A9", a9_oracle_equivalence);
  run_criterion("A10", a10_copeland_mode);
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
