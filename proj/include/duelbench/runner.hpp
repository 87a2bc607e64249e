#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "duelbench/matrix_io.hpp"
#include "duelbench/merge_bandit.hpp"
#include "duelbench/policy_spec.hpp"
#include "duelbench/theory.hpp"

namespace duelbench {

/// Default checkpoint grid: 50 log-spaced steps from 10 up to (but excluding)
/// the horizon, then the horizon itself.
inline std::vector<std::int64_t> default_checkpoints(std::int64_t horizon) {
  require(horizon >= 1, ErrorCode::BadParams, "horizon must be >= 1");
  std::vector<std::int64_t> points;
  const double start = std::min<double>(10.0, static_cast<double>(horizon));
  const double ratio = static_cast<double>(horizon) / start;
  for (int i = 0; i < 50; ++i) {
    const double value = start * std::pow(ratio, static_cast<double>(i) / 50.0);
    const std::int64_t step = std::llround(value);
    if (step >= 1 && step < horizon && (points.empty() || step > points.back())) {
      points.push_back(step);
    }
  }
  points.push_back(horizon);
  return points;
}

struct RunConfig {
  EnvironmentSpec environment;
  PolicySpec policy;
  std::int64_t horizon_t = 1;
  int repeats = 1;
  std::uint64_t base_seed = 0;
  std::optional<std::vector<std::int64_t>> checkpoints;  // absent = default grid
  int parallelism = 1;

  std::vector<std::int64_t> resolved_checkpoints() const {
    if (!checkpoints) return default_checkpoints(horizon_t);
    return *checkpoints;
  }

  void validate() const {
    require(horizon_t >= 1, ErrorCode::BadParams, "horizon must be >= 1");
    require(repeats >= 1, ErrorCode::BadParams, "repeats must be >= 1");
    require(parallelism >= 1, ErrorCode::BadParams, "parallelism must be >= 1");
    const auto cps = resolved_checkpoints();
    require(!cps.empty(), ErrorCode::BadParams, "checkpoint list must not be empty");
    for (std::size_t i = 0; i < cps.size(); ++i) {
      require(cps[i] >= 1, ErrorCode::BadParams, "checkpoints must be >= 1");
      require(i == 0 || cps[i] > cps[i - 1], ErrorCode::BadParams,
              "checkpoints must be strictly increasing");
    }
    require(cps.back() == horizon_t, ErrorCode::BadParams,
            "last checkpoint must equal the horizon");
  }
};

/// Everything recorded about one seeded run.
struct RegretTrace {
  std::uint64_t seed = 0;
  std::vector<std::int64_t> checkpoints;
  std::vector<double> cumulative_regret;
  std::int64_t duels_recorded = 0;  // non-self duels
  std::optional<std::int64_t> finished_at;
  std::optional<ArmId> reported_winner;
  std::optional<ArmId> condorcet_arm;  // the environment's, for winner rates
  double wall_time_seconds = 0.0;
  SquareArray<std::int64_t> win_counts;  // (i, j): duels where i beat j
  std::vector<std::int64_t> self_duel_counts;
  std::optional<MergeAuditLog> audit;
};

/// Drive one policy against an environment for `horizon` steps. The policy
/// and the duel sampler draw from disjoint sub-streams of `seed`.
inline RegretTrace run_trace(const Environment& env, Policy& policy,
                             std::int64_t horizon,
                             const std::vector<std::int64_t>& checkpoints,
                             std::uint64_t seed) {
  require(policy.k() == env.k(), ErrorCode::BadParams, "policy/environment k mismatch");
  Rng policy_rng(seed, kPolicyStream);
  Rng env_rng(seed, kEnvStream);

  RegretTrace trace;
  trace.seed = seed;
  trace.checkpoints = checkpoints;
  trace.cumulative_regret.reserve(checkpoints.size());
  trace.condorcet_arm = env.condorcet();
  trace.win_counts = SquareArray<std::int64_t>(env.k(), 0);
  trace.self_duel_counts.assign(static_cast<std::size_t>(env.k()), 0);

  double regret = 0.0;
  std::size_t next_checkpoint = 0;
  const auto started = std::chrono::steady_clock::now();
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const DuelChoice choice = policy.select_pair(t, policy_rng);
    const ArmId won = choice.is_self_duel
                          ? choice.first
                          : sample_duel(env.matrix(), choice.first, choice.second, env_rng);
    policy.record_outcome(choice, won);
    regret += env.pair_regret(choice.first, choice.second);

    if (choice.is_self_duel) {
      ++trace.self_duel_counts[static_cast<std::size_t>(choice.first)];
    } else {
      ++trace.win_counts(won, won == choice.first ? choice.second : choice.first);
      ++trace.duels_recorded;
    }
    if (!trace.finished_at && policy.winner()) trace.finished_at = t;
    while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == t) {
      trace.cumulative_regret.push_back(regret);
      ++next_checkpoint;
    }
  }
  trace.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  trace.reported_winner = policy.winner();
  if (const auto* merge = dynamic_cast<const MergeBandit*>(&policy)) {
    trace.audit = merge->audit_log();
  }
  return trace;
}

inline RegretTrace run_single(const RunConfig& config, std::uint64_t seed) {
  config.validate();
  const Environment env = realize_environment(config.environment);
  auto policy = config.policy.build(env.k(), config.horizon_t);
  return run_trace(env, *policy, config.horizon_t, config.resolved_checkpoints(), seed);
}

struct BatchFailure {
  std::uint64_t seed = 0;
  std::string message;
};

struct BatchResult {
  std::vector<RegretTrace> traces;  // ordered by seed
  std::vector<BatchFailure> failures;
};

/// Repeats with seeds base_seed .. base_seed + repeats - 1, at most
/// `parallelism` in flight. Failed runs are collected, not fatal.
inline BatchResult run_batch(const RunConfig& config) {
  config.validate();
  const int repeats = config.repeats;
  std::vector<std::optional<RegretTrace>> slots(static_cast<std::size_t>(repeats));
  std::vector<std::optional<BatchFailure>> failures(static_cast<std::size_t>(repeats));

  std::atomic<int> next{0};
  auto worker = [&] {
    while (true) {
      const int idx = next.fetch_add(1);
      if (idx >= repeats) return;
      const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(idx);
      try {
        slots[static_cast<std::size_t>(idx)] = run_single(config, seed);
      } catch (const std::exception& e) {
        failures[static_cast<std::size_t>(idx)] = BatchFailure{seed, e.what()};
      }
    }
  };

  const int threads = std::min(config.parallelism, repeats);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  BatchResult result;
  for (int i = 0; i < repeats; ++i) {
    if (slots[static_cast<std::size_t>(i)]) {
      result.traces.push_back(std::move(*slots[static_cast<std::size_t>(i)]));
    } else if (failures[static_cast<std::size_t>(i)]) {
      result.failures.push_back(std::move(*failures[static_cast<std::size_t>(i)]));
    }
  }
  return result;
}

struct AggregateResult {
  std::vector<std::int64_t> checkpoints;
  std::vector<double> mean_regret;
  std::vector<double> stderr_regret;  // sample stddev / sqrt(n)
  int repeats = 0;
  double winner_rate = 0.0;  // fraction reporting the environment's Condorcet arm
  double mean_wall_time_seconds = 0.0;
  std::optional<std::vector<double>> bound_curve;
};

inline AggregateResult aggregate(const std::vector<RegretTrace>& traces) {
  require(!traces.empty(), ErrorCode::BadParams, "aggregate needs at least one trace");
  const auto& cps = traces.front().checkpoints;
  for (const auto& trace : traces) {
    require(trace.checkpoints == cps, ErrorCode::MismatchedCheckpoints,
            "traces disagree on checkpoint grids");
  }
  AggregateResult agg;
  agg.checkpoints = cps;
  agg.repeats = static_cast<int>(traces.size());
  const double n = static_cast<double>(traces.size());
  for (std::size_t c = 0; c < cps.size(); ++c) {
    double sum = 0.0;
    for (const auto& trace : traces) sum += trace.cumulative_regret[c];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& trace : traces) {
      const double d = trace.cumulative_regret[c] - mean;
      ss += d * d;
    }
    const double stderr_value =
        traces.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
    agg.mean_regret.push_back(mean);
    agg.stderr_regret.push_back(stderr_value);
  }
  int winners = 0;
  double wall = 0.0;
  for (const auto& trace : traces) {
    if (trace.reported_winner && trace.condorcet_arm &&
        *trace.reported_winner == *trace.condorcet_arm) {
      ++winners;
    }
    wall += trace.wall_time_seconds;
  }
  agg.winner_rate = static_cast<double>(winners) / n;
  agg.mean_wall_time_seconds = wall / n;
  return agg;
}

/// Attach the theoretical regret bound per checkpoint when the configuration
/// sits inside the theory (merge family, epsilon-resolved C, positive gap).
inline void attach_bound_curve(AggregateResult& agg, const RunConfig& config) {
  if (!config.policy.is_merge_family() || config.policy.c_override) return;
  const PreferenceMatrix m = realize_matrix(config.environment);
  const auto gaps = gap_summary(m);
  if (!gaps.delta_min || config.policy.alpha <= 0.5 || config.policy.batch_size_m < 4) return;
  const double eps = config.policy.epsilon
                         ? *config.policy.epsilon
                         : 1.0 / static_cast<double>(config.horizon_t);
  std::vector<double> curve;
  curve.reserve(agg.checkpoints.size());
  for (std::int64_t step : agg.checkpoints) {
    curve.push_back(theoretical_bound(config.policy.alpha, config.policy.batch_size_m,
                                      m.k(), step, eps, *gaps.delta_min));
  }
  agg.bound_curve = std::move(curve);
}

// ---- Lemma-style pair-comparison audit ----------------------------------

struct Lemma1Violation {
  int arm_i = 0;
  int arm_j = 0;
  std::int64_t comparisons = 0;
  double bound = 0.0;
  double delta_batch_min = 0.0;
  std::size_t episode = 0;
};

struct Lemma1Report {
  std::size_t episodes_audited = 0;
  std::size_t episodes_skipped = 0;  // no distinguishable pair
  std::vector<Lemma1Violation> violations;
  bool clean() const { return violations.empty(); }
};

/// Check every batch episode of a merge-family trace against the
/// pair-comparison cap 4 a ln(T + C) / delta_B_min^2. A pair's count is
/// cumulative over its whole co-batched history up to the episode's closing
/// merge. Indistinguishable pairs carry no bound; pairs that were never
/// co-batched appear in no episode and are never flagged.
inline Lemma1Report lemma1_audit(const RegretTrace& trace, const RunConfig& config,
                                 std::optional<double> bound_override = std::nullopt) {
  require(trace.audit.has_value(), ErrorCode::NotMergePolicy,
          "trace carries no batch episodes to audit");
  require(config.policy.is_merge_family(), ErrorCode::NotMergePolicy,
          "config does not describe a merge-family policy");
  const PreferenceMatrix m = realize_matrix(config.environment);
  const auto gaps = gap_summary(m);
  const double c_const =
      config.policy.merge_params(config.horizon_t).resolve_c(m.k());

  Lemma1Report report;
  std::map<std::pair<int, int>, std::int64_t> running;  // pair totals so far
  for (std::size_t e = 0; e < trace.audit->episodes.size(); ++e) {
    const auto& episode = trace.audit->episodes[e];
    for (const auto& [pair, count] : episode.pair_counts) running[pair] += count;

    double delta_b_min = 0.0;
    for (std::size_t a = 0; a + 1 < episode.arms.size(); ++a) {
      for (std::size_t b = a + 1; b < episode.arms.size(); ++b) {
        const double gap = gaps.delta(episode.arms[a], episode.arms[b]);
        if (gap > 0.0 && (delta_b_min == 0.0 || gap < delta_b_min)) delta_b_min = gap;
      }
    }
    if (delta_b_min == 0.0) {
      ++report.episodes_skipped;
      continue;
    }
    ++report.episodes_audited;
    const double bound =
        bound_override ? *bound_override
                       : pair_comparison_bound(config.policy.alpha, config.horizon_t,
                                               c_const, delta_b_min);
    for (const auto& [pair, count] : episode.pair_counts) {
      if (gaps.delta(pair.first, pair.second) == 0.0) continue;
      const std::int64_t cumulative = running[pair];
      if (static_cast<double>(cumulative) > bound) {
        report.violations.push_back(
            {pair.first, pair.second, cumulative, bound, delta_b_min, e});
      }
    }
  }
  return report;
}

}  // namespace duelbench
