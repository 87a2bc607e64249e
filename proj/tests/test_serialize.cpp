#include <catch_amalgamated.hpp>

#include "duelbench/serialize.hpp"

using namespace duelbench;

TEST_CASE("policy spec JSON parsing") {
  const PolicySpec spec = policy_spec_from_json(
      json::parse(R"({"kind":"merge_dts","params":{"alpha":0.262144,"batch_size_m":16,"c_override":4000000.0}})"));
  CHECK(spec.kind == PolicyKind::MergeDts);
  CHECK(spec.alpha == 0.262144);
  CHECK(spec.batch_size_m == 16);
  CHECK(spec.c_override == 4000000.0);
  CHECK_FALSE(spec.epsilon.has_value());

  const PolicySpec plain = policy_spec_from_json(json::parse(R"({"kind":"self_sparring"})"));
  CHECK(plain.kind == PolicyKind::SelfSparring);

  CHECK_THROWS_AS(policy_spec_from_json(json::parse(R"({"kind":"rmed1"})")), Error);
  CHECK_THROWS_AS(policy_spec_from_json(
                      json::parse(R"({"kind":"rucb","params":{"alpha":0.5,"batch":3}})")),
                  Error);
  CHECK_THROWS_AS(policy_spec_from_json(
                      json::parse(R"({"kind":"self_sparring","params":{"alpha":1.0}})")),
                  Error);

  // Round trip.
  const json dumped = policy_spec_to_json(spec);
  const PolicySpec back = policy_spec_from_json(dumped);
  CHECK(back.kind == spec.kind);
  CHECK(back.alpha == spec.alpha);
  CHECK(back.batch_size_m == spec.batch_size_m);
  CHECK(back.c_override == spec.c_override);
}

TEST_CASE("environment spec JSON parsing") {
  const EnvironmentSpec cycle = environment_spec_from_json(
      json::parse(R"({"source":{"kind":"cycle"},"regret_mode":"condorcet"})"));
  CHECK(cycle.source == EnvironmentSpec::Source::Cycle);
  CHECK(cycle.regret_mode == RegretMode::Condorcet);

  const EnvironmentSpec random = environment_spec_from_json(json::parse(
      R"({"source":{"kind":"random_condorcet","k":8,"delta_min":0.1,"uninformative_fraction":0.0,"seed":7},"regret_mode":"copeland"})"));
  CHECK(random.k == 8);
  CHECK(random.gen_seed == 7);
  CHECK(random.regret_mode == RegretMode::Copeland);

  CHECK_THROWS_AS(environment_spec_from_json(json::parse(R"({"source":{"kind":"mslr"}})")),
                  Error);
  CHECK_THROWS_AS(environment_spec_from_json(
                      json::parse(R"({"source":{"kind":"cycle"},"regret_mode":"borda"})")),
                  Error);
  CHECK_THROWS_AS(environment_spec_from_json(
                      json::parse(R"({"source":{"kind":"cycle","k":3}})")),
                  Error);

  const json dumped = environment_spec_to_json(random);
  const EnvironmentSpec back = environment_spec_from_json(dumped);
  CHECK(back.source == random.source);
  CHECK(back.k == random.k);
  CHECK(back.delta_min == random.delta_min);
}

TEST_CASE("run config JSON parsing and validation") {
  const std::string text = R"({
    "environment": {"source": {"kind": "cycle"}, "regret_mode": "condorcet"},
    "policy": {"kind": "merge_dts", "params": {"alpha": 1.01, "batch_size_m": 4}},
    "horizon_t": 1000,
    "repeats": 3,
    "base_seed": 42,
    "parallelism": 2
  })";
  const RunConfig config = run_config_from_json(json::parse(text));
  CHECK(config.horizon_t == 1000);
  CHECK(config.repeats == 3);
  CHECK(config.base_seed == 42);
  CHECK(config.parallelism == 2);
  CHECK_FALSE(config.checkpoints.has_value());

  // Explicitly empty checkpoint lists are rejected.
  json with_empty = json::parse(text);
  with_empty["checkpoints"] = json::array();
  CHECK_THROWS_AS(run_config_from_json(with_empty), Error);

  json with_bad_key = json::parse(text);
  with_bad_key["horizon"] = 10;
  CHECK_THROWS_AS(run_config_from_json(with_bad_key), Error);

  const json dumped = run_config_to_json(config);
  const RunConfig back = run_config_from_json(dumped);
  CHECK(back.horizon_t == config.horizon_t);
  CHECK(config_hash(back) == config_hash(config));
}

TEST_CASE("matrix JSON round-trip") {
  const PreferenceMatrix m = gen_random_condorcet(7, 0.05, 0.0, 3);
  const PreferenceMatrix back = matrix_from_json(matrix_to_json(m));
  CHECK(back == m);
}

TEST_CASE("trace JSON round-trip is exact") {
  RunConfig config;
  config.environment.source = EnvironmentSpec::Source::Cycle2;
  config.policy.kind = PolicyKind::MergeDts;
  config.policy.alpha = 1.01;
  config.policy.batch_size_m = 4;
  config.horizon_t = 5000;
  config.repeats = 1;
  const RegretTrace trace = run_single(config, 99);

  const json dumped = trace_to_json(trace);
  const RegretTrace back = trace_from_json(dumped);
  CHECK(back.seed == trace.seed);
  CHECK(back.checkpoints == trace.checkpoints);
  CHECK(back.cumulative_regret == trace.cumulative_regret);
  CHECK(back.duels_recorded == trace.duels_recorded);
  CHECK(back.finished_at == trace.finished_at);
  CHECK(back.reported_winner == trace.reported_winner);
  CHECK(back.condorcet_arm == trace.condorcet_arm);
  CHECK(back.win_counts == trace.win_counts);
  CHECK(back.self_duel_counts == trace.self_duel_counts);
  REQUIRE(back.audit.has_value());
  REQUIRE(back.audit->episodes.size() == trace.audit->episodes.size());
  for (std::size_t i = 0; i < back.audit->episodes.size(); ++i) {
    CHECK(back.audit->episodes[i].arms == trace.audit->episodes[i].arms);
    CHECK(back.audit->episodes[i].start_t == trace.audit->episodes[i].start_t);
    CHECK(back.audit->episodes[i].end_t == trace.audit->episodes[i].end_t);
    CHECK(back.audit->episodes[i].pair_counts == trace.audit->episodes[i].pair_counts);
  }
  CHECK(trace_to_json(back).dump() == dumped.dump());
}

TEST_CASE("aggregate CSV round-trip") {
  RegretTrace t1;
  t1.seed = 1;
  t1.checkpoints = {10, 100, 1000};
  t1.cumulative_regret = {0.125, 7.25, 19.0625};
  RegretTrace t2 = t1;
  t2.seed = 2;
  t2.cumulative_regret = {0.25, 8.75, 23.1875};
  const AggregateResult agg = aggregate({t1, t2});

  const std::string csv = aggregate_to_csv(agg);
  CHECK(csv.rfind("step,mean_regret,stderr,n\n", 0) == 0);
  const AggregateResult back = aggregate_from_csv(csv);
  CHECK(back.checkpoints == agg.checkpoints);
  CHECK(back.mean_regret == agg.mean_regret);
  CHECK(back.stderr_regret == agg.stderr_regret);
  CHECK(back.repeats == agg.repeats);

  CHECK_THROWS_AS(aggregate_from_csv("nonsense\n1,2\n"), Error);
}

TEST_CASE("config hash is stable and content-sensitive") {
  RunConfig config;
  config.environment.source = EnvironmentSpec::Source::Cycle;
  config.policy.kind = PolicyKind::SelfSparring;
  config.horizon_t = 100;
  const std::string h1 = config_hash(config);
  CHECK(h1 == config_hash(config));
  config.horizon_t = 101;
  CHECK(h1 != config_hash(config));
  CHECK(h1.size() == 16);
}
