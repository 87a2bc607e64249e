#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "duelbench/runner.hpp"
#include "duelbench/text_util.hpp"

namespace duelbench {

using nlohmann::json;

namespace detail {

inline void check_keys(const json& j, std::initializer_list<const char*> allowed,
                       const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* name : allowed) {
      if (key == name) {
        ok = true;
        break;
      }
    }
    require(ok, ErrorCode::BadParams, where + ": unknown key '" + key + "'");
  }
}

inline json parse_json(const std::string& text, const std::string& where) {
  json j = json::parse(text, nullptr, false);
  require(!j.is_discarded(), ErrorCode::ParseError, where + ": invalid JSON");
  return j;
}

}  // namespace detail

// ---- PolicySpec: {"kind": ..., "params": {...}} --------------------------

inline PolicySpec policy_spec_from_json(const json& j) {
  require(j.is_object() && j.contains("kind"), ErrorCode::BadParams,
          "policy spec needs a \"kind\"");
  detail::check_keys(j, {"kind", "params"}, "policy spec");
  PolicySpec spec;
  spec.kind = policy_kind_from_string(j.at("kind").get<std::string>());
  const json params = j.value("params", json::object());
  require(params.is_object(), ErrorCode::BadParams, "policy params must be an object");
  switch (spec.kind) {
    case PolicyKind::MergeDts:
    case PolicyKind::MergeRucb:
      detail::check_keys(params, {"alpha", "batch_size_m", "epsilon", "c_override"},
                         "policy params");
      spec.alpha = params.value("alpha", 1.01);
      spec.batch_size_m = params.value("batch_size_m", 4);
      if (params.contains("epsilon")) spec.epsilon = params.at("epsilon").get<double>();
      if (params.contains("c_override")) spec.c_override = params.at("c_override").get<double>();
      break;
    case PolicyKind::Rucb:
    case PolicyKind::Dts:
      detail::check_keys(params, {"alpha"}, "policy params");
      spec.alpha = params.value("alpha", 0.51);
      break;
    case PolicyKind::SelfSparring:
      detail::check_keys(params, {}, "policy params");
      break;
  }
  return spec;
}

inline json policy_spec_to_json(const PolicySpec& spec) {
  json params = json::object();
  switch (spec.kind) {
    case PolicyKind::MergeDts:
    case PolicyKind::MergeRucb:
      params["alpha"] = spec.alpha;
      params["batch_size_m"] = spec.batch_size_m;
      if (spec.epsilon) params["epsilon"] = *spec.epsilon;
      if (spec.c_override) params["c_override"] = *spec.c_override;
      break;
    case PolicyKind::Rucb:
    case PolicyKind::Dts:
      params["alpha"] = spec.alpha;
      break;
    case PolicyKind::SelfSparring:
      break;
  }
  return json{{"kind", to_string(spec.kind)}, {"params", params}};
}

// ---- EnvironmentSpec ------------------------------------------------------

inline EnvironmentSpec environment_spec_from_json(const json& j) {
  require(j.is_object() && j.contains("source"), ErrorCode::BadParams,
          "environment spec needs a \"source\"");
  detail::check_keys(j, {"source", "regret_mode"}, "environment spec");
  const json& source = j.at("source");
  require(source.is_object() && source.contains("kind"), ErrorCode::BadParams,
          "environment source needs a \"kind\"");

  EnvironmentSpec spec;
  const std::string kind = source.at("kind").get<std::string>();
  if (kind == "cycle") {
    detail::check_keys(source, {"kind"}, "environment source");
    spec.source = EnvironmentSpec::Source::Cycle;
  } else if (kind == "cycle2") {
    detail::check_keys(source, {"kind"}, "environment source");
    spec.source = EnvironmentSpec::Source::Cycle2;
  } else if (kind == "file") {
    detail::check_keys(source, {"kind", "path"}, "environment source");
    spec.source = EnvironmentSpec::Source::File;
    spec.path = source.at("path").get<std::string>();
  } else if (kind == "random_condorcet") {
    detail::check_keys(source, {"kind", "k", "delta_min", "uninformative_fraction", "seed"},
                       "environment source");
    spec.source = EnvironmentSpec::Source::RandomCondorcet;
    spec.k = source.at("k").get<int>();
    spec.delta_min = source.value("delta_min", 0.1);
    spec.uninformative_fraction = source.value("uninformative_fraction", 0.0);
    spec.gen_seed = source.value("seed", std::uint64_t{0});
  } else {
    raise(ErrorCode::BadParams, "unknown environment source '" + kind + "'");
  }
  const std::string mode = j.value("regret_mode", "condorcet");
  if (mode == "condorcet") {
    spec.regret_mode = RegretMode::Condorcet;
  } else if (mode == "copeland") {
    spec.regret_mode = RegretMode::Copeland;
  } else {
    raise(ErrorCode::BadParams, "unknown regret mode '" + mode + "'");
  }
  return spec;
}

inline json environment_spec_to_json(const EnvironmentSpec& spec) {
  json source;
  switch (spec.source) {
    case EnvironmentSpec::Source::Cycle: source = {{"kind", "cycle"}}; break;
    case EnvironmentSpec::Source::Cycle2: source = {{"kind", "cycle2"}}; break;
    case EnvironmentSpec::Source::File: source = {{"kind", "file"}, {"path", spec.path}}; break;
    case EnvironmentSpec::Source::RandomCondorcet:
      source = {{"kind", "random_condorcet"},
                {"k", spec.k},
                {"delta_min", spec.delta_min},
                {"uninformative_fraction", spec.uninformative_fraction},
                {"seed", spec.gen_seed}};
      break;
  }
  return json{{"source", source},
              {"regret_mode",
               spec.regret_mode == RegretMode::Condorcet ? "condorcet" : "copeland"}};
}

// ---- RunConfig ------------------------------------------------------------

inline RunConfig run_config_from_json(const json& j) {
  require(j.is_object(), ErrorCode::BadParams, "run config must be an object");
  detail::check_keys(j,
                     {"environment", "policy", "horizon_t", "repeats", "base_seed",
                      "checkpoints", "parallelism"},
                     "run config");
  require(j.contains("environment") && j.contains("policy") && j.contains("horizon_t"),
          ErrorCode::BadParams, "run config needs environment, policy and horizon_t");
  RunConfig config;
  config.environment = environment_spec_from_json(j.at("environment"));
  config.policy = policy_spec_from_json(j.at("policy"));
  config.horizon_t = j.at("horizon_t").get<std::int64_t>();
  config.repeats = j.value("repeats", 1);
  config.base_seed = j.value("base_seed", std::uint64_t{0});
  if (j.contains("checkpoints")) {
    config.checkpoints = j.at("checkpoints").get<std::vector<std::int64_t>>();
  }
  config.parallelism = j.value("parallelism", 1);
  config.validate();
  return config;
}

inline json run_config_to_json(const RunConfig& config) {
  json j{{"environment", environment_spec_to_json(config.environment)},
         {"policy", policy_spec_to_json(config.policy)},
         {"horizon_t", config.horizon_t},
         {"repeats", config.repeats},
         {"base_seed", config.base_seed},
         {"parallelism", config.parallelism}};
  if (config.checkpoints) j["checkpoints"] = *config.checkpoints;
  return j;
}

// ---- Merge-policy state: checkpoint and resume ----------------------------

inline json policy_state_to_json(const MergeBandit& policy) {
  std::vector<std::vector<int>> batches;
  for (const auto& b : policy.batches().batches()) batches.push_back(b.arms);
  json params{{"alpha", policy.params().alpha},
              {"batch_size_m", policy.params().batch_size_m},
              {"horizon_t", policy.params().horizon_t}};
  if (policy.params().epsilon) params["epsilon"] = *policy.params().epsilon;
  if (policy.params().c_override) params["c_override"] = *policy.params().c_override;
  return json{{"kind", policy.kind()},
              {"k", policy.k()},
              {"params", params},
              {"stage", policy.stage()},
              {"steps", policy.steps()},
              {"batches", batches},
              {"w", policy.counts().raw().rows()}};
}

inline std::unique_ptr<MergeBandit> policy_state_from_json(const json& j) {
  require(j.is_object(), ErrorCode::BadParams, "policy state must be an object");
  detail::check_keys(j, {"kind", "k", "params", "stage", "steps", "batches", "w"},
                     "policy state");
  const std::string kind = j.at("kind").get<std::string>();
  const int k = j.at("k").get<int>();
  const json& params_json = j.at("params");
  MergeDtsParams params;
  params.alpha = params_json.at("alpha").get<double>();
  params.batch_size_m = params_json.at("batch_size_m").get<int>();
  params.horizon_t = params_json.at("horizon_t").get<std::int64_t>();
  if (params_json.contains("epsilon")) params.epsilon = params_json.at("epsilon").get<double>();
  if (params_json.contains("c_override")) {
    params.c_override = params_json.at("c_override").get<double>();
  }

  BatchSet batches = BatchSet::restore(
      k, j.at("stage").get<int>(), j.at("batches").get<std::vector<std::vector<int>>>());
  ComparisonCounts counts = ComparisonCounts::from_raw(
      SquareArray<std::int64_t>::from_rows(j.at("w").get<std::vector<std::vector<std::int64_t>>>()));

  std::unique_ptr<MergeBandit> policy;
  if (kind == "merge_dts") {
    auto p = std::make_unique<MergeDts>(k, params);
    p->restore_state(std::move(batches), std::move(counts), j.at("steps").get<std::int64_t>());
    policy = std::move(p);
  } else if (kind == "merge_rucb") {
    auto p = std::make_unique<MergeRucb>(k, params);
    p->restore_state(std::move(batches), std::move(counts), j.at("steps").get<std::int64_t>());
    policy = std::move(p);
  } else {
    raise(ErrorCode::NotMergePolicy, "cannot restore policy kind '" + kind + "'");
  }
  return policy;
}

// ---- RegretTrace -----------------------------------------------------------

inline json trace_to_json(const RegretTrace& trace) {
  json j{{"seed", trace.seed},
         {"checkpoints", trace.checkpoints},
         {"cumulative_regret", trace.cumulative_regret},
         {"duels_recorded", trace.duels_recorded},
         {"wall_time_seconds", trace.wall_time_seconds},
         {"win_counts", trace.win_counts.rows()},
         {"self_duel_counts", trace.self_duel_counts}};
  j["finished_at"] = trace.finished_at ? json(*trace.finished_at) : json(nullptr);
  j["reported_winner"] = trace.reported_winner ? json(*trace.reported_winner) : json(nullptr);
  j["condorcet_arm"] = trace.condorcet_arm ? json(*trace.condorcet_arm) : json(nullptr);
  if (trace.audit) {
    json episodes = json::array();
    for (const auto& episode : trace.audit->episodes) {
      json counts = json::array();
      for (const auto& [pair, count] : episode.pair_counts) {
        counts.push_back({pair.first, pair.second, count});
      }
      episodes.push_back({{"arms", episode.arms},
                          {"start_t", episode.start_t},
                          {"end_t", episode.end_t},
                          {"pair_counts", counts}});
    }
    j["episodes"] = episodes;
  }
  return j;
}

inline RegretTrace trace_from_json(const json& j) {
  RegretTrace trace;
  trace.seed = j.at("seed").get<std::uint64_t>();
  trace.checkpoints = j.at("checkpoints").get<std::vector<std::int64_t>>();
  trace.cumulative_regret = j.at("cumulative_regret").get<std::vector<double>>();
  trace.duels_recorded = j.at("duels_recorded").get<std::int64_t>();
  trace.wall_time_seconds = j.at("wall_time_seconds").get<double>();
  trace.win_counts = SquareArray<std::int64_t>::from_rows(
      j.at("win_counts").get<std::vector<std::vector<std::int64_t>>>());
  trace.self_duel_counts = j.at("self_duel_counts").get<std::vector<std::int64_t>>();
  if (!j.at("finished_at").is_null()) trace.finished_at = j.at("finished_at").get<std::int64_t>();
  if (!j.at("reported_winner").is_null()) {
    trace.reported_winner = j.at("reported_winner").get<ArmId>();
  }
  if (!j.at("condorcet_arm").is_null()) trace.condorcet_arm = j.at("condorcet_arm").get<ArmId>();
  if (j.contains("episodes")) {
    MergeAuditLog log;
    for (const json& ej : j.at("episodes")) {
      MergeAuditEpisode episode;
      episode.arms = ej.at("arms").get<std::vector<int>>();
      episode.start_t = ej.at("start_t").get<std::int64_t>();
      episode.end_t = ej.at("end_t").get<std::int64_t>();
      for (const json& entry : ej.at("pair_counts")) {
        episode.pair_counts[{entry.at(0).get<int>(), entry.at(1).get<int>()}] =
            entry.at(2).get<std::int64_t>();
      }
      log.episodes.push_back(std::move(episode));
    }
    trace.audit = std::move(log);
  }
  return trace;
}

// ---- AggregateResult --------------------------------------------------------

inline std::string aggregate_to_csv(const AggregateResult& agg) {
  std::string out = "step,mean_regret,stderr,n\n";
  for (std::size_t i = 0; i < agg.checkpoints.size(); ++i) {
    out += std::to_string(agg.checkpoints[i]);
    out += ',';
    out += format_double(agg.mean_regret[i]);
    out += ',';
    out += format_double(agg.stderr_regret[i]);
    out += ',';
    out += std::to_string(agg.repeats);
    out += '\n';
  }
  return out;
}

inline AggregateResult aggregate_from_csv(const std::string& text) {
  AggregateResult agg;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      require(line == "step,mean_regret,stderr,n", ErrorCode::ParseError,
              "unexpected aggregate CSV header");
      header = false;
      continue;
    }
    const auto cells = split(line, ',');
    require(cells.size() == 4, ErrorCode::ParseError, "aggregate CSV row needs 4 cells");
    agg.checkpoints.push_back(parse_int(cells[0]));
    agg.mean_regret.push_back(parse_double(cells[1]));
    agg.stderr_regret.push_back(parse_double(cells[2]));
    agg.repeats = static_cast<int>(parse_int(cells[3]));
  }
  require(!agg.checkpoints.empty(), ErrorCode::ParseError, "empty aggregate CSV");
  return agg;
}

inline json aggregate_to_json(const AggregateResult& agg) {
  json j{{"checkpoints", agg.checkpoints},
         {"mean_regret", agg.mean_regret},
         {"stderr_regret", agg.stderr_regret},
         {"repeats", agg.repeats},
         {"winner_rate", agg.winner_rate},
         {"mean_wall_time_seconds", agg.mean_wall_time_seconds}};
  if (agg.bound_curve) j["bound_curve"] = *agg.bound_curve;
  return j;
}

/// FNV-1a over the canonical dump, for manifests.
inline std::string config_hash(const RunConfig& config) {
  const std::string text = run_config_to_json(config).dump();
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[hash & 0xf];
    hash >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

}  // namespace duelbench
