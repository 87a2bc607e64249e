#pragma once

#include <string>

#include <json.hpp>

#include "duelbench/environment.hpp"
#include "duelbench/preference_matrix.hpp"

namespace duelbench {

inline nlohmann::json matrix_to_json(const PreferenceMatrix& m) {
  return nlohmann::json{{"k", m.k()}, {"p", m.raw().rows()}};
}

inline PreferenceMatrix matrix_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("k") && j.contains("p"), ErrorCode::ParseError,
          "matrix JSON needs {\"k\", \"p\"}");
  const int k = j.at("k").get<int>();
  const auto rows = j.at("p").get<std::vector<std::vector<double>>>();
  require(static_cast<int>(rows.size()) == k, ErrorCode::NonSquare,
          "matrix JSON: k does not match row count");
  return validate_matrix(rows);
}

inline bool ends_with(const std::string& text, const std::string& suffix) {
  return text.size() >= suffix.size() &&
         text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Load a preference matrix from a .csv or .json file (by extension).
inline PreferenceMatrix load_matrix_file(const std::string& path) {
  const std::string text = read_file(path);
  if (ends_with(path, ".json")) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    require(!j.is_discarded(), ErrorCode::ParseError, "invalid JSON in '" + path + "'");
    return matrix_from_json(j);
  }
  return matrix_from_csv(text);
}

inline void save_matrix_file(const PreferenceMatrix& m, const std::string& path) {
  if (ends_with(path, ".json")) {
    write_file(path, matrix_to_json(m).dump(2) + "\n");
  } else {
    write_file(path, matrix_to_csv(m));
  }
}

/// Materialize the matrix an EnvironmentSpec describes.
inline PreferenceMatrix realize_matrix(const EnvironmentSpec& spec) {
  switch (spec.source) {
    case EnvironmentSpec::Source::Cycle: return gen_cycle();
    case EnvironmentSpec::Source::Cycle2: return gen_cycle2();
    case EnvironmentSpec::Source::RandomCondorcet:
      return gen_random_condorcet(spec.k, spec.delta_min, spec.uninformative_fraction,
                                  spec.gen_seed);
    case EnvironmentSpec::Source::File: return load_matrix_file(spec.path);
  }
  raise(ErrorCode::Internal, "unreachable environment source");
}

inline Environment realize_environment(const EnvironmentSpec& spec) {
  return Environment::create(realize_matrix(spec), spec.regret_mode);
}

}  // namespace duelbench
