#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "duelbench/rng.hpp"
#include "duelbench/scores.hpp"

namespace duelbench {

/// The pair chosen for one duel. A self duel (first == second) means the
/// policy has settled on a single arm and keeps playing it against itself.
struct DuelChoice {
  ArmId first = 0;
  ArmId second = 0;
  std::int64_t batch_index = 0;
  bool is_self_duel = false;
};

/// Shared contract for every dueling-bandit policy: alternate select_pair and
/// record_outcome, one cycle per time step starting at t = 1. A policy state
/// has a single logical writer; distinct runs share nothing.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual int k() const = 0;
  virtual std::string kind() const = 0;

  /// t must equal the number of completed select/record cycles plus one.
  virtual DuelChoice select_pair(std::int64_t t, Rng& rng) = 0;

  virtual void record_outcome(const DuelChoice& choice, ArmId winner) = 0;

  /// Present once the policy has committed to a single arm. Policies that
  /// never eliminate arms always report absent.
  virtual std::optional<ArmId> winner() const = 0;
};

}  // namespace duelbench
