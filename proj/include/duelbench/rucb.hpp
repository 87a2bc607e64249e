#pragma once

#include <cstdint>
#include <vector>

#include "duelbench/counts.hpp"
#include "duelbench/policy.hpp"
#include "duelbench/ucb.hpp"

namespace duelbench {

/// Relative UCB over the full arm set, no elimination. The first candidate is
/// drawn from the arms that look unbeaten under the optimistic estimates
/// (uniform over all arms when none qualifies); the second is the arm most
/// optimistic about beating the first. The log argument uses t + 1.
class Rucb final : public Policy {
 public:
  Rucb(int k, double alpha) : alpha_(alpha), counts_(k) {
    require(k >= 1, ErrorCode::BadParams, "need at least one arm");
    require(alpha > 0.0, ErrorCode::BadParams, "alpha must be positive");
  }

  int k() const override { return counts_.k(); }
  std::string kind() const override { return "rucb"; }
  std::optional<ArmId> winner() const override { return std::nullopt; }
  const ComparisonCounts& counts() const noexcept { return counts_; }

  DuelChoice select_pair(std::int64_t t, Rng& rng) override {
    require(t == steps_ + 1, ErrorCode::BadStep, "out-of-order step");
    const int n = k();
    if (n == 1) return DuelChoice{0, 0, 0, true};

    const SquareArray<double> u = ucb_matrix(counts_, t, 1.0, alpha_);
    std::vector<ArmId> candidates;
    for (int i = 0; i < n; ++i) {
      bool unbeaten = true;
      for (int j = 0; j < n && unbeaten; ++j) {
        if (j != i && u(i, j) < 0.5) unbeaten = false;
      }
      if (unbeaten) candidates.push_back(i);
    }
    ArmId first;
    if (candidates.empty()) {
      first = static_cast<ArmId>(rng.index(static_cast<std::size_t>(n)));
    } else {
      first = rng.pick(candidates);
    }

    double best = -1.0;
    std::vector<ArmId> ties;
    for (int j = 0; j < n; ++j) {
      if (j == first) continue;
      if (u(j, first) > best) {
        best = u(j, first);
        ties.assign(1, j);
      } else if (u(j, first) == best) {
        ties.push_back(j);
      }
    }
    const ArmId second = rng.pick(ties);
    return DuelChoice{first, second, 0, first == second};
  }

  void record_outcome(const DuelChoice& choice, ArmId winner) override {
    require(winner == choice.first || winner == choice.second,
            ErrorCode::WinnerNotInPair, "winner is not one of the chosen arms");
    ++steps_;
    if (choice.is_self_duel) return;
    counts_.record_win(winner, winner == choice.first ? choice.second : choice.first);
  }

 private:
  double alpha_;
  ComparisonCounts counts_;
  std::int64_t steps_ = 0;
};

}  // namespace duelbench
