#pragma once

#include <cstdint>
#include <vector>

#include "duelbench/policy.hpp"

namespace duelbench {

/// Parameter-free Thompson-sampling baseline: each arm keeps a Beta posterior
/// over its duel win rate; every step draws one sample per arm, twice
/// independently, and plays the two argmaxes (which may coincide). The duel
/// winner's win count and the loser's loss count increment; self duels teach
/// nothing and are ignored.
class SelfSparring final : public Policy {
 public:
  explicit SelfSparring(int k)
      : wins_(static_cast<std::size_t>(k), 0), losses_(static_cast<std::size_t>(k), 0) {
    require(k >= 1, ErrorCode::BadParams, "need at least one arm");
  }

  int k() const override { return static_cast<int>(wins_.size()); }
  std::string kind() const override { return "self_sparring"; }
  std::optional<ArmId> winner() const override { return std::nullopt; }

  std::int64_t win_count(int i) const { return wins_.at(static_cast<std::size_t>(i)); }
  std::int64_t loss_count(int i) const { return losses_.at(static_cast<std::size_t>(i)); }

  DuelChoice select_pair(std::int64_t t, Rng& rng) override {
    require(t == steps_ + 1, ErrorCode::BadStep, "out-of-order step");
    const ArmId first = draw_argmax(rng);
    const ArmId second = draw_argmax(rng);
    return DuelChoice{first, second, 0, first == second};
  }

  void record_outcome(const DuelChoice& choice, ArmId winner) override {
    require(winner == choice.first || winner == choice.second,
            ErrorCode::WinnerNotInPair, "winner is not one of the chosen arms");
    ++steps_;
    if (choice.is_self_duel) return;
    const ArmId loser = winner == choice.first ? choice.second : choice.first;
    ++wins_[static_cast<std::size_t>(winner)];
    ++losses_[static_cast<std::size_t>(loser)];
  }

 private:
  ArmId draw_argmax(Rng& rng) {
    double best = -1.0;
    std::vector<ArmId> ties;
    for (int i = 0; i < k(); ++i) {
      const double sample = rng.beta(static_cast<double>(wins_[static_cast<std::size_t>(i)] + 1),
                                     static_cast<double>(losses_[static_cast<std::size_t>(i)] + 1));
      if (sample > best) {
        best = sample;
        ties.assign(1, i);
      } else if (sample == best) {
        ties.push_back(i);
      }
    }
    return rng.pick(ties);
  }

  std::vector<std::int64_t> wins_;
  std::vector<std::int64_t> losses_;
  std::int64_t steps_ = 0;
};

}  // namespace duelbench
