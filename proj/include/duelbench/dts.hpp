#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "duelbench/counts.hpp"
#include "duelbench/policy.hpp"
#include "duelbench/ucb.hpp"

namespace duelbench {

/// Double Thompson Sampling over the full arm set. UCB pre-selects the
/// candidates (arms with the highest optimistic Copeland count); one sampling
/// round picks the first among them; a second, independent round picks the
/// opponent among the arms whose lower confidence bound against the first
/// still allows a loss. Both confidence bounds use log(t + 1).
class Dts final : public Policy {
 public:
  Dts(int k, double alpha) : alpha_(alpha), counts_(k) {
    require(k >= 1, ErrorCode::BadParams, "need at least one arm");
    require(alpha > 0.0, ErrorCode::BadParams, "alpha must be positive");
  }

  int k() const override { return counts_.k(); }
  std::string kind() const override { return "dts"; }
  std::optional<ArmId> winner() const override { return std::nullopt; }
  const ComparisonCounts& counts() const noexcept { return counts_; }

  DuelChoice select_pair(std::int64_t t, Rng& rng) override {
    require(t == steps_ + 1, ErrorCode::BadStep, "out-of-order step");
    const int n = k();
    if (n == 1) return DuelChoice{0, 0, 0, true};

    const SquareArray<double> u = ucb_matrix(counts_, t, 1.0, alpha_);
    std::vector<int> ucb_count(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (j != i && u(i, j) > 0.5) ++ucb_count[static_cast<std::size_t>(i)];
      }
    }
    const int best_count = *std::max_element(ucb_count.begin(), ucb_count.end());

    // Sampled Copeland counts from one posterior draw per unordered pair.
    std::vector<int> sampled(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double theta = rng.beta(static_cast<double>(counts_.wins(i, j) + 1),
                                      static_cast<double>(counts_.wins(j, i) + 1));
        if (theta > 0.5) {
          ++sampled[static_cast<std::size_t>(i)];
        } else if (theta < 0.5) {
          ++sampled[static_cast<std::size_t>(j)];
        }
      }
    }
    int best_sampled = std::numeric_limits<int>::min();
    std::vector<ArmId> ties;
    for (int i = 0; i < n; ++i) {
      if (ucb_count[static_cast<std::size_t>(i)] != best_count) continue;
      if (sampled[static_cast<std::size_t>(i)] > best_sampled) {
        best_sampled = sampled[static_cast<std::size_t>(i)];
        ties.assign(1, i);
      } else if (sampled[static_cast<std::size_t>(i)] == best_sampled) {
        ties.push_back(i);
      }
    }
    const ArmId first = rng.pick(ties);

    // Second round: fresh posterior draws against the first candidate,
    // restricted to arms not yet confidently ahead of it.
    std::vector<ArmId> viable;
    for (int j = 0; j < n; ++j) {
      if (j != first && lower_bound(j, first, t) <= 0.5) viable.push_back(j);
    }
    if (viable.empty()) {
      for (int j = 0; j < n; ++j) {
        if (j != first) viable.push_back(j);
      }
    }
    double best_phi = -1.0;
    ties.clear();
    for (int j : viable) {
      const double phi = rng.beta(static_cast<double>(counts_.wins(j, first) + 1),
                                  static_cast<double>(counts_.wins(first, j) + 1));
      if (phi > best_phi) {
        best_phi = phi;
        ties.assign(1, j);
      } else if (phi == best_phi) {
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
  double lower_bound(int i, int j, std::int64_t t) const {
    const std::int64_t m = counts_.pair_total(i, j);
    if (m == 0) return -std::numeric_limits<double>::infinity();
    const double n = static_cast<double>(m);
    return static_cast<double>(counts_.wins(i, j)) / n -
           std::sqrt(alpha_ * std::log(static_cast<double>(t) + 1.0) / n);
  }

  double alpha_;
  ComparisonCounts counts_;
  std::int64_t steps_ = 0;
};

}  // namespace duelbench
