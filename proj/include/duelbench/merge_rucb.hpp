#pragma once

#include <cstdint>
#include <vector>

#include "duelbench/merge_bandit.hpp"

namespace duelbench {

/// Merge-family baseline: same batches, purge criterion, merges and
/// repartition as MergeDTS, but the first candidate is uniform over the batch
/// and the second is the batchmate most optimistic about beating it.
class MergeRucb final : public MergeBandit {
 public:
  MergeRucb(int k, MergeRucbParams params, bool record_audit = true)
      : MergeBandit(k, params, record_audit) {}

  std::string kind() const override { return "merge_rucb"; }

  using MergeBandit::restore_state;

 protected:
  ArmId phase_one(const std::vector<int>& batch, std::int64_t, Rng& rng) override {
    return batch[rng.index(batch.size())];
  }

  ArmId phase_two(const std::vector<int>& batch, ArmId first, std::int64_t t,
                  Rng& rng) override {
    if (batch.size() == 1) return first;
    double best = -1.0;
    std::vector<ArmId> ties;
    for (int j : batch) {
      if (j == first) continue;
      const double u = ucb_value(counts().wins(j, first), counts().wins(first, j), t,
                                 resolved_c(), params().alpha);
      if (u > best) {
        best = u;
        ties.assign(1, j);
      } else if (u == best) {
        ties.push_back(j);
      }
    }
    return rng.pick(ties);
  }
};

}  // namespace duelbench
