#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "duelbench/merge_bandit.hpp"

namespace duelbench {

/// First-candidate tournament: sample one preference per unordered pair of the
/// batch from its Beta posterior and return the arm whose samples beat the
/// most batchmates. Draw order: one Beta draw per pair in ascending (i, j)
/// arm order, then a tie-break pick if several arms share the best count.
inline ArmId sample_tournament(const ComparisonCounts& w, const std::vector<int>& batch,
                               Rng& rng) {
  require(!batch.empty(), ErrorCode::BadParams, "empty batch");
  const std::size_t n = batch.size();
  if (n == 1) return batch.front();
  std::vector<int> beaten(n, 0);
  for (std::size_t a = 0; a + 1 < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const int i = batch[a];
      const int j = batch[b];
      const double theta_ij = rng.beta(static_cast<double>(w.wins(i, j) + 1),
                                       static_cast<double>(w.wins(j, i) + 1));
      if (theta_ij > 0.5) {
        ++beaten[a];
      } else if (1.0 - theta_ij > 0.5) {
        ++beaten[b];
      }
    }
  }
  const int best = *std::max_element(beaten.begin(), beaten.end());
  std::vector<ArmId> ties;
  for (std::size_t a = 0; a < n; ++a) {
    if (beaten[a] == best) ties.push_back(batch[a]);
  }
  return rng.pick(ties);
}

/// Second-candidate tournament: sample each batchmate's posterior of beating
/// the first candidate and return the weakest. The first candidate itself is
/// pinned at 1, so it can only be returned from a singleton batch.
inline ArmId relative_tournament(const ComparisonCounts& w, const std::vector<int>& batch,
                                 ArmId first, Rng& rng) {
  require(std::find(batch.begin(), batch.end(), first) != batch.end(),
          ErrorCode::BadParams, "first candidate not in batch");
  if (batch.size() == 1) return first;
  double best = 2.0;  // every phi is below this
  std::vector<ArmId> ties;
  for (int j : batch) {
    if (j == first) continue;
    const double phi = rng.beta(static_cast<double>(w.wins(j, first) + 1),
                                static_cast<double>(w.wins(first, j) + 1));
    if (phi < best) {
      best = phi;
      ties.assign(1, j);
    } else if (phi == best) {
      ties.push_back(j);
    }
  }
  return rng.pick(ties);
}

/// Merge Double Thompson Sampling: the shared elimination machinery with both
/// selection phases driven by posterior sampling.
class MergeDts final : public MergeBandit {
 public:
  MergeDts(int k, MergeDtsParams params, bool record_audit = true)
      : MergeBandit(k, params, record_audit) {}

  std::string kind() const override { return "merge_dts"; }

  using MergeBandit::restore_state;

 protected:
  ArmId phase_one(const std::vector<int>& batch, std::int64_t, Rng& rng) override {
    return sample_tournament(counts(), batch, rng);
  }

  ArmId phase_two(const std::vector<int>& batch, ArmId first, std::int64_t,
                  Rng& rng) override {
    return relative_tournament(counts(), batch, first, rng);
  }
};

}  // namespace duelbench
