#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "duelbench/error.hpp"

namespace duelbench {

/// Stage-indexed partition of the surviving arms into disjoint batches.
/// Batches keep their arms sorted and carry a stable id so callers can track
/// merge events. Arms only ever leave (purge) or travel together (merge);
/// a batch is never split.
class BatchSet {
 public:
  struct Batch {
    std::uint32_t id;
    std::vector<int> arms;
  };

  struct MergeEvent {
    std::uint32_t result_id;
    std::uint32_t absorbed_id;  // batch folded into result
    std::uint32_t target_id;    // pre-merge id of the batch that grew
  };

  /// Initial grouping: arms 0..k-1 in input order, chunks of m, the last
  /// chunk possibly smaller.
  BatchSet(int k, int batch_size_m) : stage_(1), survivors_(k) {
    require(k >= 1, ErrorCode::BadParams, "need at least one arm");
    require(batch_size_m >= 2, ErrorCode::BadParams, "batch size must be >= 2");
    for (int start = 0; start < k; start += batch_size_m) {
      Batch b;
      b.id = next_id_++;
      for (int a = start; a < std::min(k, start + batch_size_m); ++a) b.arms.push_back(a);
      batches_.push_back(std::move(b));
    }
  }

  int stage() const noexcept { return stage_; }
  std::size_t batch_count() const noexcept { return batches_.size(); }
  int survivors() const noexcept { return survivors_; }
  const Batch& batch(std::size_t m) const { return batches_.at(m); }
  const std::vector<Batch>& batches() const noexcept { return batches_; }

  /// Remove arms (from a purge) from batch m. The batch keeps its identity.
  void remove_arms(std::size_t m, const std::vector<int>& removed) {
    if (removed.empty()) return;
    auto& arms = batches_.at(m).arms;
    for (int arm : removed) {
      auto it = std::find(arms.begin(), arms.end(), arm);
      require(it != arms.end(), ErrorCode::Internal, "removed arm not in batch");
      arms.erase(it);
      --survivors_;
    }
  }

  /// Merge batch m with its cyclic successor; returns the event and the index
  /// of the merged batch. Requires more than one batch.
  std::pair<MergeEvent, std::size_t> merge_with_next(std::size_t m) {
    require(batches_.size() > 1, ErrorCode::Internal, "nothing to merge with");
    const std::size_t next = (m + 1) % batches_.size();
    MergeEvent event{next_id_++, batches_[m].id, batches_[next].id};
    auto& target = batches_[next].arms;
    target.insert(target.end(), batches_[m].arms.begin(), batches_[m].arms.end());
    std::sort(target.begin(), target.end());
    batches_[next].id = event.result_id;
    batches_.erase(batches_.begin() + static_cast<std::ptrdiff_t>(m));
    const std::size_t merged_index = next > m ? next - 1 : next;
    return {event, merged_index};
  }

  /// Stage-advance repartition: fold the smallest batch into the largest batch
  /// that keeps the combined size within floor(1.5 M), until every batch holds
  /// at least ceil(0.5 M) arms or a single batch remains. A straggler that fits
  /// nowhere stays as it is; the per-step singleton merge absorbs it later.
  std::vector<MergeEvent> repartition(int batch_size_m) {
    const int low = (batch_size_m + 1) / 2;
    const int high = 3 * batch_size_m / 2;
    std::vector<MergeEvent> events;
    while (batches_.size() > 1) {
      std::size_t smallest = 0;
      for (std::size_t i = 1; i < batches_.size(); ++i) {
        if (batches_[i].arms.size() < batches_[smallest].arms.size()) smallest = i;
      }
      if (static_cast<int>(batches_[smallest].arms.size()) >= low) break;
      std::optional<std::size_t> target;
      for (std::size_t i = 0; i < batches_.size(); ++i) {
        if (i == smallest) continue;
        const std::size_t combined = batches_[i].arms.size() + batches_[smallest].arms.size();
        if (combined > static_cast<std::size_t>(high)) continue;
        if (!target || batches_[i].arms.size() > batches_[*target].arms.size()) target = i;
      }
      if (!target) break;
      MergeEvent event{next_id_++, batches_[smallest].id, batches_[*target].id};
      auto& arms = batches_[*target].arms;
      arms.insert(arms.end(), batches_[smallest].arms.begin(), batches_[smallest].arms.end());
      std::sort(arms.begin(), arms.end());
      batches_[*target].id = event.result_id;
      batches_.erase(batches_.begin() + static_cast<std::ptrdiff_t>(smallest));
      events.push_back(event);
    }
    ++stage_;
    return events;
  }

  /// Rebuild from serialized state. Batch ids restart from zero.
  static BatchSet restore(int k, int stage, const std::vector<std::vector<int>>& batches) {
    require(stage >= 1, ErrorCode::BadParams, "stage must be >= 1");
    require(!batches.empty(), ErrorCode::BadParams, "need at least one batch");
    BatchSet out;
    out.stage_ = stage;
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    int survivors = 0;
    for (const auto& arms : batches) {
      require(!arms.empty(), ErrorCode::BadParams, "empty batch in state");
      Batch b;
      b.id = out.next_id_++;
      b.arms = arms;
      std::sort(b.arms.begin(), b.arms.end());
      for (int a : b.arms) {
        require(a >= 0 && a < k, ErrorCode::OutOfRange, "arm out of range in state");
        require(!seen[static_cast<std::size_t>(a)], ErrorCode::BadParams,
                "arm appears in two batches");
        seen[static_cast<std::size_t>(a)] = true;
        ++survivors;
      }
      out.batches_.push_back(std::move(b));
    }
    out.survivors_ = survivors;
    return out;
  }

 private:
  BatchSet() = default;

  std::vector<Batch> batches_;
  int stage_ = 1;
  int survivors_ = 0;
  std::uint32_t next_id_ = 0;
};

}  // namespace duelbench
