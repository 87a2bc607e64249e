#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "duelbench/batches.hpp"
#include "duelbench/counts.hpp"
#include "duelbench/policy.hpp"
#include "duelbench/theory.hpp"
#include "duelbench/ucb.hpp"

namespace duelbench {

/// Parameters shared by the merge-family policies. Exactly one of
/// {epsilon-derived C, c_override} resolves the exploration constant;
/// epsilon defaults to 1/horizon when neither is given.
struct MergeDtsParams {
  double alpha = 1.01;
  int batch_size_m = 4;
  std::int64_t horizon_t = 1;
  std::optional<double> epsilon;
  std::optional<double> c_override;

  double resolve_c(int k) const {
    require(alpha > 0.0, ErrorCode::BadParams, "alpha must be positive");
    require(batch_size_m >= 2, ErrorCode::BadParams, "batch size must be >= 2");
    require(horizon_t >= 1, ErrorCode::BadParams, "horizon must be >= 1");
    require(!(epsilon && c_override), ErrorCode::BadParams,
            "give either epsilon or c_override, not both");
    if (c_override) {
      require(*c_override > 0.0, ErrorCode::BadParams, "c_override must be positive");
      return *c_override;
    }
    const double eps = epsilon ? *epsilon : 1.0 / static_cast<double>(horizon_t);
    return exploration_constant(alpha, k, eps);
  }
};

using MergeRucbParams = MergeDtsParams;

/// One batch lifetime between merge events, with the duel counts of every
/// pair compared while the batch existed. Fuel for the pair-comparison audit.
struct MergeAuditEpisode {
  std::uint32_t batch_id = 0;
  std::vector<int> arms;       // membership when the episode opened
  std::int64_t start_t = 0;    // first step with this composition
  std::int64_t end_t = -1;     // step of the closing merge; -1 while open
  std::map<std::pair<int, int>, std::int64_t> pair_counts;  // key i<j
};

struct MergeAuditLog {
  std::vector<MergeAuditEpisode> episodes;
};

/// Divide-and-conquer elimination machinery shared by MergeDTS and MergeRUCB:
/// round-robin batch schedule, UCB purge, singleton merge, and the
/// halving-triggered repartition. Subclasses supply the two selection phases.
class MergeBandit : public Policy {
 public:
  int k() const override { return counts_.k(); }
  const ComparisonCounts& counts() const noexcept { return counts_; }
  const BatchSet& batches() const noexcept { return batches_; }
  int stage() const noexcept { return batches_.stage(); }
  std::int64_t steps() const noexcept { return steps_; }
  const MergeDtsParams& params() const noexcept { return params_; }
  double resolved_c() const noexcept { return resolved_c_; }
  const MergeAuditLog& audit_log() const noexcept { return audit_; }

  bool finished() const {
    return batches_.batch_count() == 1 && batches_.batch(0).arms.size() == 1;
  }

  std::optional<ArmId> winner() const override {
    if (finished()) return batches_.batch(0).arms.front();
    return std::nullopt;
  }

  DuelChoice select_pair(std::int64_t t, Rng& rng) override {
    require(t == steps_ + 1, ErrorCode::BadStep,
            "expected t = " + std::to_string(steps_ + 1));
    if (finished()) {
      const ArmId survivor = batches_.batch(0).arms.front();
      pending_batch_id_ = batches_.batch(0).id;
      return DuelChoice{survivor, survivor, 0, true};
    }

    std::size_t m = static_cast<std::size_t>((t - 1) % static_cast<std::int64_t>(batches_.batch_count()));

    const PurgeResult purge =
        purge_batch(batches_.batch(m).arms, counts_, t, resolved_c_, params_.alpha);
    require(!purge.kept.empty(), ErrorCode::Internal, "purge emptied a batch");
    batches_.remove_arms(m, purge.removed);

    if (batches_.batch(m).arms.size() == 1 && batches_.batch_count() > 1) {
      auto [event, merged_index] = batches_.merge_with_next(m);
      on_merge(event, t);
      m = merged_index;
    }

    const std::vector<int>& batch = batches_.batch(m).arms;
    const ArmId first = phase_one(batch, t, rng);
    const ArmId second = phase_two(batch, first, t, rng);
    pending_batch_id_ = batches_.batch(m).id;
    return DuelChoice{first, second, static_cast<std::int64_t>(m), first == second};
  }

  void record_outcome(const DuelChoice& choice, ArmId winner) override {
    require(winner == choice.first || winner == choice.second,
            ErrorCode::WinnerNotInPair, "winner is not one of the chosen arms");
    ++steps_;
    if (choice.is_self_duel) return;  // nothing to learn from a tie with itself
    const ArmId loser = winner == choice.first ? choice.second : choice.first;
    counts_.record_win(winner, loser);
    if (record_audit_) {
      auto it = open_episode_.find(pending_batch_id_);
      require(it != open_episode_.end(), ErrorCode::Internal, "no episode for batch");
      const auto key = std::minmax(choice.first, choice.second);
      ++audit_.episodes[it->second].pair_counts[key];
    }
    maybe_repartition();
  }

  /// Stage advance: fires when the survivors have halved relative to the
  /// current stage. Returns whether the stage advanced.
  bool maybe_repartition() {
    if (finished()) return false;
    const int stage = batches_.stage();
    if (stage > 62) return false;
    if ((static_cast<std::int64_t>(batches_.survivors()) << stage) >
        static_cast<std::int64_t>(k())) {
      return false;
    }
    const auto events = batches_.repartition(params_.batch_size_m);
    for (const auto& event : events) on_merge(event, steps_);
    return true;
  }

 protected:
  MergeBandit(int k, MergeDtsParams params, bool record_audit)
      : counts_(k),
        batches_(k, params.batch_size_m),
        params_(params),
        resolved_c_(params.resolve_c(k)),
        record_audit_(record_audit) {
    if (record_audit_) {
      for (const auto& b : batches_.batches()) open_episode_single(b.id, b.arms, 1);
    }
  }

  virtual ArmId phase_one(const std::vector<int>& batch, std::int64_t t, Rng& rng) = 0;
  virtual ArmId phase_two(const std::vector<int>& batch, ArmId first, std::int64_t t,
                          Rng& rng) = 0;

  /// Restore serialized state. Audit episodes restart from the restored batches.
  void restore_state(BatchSet batches, ComparisonCounts counts, std::int64_t steps) {
    require(counts.k() == k(), ErrorCode::BadParams, "state k mismatch");
    batches_ = std::move(batches);
    counts_ = std::move(counts);
    steps_ = steps;
    audit_ = MergeAuditLog{};
    open_episode_.clear();
    if (record_audit_) {
      for (const auto& b : batches_.batches()) open_episode_single(b.id, b.arms, steps_ + 1);
    }
  }

 private:
  void open_episode_single(std::uint32_t id, const std::vector<int>& arms,
                           std::int64_t start_t) {
    MergeAuditEpisode episode;
    episode.batch_id = id;
    episode.arms = arms;
    episode.start_t = start_t;
    open_episode_[id] = audit_.episodes.size();
    audit_.episodes.push_back(std::move(episode));
  }

  void on_merge(const BatchSet::MergeEvent& event, std::int64_t t) {
    if (!record_audit_) return;
    for (std::uint32_t old_id : {event.absorbed_id, event.target_id}) {
      auto it = open_episode_.find(old_id);
      require(it != open_episode_.end(), ErrorCode::Internal, "merge of unknown batch");
      audit_.episodes[it->second].end_t = t;
      open_episode_.erase(it);
    }
    for (const auto& b : batches_.batches()) {
      if (b.id == event.result_id) {
        open_episode_single(b.id, b.arms, t);
        return;
      }
    }
    raise(ErrorCode::Internal, "merged batch not found");
  }

  ComparisonCounts counts_;
  BatchSet batches_;
  MergeDtsParams params_;
  double resolved_c_ = 0.0;
  bool record_audit_ = false;
  std::int64_t steps_ = 0;
  std::uint32_t pending_batch_id_ = 0;
  MergeAuditLog audit_;
  std::unordered_map<std::uint32_t, std::size_t> open_episode_;
};

}  // namespace duelbench
