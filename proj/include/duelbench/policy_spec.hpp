#pragma once

#include <memory>
#include <optional>
#include <string>

#include "duelbench/dts.hpp"
#include "duelbench/merge_dts.hpp"
#include "duelbench/merge_rucb.hpp"
#include "duelbench/policy.hpp"
#include "duelbench/rucb.hpp"
#include "duelbench/self_sparring.hpp"

namespace duelbench {

enum class PolicyKind { MergeDts, MergeRucb, Rucb, Dts, SelfSparring };

inline const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::MergeDts: return "merge_dts";
    case PolicyKind::MergeRucb: return "merge_rucb";
    case PolicyKind::Rucb: return "rucb";
    case PolicyKind::Dts: return "dts";
    case PolicyKind::SelfSparring: return "self_sparring";
  }
  return "unknown";
}

inline PolicyKind policy_kind_from_string(const std::string& name) {
  if (name == "merge_dts") return PolicyKind::MergeDts;
  if (name == "merge_rucb") return PolicyKind::MergeRucb;
  if (name == "rucb") return PolicyKind::Rucb;
  if (name == "dts") return PolicyKind::Dts;
  if (name == "self_sparring") return PolicyKind::SelfSparring;
  raise(ErrorCode::BadParams, "unknown policy kind '" + name + "'");
}

/// Declarative policy choice. Merge-family kinds use alpha/batch_size_m plus
/// either epsilon or c_override; rucb and dts take alpha alone; self_sparring
/// takes nothing.
struct PolicySpec {
  PolicyKind kind = PolicyKind::MergeDts;
  double alpha = 1.01;
  int batch_size_m = 4;
  std::optional<double> epsilon;
  std::optional<double> c_override;

  MergeDtsParams merge_params(std::int64_t horizon) const {
    MergeDtsParams p;
    p.alpha = alpha;
    p.batch_size_m = batch_size_m;
    p.horizon_t = horizon;
    p.epsilon = epsilon;
    p.c_override = c_override;
    return p;
  }

  std::unique_ptr<Policy> build(int k, std::int64_t horizon, bool record_audit = true) const {
    switch (kind) {
      case PolicyKind::MergeDts:
        return std::make_unique<MergeDts>(k, merge_params(horizon), record_audit);
      case PolicyKind::MergeRucb:
        return std::make_unique<MergeRucb>(k, merge_params(horizon), record_audit);
      case PolicyKind::Rucb:
        return std::make_unique<Rucb>(k, alpha);
      case PolicyKind::Dts:
        return std::make_unique<Dts>(k, alpha);
      case PolicyKind::SelfSparring:
        return std::make_unique<SelfSparring>(k);
    }
    raise(ErrorCode::Internal, "unreachable policy kind");
  }

  bool is_merge_family() const {
    return kind == PolicyKind::MergeDts || kind == PolicyKind::MergeRucb;
  }
};

/// Convenience constructors mirroring the paper's parameterizations.
inline std::unique_ptr<Policy> merge_rucb_policy(int k, double alpha, int batch_size,
                                                 double c_const) {
  MergeRucbParams params;
  params.alpha = alpha;
  params.batch_size_m = batch_size;
  params.horizon_t = 1;
  params.c_override = c_const;
  return std::make_unique<MergeRucb>(k, params);
}

inline std::unique_ptr<Policy> rucb_policy(int k, double alpha) {
  return std::make_unique<Rucb>(k, alpha);
}

inline std::unique_ptr<Policy> dts_policy(int k, double alpha) {
  return std::make_unique<Dts>(k, alpha);
}

inline std::unique_ptr<Policy> self_sparring_policy(int k) {
  return std::make_unique<SelfSparring>(k);
}

}  // namespace duelbench
