#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "duelbench/counts.hpp"

namespace duelbench {

/// Optimistic estimate of p(i beats j): win rate plus a log-scaled bonus.
/// An uncompared pair has infinite confidence: it can never look eliminable
/// and always looks viable, so nothing is purged without evidence.
inline double ucb_value(std::int64_t wins_ij, std::int64_t wins_ji,
                        std::int64_t t, double c_const, double alpha) {
  const std::int64_t n = wins_ij + wins_ji;
  if (n == 0) return std::numeric_limits<double>::infinity();
  const double nn = static_cast<double>(n);
  return static_cast<double>(wins_ij) / nn +
         std::sqrt(alpha * std::log(static_cast<double>(t) + c_const) / nn);
}

/// Full UCB matrix. Policies compute the same values batch-locally; this form
/// exists for diagnostics and cross-checking.
inline SquareArray<double> ucb_matrix(const ComparisonCounts& w, std::int64_t t,
                                      double c_const, double alpha) {
  SquareArray<double> u(w.k(), 0.0);
  for (int i = 0; i < w.k(); ++i) {
    for (int j = 0; j < w.k(); ++j) {
      u(i, j) = ucb_value(w.wins(i, j), w.wins(j, i), t, c_const, alpha);
    }
  }
  return u;
}

struct PurgeResult {
  std::vector<int> kept;
  std::vector<int> removed;
};

/// Simultaneous elimination: an arm leaves if its UCB against some other arm
/// of the same batch is below 0.5. All predicates are evaluated against the
/// pre-purge batch.
inline PurgeResult purge_batch(const std::vector<int>& batch,
                               const SquareArray<double>& u) {
  require(!batch.empty(), ErrorCode::BadParams, "purge needs a nonempty batch");
  PurgeResult out;
  for (int i : batch) {
    bool removed = false;
    for (int j : batch) {
      if (j != i && u(i, j) < 0.5) {
        removed = true;
        break;
      }
    }
    (removed ? out.removed : out.kept).push_back(i);
  }
  return out;
}

/// Batch-local variant used on the hot path; avoids forming the k-by-k matrix.
inline PurgeResult purge_batch(const std::vector<int>& batch,
                               const ComparisonCounts& w, std::int64_t t,
                               double c_const, double alpha) {
  require(!batch.empty(), ErrorCode::BadParams, "purge needs a nonempty batch");
  PurgeResult out;
  for (int i : batch) {
    bool removed = false;
    for (int j : batch) {
      if (j != i &&
          ucb_value(w.wins(i, j), w.wins(j, i), t, c_const, alpha) < 0.5) {
        removed = true;
        break;
      }
    }
    (removed ? out.removed : out.kept).push_back(i);
  }
  return out;
}

}  // namespace duelbench
