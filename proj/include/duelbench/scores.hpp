#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "duelbench/preference_matrix.hpp"

namespace duelbench {

using ArmId = int;

/// The unique arm beating every other arm with probability > 0.5, if any.
inline std::optional<ArmId> condorcet_winner(const PreferenceMatrix& m) {
  for (int i = 0; i < m.k(); ++i) {
    bool beats_all = true;
    for (int j = 0; j < m.k() && beats_all; ++j) {
      if (j != i && !(m(i, j) > 0.5)) beats_all = false;
    }
    if (beats_all) return i;
  }
  return std::nullopt;
}

/// Normalized Copeland scores: fraction of the other k-1 arms beaten strictly.
/// Ties at 0.5 count as not beaten.
inline std::vector<double> copeland_scores(const PreferenceMatrix& m) {
  std::vector<double> scores(static_cast<std::size_t>(m.k()), 0.0);
  for (int i = 0; i < m.k(); ++i) {
    int beaten = 0;
    for (int j = 0; j < m.k(); ++j) {
      if (j != i && m(i, j) > 0.5) ++beaten;
    }
    scores[static_cast<std::size_t>(i)] = static_cast<double>(beaten) / (m.k() - 1);
  }
  return scores;
}

/// Row sums of the preference matrix. The 0.5 self term is included; that is
/// the convention this library uses throughout.
inline std::vector<double> borda_scores(const PreferenceMatrix& m) {
  std::vector<double> scores(static_cast<std::size_t>(m.k()), 0.0);
  for (int i = 0; i < m.k(); ++i) {
    double sum = 0.0;
    for (int j = 0; j < m.k(); ++j) sum += m(i, j);
    scores[static_cast<std::size_t>(i)] = sum;
  }
  return scores;
}

struct GapSummary {
  SquareArray<double> delta;                              // |p - 0.5|
  std::optional<double> delta_min;                        // smallest positive gap
  std::vector<std::pair<int, int>> indistinguishable_pairs;  // i<j with gap 0
};

inline GapSummary gap_summary(const PreferenceMatrix& m) {
  GapSummary out;
  out.delta = SquareArray<double>(m.k(), 0.0);
  for (int i = 0; i < m.k(); ++i) {
    for (int j = 0; j < m.k(); ++j) {
      const double gap = std::abs(m(i, j) - 0.5);
      out.delta(i, j) = gap;
      if (i < j) {
        if (gap == 0.0) {
          out.indistinguishable_pairs.emplace_back(i, j);
        } else if (!out.delta_min || gap < *out.delta_min) {
          out.delta_min = gap;
        }
      }
    }
  }
  return out;
}

struct WinnerReport {
  std::optional<ArmId> condorcet;
  std::vector<double> copeland;
  std::vector<ArmId> copeland_winners;  // argmax set, always nonempty
  std::vector<double> borda;
  bool has_indistinguishable_pairs = false;
};

inline WinnerReport winner_report(const PreferenceMatrix& m) {
  WinnerReport report;
  report.condorcet = condorcet_winner(m);
  report.copeland = copeland_scores(m);
  report.borda = borda_scores(m);
  const double best = *std::max_element(report.copeland.begin(), report.copeland.end());
  for (int i = 0; i < m.k(); ++i) {
    if (report.copeland[static_cast<std::size_t>(i)] == best) report.copeland_winners.push_back(i);
  }
  report.has_indistinguishable_pairs = !gap_summary(m).indistinguishable_pairs.empty();
  return report;
}

/// Per-step regret of comparing (i, j) against the Condorcet winner c:
/// the mean of the two winner-vs-arm gaps. Throws if c is not the winner.
inline double step_regret(const PreferenceMatrix& m, ArmId c, ArmId i, ArmId j) {
  require(c >= 0 && c < m.k() && i >= 0 && i < m.k() && j >= 0 && j < m.k(),
          ErrorCode::OutOfRange, "arm index out of range");
  for (int x = 0; x < m.k(); ++x) {
    require(x == c || m(c, x) > 0.5, ErrorCode::NoCondorcet,
            "arm " + std::to_string(c) + " is not the Condorcet winner");
  }
  return (m(c, i) - 0.5 + m(c, j) - 0.5) / 2.0;
}

/// Copeland regret of comparing (i, j): best score minus the pair's mean score.
inline double copeland_step_regret(const PreferenceMatrix& m, ArmId i, ArmId j) {
  require(i >= 0 && i < m.k() && j >= 0 && j < m.k(), ErrorCode::OutOfRange,
          "arm index out of range");
  const std::vector<double> zeta = copeland_scores(m);
  const double best = *std::max_element(zeta.begin(), zeta.end());
  return best - 0.5 * (zeta[static_cast<std::size_t>(i)] + zeta[static_cast<std::size_t>(j)]);
}

}  // namespace duelbench
