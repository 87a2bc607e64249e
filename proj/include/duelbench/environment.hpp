#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "duelbench/preference_matrix.hpp"
#include "duelbench/rng.hpp"
#include "duelbench/scores.hpp"

namespace duelbench {

/// 20-arm instance with one narrow winner: arm 0 beats everyone with 0.51,
/// and the 19 remaining arms sit on a ring where each deterministically beats
/// the 9 arms after it and loses to the 9 before it.
inline PreferenceMatrix gen_cycle() {
  const int k = 20;
  SquareArray<double> p(k, 0.5);
  for (int j = 1; j < k; ++j) {
    p(0, j) = 0.51;
    p(j, 0) = 0.49;
  }
  for (int i = 1; i < k; ++i) {
    for (int j = 1; j < k; ++j) {
      if (i == j) continue;
      const int d = ((j - i) % 19 + 19) % 19;
      p(i, j) = d <= 9 ? 1.0 : 0.0;
    }
  }
  return validate_matrix(std::move(p));
}

/// Softened variant: arm 0 beats everyone with 0.6 and the ring preferences
/// shrink to 0.51 / 0.49, which spreads the Borda scores apart.
inline PreferenceMatrix gen_cycle2() {
  const int k = 20;
  SquareArray<double> p(k, 0.5);
  for (int j = 1; j < k; ++j) {
    p(0, j) = 0.6;
    p(j, 0) = 0.4;
  }
  for (int i = 1; i < k; ++i) {
    for (int j = 1; j < k; ++j) {
      if (i == j) continue;
      const int d = ((j - i) % 19 + 19) % 19;
      p(i, j) = d <= 9 ? 0.51 : 0.49;
    }
  }
  return validate_matrix(std::move(p));
}

/// Seeded instance with arm 0 as the Condorcet winner, every pairwise gap at
/// least delta_min, and an optional tail of uninformative arms that tie each
/// other at 0.5 and lose to every informative arm. Uninformative arms are
/// capped at a third of the total. Gaps are uniform in [delta_min, 0.5]; the
/// direction between two informative non-winner arms is a fair coin.
inline PreferenceMatrix gen_random_condorcet(int k, double delta_min,
                                             double uninformative_fraction,
                                             std::uint64_t seed) {
  require(k >= 2, ErrorCode::BadParams, "need k >= 2");
  require(delta_min > 0.0 && delta_min <= 0.5, ErrorCode::BadParams,
          "delta_min must lie in (0, 0.5]");
  require(uninformative_fraction >= 0.0 &&
              uninformative_fraction <= 1.0 / 3.0 + 1e-12,
          ErrorCode::BadParams, "uninformative fraction must lie in [0, 1/3]");
  const int n_uninformative =
      static_cast<int>(std::floor(static_cast<double>(k) * uninformative_fraction + 1e-9));
  const int first_uninformative = k - n_uninformative;

  Rng rng(seed, kEnvStream);
  auto gap = [&rng, delta_min] {
    return delta_min + (0.5 - delta_min) * rng.uniform();
  };

  SquareArray<double> p(k, 0.5);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const bool i_uninf = i >= first_uninformative;
      const bool j_uninf = j >= first_uninformative;
      double pij;
      if (i_uninf && j_uninf) {
        pij = 0.5;
      } else if (j_uninf || i == 0) {
        pij = 0.5 + gap();  // informative i (or the winner) beats j
      } else {
        const double g = gap();
        pij = rng.bernoulli(0.5) ? 0.5 + g : 0.5 - g;
      }
      p(i, j) = pij;
      p(j, i) = 1.0 - pij;
    }
  }
  return validate_matrix(std::move(p));
}

/// One Bernoulli duel: returns i with probability p(i, j), else j.
/// A self duel is deterministic and consumes no randomness.
inline ArmId sample_duel(const PreferenceMatrix& m, ArmId i, ArmId j, Rng& rng) {
  require(i >= 0 && i < m.k() && j >= 0 && j < m.k(), ErrorCode::OutOfRange,
          "arm index out of range");
  if (i == j) return i;
  return rng.bernoulli(m(i, j)) ? i : j;
}

/// Distinguishability diagnostics: which pairs are tied, which arms look
/// uninformative (beat nobody), whether ties occur only among those, and
/// whether the uninformative arms stay within a third of the total.
struct AssumptionReport {
  std::vector<std::pair<int, int>> indistinguishable_pairs;
  std::vector<int> uninformative_arms;
  bool ties_only_among_uninformative = true;
  bool one_third_cap_ok = true;
};

inline AssumptionReport check_assumptions(const PreferenceMatrix& m) {
  AssumptionReport report;
  std::vector<bool> uninformative(static_cast<std::size_t>(m.k()), false);
  for (int i = 0; i < m.k(); ++i) {
    bool beats_none = true;
    for (int j = 0; j < m.k() && beats_none; ++j) {
      if (j != i && m(i, j) > 0.5) beats_none = false;
    }
    uninformative[static_cast<std::size_t>(i)] = beats_none;
    if (beats_none) report.uninformative_arms.push_back(i);
  }
  for (int i = 0; i < m.k(); ++i) {
    for (int j = i + 1; j < m.k(); ++j) {
      if (m(i, j) == 0.5) {
        report.indistinguishable_pairs.emplace_back(i, j);
        if (!uninformative[static_cast<std::size_t>(i)] ||
            !uninformative[static_cast<std::size_t>(j)]) {
          report.ties_only_among_uninformative = false;
        }
      }
    }
  }
  report.one_third_cap_ok =
      3 * static_cast<int>(report.uninformative_arms.size()) <= m.k();
  return report;
}

// ---- Environment wiring -----------------------------------------------

enum class RegretMode { Condorcet, Copeland };

struct EnvironmentSpec {
  enum class Source { File, Cycle, Cycle2, RandomCondorcet };

  Source source = Source::Cycle;
  std::string path;  // Source::File
  int k = 0;         // Source::RandomCondorcet
  double delta_min = 0.1;
  double uninformative_fraction = 0.0;
  std::uint64_t gen_seed = 0;
  RegretMode regret_mode = RegretMode::Condorcet;
};

/// A realized environment: the matrix plus everything the regret accounting
/// needs. Condorcet mode requires a Condorcet winner at construction.
class Environment {
 public:
  static Environment create(const PreferenceMatrix& matrix, RegretMode mode) {
    Environment env(matrix, mode);
    if (mode == RegretMode::Condorcet) {
      require(env.condorcet_.has_value(), ErrorCode::IncompatibleRegretMode,
              "condorcet regret mode needs a Condorcet winner");
    }
    return env;
  }

  const PreferenceMatrix& matrix() const noexcept { return matrix_; }
  RegretMode mode() const noexcept { return mode_; }
  int k() const noexcept { return matrix_.k(); }
  std::optional<ArmId> condorcet() const noexcept { return condorcet_; }

  /// Regret of comparing the chosen pair, in the environment's mode.
  double pair_regret(ArmId i, ArmId j) const {
    if (mode_ == RegretMode::Condorcet) {
      return (matrix_(*condorcet_, i) - 0.5 + matrix_(*condorcet_, j) - 0.5) / 2.0;
    }
    return zeta_best_ - 0.5 * (zeta_[static_cast<std::size_t>(i)] +
                               zeta_[static_cast<std::size_t>(j)]);
  }

 private:
  Environment(const PreferenceMatrix& matrix, RegretMode mode)
      : matrix_(matrix), mode_(mode), condorcet_(condorcet_winner(matrix)) {
    if (mode_ == RegretMode::Copeland) {
      zeta_ = copeland_scores(matrix_);
      zeta_best_ = *std::max_element(zeta_.begin(), zeta_.end());
    }
  }

  PreferenceMatrix matrix_;
  RegretMode mode_;
  std::optional<ArmId> condorcet_;
  std::vector<double> zeta_;
  double zeta_best_ = 0.0;
};

}  // namespace duelbench
