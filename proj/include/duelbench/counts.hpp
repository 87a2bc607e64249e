#pragma once

#include <cstdint>

#include "duelbench/error.hpp"
#include "duelbench/square_array.hpp"

namespace duelbench {

/// Win-count matrix: entry (i, j) is the number of times arm i beat arm j.
/// Self duels are never recorded, so the diagonal stays zero.
class ComparisonCounts {
 public:
  explicit ComparisonCounts(int k) : w_(k, 0) {}

  int k() const noexcept { return w_.k(); }

  std::int64_t wins(int i, int j) const { return w_(i, j); }
  std::int64_t pair_total(int i, int j) const { return w_(i, j) + w_(j, i); }
  std::int64_t total() const noexcept { return total_; }

  void record_win(int winner, int loser) {
    require(winner >= 0 && winner < k() && loser >= 0 && loser < k(),
            ErrorCode::OutOfRange, "arm index out of range");
    if (winner == loser) return;
    ++w_(winner, loser);
    ++total_;
  }

  const SquareArray<std::int64_t>& raw() const noexcept { return w_; }

  static ComparisonCounts from_raw(SquareArray<std::int64_t> w) {
    ComparisonCounts out(w.k());
    std::int64_t total = 0;
    for (int i = 0; i < w.k(); ++i) {
      for (int j = 0; j < w.k(); ++j) {
        require(w(i, j) >= 0, ErrorCode::BadParams, "negative win count");
        if (i == j) {
          require(w(i, j) == 0, ErrorCode::BadParams, "diagonal win count must be 0");
        }
        total += w(i, j);
      }
    }
    out.w_ = std::move(w);
    out.total_ = total;
    return out;
  }

 private:
  SquareArray<std::int64_t> w_;
  std::int64_t total_ = 0;
};

}  // namespace duelbench
