#pragma once

#include <cstddef>
#include <vector>

#include "duelbench/error.hpp"

namespace duelbench {

/// Dense k-by-k array with flat storage, indexed (row, col).
template <typename T>
class SquareArray {
 public:
  SquareArray() = default;
  explicit SquareArray(int k, T fill = T{})
      : k_(k), data_(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), fill) {
    require(k >= 0, ErrorCode::BadParams, "SquareArray size must be nonnegative");
  }

  int k() const noexcept { return k_; }
  bool empty() const noexcept { return k_ == 0; }

  T& operator()(int i, int j) { return data_[idx(i, j)]; }
  const T& operator()(int i, int j) const { return data_[idx(i, j)]; }

  const std::vector<T>& flat() const noexcept { return data_; }
  std::vector<T>& flat() noexcept { return data_; }

  std::vector<std::vector<T>> rows() const {
    std::vector<std::vector<T>> out(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) {
      out[static_cast<std::size_t>(i)].assign(
          data_.begin() + static_cast<std::ptrdiff_t>(idx(i, 0)),
          data_.begin() + static_cast<std::ptrdiff_t>(idx(i, 0)) + k_);
    }
    return out;
  }

  static SquareArray from_rows(const std::vector<std::vector<T>>& rows) {
    const int k = static_cast<int>(rows.size());
    SquareArray out(k);
    for (int i = 0; i < k; ++i) {
      require(static_cast<int>(rows[static_cast<std::size_t>(i)].size()) == k,
              ErrorCode::NonSquare, "row length differs from row count");
      for (int j = 0; j < k; ++j) out(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return out;
  }

  friend bool operator==(const SquareArray& a, const SquareArray& b) {
    return a.k_ == b.k_ && a.data_ == b.data_;
  }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(j);
  }

  int k_ = 0;
  std::vector<T> data_;
};

}  // namespace duelbench
