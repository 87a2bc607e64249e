#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "duelbench/error.hpp"

namespace duelbench {

// Fixed sub-stream labels. A run owns one seed; each consumer derives its own
// generator from (seed, label) so streams never interleave.
inline constexpr std::uint64_t kPolicyStream = 0x706f6c69;  // "poli"
inline constexpr std::uint64_t kEnvStream = 0x656e7669;     // "envi"

/// Seeded generator with the draw primitives used across the library.
/// Beta sampling uses the gamma-ratio construction.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  std::mt19937_64& engine() noexcept { return engine_; }

  double uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) {
    require(n > 0, ErrorCode::BadParams, "index() needs n > 0");
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  bool bernoulli(double p) { return std::bernoulli_distribution(p)(engine_); }

  double beta(double a, double b) {
    double x = std::gamma_distribution<double>(a, 1.0)(engine_);
    double y = std::gamma_distribution<double>(b, 1.0)(engine_);
    const double s = x + y;
    return s > 0.0 ? x / s : 0.5;
  }

  /// Uniform pick among candidates; single candidate consumes no draw.
  template <typename T>
  T pick(const std::vector<T>& candidates) {
    require(!candidates.empty(), ErrorCode::BadParams, "pick() needs candidates");
    if (candidates.size() == 1) return candidates.front();
    return candidates[index(candidates.size())];
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace duelbench
