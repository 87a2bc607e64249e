#pragma once

#include <cmath>
#include <cstdint>

#include "duelbench/error.hpp"

namespace duelbench {

/// Exploration constant C(epsilon) = ((4a-1)K^2 / ((2a-1)eps))^(1/(2a-1)).
/// Requires alpha > 0.5; below that the exponent leaves the theory's regime.
inline double exploration_constant(double alpha, int k, double epsilon) {
  require(alpha > 0.5, ErrorCode::AlphaOutOfTheory,
          "exploration constant needs alpha > 0.5");
  require(k >= 1, ErrorCode::BadParams, "k must be >= 1");
  require(epsilon > 0.0 && epsilon < 1.0, ErrorCode::BadParams,
          "epsilon must lie in (0,1)");
  const double kk = static_cast<double>(k);
  const double base = (4.0 * alpha - 1.0) * kk * kk / ((2.0 * alpha - 1.0) * epsilon);
  return std::pow(base, 1.0 / (2.0 * alpha - 1.0));
}

/// Inverse of exploration_constant in epsilon, for cross-checking tuned C values.
inline double implied_epsilon(double alpha, int k, double c) {
  require(alpha > 0.5, ErrorCode::AlphaOutOfTheory, "needs alpha > 0.5");
  require(k >= 1 && c > 0.0, ErrorCode::BadParams, "k >= 1 and c > 0 required");
  const double kk = static_cast<double>(k);
  return (4.0 * alpha - 1.0) * kk * kk /
         ((2.0 * alpha - 1.0) * std::pow(c, 2.0 * alpha - 1.0));
}

/// High-probability cumulative-regret bound: 8 a M K ln(T + C(eps)) / dmin^2.
/// Diagnostic only; nothing in the policies branches on it.
inline double theoretical_bound(double alpha, int m_batch, int k,
                                std::int64_t t_horizon, double epsilon,
                                double delta_min) {
  require(m_batch >= 4, ErrorCode::BadParams, "bound assumes batch size >= 4");
  require(t_horizon >= 1, ErrorCode::BadParams, "horizon must be >= 1");
  require(delta_min > 0.0, ErrorCode::ZeroGap, "bound undefined for delta_min <= 0");
  const double c = exploration_constant(alpha, k, epsilon);
  return 8.0 * alpha * static_cast<double>(m_batch) * static_cast<double>(k) *
         std::log(static_cast<double>(t_horizon) + c) / (delta_min * delta_min);
}

/// Cap on duels between a distinguishable pair before its batch merges:
/// 4 a ln(T + C) / delta^2.
inline double pair_comparison_bound(double alpha, std::int64_t t_horizon,
                                    double c_const, double delta_batch_min) {
  require(t_horizon >= 1 && c_const > 0.0, ErrorCode::BadParams,
          "horizon >= 1 and C > 0 required");
  require(delta_batch_min > 0.0, ErrorCode::ZeroGap,
          "bound undefined for delta <= 0");
  return 4.0 * alpha * std::log(static_cast<double>(t_horizon) + c_const) /
         (delta_batch_min * delta_batch_min);
}

}  // namespace duelbench
