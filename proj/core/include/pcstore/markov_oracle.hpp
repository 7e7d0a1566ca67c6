#pragma once

// Numerical oracle for the M/M/1 closed forms. The birth-death chain is
// truncated at state K and its global balance equations are solved as a
// tridiagonal linear system; nothing here uses the geometric closed form.

#include <cstddef>
#include <span>
#include <vector>

#include "pcstore/queueing_model.hpp"

namespace pcstore {

inline constexpr std::size_t kDefaultTruncationLevel = 400;

/// Birth-death chain on states 0..truncation_level: i -> i+1 at arrival_rate,
/// i -> i-1 at service_rate.
struct TruncatedChain {
    std::size_t truncation_level = kDefaultTruncationLevel;
    double arrival_rate = 0.0;
    double service_rate = 1.0;
};

struct SteadyStateVector {
    std::vector<double> probabilities;  ///< K+1 entries, sums to 1
    /// arrival_rate >= service_rate: the truncated chain is solvable but the
    /// infinite chain it approximates has no steady state.
    bool saturated = false;
};

/// Metrics recovered from a steady-state vector. For arrival_rate == 0 the
/// response time and wait are undefined (NaN) and response_time_defined is false.
struct OracleMetrics {
    SteadyStateMetrics metrics;
    bool response_time_defined = true;
};

/// Thomas algorithm for a tridiagonal system. lower[0] and upper[n-1] are
/// ignored. No pivoting: the matrix must admit an LU factorization without
/// row exchanges (diagonally dominant or an M-matrix).
[[nodiscard]] std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                                    std::span<const double> diag,
                                                    std::span<const double> upper,
                                                    std::span<const double> rhs);

/// Stationary distribution of the truncated chain.
/// Throws InvalidArgument for truncation_level < 1, service_rate <= 0 or a
/// negative arrival_rate.
[[nodiscard]] SteadyStateVector solve_steady_state(const TruncatedChain& chain);

/// N = sum i*pi_i, rho = 1 - pi_0, T = N / lambda, W = T - 1/mu, N_Q = N - rho.
[[nodiscard]] OracleMetrics metrics_from_distribution(const SteadyStateVector& vector,
                                                      const QueueParameters& params);

/// max_i |lambda*pi_i - mu*pi_{i+1}|.
[[nodiscard]] double detailed_balance_residual(const SteadyStateVector& vector,
                                               const QueueParameters& params);

}  // namespace pcstore
