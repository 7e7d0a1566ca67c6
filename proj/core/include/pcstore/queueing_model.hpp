#pragma once

// Closed-form steady-state analytics for a single M/M/1 station: Poisson
// arrivals at rate lambda, exponential service at rate mu, one server, FIFO,
// unbounded buffer.

#include <cstddef>
#include <vector>

namespace pcstore {

/// One M/M/1 station. Rates are in files per unit time.
struct QueueParameters {
    double arrival_rate = 0.0;  ///< lambda, >= 0
    double service_rate = 1.0;  ///< mu, > 0

    friend bool operator==(const QueueParameters&, const QueueParameters&) = default;
};

/// Steady-state quantities of a stable M/M/1 queue.
struct SteadyStateMetrics {
    double utilization = 0.0;         ///< rho = lambda / mu
    double mean_in_system = 0.0;      ///< N, files in queue plus in service
    double mean_response_time = 0.0;  ///< T, queueing delay plus service
    double mean_wait = 0.0;           ///< W, time in queue only
    double mean_queue_length = 0.0;   ///< N_Q
    double prob_empty = 1.0;          ///< P0 = 1 - rho

    friend bool operator==(const SteadyStateMetrics&, const SteadyStateMetrics&) = default;
};

/// P_i for i = 0..size()-1.
struct StateDistribution {
    std::vector<double> state_probabilities;
};

/// Throws InvalidArgument unless arrival_rate >= 0 and service_rate > 0 (both finite).
void validate(const QueueParameters& params);

/// True iff arrival_rate < service_rate.
[[nodiscard]] bool check_stability(const QueueParameters& params);

/// rho = lambda / mu. Defined for unstable parameters too.
[[nodiscard]] double utilization(const QueueParameters& params);

/// (1 - rho) * rho^i. Throws SaturatedQueue when unstable.
[[nodiscard]] double state_probability(const QueueParameters& params, std::size_t i);

/// P_0 .. P_max_state.
[[nodiscard]] StateDistribution state_distribution(const QueueParameters& params,
                                                   std::size_t max_state);

[[nodiscard]] double mean_in_system(const QueueParameters& params);
[[nodiscard]] double mean_response_time(const QueueParameters& params);
[[nodiscard]] double mean_wait(const QueueParameters& params);
[[nodiscard]] double mean_queue_length(const QueueParameters& params);

/// All of the above in one bundle. Throws SaturatedQueue when lambda >= mu.
[[nodiscard]] SteadyStateMetrics metrics(const QueueParameters& params);

}  // namespace pcstore
