#pragma once

// Seeded discrete-event simulation of a single-server FIFO queue with Poisson
// arrivals and exponential service.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "pcstore/queueing_model.hpp"

namespace pcstore {

/// Stream indices handed to VariateStream. Arrivals and services draw from
/// separate streams so equal seeds give equal service demands across loads.
enum class Substream : std::uint32_t { Arrivals = 0, Services = 1 };

/// Exponential variates by inverse transform over a 64-bit Mersenne Twister.
/// The uniform is built from the top 53 bits of each draw, so the sequence is
/// fully determined by (seed, substream) on every conforming platform.
class VariateStream {
public:
    VariateStream(std::uint64_t seed, Substream stream);

    /// Uniform on [0, 1) with 2^-53 resolution.
    double next_uniform();

    /// -ln(u) / rate, with u == 0 remapped to the smallest positive double.
    double next_exponential(double rate);

private:
    std::mt19937_64 engine_;
};

struct SimulationConfig {
    QueueParameters params;
    std::uint64_t seed = 1;
    std::uint64_t total_jobs = 1'000'000;
    std::uint64_t warmup_jobs = 100'000;
};

enum class EventKind : std::uint8_t { Departure = 0, Arrival = 1 };

struct Event {
    double time = 0.0;
    EventKind kind = EventKind::Arrival;
    std::uint64_t job_id = 0;
};

/// Calendar order: earliest time first, then departures before arrivals, then job id.
[[nodiscard]] bool fires_before(const Event& a, const Event& b);

struct SimulationReport {
    double observed_response_time = 0.0;   ///< mean over post-warmup completions
    double observed_wait = 0.0;            ///< mean queueing delay, same jobs
    double observed_utilization = 0.0;     ///< busy time / window length
    double observed_mean_in_system = 0.0;  ///< time average of the number in system
    std::uint64_t jobs_completed = 0;      ///< post-warmup completions
    double elapsed_sim_time = 0.0;         ///< post-warmup window length
    double total_sim_time = 0.0;           ///< clock at the final departure
    /// departure_state_counts[i]: post-warmup departures that left i files behind.
    std::vector<std::uint64_t> departure_state_counts;
    bool saturated = false;  ///< arrival_rate >= service_rate

    friend bool operator==(const SimulationReport&, const SimulationReport&) = default;
};

/// Called after each event is applied, with the number in system afterwards.
using EventObserver = std::function<void(const Event&, std::uint64_t in_system)>;

/// Throws InvalidArgument for a zero arrival rate, total_jobs == 0 or
/// warmup_jobs >= total_jobs. Identical configs give identical reports.
///
/// The statistics window opens at the warmup_jobs-th departure (time 0 when
/// warmup_jobs == 0) and closes at the final departure. Exactly total_jobs
/// arrivals are generated.
[[nodiscard]] SimulationReport run_simulation(const SimulationConfig& config,
                                              const EventObserver& observer = {});

/// |N - X*T| / N with X = jobs_completed / elapsed_sim_time. Zero when the
/// observed mean in system is zero.
[[nodiscard]] double little_law_residual(const SimulationReport& report,
                                         const QueueParameters& params);

}  // namespace pcstore
