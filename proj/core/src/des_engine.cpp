#include "pcstore/des_engine.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <queue>

#include "pcstore/errors.hpp"

namespace pcstore {

VariateStream::VariateStream(std::uint64_t seed, Substream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    engine_.seed(seq);
}

double VariateStream::next_uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double VariateStream::next_exponential(double rate) {
    double u = next_uniform();
    if (u == 0.0) {
        u = std::numeric_limits<double>::denorm_min();
    }
    return -std::log(u) / rate;
}

bool fires_before(const Event& a, const Event& b) {
    if (a.time != b.time) return a.time < b.time;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.job_id < b.job_id;
}

namespace {

struct FiresLater {
    bool operator()(const Event& a, const Event& b) const { return fires_before(b, a); }
};

struct Waiting {
    std::uint64_t job_id;
    double arrival_time;
};

}  // namespace

SimulationReport run_simulation(const SimulationConfig& config, const EventObserver& observer) {
    validate(config.params);
    if (config.params.arrival_rate <= 0.0) {
        throw InvalidArgument("simulation requires arrival_rate > 0");
    }
    if (config.total_jobs == 0) {
        throw InvalidArgument("total_jobs must be >= 1");
    }
    if (config.warmup_jobs >= config.total_jobs) {
        throw InvalidArgument("warmup_jobs must be < total_jobs");
    }

    const double lambda = config.params.arrival_rate;
    const double mu = config.params.service_rate;
    VariateStream arrivals(config.seed, Substream::Arrivals);
    VariateStream services(config.seed, Substream::Services);

    std::priority_queue<Event, std::vector<Event>, FiresLater> calendar;
    std::deque<Waiting> line;  // front is in service while busy
    std::uint64_t in_system = 0;
    std::uint64_t arrivals_generated = 1;
    std::uint64_t completions = 0;
    double in_service_arrival = 0.0;
    double in_service_start = 0.0;

    bool window_open = config.warmup_jobs == 0;
    double window_start = 0.0;
    double last_time = 0.0;
    double area_in_system = 0.0;
    double busy_time = 0.0;
    double sum_response = 0.0;
    double sum_wait = 0.0;

    SimulationReport report;
    report.saturated = !check_stability(config.params);

    auto start_service = [&](double now) {
        const Waiting& next = line.front();
        in_service_arrival = next.arrival_time;
        in_service_start = now;
        calendar.push(Event{now + services.next_exponential(mu), EventKind::Departure, next.job_id});
    };

    calendar.push(Event{arrivals.next_exponential(lambda), EventKind::Arrival, 0});

    while (!calendar.empty()) {
        const Event ev = calendar.top();
        calendar.pop();

        if (window_open) {
            const double dt = ev.time - last_time;
            area_in_system += static_cast<double>(in_system) * dt;
            if (in_system > 0) busy_time += dt;
        }
        last_time = ev.time;

        if (ev.kind == EventKind::Arrival) {
            line.push_back(Waiting{ev.job_id, ev.time});
            ++in_system;
            if (arrivals_generated < config.total_jobs) {
                calendar.push(Event{ev.time + arrivals.next_exponential(lambda), EventKind::Arrival,
                                    arrivals_generated});
                ++arrivals_generated;
            }
            if (in_system == 1) start_service(ev.time);
        } else {
            line.pop_front();
            --in_system;
            ++completions;
            if (window_open) {
                sum_response += ev.time - in_service_arrival;
                sum_wait += in_service_start - in_service_arrival;
                if (report.departure_state_counts.size() <= in_system) {
                    report.departure_state_counts.resize(in_system + 1, 0);
                }
                ++report.departure_state_counts[in_system];
            } else if (completions == config.warmup_jobs) {
                window_open = true;
                window_start = ev.time;
            }
            if (in_system > 0) start_service(ev.time);
        }

        if (observer) observer(ev, in_system);
    }

    const double window = last_time - window_start;
    report.jobs_completed = config.total_jobs - config.warmup_jobs;
    report.elapsed_sim_time = window;
    report.total_sim_time = last_time;
    const auto jobs = static_cast<double>(report.jobs_completed);
    report.observed_response_time = sum_response / jobs;
    report.observed_wait = sum_wait / jobs;
    report.observed_utilization = window > 0.0 ? busy_time / window : 0.0;
    report.observed_mean_in_system = window > 0.0 ? area_in_system / window : 0.0;
    return report;
}

double little_law_residual(const SimulationReport& report, const QueueParameters& /*params*/) {
    if (report.observed_mean_in_system == 0.0 || report.elapsed_sim_time <= 0.0) {
        return 0.0;
    }
    const double throughput =
        static_cast<double>(report.jobs_completed) / report.elapsed_sim_time;
    return std::abs(report.observed_mean_in_system -
                    throughput * report.observed_response_time) /
           report.observed_mean_in_system;
}

}  // namespace pcstore
