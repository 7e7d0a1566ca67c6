#include "pcstore/queueing_model.hpp"

#include <cmath>
#include <string>

#include "pcstore/errors.hpp"

namespace pcstore {

namespace {

void require_stable(const QueueParameters& params) {
    validate(params);
    if (!check_stability(params)) {
        throw SaturatedQueue("saturated queue: arrival_rate " + std::to_string(params.arrival_rate) +
                             " >= service_rate " + std::to_string(params.service_rate));
    }
}

}  // namespace

void validate(const QueueParameters& params) {
    if (!std::isfinite(params.arrival_rate) || params.arrival_rate < 0.0) {
        throw InvalidArgument("arrival_rate must be finite and >= 0, got " +
                              std::to_string(params.arrival_rate));
    }
    if (!std::isfinite(params.service_rate) || params.service_rate <= 0.0) {
        throw InvalidArgument("service_rate must be finite and > 0, got " +
                              std::to_string(params.service_rate));
    }
}

bool check_stability(const QueueParameters& params) {
    return params.arrival_rate < params.service_rate;
}

double utilization(const QueueParameters& params) {
    validate(params);
    return params.arrival_rate / params.service_rate;
}

double state_probability(const QueueParameters& params, std::size_t i) {
    require_stable(params);
    const double rho = utilization(params);
    return (1.0 - rho) * std::pow(rho, static_cast<double>(i));
}

StateDistribution state_distribution(const QueueParameters& params, std::size_t max_state) {
    require_stable(params);
    const double rho = utilization(params);
    StateDistribution dist;
    dist.state_probabilities.reserve(max_state + 1);
    for (std::size_t i = 0; i <= max_state; ++i) {
        dist.state_probabilities.push_back((1.0 - rho) * std::pow(rho, static_cast<double>(i)));
    }
    return dist;
}

double mean_in_system(const QueueParameters& params) {
    require_stable(params);
    // Closed form of (1 - rho) * sum_i i rho^i.
    const double rho = utilization(params);
    return rho / (1.0 - rho);
}

double mean_response_time(const QueueParameters& params) {
    require_stable(params);
    return 1.0 / (params.service_rate - params.arrival_rate);
}

double mean_wait(const QueueParameters& params) {
    require_stable(params);
    return utilization(params) / (params.service_rate - params.arrival_rate);
}

double mean_queue_length(const QueueParameters& params) {
    require_stable(params);
    const double rho = utilization(params);
    return rho * rho / (1.0 - rho);
}

SteadyStateMetrics metrics(const QueueParameters& params) {
    require_stable(params);
    SteadyStateMetrics m;
    m.utilization = utilization(params);
    m.mean_in_system = mean_in_system(params);
    m.mean_response_time = mean_response_time(params);
    m.mean_wait = mean_wait(params);
    m.mean_queue_length = mean_queue_length(params);
    m.prob_empty = 1.0 - m.utilization;
    return m;
}

}  // namespace pcstore
