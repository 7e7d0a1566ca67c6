#include "pcstore/markov_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pcstore/errors.hpp"

namespace pcstore {

std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0 || lower.size() != n || upper.size() != n || rhs.size() != n) {
        throw InvalidArgument("solve_tridiagonal: all bands must have the same nonzero length");
    }

    std::vector<double> c_star(n, 0.0);
    std::vector<double> d_star(n, 0.0);
    if (diag[0] == 0.0) {
        throw InvalidArgument("solve_tridiagonal: zero pivot in row 0");
    }
    c_star[0] = upper[0] / diag[0];
    d_star[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = diag[i] - lower[i] * c_star[i - 1];
        if (m == 0.0) {
            throw InvalidArgument("solve_tridiagonal: zero pivot in row " + std::to_string(i));
        }
        c_star[i] = (i + 1 < n) ? upper[i] / m : 0.0;
        d_star[i] = (rhs[i] - lower[i] * d_star[i - 1]) / m;
    }

    std::vector<double> x(n, 0.0);
    x[n - 1] = d_star[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = d_star[i] - c_star[i] * x[i + 1];
    }
    return x;
}

namespace {

// Unnormalized stationary vector with pi_0 pinned to 1. Pinning state 0 and
// dropping its balance equation leaves the K x K system for states 1..K:
//
//   state i < K:  birth*pi_{i-1} - (birth+death)*pi_i + death*pi_{i+1} = 0
//   state K:      birth*pi_{K-1} - death*pi_K                          = 0
//
// which is tridiagonal and, for birth <= death, weakly diagonally dominant
// with a strict first row.
std::vector<double> pinned_balance_solution(std::size_t k, double birth, double death) {
    std::vector<double> lower(k, birth);
    std::vector<double> diag(k, -(birth + death));
    std::vector<double> upper(k, death);
    std::vector<double> rhs(k, 0.0);
    lower[0] = 0.0;
    upper[k - 1] = 0.0;
    diag[k - 1] = -death;
    rhs[0] = -birth;

    const std::vector<double> tail = solve_tridiagonal(lower, diag, upper, rhs);
    std::vector<double> pi;
    pi.reserve(k + 1);
    pi.push_back(1.0);
    pi.insert(pi.end(), tail.begin(), tail.end());
    return pi;
}

}  // namespace

SteadyStateVector solve_steady_state(const TruncatedChain& chain) {
    if (chain.truncation_level < 1) {
        throw InvalidArgument("truncation_level must be >= 1");
    }
    validate(QueueParameters{chain.arrival_rate, chain.service_rate});

    const std::size_t k = chain.truncation_level;
    SteadyStateVector out;
    out.saturated = chain.arrival_rate >= chain.service_rate;

    if (chain.arrival_rate <= chain.service_rate) {
        out.probabilities = pinned_balance_solution(k, chain.arrival_rate, chain.service_rate);
    } else {
        // Overloaded chains put their mass near K. Solving the mirrored chain
        // (states relabelled K - i, rates swapped) pins the large end instead
        // and keeps every entry in [0, 1].
        out.probabilities = pinned_balance_solution(k, chain.service_rate, chain.arrival_rate);
        std::reverse(out.probabilities.begin(), out.probabilities.end());
    }

    // Smallest terms first.
    double total = 0.0;
    if (chain.arrival_rate <= chain.service_rate) {
        for (auto it = out.probabilities.rbegin(); it != out.probabilities.rend(); ++it) {
            total += *it;
        }
    } else {
        total = std::accumulate(out.probabilities.begin(), out.probabilities.end(), 0.0);
    }
    for (double& p : out.probabilities) {
        p /= total;
    }
    return out;
}

OracleMetrics metrics_from_distribution(const SteadyStateVector& vector,
                                        const QueueParameters& params) {
    validate(params);
    if (vector.probabilities.empty()) {
        throw InvalidArgument("metrics_from_distribution: empty probability vector");
    }

    double n = 0.0;
    for (std::size_t i = vector.probabilities.size(); i-- > 1;) {
        n += static_cast<double>(i) * vector.probabilities[i];
    }
    const double p0 = vector.probabilities.front();

    OracleMetrics out;
    out.metrics.prob_empty = p0;
    out.metrics.utilization = 1.0 - p0;
    out.metrics.mean_in_system = n;
    out.metrics.mean_queue_length = n - (1.0 - p0);
    if (params.arrival_rate > 0.0) {
        out.metrics.mean_response_time = n / params.arrival_rate;
        out.metrics.mean_wait = out.metrics.mean_response_time - 1.0 / params.service_rate;
    } else {
        out.response_time_defined = false;
        out.metrics.mean_response_time = std::numeric_limits<double>::quiet_NaN();
        out.metrics.mean_wait = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

double detailed_balance_residual(const SteadyStateVector& vector, const QueueParameters& params) {
    double worst = 0.0;
    const auto& pi = vector.probabilities;
    for (std::size_t i = 0; i + 1 < pi.size(); ++i) {
        worst = std::max(worst,
                         std::abs(params.arrival_rate * pi[i] - params.service_rate * pi[i + 1]));
    }
    return worst;
}

}  // namespace pcstore
