#include "pcstore/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>

#include "pcstore/errors.hpp"

namespace pcstore {

double relative_deviation(double x, double reference) {
    const double diff = std::abs(x - reference);
    return reference == 0.0 ? diff : diff / std::abs(reference);
}

std::optional<double> SweepRow::oracle_deviation() const {
    if (!closed_form || !oracle) return std::nullopt;
    const auto& cf = *closed_form;
    const auto& om = oracle->metrics;
    double worst = std::max({relative_deviation(om.utilization, cf.utilization),
                             relative_deviation(om.mean_in_system, cf.mean_in_system),
                             relative_deviation(om.mean_queue_length, cf.mean_queue_length),
                             relative_deviation(om.prob_empty, cf.prob_empty)});
    if (oracle->response_time_defined) {
        worst = std::max({worst, relative_deviation(om.mean_response_time, cf.mean_response_time),
                          relative_deviation(om.mean_wait, cf.mean_wait)});
    }
    return worst;
}

std::optional<double> SweepRow::simulation_deviation() const {
    if (!closed_form || !simulation) return std::nullopt;
    const auto& cf = *closed_form;
    const auto& s = *simulation;
    return std::max({relative_deviation(s.utilization, cf.utilization),
                     relative_deviation(s.mean_response_time, cf.mean_response_time),
                     relative_deviation(s.mean_wait, cf.mean_wait),
                     relative_deviation(s.mean_in_system, cf.mean_in_system)});
}

std::vector<SweepRow> evaluate_sweep(const SweepScenario& scenario) {
    validate(scenario);
    const bool with_oracle = scenario.uses(Engine::Oracle);
    const bool with_sim = scenario.uses(Engine::Simulation);

    std::vector<SweepRow> rows(scenario.arrival_rates.size());
    std::vector<std::vector<std::future<SimulationReport>>> pending(rows.size());

    for (std::size_t i = 0; i < rows.size(); ++i) {
        SweepRow& row = rows[i];
        row.arrival_rate = scenario.arrival_rates[i];
        row.service_rate = scenario.service_rate;
        const QueueParameters params{row.arrival_rate, row.service_rate};
        row.saturated = !check_stability(params);
        if (row.saturated) continue;

        row.closed_form = metrics(params);
        if (with_oracle) {
            const auto vec = solve_steady_state(
                TruncatedChain{scenario.truncation_level, params.arrival_rate, params.service_rate});
            row.oracle = metrics_from_distribution(vec, params);
        }
        if (with_sim && params.arrival_rate > 0.0) {
            for (std::uint32_t r = 0; r < scenario.simulation.replications; ++r) {
                const SimulationConfig cfg{params, scenario.simulation.seed + r,
                                           scenario.simulation.total_jobs,
                                           scenario.simulation.warmup_jobs};
                pending[i].push_back(
                    std::async(std::launch::async, [cfg] { return run_simulation(cfg); }));
            }
        }
    }

    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (pending[i].empty()) continue;
        SimulationSummary summary;
        const QueueParameters params{rows[i].arrival_rate, rows[i].service_rate};
        for (auto& f : pending[i]) {
            summary.runs.push_back(f.get());
            const auto& rep = summary.runs.back();
            summary.utilization += rep.observed_utilization;
            summary.mean_response_time += rep.observed_response_time;
            summary.mean_wait += rep.observed_wait;
            summary.mean_in_system += rep.observed_mean_in_system;
            summary.max_little_residual =
                std::max(summary.max_little_residual, little_law_residual(rep, params));
        }
        const auto n = static_cast<double>(summary.runs.size());
        summary.utilization /= n;
        summary.mean_response_time /= n;
        summary.mean_wait /= n;
        summary.mean_in_system /= n;
        rows[i].simulation = std::move(summary);
    }
    return rows;
}

CsvTable sweep_table(const SweepScenario& scenario, const std::vector<SweepRow>& rows) {
    const bool with_oracle = scenario.uses(Engine::Oracle);
    const bool with_sim = scenario.uses(Engine::Simulation);

    CsvTable table;
    table.header = {"lambda", "mu", "rho", "T", "W", "N", "N_Q", "P0"};
    if (with_oracle) {
        for (const char* c : {"oracle_rho", "oracle_T", "oracle_W", "oracle_N", "oracle_N_Q",
                              "oracle_P0", "oracle_max_rel_dev"}) {
            table.header.emplace_back(c);
        }
    }
    if (with_sim) {
        for (const char* c : {"sim_rho", "sim_T", "sim_W", "sim_N", "sim_little_residual",
                              "sim_max_rel_dev"}) {
            table.header.emplace_back(c);
        }
    }
    table.header.emplace_back("status");

    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };

    for (const auto& row : rows) {
        std::vector<std::string> out;
        out.push_back(format_number(row.arrival_rate));
        out.push_back(format_number(row.service_rate));
        out.push_back(format_number(row.arrival_rate / row.service_rate));
        if (row.closed_form) {
            const auto& m = *row.closed_form;
            for (double v : {m.mean_response_time, m.mean_wait, m.mean_in_system, m.mean_queue_length,
                             m.prob_empty}) {
                out.push_back(format_number(v));
            }
        } else {
            out.insert(out.end(), 5, std::string());
        }
        if (with_oracle) {
            if (row.oracle) {
                const auto& m = row.oracle->metrics;
                for (double v : {m.utilization, m.mean_response_time, m.mean_wait, m.mean_in_system,
                                 m.mean_queue_length, m.prob_empty}) {
                    out.push_back(format_number(v));
                }
                out.push_back(opt(row.oracle_deviation()));
            } else {
                out.insert(out.end(), 7, std::string());
            }
        }
        if (with_sim) {
            if (row.simulation) {
                const auto& s = *row.simulation;
                for (double v : {s.utilization, s.mean_response_time, s.mean_wait, s.mean_in_system,
                                 s.max_little_residual}) {
                    out.push_back(format_number(v));
                }
                out.push_back(opt(row.simulation_deviation()));
            } else {
                out.insert(out.end(), 6, std::string());
            }
        }
        out.emplace_back(row.saturated ? "saturated" : "ok");
        table.rows.push_back(std::move(out));
    }
    return table;
}

CsvTable run_sweep(const SweepScenario& scenario) {
    return sweep_table(scenario, evaluate_sweep(scenario));
}

NodeId data_node_name(std::uint64_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "D%03llu", static_cast<unsigned long long>(index));
    return buf;
}

FileId workload_file_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "file%02zu", index);
    return buf;
}

Cluster build_cluster(const CapacityScenario& scenario, std::uint64_t nodes) {
    Cluster cluster(ClusterConfig{scenario.block_size, scenario.replication_factor,
                                  scenario.os_overhead});
    for (std::uint64_t i = 1; i <= nodes; ++i) {
        cluster.register_node(data_node_name(i), scenario.per_node_raw);
    }
    return cluster;
}

std::vector<CapacityRow> evaluate_capacity(const CapacityScenario& scenario) {
    validate(scenario);
    std::vector<CapacityRow> rows;
    for (const std::uint64_t n : scenario.node_counts) {
        Cluster cluster = build_cluster(scenario, n);
        CapacityRow row;
        row.nodes = n;
        for (std::size_t f = 0; f < scenario.workload.size(); ++f) {
            try {
                (void)cluster.store_file(workload_file_name(f + 1), scenario.workload[f]);
                ++row.files_stored;
            } catch (const PlacementError&) {
                row.workload_fits = false;
            }
        }
        const UsageReport usage = cluster.usage_report();
        row.raw_total = usage.total_raw;
        row.usable_total = usage.total_usable;
        row.used_after_workload = usage.total_used;
        row.avg_used_per_node = usage.average_used_per_node;
        row.usable_fraction = usage.usable_fraction;
        rows.push_back(row);
    }
    return rows;
}

CsvTable capacity_table(const std::vector<CapacityRow>& rows) {
    CsvTable table;
    table.header = {"nodes",           "raw_total",       "usable_total", "used_after_workload",
                    "avg_used_per_node", "usable_fraction", "files_stored", "status"};
    for (const auto& r : rows) {
        table.rows.push_back({format_number(r.nodes), format_number(r.raw_total),
                              format_number(r.usable_total), format_number(r.used_after_workload),
                              format_number(r.avg_used_per_node), format_number(r.usable_fraction),
                              format_number(static_cast<std::uint64_t>(r.files_stored)),
                              r.workload_fits ? "ok" : "workload_exceeds_capacity"});
    }
    return table;
}

CsvTable run_capacity(const CapacityScenario& scenario) {
    return capacity_table(evaluate_capacity(scenario));
}

std::vector<IngestStep> evaluate_ingest(const IngestScenario& scenario) {
    validate(scenario);
    std::vector<IngestStep> steps;
    for (const std::uint64_t n : scenario.node_counts) {
        Cluster cluster = build_cluster(scenario, n);
        for (std::size_t f = 0; f < scenario.workload.size(); ++f) {
            IngestStep step;
            step.nodes = n;
            step.step = f + 1;
            step.file_id = workload_file_name(f + 1);
            step.file_size = scenario.workload[f];
            try {
                const FileManifest& m = cluster.store_file(step.file_id, step.file_size);
                step.blocks = m.blocks.size();
                step.block_replicas = m.replica_count();
                step.under_replicated_blocks = static_cast<std::size_t>(
                    std::count_if(m.blocks.begin(), m.blocks.end(),
                                  [](const BlockPlacement& b) { return b.under_replicated; }));
            } catch (const PlacementError&) {
                step.stored = false;
            }
            const UsageReport usage = cluster.usage_report();
            step.cluster_used = usage.total_used;
            step.avg_used_per_node = usage.average_used_per_node;
            step.usable_total = usage.total_usable;
            steps.push_back(std::move(step));
        }
    }
    return steps;
}

CsvTable ingest_table(const std::vector<IngestStep>& steps) {
    CsvTable table;
    table.header = {"nodes",          "step",         "file_id",
                    "file_size",      "blocks",       "block_replicas",
                    "under_replicated_blocks",        "cluster_used",
                    "avg_used_per_node", "usable_total", "status"};
    for (const auto& s : steps) {
        table.rows.push_back({format_number(s.nodes),
                              format_number(static_cast<std::uint64_t>(s.step)),
                              s.file_id,
                              format_number(s.file_size),
                              format_number(static_cast<std::uint64_t>(s.blocks)),
                              format_number(static_cast<std::uint64_t>(s.block_replicas)),
                              format_number(static_cast<std::uint64_t>(s.under_replicated_blocks)),
                              format_number(s.cluster_used),
                              format_number(s.avg_used_per_node),
                              format_number(s.usable_total),
                              s.stored ? "ok" : "insufficient_space"});
    }
    return table;
}

CsvTable run_ingest(const IngestScenario& scenario) {
    return ingest_table(evaluate_ingest(scenario));
}

Cluster ingest_cluster(const CapacityScenario& scenario, std::uint64_t nodes) {
    validate(scenario);
    Cluster cluster = build_cluster(scenario, nodes);
    for (std::size_t f = 0; f < scenario.workload.size(); ++f) {
        try {
            (void)cluster.store_file(workload_file_name(f + 1), scenario.workload[f]);
        } catch (const PlacementError&) {
            // Does not fit; the ingest table reports it.
        }
    }
    return cluster;
}

}  // namespace pcstore
