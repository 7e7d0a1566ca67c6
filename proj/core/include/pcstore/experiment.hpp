#pragma once

// Experiment drivers behind the CLI. Each returns structured rows (for tests)
// and a CsvTable with a fixed header (for output).

#include <cstdint>
#include <optional>
#include <vector>

#include "pcstore/cluster_model.hpp"
#include "pcstore/csv.hpp"
#include "pcstore/des_engine.hpp"
#include "pcstore/markov_oracle.hpp"
#include "pcstore/queueing_model.hpp"
#include "pcstore/scenario.hpp"

namespace pcstore {

/// Replication-averaged simulation estimates for one sweep row.
struct SimulationSummary {
    double utilization = 0.0;
    double mean_response_time = 0.0;
    double mean_wait = 0.0;
    double mean_in_system = 0.0;
    double max_little_residual = 0.0;
    std::vector<SimulationReport> runs;
};

struct SweepRow {
    double arrival_rate = 0.0;
    double service_rate = 0.0;
    bool saturated = false;
    std::optional<SteadyStateMetrics> closed_form;
    std::optional<OracleMetrics> oracle;
    std::optional<SimulationSummary> simulation;

    /// Largest relative deviation of the oracle from the closed form over
    /// rho, T, W, N, N_Q and P0 (fields the oracle leaves undefined are skipped).
    [[nodiscard]] std::optional<double> oracle_deviation() const;
    /// Largest relative deviation of the simulation over rho, T, W and N.
    [[nodiscard]] std::optional<double> simulation_deviation() const;
};

/// Relative deviation |x - reference| / |reference|; absolute when reference is 0.
[[nodiscard]] double relative_deviation(double x, double reference);

/// Rows in input order. Rows (and simulation replications) are computed
/// concurrently; results do not depend on scheduling.
[[nodiscard]] std::vector<SweepRow> evaluate_sweep(const SweepScenario& scenario);

/// Columns: lambda, mu, rho, T, W, N, N_Q, P0, then oracle_* and sim_* groups
/// when those engines are enabled, then status ("ok" or "saturated").
[[nodiscard]] CsvTable sweep_table(const SweepScenario& scenario, const std::vector<SweepRow>& rows);
[[nodiscard]] CsvTable run_sweep(const SweepScenario& scenario);

struct CapacityRow {
    std::uint64_t nodes = 0;
    Bytes raw_total = 0;
    Bytes usable_total = 0;
    Bytes used_after_workload = 0;
    double avg_used_per_node = 0.0;
    double usable_fraction = 0.0;
    std::size_t files_stored = 0;
    bool workload_fits = true;
};

/// "D001", "D002", ...
[[nodiscard]] NodeId data_node_name(std::uint64_t index);

/// A fresh cluster with `nodes` identical DataNodes.
[[nodiscard]] Cluster build_cluster(const CapacityScenario& scenario, std::uint64_t nodes);

/// One row per node count, each on a fresh cluster.
[[nodiscard]] std::vector<CapacityRow> evaluate_capacity(const CapacityScenario& scenario);
[[nodiscard]] CsvTable capacity_table(const std::vector<CapacityRow>& rows);
[[nodiscard]] CsvTable run_capacity(const CapacityScenario& scenario);

struct IngestStep {
    std::uint64_t nodes = 0;
    std::size_t step = 0;
    FileId file_id;
    Bytes file_size = 0;
    std::size_t blocks = 0;
    std::size_t block_replicas = 0;
    std::size_t under_replicated_blocks = 0;
    Bytes cluster_used = 0;
    double avg_used_per_node = 0.0;
    Bytes usable_total = 0;
    bool stored = true;
};

/// "file01", "file02", ... in workload order.
[[nodiscard]] FileId workload_file_name(std::size_t index);

/// Stores the workload file by file on a fresh cluster per node count.
[[nodiscard]] std::vector<IngestStep> evaluate_ingest(const IngestScenario& scenario);
[[nodiscard]] CsvTable ingest_table(const std::vector<IngestStep>& steps);
[[nodiscard]] CsvTable run_ingest(const IngestScenario& scenario);

/// Cluster after ingesting the workload (files that do not fit are skipped).
[[nodiscard]] Cluster ingest_cluster(const CapacityScenario& scenario, std::uint64_t nodes);

}  // namespace pcstore
