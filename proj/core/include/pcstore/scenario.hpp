#pragma once

// Scenario files: strict-schema JSON describing a queueing sweep or a cluster
// capacity / ingest experiment. The JSON schema is described in the top-level README.

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <variant>
#include <vector>

#include "pcstore/byte_size.hpp"
#include "pcstore/cluster_model.hpp"
#include "pcstore/markov_oracle.hpp"

namespace pcstore {

enum class Engine { ClosedForm, Oracle, Simulation };

[[nodiscard]] std::string_view engine_name(Engine engine);
/// "closed_form", "oracle" or "sim". Throws InvalidArgument otherwise.
[[nodiscard]] Engine parse_engine(std::string_view name);

struct SimulationSettings {
    std::uint64_t seed = 1;
    std::uint64_t total_jobs = 1'000'000;
    std::uint64_t warmup_jobs = 100'000;
    /// Independent runs per row with seeds seed, seed+1, ...; estimates are averaged.
    std::uint32_t replications = 5;
};

struct SweepScenario {
    std::vector<double> arrival_rates;
    double service_rate = 1.0;
    /// Closed form is always evaluated; listing it is optional.
    std::vector<Engine> engines{Engine::ClosedForm};
    SimulationSettings simulation;
    std::size_t truncation_level = kDefaultTruncationLevel;
    /// Rates >= service_rate produce flagged rows instead of a validation error.
    bool allow_saturation = false;

    [[nodiscard]] bool uses(Engine engine) const;
};

struct CapacityScenario {
    std::vector<std::uint64_t> node_counts;
    Bytes per_node_raw = 80 * kGB;
    OsOverhead os_overhead = kTenGigabyteOverhead;
    Bytes block_size = 64 * kMB;
    std::uint32_t replication_factor = 3;
    std::vector<Bytes> workload;
    SizeUnits units = SizeUnits::Decimal;
};

/// Same inputs as a capacity experiment, reported file by file.
struct IngestScenario : CapacityScenario {};

using Scenario = std::variant<SweepScenario, CapacityScenario, IngestScenario>;

/// Throws ValidationError (with field path or line/column) or IoError.
[[nodiscard]] Scenario parse_scenario(const std::filesystem::path& path);
[[nodiscard]] Scenario parse_scenario_text(std::string_view text,
                                           std::string_view source_name = "scenario");

/// Re-checks a programmatically built scenario. Throws ValidationError.
void validate(const SweepScenario& scenario);
void validate(const CapacityScenario& scenario);

}  // namespace pcstore
