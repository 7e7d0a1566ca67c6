#include <gtest/gtest.h>

#include <string>

#include "pcstore/errors.hpp"
#include "pcstore/scenario.hpp"

namespace pcstore {
namespace {

std::string scenario_path(const char* name) {
    return std::string(PCSTORE_SCENARIO_DIR) + "/" + name;
}

std::string error_of(std::string_view text) {
    try {
        (void)parse_scenario_text(text, "test");
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

TEST(Scenario, ShippedSweep) {
    const auto s = std::get<SweepScenario>(parse_scenario(scenario_path("paper_sweep.json")));
    EXPECT_EQ(s.arrival_rates, (std::vector<double>{5, 10, 15, 20, 25, 30}));
    EXPECT_EQ(s.service_rate, 32.0);
    EXPECT_TRUE(s.uses(Engine::ClosedForm));
    EXPECT_FALSE(s.uses(Engine::Simulation));
    EXPECT_EQ(s.simulation.total_jobs, 1'000'000u);
    EXPECT_EQ(s.simulation.warmup_jobs, 100'000u);
    EXPECT_EQ(s.truncation_level, 400u);
}

TEST(Scenario, ShippedCapacityAndIngest) {
    const auto cap = std::get<CapacityScenario>(parse_scenario(scenario_path("paper_capacity.json")));
    EXPECT_EQ(cap.per_node_raw, 80 * kGB);
    EXPECT_EQ(std::get<AbsoluteOverhead>(cap.os_overhead).bytes, 10 * kGB);
    EXPECT_EQ(cap.block_size, 64 * kMB);

    const auto measured = std::get<CapacityScenario>(
        parse_scenario(scenario_path("paper_capacity_measured_overhead.json")));
    EXPECT_EQ(std::get<FractionalOverhead>(measured.os_overhead), kMeasuredOsOverhead);

    const auto ingest = std::get<IngestScenario>(parse_scenario(scenario_path("paper_ingest.json")));
    EXPECT_EQ(ingest.workload, (std::vector<Bytes>{100 * kMB, 100 * kMB, 1000 * kMB}));
    EXPECT_EQ(ingest.replication_factor, 3u);
}

TEST(Scenario, MissingFileIsIoError) {
    EXPECT_THROW((void)parse_scenario("/nonexistent/scenario.json"), IoError);
}

TEST(Scenario, EmptyRateList) {
    const auto err = error_of(R"({"kind":"sweep","arrival_rates":[],"service_rate":32})");
    EXPECT_NE(err.find("/arrival_rates"), std::string::npos) << err;
}

TEST(Scenario, SaturatingRateNamed) {
    const auto err = error_of(R"({"kind":"sweep","arrival_rates":[5,40],"service_rate":32})");
    EXPECT_NE(err.find("/arrival_rates/1"), std::string::npos) << err;
    EXPECT_NE(err.find("40"), std::string::npos) << err;

    const auto ok = parse_scenario_text(
        R"({"kind":"sweep","arrival_rates":[5,40],"service_rate":32,"allow_saturation":true})");
    EXPECT_TRUE(std::get<SweepScenario>(ok).allow_saturation);
}

TEST(Scenario, UnknownFieldsRejected) {
    EXPECT_NE(error_of(R"({"kind":"sweep","arrival_rates":[5],"service_rate":32,"colour":1})")
                  .find("/colour"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"kind":"sweep","arrival_rates":[5],"service_rate":32,
                          "simulation":{"seeds":3}})")
                  .find("/simulation/seeds"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"kind":"capacity","node_counts":[5],"per_node_raw":"80 GB","extra":0})")
                  .find("/extra"),
              std::string::npos);
}

TEST(Scenario, SyntaxErrorsCarryLineAndColumn) {
    const auto err = error_of("{\n  \"kind\": \"sweep\",\n  \"arrival_rates\": [5,,]\n}");
    EXPECT_NE(err.find("line 3"), std::string::npos) << err;
    EXPECT_NE(err.find("column"), std::string::npos) << err;
}

TEST(Scenario, DomainChecks) {
    EXPECT_FALSE(error_of(R"({"kind":"sweep","arrival_rates":[5],"service_rate":0})").empty());
    EXPECT_FALSE(error_of(R"({"kind":"sweep","arrival_rates":[-1],"service_rate":32})").empty());
    EXPECT_FALSE(error_of(R"({"kind":"sweep","arrival_rates":[5],"service_rate":32,
                             "engines":["magic"]})").empty());
    EXPECT_FALSE(error_of(R"({"kind":"sweep","arrival_rates":[5],"service_rate":32,
                             "simulation":{"total_jobs":10,"warmup_jobs":10}})").empty());
    EXPECT_FALSE(error_of(R"({"kind":"capacity","node_counts":[],"per_node_raw":"80 GB"})").empty());
    EXPECT_FALSE(error_of(R"({"kind":"capacity","node_counts":[5],"per_node_raw":"80 XB"})").empty());
    EXPECT_FALSE(error_of(R"({"kind":"capacity","node_counts":[5],"per_node_raw":"80 GB",
                             "os_overhead":{"fraction":2}})").empty());
    EXPECT_FALSE(error_of(R"({"kind":"capacity","node_counts":[5],"per_node_raw":"80 GB",
                             "replication_factor":0})").empty());
    EXPECT_FALSE(error_of(R"({"kind":"nonsense"})").empty());
    EXPECT_FALSE(error_of(R"([1,2,3])").empty());
}

TEST(Scenario, DefaultWarmupIsTenPercent) {
    const auto s = std::get<SweepScenario>(parse_scenario_text(
        R"({"kind":"sweep","arrival_rates":[5],"service_rate":32,"simulation":{"total_jobs":5000}})"));
    EXPECT_EQ(s.simulation.warmup_jobs, 500u);
}

TEST(Scenario, BinaryUnits) {
    const auto s = std::get<CapacityScenario>(parse_scenario_text(
        R"({"kind":"capacity","units":"binary","node_counts":[1],"per_node_raw":"80 GB",
            "workload":[1048576, "1 MB"]})"));
    EXPECT_EQ(s.per_node_raw, 80 * kGiB);
    EXPECT_EQ(s.block_size, 64 * kMiB);
    EXPECT_EQ(s.workload, (std::vector<Bytes>{kMiB, kMiB}));
}

}  // namespace
}  // namespace pcstore
