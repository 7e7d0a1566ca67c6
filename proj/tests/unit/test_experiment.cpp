#include <gtest/gtest.h>

#include "pcstore/experiment.hpp"

namespace pcstore {
namespace {

SweepScenario reference_sweep() {
    SweepScenario s;
    s.arrival_rates = {5, 10, 15, 20, 25, 30};
    s.service_rate = 32;
    return s;
}

double cell(const CsvTable& t, std::size_t row, const char* column) {
    return std::stod(t.rows.at(row).at(t.column(column)));
}

TEST(Sweep, ClosedFormColumns) {
    const CsvTable t = run_sweep(reference_sweep());
    EXPECT_EQ(t.header, (std::vector<std::string>{"lambda", "mu", "rho", "T", "W", "N", "N_Q", "P0",
                                                  "status"}));
    ASSERT_EQ(t.rows.size(), 6u);
    const double expected_t[] = {0.03704, 0.04545, 0.05882, 0.08333, 0.14286, 0.5};
    const double expected_rho[] = {0.15625, 0.3125, 0.46875, 0.625, 0.78125, 0.9375};
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_NEAR(cell(t, i, "T"), expected_t[i], 5e-6);
        EXPECT_EQ(cell(t, i, "rho"), expected_rho[i]);
        EXPECT_EQ(t.rows[i].back(), "ok");
    }
}

TEST(Sweep, SingleHalfLoadRow) {
    SweepScenario s;
    s.arrival_rates = {16};
    s.service_rate = 32;
    const CsvTable t = run_sweep(s);
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(cell(t, 0, "N"), 1.0);
    EXPECT_EQ(cell(t, 0, "W"), 0.03125);
}

TEST(Sweep, RowOrderFollowsInput) {
    SweepScenario s;
    s.arrival_rates = {30, 5, 20};
    s.service_rate = 32;
    const CsvTable t = run_sweep(s);
    EXPECT_EQ(t.rows[0][0], "30");
    EXPECT_EQ(t.rows[1][0], "5");
    EXPECT_EQ(t.rows[2][0], "20");
}

TEST(Sweep, SaturatedRowsAreFlagged) {
    SweepScenario s;
    s.arrival_rates = {5, 32, 40};
    s.service_rate = 32;
    s.allow_saturation = true;
    s.engines = {Engine::ClosedForm, Engine::Oracle, Engine::Simulation};
    s.simulation = {1, 2000, 200, 1};
    const auto rows = evaluate_sweep(s);
    EXPECT_FALSE(rows[0].saturated);
    EXPECT_TRUE(rows[1].saturated);
    EXPECT_TRUE(rows[2].saturated);
    EXPECT_FALSE(rows[2].closed_form.has_value());
    const CsvTable t = sweep_table(s, rows);
    EXPECT_EQ(t.rows[1].back(), "saturated");
    EXPECT_EQ(t.rows[2][t.column("rho")], "1.25");
    EXPECT_EQ(t.rows[2][t.column("T")], "");
}

TEST(Sweep, OracleAgreement) {
    auto s = reference_sweep();
    s.engines = {Engine::ClosedForm, Engine::Oracle};
    for (const auto& row : evaluate_sweep(s)) {
        ASSERT_TRUE(row.oracle_deviation().has_value());
        EXPECT_LT(*row.oracle_deviation(), 1e-6) << row.arrival_rate;
    }
}

TEST(Sweep, ZeroArrivalRow) {
    SweepScenario s;
    s.arrival_rates = {0};
    s.service_rate = 32;
    s.engines = {Engine::ClosedForm, Engine::Oracle, Engine::Simulation};
    const auto rows = evaluate_sweep(s);
    EXPECT_FALSE(rows[0].simulation.has_value());
    ASSERT_TRUE(rows[0].oracle.has_value());
    EXPECT_FALSE(rows[0].oracle->response_time_defined);
    EXPECT_EQ(*rows[0].oracle_deviation(), 0.0);
}

TEST(Sweep, DeterministicCsv) {
    auto s = reference_sweep();
    s.engines = {Engine::ClosedForm, Engine::Oracle, Engine::Simulation};
    s.simulation = {9, 20000, 2000, 3};
    EXPECT_EQ(to_csv(run_sweep(s)), to_csv(run_sweep(s)));
}

TEST(Capacity, UsableTotals) {
    CapacityScenario s;
    s.node_counts = {0, 5, 20};
    const auto rows = evaluate_capacity(s);
    EXPECT_EQ(rows[0].usable_total, 0u);
    EXPECT_EQ(rows[1].usable_total, 350 * kGB);
    EXPECT_EQ(rows[2].usable_total, 1400 * kGB);
    EXPECT_EQ(rows[1].raw_total, 400 * kGB);
    EXPECT_DOUBLE_EQ(rows[1].usable_fraction, 0.875);
}

TEST(Capacity, WorkloadAccounting) {
    CapacityScenario s;
    s.node_counts = {5};
    s.workload = {100 * kMB, 100 * kMB, 1000 * kMB};
    const auto rows = evaluate_capacity(s);
    EXPECT_EQ(rows[0].used_after_workload, 3600 * kMB);
    EXPECT_EQ(rows[0].avg_used_per_node, 720.0 * kMB);
    EXPECT_TRUE(rows[0].workload_fits);
}

TEST(Capacity, OversizedWorkloadFlagsRowOnly) {
    CapacityScenario s;
    s.node_counts = {1, 5};
    s.workload = {100 * kGB};
    s.replication_factor = 1;
    const auto rows = evaluate_capacity(s);
    EXPECT_FALSE(rows[0].workload_fits);
    EXPECT_EQ(rows[0].used_after_workload, 0u);
    EXPECT_TRUE(rows[1].workload_fits);
    EXPECT_EQ(rows[1].used_after_workload, 100 * kGB);
    const CsvTable t = capacity_table(rows);
    EXPECT_EQ(t.rows[0].back(), "workload_exceeds_capacity");
    EXPECT_EQ(t.rows[1].back(), "ok");
}

TEST(Ingest, StepRows) {
    IngestScenario s;
    s.node_counts = {5};
    s.workload = {100 * kMB, 100 * kMB, 1000 * kMB};
    const auto steps = evaluate_ingest(s);
    ASSERT_EQ(steps.size(), 3u);
    EXPECT_EQ(steps[0].cluster_used, 300 * kMB);
    EXPECT_EQ(steps[1].cluster_used, 600 * kMB);
    EXPECT_EQ(steps[2].cluster_used, 3600 * kMB);
    EXPECT_EQ(steps[2].blocks, 16u);
    EXPECT_EQ(steps[2].block_replicas, 48u);
    EXPECT_EQ(ingest_table(steps).rows.size(), 3u);
}

TEST(Naming, ZeroPadded) {
    EXPECT_EQ(data_node_name(7), "D007");
    EXPECT_EQ(workload_file_name(3), "file03");
}

}  // namespace
}  // namespace pcstore
