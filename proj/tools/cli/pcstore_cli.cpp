#include "pcstore_cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "pcstore/cluster_state.hpp"
#include "pcstore/errors.hpp"
#include "pcstore/experiment.hpp"
#include "pcstore/scenario.hpp"

namespace pcstore::cli {

namespace {

struct Options {
    std::string scenario_path;
    std::string out = "-";
    std::vector<std::string> engines;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> jobs;
    std::optional<std::uint64_t> warmup;
    std::optional<std::uint32_t> replications;
    std::optional<std::size_t> truncation;
    std::vector<double> lambdas;
    std::optional<double> mu;
    std::optional<std::uint64_t> nodes;
};

void emit(const std::string& text, const std::string& destination, std::ostream& out) {
    if (destination == "-") {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(destination, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open output file '" + destination + "'");
    file << text;
    file.close();
    if (!file) throw IoError("error writing output file '" + destination + "'");
}

template <typename T>
const T& expect_kind(const Scenario& scenario, const std::string& path, const char* command) {
    if (const auto* s = std::get_if<T>(&scenario)) return *s;
    throw ValidationError(path + ": scenario kind does not match the '" + command + "' command");
}

void apply_simulation_flags(SweepScenario& s, const Options& o) {
    if (!o.engines.empty()) {
        s.engines.clear();
        for (const auto& name : o.engines) {
            try {
                s.engines.push_back(parse_engine(name));
            } catch (const InvalidArgument& e) {
                throw ValidationError(std::string("--engine: ") + e.what());
            }
        }
    }
    if (o.seed) s.simulation.seed = *o.seed;
    if (o.jobs) {
        s.simulation.total_jobs = *o.jobs;
        if (!o.warmup) s.simulation.warmup_jobs = *o.jobs / 10;
    }
    if (o.warmup) s.simulation.warmup_jobs = *o.warmup;
    if (o.replications) s.simulation.replications = *o.replications;
    if (o.truncation) s.truncation_level = *o.truncation;
    validate(s);
}

int command_analyze(const Options& o, std::ostream& out) {
    SweepScenario s;
    if (!o.scenario_path.empty()) {
        s = expect_kind<SweepScenario>(parse_scenario(o.scenario_path), o.scenario_path, "analyze");
    }
    if (!o.lambdas.empty()) s.arrival_rates = o.lambdas;
    if (o.mu) s.service_rate = *o.mu;
    if (o.scenario_path.empty() && (o.lambdas.empty() || !o.mu)) {
        throw ValidationError("analyze needs a scenario file or both --lambda and --mu");
    }
    s.engines = {Engine::ClosedForm};
    validate(s);
    emit(to_csv(run_sweep(s)), o.out, out);
    return kExitOk;
}

int command_sweep(const Options& o, std::ostream& out) {
    SweepScenario s =
        expect_kind<SweepScenario>(parse_scenario(o.scenario_path), o.scenario_path, "sweep");
    apply_simulation_flags(s, o);
    emit(to_csv(run_sweep(s)), o.out, out);
    return kExitOk;
}

const CapacityScenario& cluster_scenario(const Scenario& scenario, const std::string& path,
                                         const char* command) {
    if (const auto* s = std::get_if<CapacityScenario>(&scenario)) return *s;
    if (const auto* s = std::get_if<IngestScenario>(&scenario)) return *s;
    throw ValidationError(path + ": '" + command + "' needs a capacity or ingest scenario");
}

int command_capacity(const Options& o, std::ostream& out) {
    const Scenario parsed = parse_scenario(o.scenario_path);
    emit(to_csv(run_capacity(cluster_scenario(parsed, o.scenario_path, "capacity"))), o.out, out);
    return kExitOk;
}

int command_ingest(const Options& o, std::ostream& out) {
    const Scenario parsed = parse_scenario(o.scenario_path);
    const IngestScenario s{cluster_scenario(parsed, o.scenario_path, "ingest")};
    emit(to_csv(run_ingest(s)), o.out, out);
    return kExitOk;
}

int command_export_state(const Options& o, std::ostream& out) {
    const Scenario parsed = parse_scenario(o.scenario_path);
    const CapacityScenario& s = cluster_scenario(parsed, o.scenario_path, "export-state");
    const std::uint64_t nodes = o.nodes.value_or(s.node_counts.front());
    emit(export_state(ingest_cluster(s, nodes)), o.out, out);
    return kExitOk;
}

int command_report_state(const Options& o, std::ostream& out) {
    std::ifstream in(o.scenario_path, std::ios::binary);
    if (!in) throw IoError("cannot open state file '" + o.scenario_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const Cluster cluster = import_state(buf.str());
    const UsageReport usage = cluster.usage_report();

    CsvTable table;
    table.header = {"node_id", "raw", "usable", "used", "free", "replicas"};
    for (const auto& n : usage.nodes) {
        table.rows.push_back({n.node_id, format_number(n.raw), format_number(n.usable),
                              format_number(n.used), format_number(n.free),
                              format_number(static_cast<std::uint64_t>(n.replicas))});
    }
    table.rows.push_back({"TOTAL", format_number(usage.total_raw), format_number(usage.total_usable),
                          format_number(usage.total_used), format_number(usage.total_free),
                          format_number(static_cast<std::uint64_t>(usage.block_replicas))});
    emit(to_csv(table), o.out, out);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pcstore: M/M/1 storage-server analytics and PC-cluster capacity model"};
    app.require_subcommand(1);
    Options o;

    auto add_out = [&o](CLI::App* sub) {
        sub->add_option("--out,-o", o.out, "Output path, '-' for standard output")
            ->capture_default_str();
    };

    auto* analyze = app.add_subcommand("analyze", "Closed-form M/M/1 metrics as CSV");
    analyze->add_option("scenario", o.scenario_path, "Sweep scenario (JSON)");
    analyze->add_option("--lambda", o.lambdas, "Arrival rate(s); overrides the scenario")
        ->delimiter(',');
    analyze->add_option("--mu", o.mu, "Service rate; overrides the scenario");
    add_out(analyze);

    auto* sweep = app.add_subcommand("sweep", "Arrival-rate sweep across engines");
    sweep->add_option("scenario", o.scenario_path, "Sweep scenario (JSON)")->required();
    sweep->add_option("--engine", o.engines, "closed_form, oracle, sim (repeatable or comma separated)")
        ->delimiter(',');
    sweep->add_option("--seed", o.seed, "Base seed for simulation replications");
    sweep->add_option("--jobs", o.jobs, "Jobs per simulation run");
    sweep->add_option("--warmup", o.warmup, "Discarded jobs per run (default jobs/10)");
    sweep->add_option("--replications", o.replications, "Simulation runs per row");
    sweep->add_option("--truncation", o.truncation, "Oracle truncation level K");
    add_out(sweep);

    auto* capacity = app.add_subcommand("capacity", "Usable capacity per node count");
    capacity->add_option("scenario", o.scenario_path, "Capacity scenario (JSON)")->required();
    add_out(capacity);

    auto* ingest = app.add_subcommand("ingest", "Per-file disk usage while storing a workload");
    ingest->add_option("scenario", o.scenario_path, "Capacity or ingest scenario (JSON)")->required();
    add_out(ingest);

    auto* export_cmd = app.add_subcommand("export-state", "Cluster state after the workload, as JSON");
    export_cmd->add_option("scenario", o.scenario_path, "Capacity or ingest scenario (JSON)")->required();
    export_cmd->add_option("--nodes", o.nodes, "DataNode count (default: first node_counts entry)");
    add_out(export_cmd);

    auto* report = app.add_subcommand("report-state", "Per-node usage of an exported state document");
    report->add_option("state", o.scenario_path, "State document (JSON)")->required();
    add_out(report);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        if (analyze->parsed()) return command_analyze(o, out);
        if (sweep->parsed()) return command_sweep(o, out);
        if (capacity->parsed()) return command_capacity(o, out);
        if (ingest->parsed()) return command_ingest(o, out);
        if (export_cmd->parsed()) return command_export_state(o, out);
        if (report->parsed()) return command_report_state(o, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}

}  // namespace pcstore::cli
