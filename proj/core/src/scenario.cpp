#include "pcstore/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json_util.hpp"
#include "pcstore/errors.hpp"

namespace pcstore {

using detail::json;

std::string_view engine_name(Engine engine) {
    switch (engine) {
        case Engine::ClosedForm: return "closed_form";
        case Engine::Oracle: return "oracle";
        case Engine::Simulation: return "sim";
    }
    return "unknown";
}

Engine parse_engine(std::string_view name) {
    if (name == "closed_form") return Engine::ClosedForm;
    if (name == "oracle") return Engine::Oracle;
    if (name == "sim") return Engine::Simulation;
    throw InvalidArgument("unknown engine '" + std::string(name) +
                          "' (expected closed_form, oracle or sim)");
}

bool SweepScenario::uses(Engine engine) const {
    return engine == Engine::ClosedForm ||
           std::find(engines.begin(), engines.end(), engine) != engines.end();
}

namespace {

std::string number_text(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

Bytes size_field(const json& j, const std::string& path, SizeUnits units) {
    if (j.is_number_unsigned()) return j.get<Bytes>();
    if (j.is_string()) {
        try {
            return parse_byte_size(j.get<std::string>(), units);
        } catch (const InvalidArgument& e) {
            detail::fail(path, e.what());
        }
    }
    detail::fail(path, "expected a byte count or a size string such as \"80 GB\"");
}

void validate_sweep(const SweepScenario& s, const std::string& root) {
    if (s.arrival_rates.empty()) {
        detail::fail(root + "/arrival_rates", "must list at least one arrival rate");
    }
    if (!std::isfinite(s.service_rate) || s.service_rate <= 0.0) {
        detail::fail(root + "/service_rate", "must be > 0");
    }
    for (std::size_t i = 0; i < s.arrival_rates.size(); ++i) {
        const double rate = s.arrival_rates[i];
        const auto path = detail::child_path(root + "/arrival_rates", i);
        if (!std::isfinite(rate) || rate < 0.0) {
            detail::fail(path, "arrival rate " + number_text(rate) + " must be finite and >= 0");
        }
        if (rate >= s.service_rate && !s.allow_saturation) {
            detail::fail(path, "arrival rate " + number_text(rate) + " >= service_rate " +
                                   number_text(s.service_rate) +
                                   " saturates the queue (set allow_saturation to emit a flagged row)");
        }
    }
    if (s.engines.empty()) detail::fail(root + "/engines", "must name at least one engine");
    if (s.truncation_level < 1) detail::fail(root + "/truncation_level", "must be >= 1");
    const auto& sim = s.simulation;
    if (sim.total_jobs == 0) detail::fail(root + "/simulation/total_jobs", "must be >= 1");
    if (sim.warmup_jobs >= sim.total_jobs) {
        detail::fail(root + "/simulation/warmup_jobs", "must be < total_jobs");
    }
    if (sim.replications == 0) detail::fail(root + "/simulation/replications", "must be >= 1");
}

void validate_capacity(const CapacityScenario& s, const std::string& root) {
    if (s.node_counts.empty()) detail::fail(root + "/node_counts", "must list at least one node count");
    if (s.block_size == 0) detail::fail(root + "/block_size", "must be > 0");
    if (s.replication_factor == 0) detail::fail(root + "/replication_factor", "must be >= 1");
    if (const auto* f = std::get_if<FractionalOverhead>(&s.os_overhead);
        f != nullptr && f->parts_per_billion > 1'000'000'000) {
        detail::fail(root + "/os_overhead/fraction", "must lie in [0, 1]");
    }
}

SweepScenario parse_sweep(const json& doc) {
    const std::string root;
    detail::reject_unknown_fields(doc, root,
                                  {"kind", "description", "arrival_rates", "service_rate", "engines",
                                   "simulation", "truncation_level", "allow_saturation"});
    SweepScenario s;
    const json& rates = detail::require_array(detail::require_field(doc, root, "arrival_rates"),
                                              "/arrival_rates");
    for (std::size_t i = 0; i < rates.size(); ++i) {
        s.arrival_rates.push_back(detail::as_number(rates[i], detail::child_path("/arrival_rates", i)));
    }
    s.service_rate = detail::as_number(detail::require_field(doc, root, "service_rate"), "/service_rate");

    if (doc.contains("engines")) {
        const json& engines = detail::require_array(doc["engines"], "/engines");
        s.engines.clear();
        for (std::size_t i = 0; i < engines.size(); ++i) {
            const auto path = detail::child_path("/engines", i);
            try {
                const Engine e = parse_engine(detail::as_string(engines[i], path));
                if (std::find(s.engines.begin(), s.engines.end(), e) == s.engines.end()) {
                    s.engines.push_back(e);
                }
            } catch (const InvalidArgument& e) {
                detail::fail(path, e.what());
            }
        }
    }
    if (doc.contains("allow_saturation")) {
        s.allow_saturation = detail::as_bool(doc["allow_saturation"], "/allow_saturation");
    }
    if (doc.contains("truncation_level")) {
        s.truncation_level = detail::as_unsigned(doc["truncation_level"], "/truncation_level");
    }
    if (doc.contains("simulation")) {
        const std::string path = "/simulation";
        const json& sim = detail::require_object(doc["simulation"], path);
        detail::reject_unknown_fields(sim, path, {"seed", "total_jobs", "warmup_jobs", "replications"});
        if (sim.contains("seed")) s.simulation.seed = detail::as_unsigned(sim["seed"], path + "/seed");
        if (sim.contains("total_jobs")) {
            s.simulation.total_jobs = detail::as_unsigned(sim["total_jobs"], path + "/total_jobs");
        }
        if (sim.contains("warmup_jobs")) {
            s.simulation.warmup_jobs = detail::as_unsigned(sim["warmup_jobs"], path + "/warmup_jobs");
        } else {
            s.simulation.warmup_jobs = s.simulation.total_jobs / 10;
        }
        if (sim.contains("replications")) {
            const auto r = detail::as_unsigned(sim["replications"], path + "/replications");
            if (r > 1'000'000) detail::fail(path + "/replications", "unreasonably large");
            s.simulation.replications = static_cast<std::uint32_t>(r);
        }
    }
    validate_sweep(s, root);
    return s;
}

CapacityScenario parse_capacity(const json& doc) {
    const std::string root;
    detail::reject_unknown_fields(doc, root,
                                  {"kind", "description", "units", "node_counts", "per_node_raw",
                                   "os_overhead", "block_size", "replication_factor", "workload"});
    CapacityScenario s;
    if (doc.contains("units")) {
        const auto units = detail::as_string(doc["units"], "/units");
        if (units == "decimal") {
            s.units = SizeUnits::Decimal;
        } else if (units == "binary") {
            s.units = SizeUnits::Binary;
        } else {
            detail::fail("/units", "expected \"decimal\" or \"binary\"");
        }
    }

    const json& counts = detail::require_array(detail::require_field(doc, root, "node_counts"),
                                               "/node_counts");
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const auto n = detail::as_unsigned(counts[i], detail::child_path("/node_counts", i));
        if (n > 100'000) detail::fail(detail::child_path("/node_counts", i), "unreasonably large");
        s.node_counts.push_back(n);
    }
    s.per_node_raw = size_field(detail::require_field(doc, root, "per_node_raw"), "/per_node_raw", s.units);

    if (doc.contains("os_overhead")) {
        const std::string path = "/os_overhead";
        const json& o = detail::require_object(doc["os_overhead"], path);
        detail::reject_unknown_fields(o, path, {"bytes", "fraction"});
        if (o.size() != 1) detail::fail(path, "expected exactly one of 'bytes' or 'fraction'");
        if (o.contains("bytes")) {
            s.os_overhead = AbsoluteOverhead{size_field(o["bytes"], path + "/bytes", s.units)};
        } else {
            const double f = detail::as_number(o["fraction"], path + "/fraction");
            try {
                s.os_overhead = FractionalOverhead::from_fraction(f);
            } catch (const InvalidArgument& e) {
                detail::fail(path + "/fraction", e.what());
            }
        }
    }
    if (doc.contains("block_size")) {
        s.block_size = size_field(doc["block_size"], "/block_size", s.units);
    } else {
        s.block_size = 64 * (s.units == SizeUnits::Binary ? kMiB : kMB);
    }
    if (doc.contains("replication_factor")) {
        const auto rf = detail::as_unsigned(doc["replication_factor"], "/replication_factor");
        if (rf > 1'000) detail::fail("/replication_factor", "unreasonably large");
        s.replication_factor = static_cast<std::uint32_t>(rf);
    }
    if (doc.contains("workload")) {
        const json& w = detail::require_array(doc["workload"], "/workload");
        for (std::size_t i = 0; i < w.size(); ++i) {
            s.workload.push_back(size_field(w[i], detail::child_path("/workload", i), s.units));
        }
    }
    validate_capacity(s, root);
    return s;
}

}  // namespace

void validate(const SweepScenario& scenario) { validate_sweep(scenario, ""); }
void validate(const CapacityScenario& scenario) { validate_capacity(scenario, ""); }

Scenario parse_scenario_text(std::string_view text, std::string_view source_name) {
    const json doc = detail::parse_document(text, source_name);
    try {
        detail::require_object(doc, "");
        const auto kind = detail::as_string(detail::require_field(doc, "", "kind"), "/kind");
        if (kind == "sweep") return parse_sweep(doc);
        if (kind == "capacity") return parse_capacity(doc);
        if (kind == "ingest") return IngestScenario{parse_capacity(doc)};
        detail::fail("/kind", "expected \"sweep\", \"capacity\" or \"ingest\", got \"" + kind + "\"");
    } catch (const ValidationError& e) {
        throw ValidationError(std::string(source_name) + ": " + e.what());
    }
}

Scenario parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open scenario file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("error reading scenario file '" + path.string() + "'");
    }
    return parse_scenario_text(buf.str(), path.string());
}

}  // namespace pcstore
