#include "pcstore/cluster_state.hpp"

#include <variant>

#include "json_util.hpp"

namespace pcstore {

using detail::json;

namespace {

json overhead_to_json(const OsOverhead& overhead) {
    return std::visit(
        [](const auto& o) -> json {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, AbsoluteOverhead>) {
                return json{{"bytes", o.bytes}};
            } else {
                return json{{"fraction_ppb", o.parts_per_billion}};
            }
        },
        overhead);
}

OsOverhead overhead_from_json(const json& j, const std::string& path) {
    detail::require_object(j, path);
    detail::reject_unknown_fields(j, path, {"bytes", "fraction_ppb"});
    if (j.size() != 1) detail::fail(path, "expected exactly one of 'bytes' or 'fraction_ppb'");
    if (j.contains("bytes")) {
        return AbsoluteOverhead{detail::as_unsigned(j.at("bytes"), detail::child_path(path, "bytes"))};
    }
    const auto ppb_path = detail::child_path(path, "fraction_ppb");
    const auto ppb = detail::as_unsigned(j.at("fraction_ppb"), ppb_path);
    if (ppb > 1'000'000'000) detail::fail(ppb_path, "must not exceed 1000000000");
    return FractionalOverhead{ppb};
}

}  // namespace

std::string export_state(const Cluster& cluster) {
    const auto& cfg = cluster.config();
    json doc;
    doc["config"] = {{"block_size", cfg.block_size},
                     {"replication_factor", cfg.replication_factor},
                     {"os_overhead", overhead_to_json(cfg.os_overhead)}};

    json nodes = json::array();
    for (const auto& [id, n] : cluster.nodes()) {
        nodes.push_back({{"node_id", id},
                         {"raw_capacity", n.raw_capacity},
                         {"usable_capacity", n.usable_capacity},
                         {"used", n.used}});
    }
    doc["nodes"] = std::move(nodes);

    json files = json::array();
    for (const auto& [id, m] : cluster.metadata().manifests()) {
        json blocks = json::array();
        for (const auto& b : m.blocks) {
            blocks.push_back({{"block_id", static_cast<std::uint64_t>(b.block_id)},
                              {"length", b.length},
                              {"replicas", b.replica_locations}});
        }
        files.push_back({{"file_id", id}, {"size", m.size}, {"blocks", std::move(blocks)}});
    }
    doc["files"] = std::move(files);
    doc["next_block_id"] = cluster.metadata().next_block_id();
    return doc.dump(2) + "\n";
}

Cluster import_state(std::string_view json_text) {
    const json doc = detail::parse_document(json_text, "state");
    const std::string root;
    detail::require_object(doc, root);
    detail::reject_unknown_fields(doc, root, {"config", "nodes", "files", "next_block_id"});

    const std::string cfg_path = "/config";
    const json& jcfg = detail::require_object(detail::require_field(doc, root, "config"), cfg_path);
    detail::reject_unknown_fields(jcfg, cfg_path, {"block_size", "replication_factor", "os_overhead"});
    ClusterConfig cfg;
    cfg.block_size = detail::as_unsigned(detail::require_field(jcfg, cfg_path, "block_size"),
                                         cfg_path + "/block_size");
    const auto rf = detail::as_unsigned(detail::require_field(jcfg, cfg_path, "replication_factor"),
                                        cfg_path + "/replication_factor");
    if (rf == 0 || rf > 0xffffffffu) detail::fail(cfg_path + "/replication_factor", "out of range");
    cfg.replication_factor = static_cast<std::uint32_t>(rf);
    cfg.os_overhead = overhead_from_json(detail::require_field(jcfg, cfg_path, "os_overhead"),
                                         cfg_path + "/os_overhead");
    if (cfg.block_size == 0) detail::fail(cfg_path + "/block_size", "must be > 0");

    Cluster cluster(cfg);

    const json& jnodes = detail::require_array(detail::require_field(doc, root, "nodes"), "/nodes");
    for (std::size_t i = 0; i < jnodes.size(); ++i) {
        const auto path = detail::child_path("/nodes", i);
        const json& jn = detail::require_object(jnodes[i], path);
        detail::reject_unknown_fields(jn, path, {"node_id", "raw_capacity", "usable_capacity", "used"});
        const auto id = detail::as_string(detail::require_field(jn, path, "node_id"), path + "/node_id");
        const auto raw =
            detail::as_unsigned(detail::require_field(jn, path, "raw_capacity"), path + "/raw_capacity");
        try {
            const auto& node = cluster.register_node(id, raw);
            if (jn.contains("usable_capacity") &&
                detail::as_unsigned(jn["usable_capacity"], path + "/usable_capacity") !=
                    node.usable_capacity) {
                detail::fail(path + "/usable_capacity", "disagrees with raw_capacity and os_overhead");
            }
        } catch (const ClusterError& e) {
            detail::fail(path, e.what());
        } catch (const InvalidArgument& e) {
            detail::fail(path, e.what());
        }
    }

    const json& jfiles = detail::require_array(detail::require_field(doc, root, "files"), "/files");
    for (std::size_t i = 0; i < jfiles.size(); ++i) {
        const auto path = detail::child_path("/files", i);
        const json& jf = detail::require_object(jfiles[i], path);
        detail::reject_unknown_fields(jf, path, {"file_id", "size", "blocks"});
        FileManifest m;
        m.file_id = detail::as_string(detail::require_field(jf, path, "file_id"), path + "/file_id");
        m.size = detail::as_unsigned(detail::require_field(jf, path, "size"), path + "/size");
        const json& jblocks =
            detail::require_array(detail::require_field(jf, path, "blocks"), path + "/blocks");
        for (std::size_t b = 0; b < jblocks.size(); ++b) {
            const auto bpath = detail::child_path(path + "/blocks", b);
            const json& jb = detail::require_object(jblocks[b], bpath);
            detail::reject_unknown_fields(jb, bpath, {"block_id", "length", "replicas"});
            BlockPlacement placement;
            placement.block_id = BlockId{
                detail::as_unsigned(detail::require_field(jb, bpath, "block_id"), bpath + "/block_id")};
            placement.length =
                detail::as_unsigned(detail::require_field(jb, bpath, "length"), bpath + "/length");
            const json& jr =
                detail::require_array(detail::require_field(jb, bpath, "replicas"), bpath + "/replicas");
            for (std::size_t r = 0; r < jr.size(); ++r) {
                placement.replica_locations.push_back(
                    detail::as_string(jr[r], detail::child_path(bpath + "/replicas", r)));
            }
            m.blocks.push_back(std::move(placement));
        }
        try {
            cluster.restore_file(std::move(m));
        } catch (const ClusterError& e) {
            detail::fail(path, e.what());
        } catch (const InvalidArgument& e) {
            detail::fail(path, e.what());
        }
    }

    if (doc.contains("next_block_id")) {
        cluster.reserve_block_ids(detail::as_unsigned(doc["next_block_id"], "/next_block_id"));
    }

    // "used" is derived; check it only after every file has been replayed.
    for (std::size_t i = 0; i < jnodes.size(); ++i) {
        const json& jn = jnodes[i];
        if (!jn.contains("used")) continue;
        const auto path = detail::child_path("/nodes", i);
        const auto used = detail::as_unsigned(jn["used"], path + "/used");
        if (cluster.nodes().at(jn["node_id"].get<std::string>()).used != used) {
            detail::fail(path + "/used", "disagrees with the replicas recorded in files");
        }
    }
    return cluster;
}

}  // namespace pcstore
