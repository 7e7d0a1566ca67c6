#pragma once

// JSON export/import of a whole Cluster for scenario replay.
//
//   {
//     "config": {"block_size": 64000000, "replication_factor": 3,
//                "os_overhead": {"bytes": 10000000000} | {"fraction_ppb": 98125000}},
//     "nodes":  [{"node_id": "D1", "raw_capacity": ..., "usable_capacity": ..., "used": ...}],
//     "files":  [{"file_id": "f", "size": ..., "blocks": [
//                  {"block_id": 0, "length": ..., "replicas": ["D1", ...]}]}],
//     "next_block_id": 16
//   }
//
// Sizes are integer bytes. usable_capacity and used are derived values; import
// recomputes them and rejects a document where they disagree.

#include <string>
#include <string_view>

#include "pcstore/cluster_model.hpp"

namespace pcstore {

/// Pretty-printed with a two-space indent and a trailing newline.
[[nodiscard]] std::string export_state(const Cluster& cluster);

/// Throws ValidationError naming the offending field.
[[nodiscard]] Cluster import_state(std::string_view json_text);

}  // namespace pcstore
