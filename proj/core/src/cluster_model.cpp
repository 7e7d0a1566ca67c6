#include "pcstore/cluster_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "pcstore/errors.hpp"

namespace pcstore {

namespace {

constexpr std::uint64_t kPartsPerBillion = 1'000'000'000;

__extension__ using Wide = unsigned __int128;

std::string block_name(BlockId id) {
    return "block " + std::to_string(static_cast<std::uint64_t>(id));
}

struct Candidate {
    const DataNodeState* node;
    Bytes used;
};

// Indices into candidates (which are in node-id order) of the chosen replicas.
std::vector<std::size_t> choose_least_used(const std::vector<Candidate>& candidates,
                                           Bytes block_length, std::uint32_t replication_factor) {
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].node->usable_capacity - candidates[i].used >= block_length) {
            eligible.push_back(i);
        }
    }
    const std::size_t take = std::min<std::size_t>(replication_factor, eligible.size());
    std::partial_sort(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(take),
                      eligible.end(), [&](std::size_t a, std::size_t b) {
                          if (candidates[a].used != candidates[b].used) {
                              return candidates[a].used < candidates[b].used;
                          }
                          return a < b;
                      });
    eligible.resize(take);
    return eligible;
}

}  // namespace

FractionalOverhead FractionalOverhead::from_fraction(double fraction) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw InvalidArgument("overhead fraction must lie in [0, 1], got " +
                              std::to_string(fraction));
    }
    return FractionalOverhead{
        static_cast<std::uint64_t>(std::llround(fraction * static_cast<double>(kPartsPerBillion)))};
}

double FractionalOverhead::fraction() const {
    return static_cast<double>(parts_per_billion) / static_cast<double>(kPartsPerBillion);
}

Bytes usable_capacity(Bytes raw, const OsOverhead& overhead) {
    const Bytes os_bytes = std::visit(
        [raw](const auto& o) -> Bytes {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, AbsoluteOverhead>) {
                return o.bytes;
            } else {
                const Wide scaled = static_cast<Wide>(raw) * o.parts_per_billion;
                return static_cast<Bytes>((scaled + kPartsPerBillion - 1) / kPartsPerBillion);
            }
        },
        overhead);
    return raw > os_bytes ? raw - os_bytes : 0;
}

Bytes FileManifest::footprint() const {
    Bytes total = 0;
    for (const auto& b : blocks) total += b.length * b.replica_locations.size();
    return total;
}

std::size_t FileManifest::replica_count() const {
    std::size_t total = 0;
    for (const auto& b : blocks) total += b.replica_locations.size();
    return total;
}

std::size_t MetadataStore::block_count() const {
    std::size_t total = 0;
    for (const auto& [id, m] : manifests_) total += m.blocks.size();
    return total;
}

const FileManifest* MetadataStore::find(std::string_view file_id) const {
    const auto it = manifests_.find(FileId(file_id));
    return it == manifests_.end() ? nullptr : &it->second;
}

std::vector<Bytes> split_into_blocks(Bytes file_size, Bytes block_size) {
    if (block_size == 0) {
        throw InvalidArgument("block_size must be > 0");
    }
    std::vector<Bytes> lengths(file_size / block_size, block_size);
    if (const Bytes tail = file_size % block_size; tail != 0) {
        lengths.push_back(tail);
    }
    return lengths;
}

Cluster::Cluster(ClusterConfig config) : config_(std::move(config)) {
    if (config_.block_size == 0) {
        throw InvalidArgument("block_size must be > 0");
    }
    if (config_.replication_factor == 0) {
        throw InvalidArgument("replication_factor must be >= 1");
    }
    if (const auto* f = std::get_if<FractionalOverhead>(&config_.os_overhead);
        f != nullptr && f->parts_per_billion > kPartsPerBillion) {
        throw InvalidArgument("overhead fraction must lie in [0, 1]");
    }
}

const DataNodeState& Cluster::register_node(const NodeId& node_id, Bytes raw_capacity) {
    if (node_id.empty()) {
        throw InvalidArgument("node_id must not be empty");
    }
    DataNodeState state;
    state.node_id = node_id;
    state.raw_capacity = raw_capacity;
    state.usable_capacity = usable_capacity(raw_capacity, config_.os_overhead);
    const auto [it, inserted] = nodes_.emplace(node_id, std::move(state));
    if (!inserted) {
        throw DuplicateId("node '" + node_id + "' is already registered");
    }
    return it->second;
}

Bytes Cluster::cluster_capacity() const {
    Bytes total = 0;
    for (const auto& [id, n] : nodes_) total += n.usable_capacity;
    return total;
}

Bytes Cluster::total_used() const {
    Bytes total = 0;
    for (const auto& [id, n] : nodes_) total += n.used;
    return total;
}

PlacementResult Cluster::place_replicas(Bytes block_length,
                                        std::uint32_t replication_factor) const {
    if (replication_factor == 0) {
        throw InvalidArgument("replication_factor must be >= 1");
    }
    std::vector<Candidate> candidates;
    candidates.reserve(nodes_.size());
    for (const auto& [id, n] : nodes_) candidates.push_back(Candidate{&n, n.used});

    const auto chosen = choose_least_used(candidates, block_length, replication_factor);
    if (chosen.empty()) {
        throw PlacementError("no DataNode has " + std::to_string(block_length) + " bytes free");
    }
    PlacementResult result;
    for (const std::size_t i : chosen) result.nodes.push_back(candidates[i].node->node_id);
    result.under_replicated = chosen.size() < replication_factor;
    return result;
}

const FileManifest& Cluster::store_file(const FileId& file_id, Bytes size) {
    if (file_id.empty()) {
        throw InvalidArgument("file_id must not be empty");
    }
    if (metadata_.manifests_.contains(file_id)) {
        throw DuplicateId("file '" + file_id + "' already exists");
    }

    // Plan against scratch counters; commit only if every block lands.
    std::vector<Candidate> candidates;
    candidates.reserve(nodes_.size());
    for (const auto& [id, n] : nodes_) candidates.push_back(Candidate{&n, n.used});

    FileManifest manifest;
    manifest.file_id = file_id;
    manifest.size = size;
    std::vector<std::vector<std::size_t>> plan;
    std::uint64_t next_id = metadata_.next_block_id_;
    for (const Bytes length : split_into_blocks(size, config_.block_size)) {
        auto chosen = choose_least_used(candidates, length, config_.replication_factor);
        if (chosen.empty()) {
            throw PlacementError("cannot store file '" + file_id + "': no DataNode has " +
                                 std::to_string(length) + " bytes free for block " +
                                 std::to_string(manifest.blocks.size()));
        }
        BlockPlacement block;
        block.block_id = BlockId{next_id++};
        block.length = length;
        block.under_replicated = chosen.size() < config_.replication_factor;
        for (const std::size_t i : chosen) {
            candidates[i].used += length;
            block.replica_locations.push_back(candidates[i].node->node_id);
        }
        manifest.blocks.push_back(std::move(block));
        plan.push_back(std::move(chosen));
    }

    for (std::size_t b = 0; b < plan.size(); ++b) {
        for (const std::size_t i : plan[b]) {
            auto& node = nodes_.at(candidates[i].node->node_id);
            node.used += manifest.blocks[b].length;
            node.stored_replicas.insert(manifest.blocks[b].block_id);
        }
    }
    metadata_.next_block_id_ = next_id;
    return metadata_.manifests_.emplace(file_id, std::move(manifest)).first->second;
}

Bytes Cluster::delete_file(const FileId& file_id) {
    const auto it = metadata_.manifests_.find(file_id);
    if (it == metadata_.manifests_.end()) {
        throw UnknownId("file '" + file_id + "' does not exist");
    }
    Bytes released = 0;
    for (const auto& block : it->second.blocks) {
        for (const auto& node_id : block.replica_locations) {
            auto& node = nodes_.at(node_id);
            node.used -= block.length;
            node.stored_replicas.erase(block.block_id);
            released += block.length;
        }
    }
    metadata_.manifests_.erase(it);
    return released;
}

const FileManifest& Cluster::restore_file(FileManifest manifest) {
    if (manifest.file_id.empty()) {
        throw InvalidArgument("file_id must not be empty");
    }
    if (metadata_.manifests_.contains(manifest.file_id)) {
        throw DuplicateId("file '" + manifest.file_id + "' already exists");
    }
    std::unordered_set<std::uint64_t> existing_blocks;
    for (const auto& [fid, m] : metadata_.manifests_) {
        for (const auto& b : m.blocks) existing_blocks.insert(static_cast<std::uint64_t>(b.block_id));
    }

    const auto expected = split_into_blocks(manifest.size, config_.block_size);
    if (expected.size() != manifest.blocks.size()) {
        throw InvalidArgument("file '" + manifest.file_id + "' has " +
                              std::to_string(manifest.blocks.size()) + " blocks, expected " +
                              std::to_string(expected.size()));
    }

    std::map<NodeId, Bytes> extra;
    std::uint64_t max_id = 0;
    for (std::size_t i = 0; i < manifest.blocks.size(); ++i) {
        const auto& block = manifest.blocks[i];
        const auto raw_id = static_cast<std::uint64_t>(block.block_id);
        if (!existing_blocks.insert(raw_id).second) {
            throw DuplicateId(block_name(block.block_id) + " is already in use");
        }
        max_id = std::max(max_id, raw_id);
        if (block.length != expected[i]) {
            throw InvalidArgument(block_name(block.block_id) + " of file '" + manifest.file_id +
                                  "' has length " + std::to_string(block.length) + ", expected " +
                                  std::to_string(expected[i]));
        }
        if (block.replica_locations.empty()) {
            throw InvalidArgument(block_name(block.block_id) + " has no replicas");
        }
        if (block.replica_locations.size() > config_.replication_factor) {
            throw InvalidArgument(block_name(block.block_id) + " has more replicas than the "
                                  "replication factor");
        }
        const std::set<NodeId> distinct(block.replica_locations.begin(),
                                        block.replica_locations.end());
        if (distinct.size() != block.replica_locations.size()) {
            throw InvalidArgument(block_name(block.block_id) + " has two replicas on one node");
        }
        for (const auto& node_id : block.replica_locations) {
            if (!nodes_.contains(node_id)) {
                throw UnknownId(block_name(block.block_id) + " refers to unregistered node '" +
                                node_id + "'");
            }
            extra[node_id] += block.length;
        }
    }
    for (const auto& [node_id, bytes] : extra) {
        if (nodes_.at(node_id).free() < bytes) {
            throw PlacementError("node '" + node_id + "' lacks space for file '" +
                                 manifest.file_id + "'");
        }
    }

    for (auto& block : manifest.blocks) {
        block.under_replicated = block.replica_locations.size() < config_.replication_factor;
        for (const auto& node_id : block.replica_locations) {
            auto& node = nodes_.at(node_id);
            node.used += block.length;
            node.stored_replicas.insert(block.block_id);
        }
    }
    if (!manifest.blocks.empty()) reserve_block_ids(max_id + 1);
    const FileId key = manifest.file_id;
    return metadata_.manifests_.emplace(key, std::move(manifest)).first->second;
}

void Cluster::reserve_block_ids(std::uint64_t next_block_id) {
    metadata_.next_block_id_ = std::max(metadata_.next_block_id_, next_block_id);
}

UsageReport Cluster::usage_report() const {
    UsageReport report;
    for (const auto& [id, n] : nodes_) {
        report.nodes.push_back(
            NodeUsage{id, n.raw_capacity, n.usable_capacity, n.used, n.free(), n.stored_replicas.size()});
        report.total_raw += n.raw_capacity;
        report.total_usable += n.usable_capacity;
        report.total_used += n.used;
        report.total_free += n.free();
    }
    if (!nodes_.empty()) {
        report.average_used_per_node =
            static_cast<double>(report.total_used) / static_cast<double>(nodes_.size());
    }
    if (report.total_raw > 0) {
        report.usable_fraction =
            static_cast<double>(report.total_usable) / static_cast<double>(report.total_raw);
    }
    report.files = metadata_.entry_count();
    for (const auto& [fid, m] : metadata_.manifests()) {
        report.blocks += m.blocks.size();
        report.block_replicas += m.replica_count();
        report.under_replicated_blocks += static_cast<std::size_t>(
            std::count_if(m.blocks.begin(), m.blocks.end(),
                          [](const BlockPlacement& b) { return b.under_replicated; }));
    }
    return report;
}

void Cluster::check_invariants() const {
    std::map<NodeId, Bytes> used;
    std::map<NodeId, std::set<BlockId>> replicas;
    std::set<BlockId> seen_blocks;
    for (const auto& [fid, m] : metadata_.manifests()) {
        Bytes length_sum = 0;
        for (const auto& b : m.blocks) {
            if (!seen_blocks.insert(b.block_id).second) {
                throw std::logic_error(block_name(b.block_id) + " appears twice");
            }
            if (static_cast<std::uint64_t>(b.block_id) >= metadata_.next_block_id_) {
                throw std::logic_error(block_name(b.block_id) + " is beyond the id allocator");
            }
            length_sum += b.length;
            const std::set<NodeId> distinct(b.replica_locations.begin(), b.replica_locations.end());
            if (distinct.size() != b.replica_locations.size()) {
                throw std::logic_error(block_name(b.block_id) + " has co-located replicas");
            }
            if (b.under_replicated != (b.replica_locations.size() < config_.replication_factor)) {
                throw std::logic_error(block_name(b.block_id) + " has a stale under-replicated flag");
            }
            for (const auto& node_id : b.replica_locations) {
                if (!nodes_.contains(node_id)) {
                    throw std::logic_error(block_name(b.block_id) + " on unknown node " + node_id);
                }
                used[node_id] += b.length;
                replicas[node_id].insert(b.block_id);
            }
        }
        if (length_sum != m.size) {
            throw std::logic_error("file '" + fid + "' block lengths do not sum to its size");
        }
    }
    for (const auto& [id, n] : nodes_) {
        if (n.used != used[id]) {
            throw std::logic_error("node '" + id + "' used counter disagrees with manifests");
        }
        if (n.stored_replicas != replicas[id]) {
            throw std::logic_error("node '" + id + "' replica set disagrees with manifests");
        }
        if (n.used > n.usable_capacity) {
            throw std::logic_error("node '" + id + "' exceeds its usable capacity");
        }
        if (n.usable_capacity != usable_capacity(n.raw_capacity, config_.os_overhead)) {
            throw std::logic_error("node '" + id + "' usable capacity disagrees with overhead");
        }
    }
}

}  // namespace pcstore
