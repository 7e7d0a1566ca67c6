#pragma once

// In-memory model of a PC-cluster block store: one NameNode holding file ->
// block -> DataNode metadata, and DataNodes whose disks lose a fixed OS
// overhead before the rest is offered to the block pool. All capacity
// arithmetic is in exact integer bytes.
//
// A Cluster is not synchronized; serialize mutations externally.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pcstore/byte_size.hpp"

namespace pcstore {

using NodeId = std::string;
using FileId = std::string;

enum class BlockId : std::uint64_t {};

/// OS and software footprint as a fixed byte count per node.
struct AbsoluteOverhead {
    Bytes bytes = 0;
    friend bool operator==(const AbsoluteOverhead&, const AbsoluteOverhead&) = default;
};

/// OS and software footprint as a fraction of raw capacity, stored exactly in
/// parts per billion so that usable capacity stays an integer computation.
struct FractionalOverhead {
    std::uint64_t parts_per_billion = 0;

    /// Rounds to the nearest part per billion. Throws InvalidArgument outside [0, 1].
    static FractionalOverhead from_fraction(double fraction);
    [[nodiscard]] double fraction() const;
    friend bool operator==(const FractionalOverhead&, const FractionalOverhead&) = default;
};

using OsOverhead = std::variant<AbsoluteOverhead, FractionalOverhead>;

/// "About 10 GB" per node: 80 GB raw leaves 70 GB.
inline constexpr AbsoluteOverhead kTenGigabyteOverhead{10 * kGB};
/// 9.8125 % of raw: 90.1875 % remains.
inline constexpr FractionalOverhead kMeasuredOsOverhead{98'125'000};

/// raw minus overhead, floored at zero. A fractional overhead is rounded up to
/// whole bytes.
[[nodiscard]] Bytes usable_capacity(Bytes raw, const OsOverhead& overhead);

struct ClusterConfig {
    Bytes block_size = 64 * kMB;
    std::uint32_t replication_factor = 3;
    OsOverhead os_overhead = kTenGigabyteOverhead;

    friend bool operator==(const ClusterConfig&, const ClusterConfig&) = default;
};

struct DataNodeState {
    NodeId node_id;
    Bytes raw_capacity = 0;
    Bytes usable_capacity = 0;
    Bytes used = 0;
    std::set<BlockId> stored_replicas;

    [[nodiscard]] Bytes free() const { return usable_capacity - used; }
};

struct BlockPlacement {
    BlockId block_id{};
    Bytes length = 0;
    std::vector<NodeId> replica_locations;
    bool under_replicated = false;
};

struct FileManifest {
    FileId file_id;
    Bytes size = 0;
    std::vector<BlockPlacement> blocks;

    /// Bytes occupied across all replicas.
    [[nodiscard]] Bytes footprint() const;
    [[nodiscard]] std::size_t replica_count() const;
};

struct PlacementResult {
    std::vector<NodeId> nodes;
    bool under_replicated = false;
};

struct NodeUsage {
    NodeId node_id;
    Bytes raw = 0;
    Bytes usable = 0;
    Bytes used = 0;
    Bytes free = 0;
    std::size_t replicas = 0;
};

struct UsageReport {
    std::vector<NodeUsage> nodes;
    Bytes total_raw = 0;
    Bytes total_usable = 0;
    Bytes total_used = 0;
    Bytes total_free = 0;
    double average_used_per_node = 0.0;  ///< total_used / node count; 0 without nodes
    double usable_fraction = 0.0;        ///< total_usable / total_raw; 0 without raw capacity
    std::size_t files = 0;
    std::size_t blocks = 0;
    std::size_t block_replicas = 0;
    std::size_t under_replicated_blocks = 0;
};

/// The NameNode's view: every stored file's manifest.
class MetadataStore {
public:
    [[nodiscard]] const std::map<FileId, FileManifest>& manifests() const { return manifests_; }
    [[nodiscard]] std::size_t entry_count() const { return manifests_.size(); }
    [[nodiscard]] std::size_t block_count() const;
    [[nodiscard]] const FileManifest* find(std::string_view file_id) const;
    [[nodiscard]] std::uint64_t next_block_id() const { return next_block_id_; }

private:
    friend class Cluster;
    std::map<FileId, FileManifest> manifests_;
    std::uint64_t next_block_id_ = 0;
};

/// Lengths of the blocks a file of file_size bytes is cut into. Every block is
/// block_size long except a trailing partial block; an empty file has none.
[[nodiscard]] std::vector<Bytes> split_into_blocks(Bytes file_size, Bytes block_size);

class Cluster {
public:
    explicit Cluster(ClusterConfig config = {});

    [[nodiscard]] const ClusterConfig& config() const { return config_; }
    [[nodiscard]] const std::map<NodeId, DataNodeState>& nodes() const { return nodes_; }
    [[nodiscard]] const MetadataStore& metadata() const { return metadata_; }

    /// Adds a DataNode with nothing stored. Throws DuplicateId.
    const DataNodeState& register_node(const NodeId& node_id, Bytes raw_capacity);

    /// Sum of usable capacity over DataNodes. The NameNode contributes nothing.
    [[nodiscard]] Bytes cluster_capacity() const;
    [[nodiscard]] Bytes total_used() const;

    /// Least-used-first choice of up to replication_factor distinct nodes with
    /// at least block_length free; ties go to the smaller node id. Fewer
    /// eligible nodes than requested yields all of them, flagged
    /// under-replicated. Throws PlacementError when no node is eligible.
    [[nodiscard]] PlacementResult place_replicas(Bytes block_length,
                                                 std::uint32_t replication_factor) const;

    /// Splits, places and records a file. Either every block is placed or
    /// nothing changes. Throws DuplicateId or PlacementError.
    const FileManifest& store_file(const FileId& file_id, Bytes size);

    /// Removes a file and its replicas; returns the bytes released. Throws UnknownId.
    Bytes delete_file(const FileId& file_id);

    /// Re-installs a manifest exactly as given (state import). Validates ids,
    /// node references, replica distinctness, block lengths and free space.
    /// Throws ClusterError subclasses or InvalidArgument, leaving state unchanged.
    const FileManifest& restore_file(FileManifest manifest);

    /// Raises the next block id handed out (state import). Never lowers it.
    void reserve_block_ids(std::uint64_t next_block_id);

    [[nodiscard]] UsageReport usage_report() const;

    /// Recomputes every counter from the manifests and throws std::logic_error
    /// on any disagreement. Used by tests after each mutation.
    void check_invariants() const;

private:
    ClusterConfig config_;
    std::map<NodeId, DataNodeState> nodes_;
    MetadataStore metadata_;
};

}  // namespace pcstore
