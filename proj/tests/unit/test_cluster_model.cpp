#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "pcstore/cluster_model.hpp"
#include "pcstore/errors.hpp"

namespace pcstore {
namespace {

Cluster five_node_cluster(OsOverhead overhead = kTenGigabyteOverhead) {
    Cluster c(ClusterConfig{64 * kMB, 3, overhead});
    for (int i = 1; i <= 5; ++i) c.register_node("D" + std::to_string(i), 80 * kGB);
    return c;
}

TEST(UsableCapacity, AbsoluteAndFractionalPresets) {
    EXPECT_EQ(usable_capacity(80 * kGB, kTenGigabyteOverhead), 70 * kGB);
    EXPECT_EQ(usable_capacity(80 * kGB, kMeasuredOsOverhead), 72'150'000'000u);
    EXPECT_EQ(usable_capacity(10 * kGB, kTenGigabyteOverhead), 0u);
    EXPECT_EQ(usable_capacity(5 * kGB, kTenGigabyteOverhead), 0u);
    EXPECT_EQ(FractionalOverhead::from_fraction(0.098125), kMeasuredOsOverhead);
    EXPECT_THROW((void)FractionalOverhead::from_fraction(1.5), InvalidArgument);
}

TEST(RegisterNode, UsableCapacity) {
    Cluster c;
    EXPECT_EQ(c.register_node("D1", 80 * kGB).usable_capacity, 70 * kGB);
    EXPECT_EQ(c.nodes().at("D1").used, 0u);
    EXPECT_THROW(c.register_node("D1", 80 * kGB), DuplicateId);

    Cluster f(ClusterConfig{64 * kMB, 3, kMeasuredOsOverhead});
    EXPECT_EQ(f.register_node("D1", 80 * kGB).usable_capacity, 72'150'000'000u);
}

TEST(RegisterNode, ZeroUsableNodeRejectsWrites) {
    Cluster c(ClusterConfig{64 * kMB, 1, kTenGigabyteOverhead});
    c.register_node("tiny", 10 * kGB);
    EXPECT_EQ(c.nodes().at("tiny").usable_capacity, 0u);
    EXPECT_THROW((void)c.place_replicas(1, 1), PlacementError);
    EXPECT_THROW(c.store_file("f", 1), PlacementError);
    EXPECT_EQ(c.store_file("empty", 0).blocks.size(), 0u);
}

TEST(ClusterCapacity, ScalesWithNodes) {
    EXPECT_EQ(five_node_cluster().cluster_capacity(), 350 * kGB);
    Cluster twenty;
    for (int i = 1; i <= 20; ++i) twenty.register_node("D" + std::to_string(i), 80 * kGB);
    EXPECT_EQ(twenty.cluster_capacity(), 1400 * kGB);
    EXPECT_EQ(Cluster{}.cluster_capacity(), 0u);

    for (std::uint64_t k = 0; k <= 64; ++k) {
        Cluster c;
        for (std::uint64_t i = 0; i < k; ++i) c.register_node("N" + std::to_string(i), 80 * kGB);
        EXPECT_EQ(c.cluster_capacity(), k * 70 * kGB);
    }
}

TEST(SplitIntoBlocks, CeilingArithmetic) {
    const auto big = split_into_blocks(1000 * kMB, 64 * kMB);
    ASSERT_EQ(big.size(), 16u);
    EXPECT_EQ(big.back(), 40 * kMB);
    EXPECT_TRUE(std::all_of(big.begin(), big.end() - 1, [](Bytes b) { return b == 64 * kMB; }));

    EXPECT_EQ(split_into_blocks(64 * kMB, 64 * kMB), std::vector<Bytes>{64 * kMB});
    EXPECT_EQ(split_into_blocks(100 * kMB, 64 * kMB), (std::vector<Bytes>{64 * kMB, 36 * kMB}));
    EXPECT_TRUE(split_into_blocks(0, 64 * kMB).empty());
    EXPECT_THROW((void)split_into_blocks(10, 0), InvalidArgument);

    // Exhaustive small cases against ceil division.
    for (Bytes size = 0; size < 200; ++size) {
        for (Bytes bs = 1; bs < 20; ++bs) {
            const auto blocks = split_into_blocks(size, bs);
            EXPECT_EQ(blocks.size(), (size + bs - 1) / bs);
            Bytes sum = 0;
            for (Bytes b : blocks) sum += b;
            EXPECT_EQ(sum, size);
        }
    }
}

TEST(PlaceReplicas, SmallestIdsOnEqualEmptyNodes) {
    const Cluster c = five_node_cluster();
    const auto r = c.place_replicas(64 * kMB, 3);
    EXPECT_EQ(r.nodes, (std::vector<NodeId>{"D1", "D2", "D3"}));
    EXPECT_FALSE(r.under_replicated);

    // Enumeration check: of all 3-subsets of equally loaded nodes, the chosen
    // one is the lexicographically smallest id set.
    std::vector<NodeId> ids;
    for (const auto& [id, n] : c.nodes()) ids.push_back(id);
    std::vector<NodeId> best;
    for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b)
            for (std::size_t d = b + 1; d < ids.size(); ++d) {
                std::vector<NodeId> cand{ids[a], ids[b], ids[d]};
                if (best.empty() || cand < best) best = cand;
            }
    EXPECT_EQ(r.nodes, best);
}

TEST(PlaceReplicas, SingleReplicaGoesToLeastUsed) {
    Cluster c = five_node_cluster();
    (void)c.store_file("a", 64 * kMB);  // lands on D1, D2, D3
    const auto r = c.place_replicas(64 * kMB, 1);
    EXPECT_EQ(r.nodes, std::vector<NodeId>{"D4"});
}

TEST(PlaceReplicas, UnderReplicatedOnSmallCluster) {
    Cluster c;
    c.register_node("A", 80 * kGB);
    c.register_node("B", 80 * kGB);
    const auto r = c.place_replicas(64 * kMB, 3);
    EXPECT_EQ(r.nodes.size(), 2u);
    EXPECT_TRUE(r.under_replicated);

    const auto& m = c.store_file("f", 100 * kMB);
    for (const auto& b : m.blocks) {
        EXPECT_TRUE(b.under_replicated);
        EXPECT_EQ(b.replica_locations.size(), 2u);
    }
    EXPECT_EQ(c.usage_report().under_replicated_blocks, 2u);
    c.check_invariants();
}

TEST(PlaceReplicas, FailsWithoutEligibleNode) {
    EXPECT_THROW((void)Cluster{}.place_replicas(1, 3), PlacementError);
    EXPECT_THROW((void)five_node_cluster().place_replicas(71 * kGB, 3), PlacementError);
    EXPECT_THROW((void)five_node_cluster().place_replicas(1, 0), InvalidArgument);
}

TEST(StoreFile, AccountsReplicaBytes) {
    Cluster c = five_node_cluster();
    const auto& big = c.store_file("big", 1000 * kMB);
    EXPECT_EQ(big.blocks.size(), 16u);
    EXPECT_EQ(big.footprint(), 3000 * kMB);
    EXPECT_EQ(c.total_used(), 3000 * kMB);
    EXPECT_DOUBLE_EQ(c.usage_report().average_used_per_node, 600.0 * kMB);
    for (const auto& b : big.blocks) {
        EXPECT_EQ(std::set<NodeId>(b.replica_locations.begin(), b.replica_locations.end()).size(), 3u);
    }

    (void)c.store_file("small", 100 * kMB);
    EXPECT_EQ(c.total_used(), 3300 * kMB);

    const auto& empty = c.store_file("empty", 0);
    EXPECT_TRUE(empty.blocks.empty());
    EXPECT_EQ(c.total_used(), 3300 * kMB);
    EXPECT_THROW(c.store_file("big", 1), DuplicateId);
    c.check_invariants();
}

TEST(StoreFile, IsTransactional) {
    Cluster c(ClusterConfig{10, 2, AbsoluteOverhead{0}});
    c.register_node("A", 100);
    c.register_node("B", 100);
    c.register_node("C", 35);
    (void)c.store_file("x", 60);  // 6 blocks x 2 replicas
    const auto before = c.usage_report();
    const auto next_id = c.metadata().next_block_id();

    // 110 bytes: the first blocks would fit but not the last ones.
    EXPECT_THROW(c.store_file("too_big", 110), PlacementError);
    const auto after = c.usage_report();
    EXPECT_EQ(after.total_used, before.total_used);
    for (std::size_t i = 0; i < after.nodes.size(); ++i) {
        EXPECT_EQ(after.nodes[i].used, before.nodes[i].used);
        EXPECT_EQ(after.nodes[i].replicas, before.nodes[i].replicas);
    }
    EXPECT_EQ(c.metadata().find("too_big"), nullptr);
    EXPECT_EQ(c.metadata().next_block_id(), next_id);
    c.check_invariants();
}

TEST(DeleteFile, RestoresCounters) {
    Cluster c = five_node_cluster();
    (void)c.store_file("keep", 100 * kMB);
    const auto before = c.usage_report();
    (void)c.store_file("big", 1000 * kMB);
    EXPECT_EQ(c.delete_file("big"), 3000 * kMB);
    const auto after = c.usage_report();
    for (std::size_t i = 0; i < after.nodes.size(); ++i) {
        EXPECT_EQ(after.nodes[i].used, before.nodes[i].used);
    }
    EXPECT_THROW(c.delete_file("big"), UnknownId);

    (void)c.store_file("empty", 0);
    EXPECT_EQ(c.delete_file("empty"), 0u);
    c.check_invariants();
}

TEST(UsageReport, Fractions) {
    EXPECT_DOUBLE_EQ(five_node_cluster().usage_report().usable_fraction, 0.875);
    EXPECT_EQ(five_node_cluster(kMeasuredOsOverhead).usage_report().usable_fraction, 0.901875);

    const auto empty = Cluster{}.usage_report();
    EXPECT_EQ(empty.usable_fraction, 0.0);
    EXPECT_EQ(empty.average_used_per_node, 0.0);
}

TEST(UsageReport, PerNodeFields) {
    Cluster c = five_node_cluster();
    (void)c.store_file("f", 100 * kMB);
    const auto r = c.usage_report();
    ASSERT_EQ(r.nodes.size(), 5u);
    for (const auto& n : r.nodes) {
        EXPECT_EQ(n.raw, 80 * kGB);
        EXPECT_EQ(n.usable, 70 * kGB);
        EXPECT_EQ(n.used + n.free, n.usable);
    }
    EXPECT_EQ(r.files, 1u);
    EXPECT_EQ(r.blocks, 2u);
    EXPECT_EQ(r.block_replicas, 6u);
}

// Randomized store/delete sequences; every mutation is followed by a full
// recount of the invariants.
TEST(ClusterProperties, RandomizedStoreDelete) {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> node_count(1, 8);
    std::uniform_int_distribution<Bytes> raw_dist(50, 400);
    std::uniform_int_distribution<Bytes> size_dist(0, 120);
    std::uniform_int_distribution<int> op(0, 9);

    std::size_t operations = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint32_t rf = 1 + static_cast<std::uint32_t>(rng() % 4);
        Cluster c(ClusterConfig{16, rf, AbsoluteOverhead{20}});
        const int nodes = node_count(rng);
        for (int i = 0; i < nodes; ++i) c.register_node("n" + std::to_string(i), raw_dist(rng));

        const auto initial = c.usage_report();
        std::vector<FileId> live;
        std::vector<std::pair<FileId, std::vector<Bytes>>> undo_check;  // LIFO snapshots
        int next_file = 0;

        for (int step = 0; step < 600; ++step, ++operations) {
            if (live.empty() || op(rng) < 6) {
                const FileId id = "f" + std::to_string(next_file++);
                std::vector<Bytes> snapshot;
                for (const auto& [nid, n] : c.nodes()) snapshot.push_back(n.used);
                try {
                    const auto& m = c.store_file(id, size_dist(rng));
                    for (const auto& b : m.blocks) {
                        ASSERT_LE(b.replica_locations.size(), rf);
                        ASSERT_GE(b.replica_locations.size(), 1u);
                    }
                    live.push_back(id);
                    undo_check.emplace_back(id, std::move(snapshot));
                } catch (const PlacementError&) {
                    std::vector<Bytes> now;
                    for (const auto& [nid, n] : c.nodes()) now.push_back(n.used);
                    ASSERT_EQ(now, snapshot);
                }
            } else {
                // Delete the most recent file and compare with its pre-store snapshot.
                const auto [id, snapshot] = undo_check.back();
                undo_check.pop_back();
                live.erase(std::find(live.begin(), live.end(), id));
                (void)c.delete_file(id);
                std::vector<Bytes> now;
                for (const auto& [nid, n] : c.nodes()) now.push_back(n.used);
                ASSERT_EQ(now, snapshot);
            }
            ASSERT_NO_THROW(c.check_invariants());

            Bytes expected_used = 0;
            for (const auto& [fid, m] : c.metadata().manifests()) expected_used += m.footprint();
            ASSERT_EQ(c.total_used(), expected_used);
        }

        while (!undo_check.empty()) {
            (void)c.delete_file(undo_check.back().first);
            undo_check.pop_back();
        }
        const auto final_report = c.usage_report();
        for (std::size_t i = 0; i < final_report.nodes.size(); ++i) {
            EXPECT_EQ(final_report.nodes[i].used, initial.nodes[i].used);
            EXPECT_EQ(final_report.nodes[i].replicas, 0u);
        }
    }
    EXPECT_GE(operations, 10'000u);
}

}  // namespace
}  // namespace pcstore
