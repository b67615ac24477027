#include <catch2/catch_amalgamated.hpp>

#include "htl/partition.hpp"
#include "htl/verify.hpp"
#include "support/oracles.hpp"

using namespace htl;

TEST_CASE("stratify counts match the Bell numbers") {
    for (int k = 0; k <= 5; ++k)
        REQUIRE(static_cast<long>(stratify(k).partitions.size()) == oracle::bell_numbers()[static_cast<size_t>(k) + 1]);
}

TEST_CASE("k=1 gives two strata and one covering edge") {
    auto poset = stratify(1);
    REQUIRE(poset.partitions.size() == 2);
    REQUIRE(poset.hasse_edges.size() == 1);
    auto [finer, coarser] = poset.hasse_edges.front();
    REQUIRE(poset.partitions[static_cast<size_t>(finer)] == SetPartition::discrete(1));
    REQUIRE(poset.partitions[static_cast<size_t>(coarser)] == SetPartition::single_block(1));
}

TEST_CASE("refinement order is a partial order with correct covers") {
    auto poset = stratify(3);
    const auto& ps = poset.partitions;
    for (size_t a = 0; a < ps.size(); ++a) {
        REQUIRE(partition_leq(ps[a], ps[a]));
        for (size_t b = 0; b < ps.size(); ++b) {
            if (partition_leq(ps[a], ps[b]) && partition_leq(ps[b], ps[a])) REQUIRE(a == b);
            for (size_t c = 0; c < ps.size(); ++c)
                if (partition_leq(ps[a], ps[b]) && partition_leq(ps[b], ps[c])) REQUIRE(partition_leq(ps[a], ps[c]));
        }
    }
    // Hasse edges are exactly the covering relations
    std::set<std::pair<int, int>> edges(poset.hasse_edges.begin(), poset.hasse_edges.end());
    for (size_t fine = 0; fine < ps.size(); ++fine)
        for (size_t coarse = 0; coarse < ps.size(); ++coarse) {
            if (fine == coarse || !partition_leq(ps[coarse], ps[fine])) continue;
            bool covering = true;
            for (size_t mid = 0; mid < ps.size() && covering; ++mid) {
                if (mid == fine || mid == coarse) continue;
                if (partition_leq(ps[coarse], ps[mid]) && partition_leq(ps[mid], ps[fine])) covering = false;
            }
            REQUIRE(edges.count({static_cast<int>(fine), static_cast<int>(coarse)}) == (covering ? 1u : 0u));
        }
}

TEST_CASE("closure order agrees with block containment") {
    // finer-below iff every block of the finer partition is inside a block of
    // the coarser one; spot-check against merging
    SetPartition top = SetPartition::discrete(3);
    SetPartition mid({{0, 1}, {2}, {3}});
    SetPartition bottom = SetPartition::single_block(3);
    REQUIRE(partition_leq(bottom, mid));
    REQUIRE(partition_leq(mid, top));
    REQUIRE(!partition_leq(top, mid));
    SetPartition other({{0, 2}, {1}, {3}});
    REQUIRE(!partition_leq(other, mid));
    REQUIRE(!partition_leq(mid, other));
}

TEST_CASE("classify_point groups equal coordinates") {
    auto q = [](long v) { return GaussianRational(v); };
    REQUIRE(classify_point({q(0), q(0), q(0), q(0)}) == SetPartition::single_block(3));
    REQUIRE(classify_point({q(0), q(0), q(5), q(5)}) == SetPartition({{0, 1}, {2, 3}}));
    verify::Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        std::vector<GaussianRational> c;
        for (int i = 0; i < 4; ++i) c.push_back(GaussianRational(100 * t + i));
        REQUIRE(classify_point(c) == SetPartition::discrete(3));
    }
}

TEST_CASE("embedding a stratum point lands on that stratum") {
    verify::Rng rng(4);
    for (int k = 0; k <= 4; ++k)
        for (const auto& partition : all_partitions(k)) {
            std::vector<GaussianRational> values;
            for (int j = 0; j < partition.block_count(); ++j) values.emplace_back(static_cast<long>(10 * j + k));
            auto c = embed_stratum_point(partition, values);
            REQUIRE(classify_point(c) == partition);
        }
}

TEST_CASE("stratum dimension equals the number of blocks") {
    auto poset = stratify(3);
    for (const auto& p : poset.partitions) REQUIRE(p.block_count() >= 1);
    REQUIRE(SetPartition::single_block(3).block_count() == 1);
    REQUIRE(SetPartition::discrete(3).block_count() == 4);
}

TEST_CASE("canonical string places the zero block first") {
    SetPartition p({{2, 3}, {0, 1}});
    REQUIRE(p.str() == "01|23");
    REQUIRE(p.block_of(0) == 0);
}
