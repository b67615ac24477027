#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "htl/rational.hpp"

namespace htl {

/// Partition of {0,...,k} into blocks; blocks ascend internally and are
/// ordered by their minimum, so the block containing 0 always comes first.
class SetPartition {
public:
    SetPartition() = default;
    explicit SetPartition(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) { canonicalize(); }

    static SetPartition single_block(int k) {
        std::vector<int> all(static_cast<size_t>(k) + 1);
        for (int i = 0; i <= k; ++i) all[static_cast<size_t>(i)] = i;
        return SetPartition({all});
    }
    static SetPartition discrete(int k) {
        std::vector<std::vector<int>> b;
        for (int i = 0; i <= k; ++i) b.push_back({i});
        return SetPartition(std::move(b));
    }

    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    int ground_size() const {
        size_t n = 0;
        for (const auto& b : blocks_) n += b.size();
        return static_cast<int>(n);
    }
    int k() const { return ground_size() - 1; }

    int block_of(int element) const {
        for (size_t j = 0; j < blocks_.size(); ++j)
            for (int e : blocks_[j])
                if (e == element) return static_cast<int>(j);
        throw PreconditionError("element outside partition ground set");
    }

    /// Blocks intersected with {0..l}; empty intersections are dropped and the
    /// surviving blocks keep their order.  Returned with original block ids.
    std::vector<std::pair<int, std::vector<int>>> restricted_to(int l) const {
        std::vector<std::pair<int, std::vector<int>>> out;
        for (size_t j = 0; j < blocks_.size(); ++j) {
            std::vector<int> part;
            for (int e : blocks_[j])
                if (e <= l) part.push_back(e);
            if (!part.empty()) out.emplace_back(static_cast<int>(j), std::move(part));
        }
        return out;
    }

    std::string str() const {
        std::string s;
        for (size_t j = 0; j < blocks_.size(); ++j) {
            if (j) s += "|";
            for (int e : blocks_[j]) s += std::to_string(e);
        }
        return s;
    }

    friend bool operator==(const SetPartition& a, const SetPartition& b) { return a.blocks_ == b.blocks_; }
    friend bool operator!=(const SetPartition& a, const SetPartition& b) { return !(a == b); }
    friend bool operator<(const SetPartition& a, const SetPartition& b) { return a.blocks_ < b.blocks_; }

    void validate() const {
        if (blocks_.empty()) throw ValidationError("empty partition");
        std::vector<int> seen;
        for (const auto& b : blocks_) {
            if (b.empty()) throw ValidationError("empty block in partition");
            for (int e : b) seen.push_back(e);
        }
        std::sort(seen.begin(), seen.end());
        for (size_t i = 0; i < seen.size(); ++i)
            if (seen[i] != static_cast<int>(i)) throw ValidationError("partition is not a partition of {0..k}");
    }

private:
    void canonicalize() {
        for (auto& b : blocks_) std::sort(b.begin(), b.end());
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
    }
    std::vector<std::vector<int>> blocks_;
};

/// a <= b in the stratification order: a is coarser, i.e. every block of b is
/// contained in a block of a.  The closure of the stratum of b is the union
/// of strata of partitions below b.
inline bool partition_leq(const SetPartition& a, const SetPartition& b) {
    if (a.ground_size() != b.ground_size()) throw PreconditionError("partition ground sets differ");
    for (const auto& blk : b.blocks()) {
        int target = a.block_of(blk.front());
        for (int e : blk)
            if (a.block_of(e) != target) return false;
    }
    return true;
}

/// All partitions of {0..k} with the refinement order and its covering edges.
struct StratumPoset {
    std::vector<SetPartition> partitions;
    // pairs (finer, coarser): coarser is covered by finer (one merge apart)
    std::vector<std::pair<int, int>> hasse_edges;
};

inline std::vector<SetPartition> all_partitions(int k) {
    // enumerate restricted growth strings
    std::vector<SetPartition> out;
    int n = k + 1;
    std::vector<int> rgs(static_cast<size_t>(n), 0);
    while (true) {
        int m = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<int>> blocks(static_cast<size_t>(m));
        for (int i = 0; i < n; ++i) blocks[static_cast<size_t>(rgs[static_cast<size_t>(i)])].push_back(i);
        out.emplace_back(std::move(blocks));
        // next restricted growth string
        int i = n - 1;
        for (; i > 0; --i) {
            int cap = 0;
            for (int j = 0; j < i; ++j) cap = std::max(cap, rgs[static_cast<size_t>(j)]);
            if (rgs[static_cast<size_t>(i)] <= cap) break;
        }
        if (i == 0) break;
        ++rgs[static_cast<size_t>(i)];
        for (int j = i + 1; j < n; ++j) rgs[static_cast<size_t>(j)] = 0;
    }
    return out;
}

inline StratumPoset stratify(int k) {
    if (k < 0) throw PreconditionError("stratify: k must be >= 0");
    StratumPoset poset;
    poset.partitions = all_partitions(k);
    std::map<SetPartition, int> index;
    for (size_t i = 0; i < poset.partitions.size(); ++i) index[poset.partitions[i]] = static_cast<int>(i);
    // covering relation: merge exactly two blocks
    for (size_t i = 0; i < poset.partitions.size(); ++i) {
        const auto& p = poset.partitions[i];
        int m = p.block_count();
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) {
                std::vector<std::vector<int>> blocks;
                std::vector<int> merged = p.blocks()[static_cast<size_t>(a)];
                merged.insert(merged.end(), p.blocks()[static_cast<size_t>(b)].begin(),
                              p.blocks()[static_cast<size_t>(b)].end());
                blocks.push_back(std::move(merged));
                for (int j = 0; j < m; ++j)
                    if (j != a && j != b) blocks.push_back(p.blocks()[static_cast<size_t>(j)]);
                int coarser = index.at(SetPartition(std::move(blocks)));
                poset.hasse_edges.emplace_back(static_cast<int>(i), coarser);
            }
    }
    std::sort(poset.hasse_edges.begin(), poset.hasse_edges.end());
    return poset;
}

/// The unique partition whose stratum contains the point: group equal values.
inline SetPartition classify_point(const std::vector<GaussianRational>& c) {
    if (c.empty()) throw PreconditionError("classify_point: empty point");
    std::vector<std::vector<int>> blocks;
    std::map<GaussianRational, int> where;
    for (size_t i = 0; i < c.size(); ++i) {
        auto it = where.find(c[i]);
        if (it == where.end()) {
            where[c[i]] = static_cast<int>(blocks.size());
            blocks.push_back({static_cast<int>(i)});
        } else {
            blocks[static_cast<size_t>(it->second)].push_back(static_cast<int>(i));
        }
    }
    return SetPartition(std::move(blocks));
}

/// Point of the stratum: assigns values[j] to every element of block j.
inline std::vector<GaussianRational> embed_stratum_point(const SetPartition& partition,
                                                         const std::vector<GaussianRational>& values) {
    if (static_cast<int>(values.size()) != partition.block_count())
        throw PreconditionError("embed_stratum_point: one value per block required");
    for (size_t a = 0; a < values.size(); ++a)
        for (size_t b = a + 1; b < values.size(); ++b)
            if (values[a] == values[b]) throw PreconditionError("embed_stratum_point: values must be distinct");
    std::vector<GaussianRational> c(static_cast<size_t>(partition.ground_size()));
    for (int j = 0; j < partition.block_count(); ++j)
        for (int e : partition.blocks()[static_cast<size_t>(j)]) c[static_cast<size_t>(e)] = values[static_cast<size_t>(j)];
    return c;
}

}  // namespace htl
