/*
Copyright 2026 the repart authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cstdint>
#include <numeric>
#include <set>
#include <algorithm>
#include <vector>

#include "repart/dag.hpp"
#include "repart/hypergraph.hpp"
#include "repart/partition.hpp"

namespace repart::testing {

/// Deterministic 64-bit generator (splitmix64). std::mt19937 plus the
/// standard distributions is not bit-stable across library versions, and the
/// suites here freeze expected values, so the tests roll their own.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
    int range(int lo, int hi) { return lo + static_cast<int>(below(hi - lo + 1)); } // inclusive
    bool chance(int num, int den) { return below(den) < static_cast<std::uint64_t>(num); }
};

/// Independent brute-force minimum cover: scans all nonempty processor
/// subsets without any ordering shortcuts. Oracle for lambda_of_edge.
inline int lambda_bruteforce(const std::vector<int> &edge, const ReplicatedPartition &part) {
    int best = part.num_procs + 1;
    for (std::uint32_t cand = 1; cand < (1u << part.num_procs); ++cand) {
        bool covers = true;
        for (int v : edge)
            if ((part.node_mask[v] & cand) == 0) {
                covers = false;
                break;
            }
        if (covers)
            best = std::min(best, std::popcount(cand));
    }
    return best;
}

/// Recursive DFS cycle detector, independent of the Kahn implementation.
inline bool has_cycle_dfs(const Dag &g) {
    std::vector<int> color(g.node_count, 0);
    const auto &children = g.children();
    std::vector<int> stack;
    for (int s = 0; s < g.node_count; ++s) {
        if (color[s] != 0)
            continue;
        // iterative DFS with explicit state
        std::vector<std::pair<int, size_t>> frames{{s, 0}};
        color[s] = 1;
        while (!frames.empty()) {
            auto &[v, idx] = frames.back();
            if (idx < children[v].size()) {
                int c = children[v][idx++];
                if (color[c] == 1)
                    return true;
                if (color[c] == 0) {
                    color[c] = 1;
                    frames.push_back({c, 0});
                }
            } else {
                color[v] = 2;
                frames.pop_back();
            }
        }
    }
    return false;
}

inline Dag random_dag(int n, int extra_edges, Rng &rng) {
    // edges always go low id -> high id, hence acyclic
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v)
        if (rng.chance(3, 4))
            edges.push_back({static_cast<int>(rng.below(v)), v});
    for (int i = 0; i < extra_edges; ++i) {
        int u = rng.range(0, n - 2);
        int v = rng.range(u + 1, n - 1);
        bool dup = false;
        for (auto &[a, b] : edges)
            if (a == u && b == v)
                dup = true;
        if (!dup)
            edges.push_back({u, v});
    }
    return Dag::uniform(n, std::move(edges));
}

inline Hypergraph random_hypergraph(int n, int m, int max_pins, Rng &rng) {
    std::vector<std::vector<int>> edges;
    for (int e = 0; e < m; ++e) {
        int k = rng.range(1, std::min(max_pins, n));
        std::vector<int> pins;
        while (static_cast<int>(pins.size()) < k) {
            int v = static_cast<int>(rng.below(n));
            if (std::find(pins.begin(), pins.end(), v) == pins.end())
                pins.push_back(v);
        }
        edges.push_back(std::move(pins));
    }
    return Hypergraph::uniform(n, std::move(edges));
}

inline ReplicatedPartition random_partition(int n, int P, bool allow_replication, Rng &rng) {
    ReplicatedPartition part = ReplicatedPartition::empty(n, P);
    for (int v = 0; v < n; ++v) {
        if (allow_replication) {
            std::uint32_t m = static_cast<std::uint32_t>(rng.below((1u << P) - 1)) + 1;
            part.node_mask[v] = m;
        } else {
            part.node_mask[v] = 1u << rng.below(P);
        }
    }
    return part;
}

} // namespace repart::testing
