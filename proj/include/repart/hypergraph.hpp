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

#include <vector>

#include "repart/rational.hpp"

namespace repart {

/// Weighted hypergraph with dense 0-based node ids.
///
/// Node weights (omega) are compute units, hyperedge weights (mu) are data
/// units; both default to 1 and must stay strictly positive. Immutable after
/// construction in practice: all operations on it are pure.
struct Hypergraph {
    int node_count = 0;
    std::vector<Rational> node_weight;        // size node_count
    std::vector<std::vector<int>> edges;      // each a sorted, duplicate-free pin list
    std::vector<Rational> edge_weight;        // size edges.size()

    static Hypergraph uniform(int n, std::vector<std::vector<int>> edge_list);

    int edge_count() const { return static_cast<int>(edges.size()); }
    long long pin_count() const;
    Rational total_node_weight() const;
    Rational total_edge_weight() const;
};

/// Throws IndexError / Error if any structural invariant is violated
/// (pin out of range, empty edge, duplicate pin, non-positive weight).
void check_hypergraph(const Hypergraph &h);

struct HypergraphStats {
    int nodes = 0;
    int edges = 0;
    long long pins = 0;       // kappa
    Rational node_weight_sum; // omega(V)
    Rational edge_weight_sum; // sum of mu
};

HypergraphStats hypergraph_stats(const Hypergraph &h);

} // namespace repart
