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

#include "repart/hypergraph.hpp"

#include <algorithm>
#include <set>

#include "repart/errors.hpp"

namespace repart {

Hypergraph Hypergraph::uniform(int n, std::vector<std::vector<int>> edge_list) {
    Hypergraph h;
    h.node_count = n;
    h.node_weight.assign(n, Rational(1));
    h.edges = std::move(edge_list);
    for (auto &e : h.edges)
        std::sort(e.begin(), e.end());
    h.edge_weight.assign(h.edges.size(), Rational(1));
    check_hypergraph(h);
    return h;
}

long long Hypergraph::pin_count() const {
    long long k = 0;
    for (const auto &e : edges)
        k += static_cast<long long>(e.size());
    return k;
}

Rational Hypergraph::total_node_weight() const {
    Rational s(0);
    for (const auto &w : node_weight)
        s += w;
    return s;
}

Rational Hypergraph::total_edge_weight() const {
    Rational s(0);
    for (const auto &w : edge_weight)
        s += w;
    return s;
}

void check_hypergraph(const Hypergraph &h) {
    if (h.node_count < 0)
        throw Error("negative node count");
    if (static_cast<int>(h.node_weight.size()) != h.node_count)
        throw Error("node weight list size mismatch");
    if (h.edge_weight.size() != h.edges.size())
        throw Error("edge weight list size mismatch");
    for (const auto &w : h.node_weight)
        if (w <= Rational(0))
            throw Error("non-positive node weight");
    for (const auto &w : h.edge_weight)
        if (w <= Rational(0))
            throw Error("non-positive edge weight");
    for (size_t i = 0; i < h.edges.size(); ++i) {
        const auto &e = h.edges[i];
        if (e.empty())
            throw Error("hyperedge " + std::to_string(i) + " is empty");
        std::set<int> seen;
        for (int v : e) {
            if (v < 0 || v >= h.node_count)
                throw IndexError("pin " + std::to_string(v) + " out of range in hyperedge " +
                                 std::to_string(i));
            if (!seen.insert(v).second)
                throw Error("duplicate pin " + std::to_string(v) + " in hyperedge " +
                            std::to_string(i));
        }
    }
}

HypergraphStats hypergraph_stats(const Hypergraph &h) {
    HypergraphStats s;
    s.nodes = h.node_count;
    s.edges = h.edge_count();
    s.pins = h.pin_count();
    s.node_weight_sum = h.total_node_weight();
    s.edge_weight_sum = h.total_edge_weight();
    return s;
}

} // namespace repart
