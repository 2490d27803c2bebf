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

#include "repart/dag.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "repart/errors.hpp"

namespace repart {

Dag Dag::uniform(int n, std::vector<std::pair<int, int>> edge_list) {
    Dag g;
    g.node_count = n;
    g.work.assign(n, Rational(1));
    g.comm.assign(n, Rational(1));
    g.edges = std::move(edge_list);
    check_dag_structure(g);
    return g;
}

void Dag::build_adjacency() const {
    parents_.assign(node_count, {});
    children_.assign(node_count, {});
    for (const auto &[u, v] : edges) {
        children_[u].push_back(v);
        parents_[v].push_back(u);
    }
    for (auto &p : parents_)
        std::sort(p.begin(), p.end());
    for (auto &c : children_)
        std::sort(c.begin(), c.end());
    adjacency_built_ = true;
}

const std::vector<std::vector<int>> &Dag::parents() const {
    if (!adjacency_built_)
        build_adjacency();
    return parents_;
}

const std::vector<std::vector<int>> &Dag::children() const {
    if (!adjacency_built_)
        build_adjacency();
    return children_;
}

Rational Dag::total_work() const {
    Rational s(0);
    for (const auto &w : work)
        s += w;
    return s;
}

void check_dag_structure(const Dag &g) {
    if (g.node_count < 0)
        throw Error("negative node count");
    if (static_cast<int>(g.work.size()) != g.node_count ||
        static_cast<int>(g.comm.size()) != g.node_count)
        throw Error("weight list size mismatch");
    for (const auto &w : g.work)
        if (w <= Rational(0))
            throw Error("non-positive work weight");
    for (const auto &w : g.comm)
        if (w <= Rational(0))
            throw Error("non-positive comm weight");
    std::set<std::pair<int, int>> seen;
    for (const auto &[u, v] : g.edges) {
        if (u < 0 || u >= g.node_count || v < 0 || v >= g.node_count)
            throw IndexError("edge endpoint out of range");
        if (u == v)
            throw Error("self-loop on node " + std::to_string(u));
        if (!seen.insert({u, v}).second)
            throw Error("duplicate edge " + std::to_string(u) + "->" + std::to_string(v));
    }
}

std::vector<int> validate_dag(const Dag &g) {
    check_dag_structure(g);
    std::vector<int> indeg(g.node_count, 0);
    for (const auto &[u, v] : g.edges) {
        (void)u;
        ++indeg[v];
    }
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int v = 0; v < g.node_count; ++v)
        if (indeg[v] == 0)
            ready.push(v);
    std::vector<int> order;
    order.reserve(g.node_count);
    const auto &children = g.children();
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int c : children[v])
            if (--indeg[c] == 0)
                ready.push(c);
    }
    if (static_cast<int>(order.size()) != g.node_count) {
        // any node with positive remaining in-degree lies on or below a cycle;
        // walk parents until a repeat to name one actually on a cycle
        int start = 0;
        for (int v = 0; v < g.node_count; ++v)
            if (indeg[v] > 0) {
                start = v;
                break;
            }
        std::vector<char> visited(g.node_count, 0);
        int cur = start;
        const auto &parents = g.parents();
        while (!visited[cur]) {
            visited[cur] = 1;
            for (int p : parents[cur])
                if (indeg[p] > 0) {
                    cur = p;
                    break;
                }
        }
        throw CycleError(cur);
    }
    return order;
}

} // namespace repart
