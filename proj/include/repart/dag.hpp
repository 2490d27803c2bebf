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

#include <utility>
#include <vector>

#include "repart/rational.hpp"

namespace repart {

/// Weighted DAG with dense 0-based node ids. `work` is the compute weight
/// omega(v); `comm` is mu(v), the size of the node's output value.
struct Dag {
    int node_count = 0;
    std::vector<Rational> work;
    std::vector<Rational> comm;
    std::vector<std::pair<int, int>> edges; // (parent, child)

    static Dag uniform(int n, std::vector<std::pair<int, int>> edge_list);

    // Adjacency views built on first use.
    const std::vector<std::vector<int>> &parents() const;
    const std::vector<std::vector<int>> &children() const;

    Rational total_work() const;

  private:
    mutable std::vector<std::vector<int>> parents_;
    mutable std::vector<std::vector<int>> children_;
    mutable bool adjacency_built_ = false;
    void build_adjacency() const;
};

/// Structural checks: endpoints in range, no self-loops, no duplicate edges,
/// weights strictly positive. Throws IndexError / Error.
void check_dag_structure(const Dag &g);

/// Returns a topological order (stable Kahn: among ready nodes the smallest
/// id goes first). Throws CycleError naming a node on a cycle, or IndexError.
std::vector<int> validate_dag(const Dag &g);

} // namespace repart
