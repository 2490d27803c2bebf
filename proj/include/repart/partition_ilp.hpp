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

#include <string>
#include <vector>

#include "repart/hypergraph.hpp"
#include "repart/ilp_model.hpp"
#include "repart/partition.hpp"

namespace repart {

enum class PartitionIlpMode { Base, Dupl, Repl };

PartitionIlpMode parse_partition_ilp_mode(const std::string &s); // "base"|"dupl"|"repl"

/// The three partitioning formulations behind one variable layout.
///
/// Base: x_{v}_{p} assignment binaries with sum_p x = 1, y_{e}_{p} edge-touch
/// binaries driven by y >= x per pin, balance rows, and objective
/// sum_e mu(e) (sum_p y_{e,p} - 1).
///
/// Dupl: adds zv_{v} with sum_p x = zv + 1 (at most two replicas), relaxed
/// pin rows y >= x - zv, and ordered pairwise rows
/// y_{e,p1} + y_{e,p2} >= x_{v,p1} + x_{v,p2} - 1 for p1 != p2.
///
/// Repl: adds per-pin cover binaries z_{v}_{e}_{p} with sum_p z = 1,
/// x >= z, y >= z, and keeps sum_p x >= 1 so isolated nodes stay covered.
struct PartitionIlp {
    IlpModel model;
    PartitionIlpMode mode;
    int n = 0;
    int num_edges = 0;
    int P = 0;

    int x(int v, int p) const { return x_base + v * P + p; }
    int y(int e, int p) const { return y_base + e * P + p; }
    int zv(int v) const { return zv_base + v; }
    int z_pin(int pin, int p) const { return z_base + pin * P + p; }

    int x_base = 0, y_base = 0, zv_base = -1, z_base = -1;
    std::vector<std::pair<int, int>> pins; // (edge, node), row-major over edges
};

PartitionIlp build_partition_ilp(const Hypergraph &h, int num_procs, const BalanceSpec &spec,
                                 PartitionIlpMode mode);

/// V_p = { v : x_{v,p} = 1 }. Validates full cover; for Repl mode also
/// cross-checks that every pin has a covering z consistent with x.
/// Throws UncoveredNodeError / Error on inconsistency.
ReplicatedPartition decode_partition(const PartitionIlp &ilp, const IlpSolution &sol);

/// Encodes a feasible partition as a solution (x, y, z chosen consistently;
/// y follows a minimum cover per edge). Used for warm-start files.
IlpSolution encode_partition(const PartitionIlp &ilp, const ReplicatedPartition &part);

/// Exact optimum of the model itself for tiny instances: enumerates the
/// x-space against the model's cover and balance rows, then per hyperedge
/// scans y-patterns by popcount and numeric value, accepting the first one
/// the model's pin rows admit. No lambda shortcut: feasibility is decided by
/// evaluating the model's own constraints.
/// The raw-choice guard is generous: balance and membership-capacity pruning
/// cut the explored space far below `choices^n`.
IlpSolution solve_partition_ilp_exhaustive(const PartitionIlp &ilp,
                                           long long max_leaves = 400000000);

} // namespace repart
