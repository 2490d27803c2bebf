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
#include <iosfwd>
#include <optional>
#include <vector>

#include "repart/hypergraph.hpp"
#include "repart/rational.hpp"

namespace repart {

/// Number of processors. Kept small by design: lambda computation enumerates
/// processor subsets and stays exact for P <= 16.
struct ProcParams {
    int processors = 1;
};

struct BalanceSpec {
    Rational epsilon;     // in (0,1)
    bool weighted = false; // cardinality vs omega-weighted load
    // The balance bound (1+eps)/P * total is compared as an exact rational by
    // default; flooring it reproduces the proofs' integer bound.
    bool floor_bound = false;
};

/// P possibly-overlapping node sets, stored as one processor bitmask per node.
struct ReplicatedPartition {
    int num_procs = 0;
    std::vector<std::uint32_t> node_mask; // bit p set <=> node in V_p

    static ReplicatedPartition empty(int n, int P) {
        return ReplicatedPartition{P, std::vector<std::uint32_t>(n, 0)};
    }

    int node_count() const { return static_cast<int>(node_mask.size()); }
    bool covers_all() const;
    bool is_disjoint() const; // every node on exactly one processor
    std::vector<std::vector<int>> sets() const; // V_p as sorted node lists
};

struct BalanceViolation {
    int processor;
    Rational load;
    Rational bound;
};

/// The load bound (1+eps)/P * (n or omega(V)), optionally floored.
Rational balance_bound(const Hypergraph &h, int num_procs, const BalanceSpec &spec);

/// Per-processor loads (cardinality or weighted per spec).
std::vector<Rational> partition_loads(const Hypergraph &h, const ReplicatedPartition &part,
                                      const BalanceSpec &spec);

/// Lists every processor whose load strictly exceeds the bound.
/// Throws UncoveredNodeError if some node is in no set.
std::vector<BalanceViolation> check_balance(const Hypergraph &h, const ReplicatedPartition &part,
                                            const BalanceSpec &spec);

/// Minimal number of processors whose sets jointly cover every pin of the
/// edge: an exact set-cover minimum found by scanning the <= 2^P processor
/// subsets ordered by popcount, then numeric value. With disjoint sets this
/// equals the number of sets the edge intersects.
int lambda_of_edge(const std::vector<int> &edge, const ReplicatedPartition &part);

/// sum_e mu(e) * (lambda_e - 1).
Rational partition_cost(const Hypergraph &h, const ReplicatedPartition &part);

enum class ReplicaMode {
    None,      // disjoint sets
    CapTwo,    // each node on at most 2 processors
    Unlimited,
};

struct SearchOptions {
    ReplicaMode mode = ReplicaMode::None;
    // Refuses instances whose assignment space exceeds this many leaves
    // (3^14, i.e. n = 14 with P = 2 replicating, by default).
    long long max_leaves = 4782969LL;
};

struct SearchResult {
    Rational cost;
    ReplicatedPartition partition; // lexicographically least witness
};

/// Globally minimal partition cost among balanced assignments, by
/// depth-first enumeration over per-node processor masks with balance and
/// partial-cost pruning. Deterministic: the witness is the lexicographically
/// least optimum (node-major, masks by numeric value).
/// Throws TooLargeError / InfeasibleError.
SearchResult exact_partition_search(const Hypergraph &h, int num_procs, const BalanceSpec &spec,
                                    const SearchOptions &opts);

/// One line per node: `node_id p1 p2 ...` with ascending processor ids.
void write_partition(std::ostream &out, const ReplicatedPartition &part);
ReplicatedPartition read_partition(std::istream &in, int num_procs);

} // namespace repart
