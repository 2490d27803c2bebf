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

#include "repart/partition.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>

#include "repart/errors.hpp"

namespace repart {

bool ReplicatedPartition::covers_all() const {
    for (auto m : node_mask)
        if (m == 0)
            return false;
    return true;
}

bool ReplicatedPartition::is_disjoint() const {
    for (auto m : node_mask)
        if (std::popcount(m) != 1)
            return false;
    return true;
}

std::vector<std::vector<int>> ReplicatedPartition::sets() const {
    std::vector<std::vector<int>> out(num_procs);
    for (int v = 0; v < node_count(); ++v)
        for (int p = 0; p < num_procs; ++p)
            if (node_mask[v] >> p & 1)
                out[p].push_back(v);
    return out;
}

Rational balance_bound(const Hypergraph &h, int num_procs, const BalanceSpec &spec) {
    Rational total = spec.weighted ? h.total_node_weight() : Rational(h.node_count);
    Rational bound = (Rational(1) + spec.epsilon) / Rational(num_procs) * total;
    if (spec.floor_bound)
        bound = Rational(rational_floor(bound));
    return bound;
}

std::vector<Rational> partition_loads(const Hypergraph &h, const ReplicatedPartition &part,
                                      const BalanceSpec &spec) {
    std::vector<Rational> load(part.num_procs, Rational(0));
    for (int v = 0; v < part.node_count(); ++v)
        for (int p = 0; p < part.num_procs; ++p)
            if (part.node_mask[v] >> p & 1)
                load[p] += spec.weighted ? h.node_weight[v] : Rational(1);
    return load;
}

std::vector<BalanceViolation> check_balance(const Hypergraph &h, const ReplicatedPartition &part,
                                            const BalanceSpec &spec) {
    for (int v = 0; v < part.node_count(); ++v)
        if (part.node_mask[v] == 0)
            throw UncoveredNodeError(v);
    Rational bound = balance_bound(h, part.num_procs, spec);
    std::vector<Rational> load = partition_loads(h, part, spec);
    std::vector<BalanceViolation> out;
    for (int p = 0; p < part.num_procs; ++p)
        if (load[p] > bound)
            out.push_back({p, load[p], bound});
    return out;
}

namespace {

// Processor subsets of [0,2^P) ordered by popcount, then numeric value.
const std::vector<std::uint32_t> &masks_by_popcount(int P) {
    static std::vector<std::vector<std::uint32_t>> cache(17);
    auto &entry = cache[P];
    if (entry.empty()) {
        for (int k = 1; k <= P; ++k)
            for (std::uint32_t m = 1; m < (1u << P); ++m)
                if (std::popcount(m) == k)
                    entry.push_back(m);
    }
    return entry;
}

} // namespace

int lambda_of_edge(const std::vector<int> &edge, const ReplicatedPartition &part) {
    std::vector<std::uint32_t> pin_masks;
    pin_masks.reserve(edge.size());
    std::uint32_t intersection = ~0u;
    for (int v : edge) {
        std::uint32_t m = part.node_mask[v];
        if (m == 0)
            throw UncoveredNodeError(v);
        pin_masks.push_back(m);
        intersection &= m;
    }
    if (intersection != 0)
        return 1; // some single processor holds every pin
    for (std::uint32_t cand : masks_by_popcount(part.num_procs)) {
        bool covers = true;
        for (std::uint32_t m : pin_masks)
            if ((m & cand) == 0) {
                covers = false;
                break;
            }
        if (covers)
            return std::popcount(cand);
    }
    throw Error("unreachable: full processor set covers every assigned edge");
}

Rational partition_cost(const Hypergraph &h, const ReplicatedPartition &part) {
    Rational cost(0);
    for (size_t e = 0; e < h.edges.size(); ++e)
        cost += h.edge_weight[e] * Rational(lambda_of_edge(h.edges[e], part) - 1);
    return cost;
}

namespace {

struct SearchState {
    const Hypergraph &h;
    int P;
    const BalanceSpec &spec;
    Rational bound;
    std::vector<std::uint32_t> allowed; // candidate masks, ascending numeric
    std::vector<std::vector<std::pair<int, int>>> node_pins; // v -> (edge, pin pos)
    std::vector<Rational> load;
    std::vector<std::uint32_t> mask;
    Rational partial_cost;                   // sum over touched edges of mu*(lambda_lb-1)
    std::vector<Rational> edge_contribution; // cached mu*(lambda_lb-1)
    Rational total_capacity;                 // P * bound
    Rational assigned_load_sum;
    Rational remaining_min_load; // sum of min contribution of unassigned nodes
    Rational best_cost;
    bool have_best = false;
    std::vector<std::uint32_t> best_mask;

    SearchState(const Hypergraph &hg, int np, const BalanceSpec &sp)
        : h(hg), P(np), spec(sp) {}

    Rational node_load(int v) const { return spec.weighted ? h.node_weight[v] : Rational(1); }

    // Exact minimum cover size for the pins of edge e assigned so far;
    // a lower bound on the edge's final lambda.
    int partial_lambda(int e) const {
        std::uint32_t intersection = ~0u;
        bool any = false;
        for (int v : h.edges[e]) {
            if (mask[v] == 0)
                continue;
            any = true;
            intersection &= mask[v];
        }
        if (!any || intersection != 0)
            return 1;
        for (std::uint32_t cand : masks_by_popcount(P)) {
            bool covers = true;
            for (int v : h.edges[e])
                if (mask[v] != 0 && (mask[v] & cand) == 0) {
                    covers = false;
                    break;
                }
            if (covers)
                return std::popcount(cand);
        }
        return P;
    }

    void dfs(int v) {
        if (v == h.node_count) {
            // partial_cost is now the exact cost; strict improvement keeps the
            // lexicographically least witness
            if (!have_best || partial_cost < best_cost) {
                best_cost = partial_cost;
                best_mask = mask;
                have_best = true;
            }
            return;
        }
        Rational lv = node_load(v);
        for (std::uint32_t m : allowed) {
            if (have_best && partial_cost >= best_cost)
                return; // no assignment of v can reduce the partial cost
            // balance feasibility
            bool ok = true;
            Rational added(0);
            for (int p = 0; p < P && ok; ++p)
                if (m >> p & 1) {
                    if (load[p] + lv > bound)
                        ok = false;
                    added += lv;
                }
            if (!ok)
                continue;
            // total-membership feasibility: every later node adds at least its
            // own load once, and the loads must fit in P * bound overall
            if (assigned_load_sum + added + (remaining_min_load - lv) > total_capacity)
                continue;

            mask[v] = m;
            for (int p = 0; p < P; ++p)
                if (m >> p & 1)
                    load[p] += lv;
            assigned_load_sum += added;
            remaining_min_load -= lv;

            Rational cost_delta(0);
            std::vector<std::pair<int, Rational>> touched;
            for (auto [e, pos] : node_pins[v]) {
                (void)pos;
                Rational fresh = h.edge_weight[e] * Rational(partial_lambda(e) - 1);
                if (fresh != edge_contribution[e]) {
                    touched.push_back({e, edge_contribution[e]});
                    cost_delta += fresh - edge_contribution[e];
                    edge_contribution[e] = fresh;
                }
            }
            partial_cost += cost_delta;

            if (!have_best || partial_cost < best_cost)
                dfs(v + 1);

            partial_cost -= cost_delta;
            for (auto &[e, old] : touched)
                edge_contribution[e] = old;
            remaining_min_load += lv;
            assigned_load_sum -= added;
            for (int p = 0; p < P; ++p)
                if (m >> p & 1)
                    load[p] -= lv;
            mask[v] = 0;
        }
    }
};

} // namespace

SearchResult exact_partition_search(const Hypergraph &h, int num_procs, const BalanceSpec &spec,
                                    const SearchOptions &opts) {
    check_hypergraph(h);
    if (num_procs < 1 || num_procs > 16)
        throw Error("processor count out of supported range");

    SearchState st(h, num_procs, spec);
    for (std::uint32_t m = 1; m < (1u << num_procs); ++m) {
        int k = std::popcount(m);
        bool keep = (opts.mode == ReplicaMode::Unlimited) ||
                    (opts.mode == ReplicaMode::CapTwo && k <= 2) ||
                    (opts.mode == ReplicaMode::None && k == 1);
        if (keep)
            st.allowed.push_back(m);
    }

    // guard: leaves = |allowed|^n
    long long leaves = 1;
    for (int i = 0; i < h.node_count; ++i) {
        leaves *= static_cast<long long>(st.allowed.size());
        if (leaves > opts.max_leaves)
            throw TooLargeError("assignment space exceeds the exhaustive-search budget (n=" +
                                std::to_string(h.node_count) + ", choices=" +
                                std::to_string(st.allowed.size()) + ")");
    }

    st.bound = balance_bound(h, num_procs, spec);
    st.total_capacity = st.bound * Rational(num_procs);
    st.load.assign(num_procs, Rational(0));
    st.mask.assign(h.node_count, 0);
    st.edge_contribution.assign(h.edge_count(), Rational(0));
    st.node_pins.assign(h.node_count, {});
    for (int e = 0; e < h.edge_count(); ++e)
        for (size_t i = 0; i < h.edges[e].size(); ++i)
            st.node_pins[h.edges[e][i]].push_back({e, static_cast<int>(i)});
    st.assigned_load_sum = Rational(0);
    st.remaining_min_load = Rational(0);
    for (int v = 0; v < h.node_count; ++v)
        st.remaining_min_load += st.node_load(v);
    st.partial_cost = Rational(0);

    // quick infeasibility: even one copy of every node cannot fit
    if (st.remaining_min_load > st.total_capacity)
        throw InfeasibleError("balance bound admits no full cover");
    for (int v = 0; v < h.node_count; ++v)
        if (st.node_load(v) > st.bound)
            throw InfeasibleError("node " + std::to_string(v) + " alone exceeds the balance bound");

    st.dfs(0);
    if (!st.have_best)
        throw InfeasibleError("no balanced assignment exists");
    return SearchResult{st.best_cost, ReplicatedPartition{num_procs, st.best_mask}};
}

void write_partition(std::ostream &out, const ReplicatedPartition &part) {
    for (int v = 0; v < part.node_count(); ++v) {
        out << v;
        for (int p = 0; p < part.num_procs; ++p)
            if (part.node_mask[v] >> p & 1)
                out << ' ' << p;
        out << '\n';
    }
}

ReplicatedPartition read_partition(std::istream &in, int num_procs) {
    std::vector<std::uint32_t> masks;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        int v;
        if (!(ls >> v))
            throw ParseError("partition line " + std::to_string(lineno) + ": missing node id");
        if (v < 0)
            throw ParseError("partition line " + std::to_string(lineno) + ": negative node id");
        if (static_cast<int>(masks.size()) <= v)
            masks.resize(v + 1, 0);
        int p;
        while (ls >> p) {
            if (p < 0 || p >= num_procs)
                throw ParseError("partition line " + std::to_string(lineno) +
                                 ": processor id out of range");
            masks[v] |= 1u << p;
        }
    }
    return ReplicatedPartition{num_procs, std::move(masks)};
}

} // namespace repart
