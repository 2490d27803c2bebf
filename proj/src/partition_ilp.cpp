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

#include "repart/partition_ilp.hpp"

#include <algorithm>
#include <bit>

#include "repart/errors.hpp"

namespace repart {

PartitionIlpMode parse_partition_ilp_mode(const std::string &s) {
    if (s == "base")
        return PartitionIlpMode::Base;
    if (s == "dupl")
        return PartitionIlpMode::Dupl;
    if (s == "repl")
        return PartitionIlpMode::Repl;
    throw Error("invalid partition ILP mode '" + s + "' (expected base|dupl|repl)");
}

namespace {

std::string nm(const char *stem, std::initializer_list<int> idx) {
    std::string s = stem;
    for (int i : idx)
        s += "_" + std::to_string(i);
    return s;
}

const std::vector<std::uint32_t> &proc_masks_by_popcount(int P) {
    static std::vector<std::vector<std::uint32_t>> cache(17);
    auto &entry = cache[P];
    if (entry.empty())
        for (int k = 1; k <= P; ++k)
            for (std::uint32_t m = 1; m < (1u << P); ++m)
                if (std::popcount(m) == k)
                    entry.push_back(m);
    return entry;
}

// Does a y-pattern satisfy the model's pin rows for one hyperedge, given the
// pins' x masks (and zv implied by popcount in Dupl mode)? These predicates
// restate the constraint rows exactly; check_feasible() re-verifies the full
// assignment against the literal rows afterwards.
bool y_pattern_feasible(PartitionIlpMode mode, const std::vector<std::uint32_t> &pin_xmasks,
                        std::uint32_t ymask) {
    switch (mode) {
    case PartitionIlpMode::Base:
        for (auto m : pin_xmasks)
            if ((m & ~ymask) != 0)
                return false; // y_{e,p} >= x_{v,p}
        return true;
    case PartitionIlpMode::Dupl:
        for (auto m : pin_xmasks) {
            if (std::popcount(m) == 1) {
                if ((m & ~ymask) != 0)
                    return false; // y >= x - zv with zv = 0
            } else {
                if ((m & ymask) == 0)
                    return false; // pairwise row for the replica pair
            }
        }
        return true;
    case PartitionIlpMode::Repl:
        for (auto m : pin_xmasks)
            if ((m & ymask) == 0)
                return false; // some z_{(v,e),p} = 1 needs x and y at p
        return true;
    }
    return false;
}

// Minimal-cost y-pattern (min popcount, then numeric) for one edge; 0 means
// "no pattern required" (edge has no assigned pins yet during enumeration).
std::uint32_t min_y_mask(PartitionIlpMode mode, const std::vector<std::uint32_t> &pin_xmasks,
                         int P) {
    if (pin_xmasks.empty())
        return 0;
    for (std::uint32_t cand : proc_masks_by_popcount(P))
        if (y_pattern_feasible(mode, pin_xmasks, cand))
            return cand;
    throw Error("no feasible y-pattern for an edge; inconsistent x assignment");
}

} // namespace

PartitionIlp build_partition_ilp(const Hypergraph &h, int num_procs, const BalanceSpec &spec,
                                 PartitionIlpMode mode) {
    check_hypergraph(h);
    if (h.node_count == 0 || h.edge_count() == 0)
        throw Error("empty hypergraph");
    if (num_procs < 2)
        throw Error("partition ILP needs P >= 2");

    PartitionIlp ilp;
    ilp.mode = mode;
    ilp.n = h.node_count;
    ilp.num_edges = h.edge_count();
    ilp.P = num_procs;
    IlpModel &m = ilp.model;
    const int P = num_procs;

    ilp.x_base = static_cast<int>(m.vars.size());
    for (int v = 0; v < h.node_count; ++v)
        for (int p = 0; p < P; ++p)
            m.add_var(nm("x", {v, p}));
    ilp.y_base = static_cast<int>(m.vars.size());
    for (int e = 0; e < h.edge_count(); ++e)
        for (int p = 0; p < P; ++p)
            m.add_var(nm("y", {e, p}));
    if (mode == PartitionIlpMode::Dupl) {
        ilp.zv_base = static_cast<int>(m.vars.size());
        for (int v = 0; v < h.node_count; ++v)
            m.add_var(nm("zv", {v}));
    }
    for (int e = 0; e < h.edge_count(); ++e)
        for (int v : h.edges[e])
            ilp.pins.push_back({e, v});
    if (mode == PartitionIlpMode::Repl) {
        ilp.z_base = static_cast<int>(m.vars.size());
        for (size_t pi = 0; pi < ilp.pins.size(); ++pi)
            for (int p = 0; p < P; ++p)
                m.add_var(nm("z", {ilp.pins[pi].second, ilp.pins[pi].first, p}));
    }

    // node cover
    for (int v = 0; v < h.node_count; ++v) {
        IlpConstraint c;
        c.name = nm("cover", {v});
        c.kind = "cover";
        for (int p = 0; p < P; ++p)
            c.terms.push_back({ilp.x(v, p), Rational(1)});
        switch (mode) {
        case PartitionIlpMode::Base:
            c.sense = Sense::Eq;
            c.rhs = Rational(1);
            break;
        case PartitionIlpMode::Dupl:
            c.terms.push_back({ilp.zv(v), Rational(-1)});
            c.sense = Sense::Eq;
            c.rhs = Rational(1);
            break;
        case PartitionIlpMode::Repl:
            c.sense = Sense::Ge;
            c.rhs = Rational(1);
            break;
        }
        m.add_constraint(std::move(c));
    }

    // pin rows
    for (size_t pi = 0; pi < ilp.pins.size(); ++pi) {
        auto [e, v] = ilp.pins[pi];
        switch (mode) {
        case PartitionIlpMode::Base:
            for (int p = 0; p < P; ++p) {
                IlpConstraint c;
                c.name = nm("pin", {e, v, p});
                c.kind = "pin";
                c.terms = {{ilp.y(e, p), Rational(1)}, {ilp.x(v, p), Rational(-1)}};
                c.sense = Sense::Ge;
                c.rhs = Rational(0);
                m.add_constraint(std::move(c));
            }
            break;
        case PartitionIlpMode::Dupl:
            for (int p = 0; p < P; ++p) {
                IlpConstraint c;
                c.name = nm("pin", {e, v, p});
                c.kind = "pin";
                c.terms = {{ilp.y(e, p), Rational(1)},
                           {ilp.x(v, p), Rational(-1)},
                           {ilp.zv(v), Rational(1)}};
                c.sense = Sense::Ge;
                c.rhs = Rational(0);
                m.add_constraint(std::move(c));
            }
            for (int p1 = 0; p1 < P; ++p1)
                for (int p2 = 0; p2 < P; ++p2) {
                    if (p1 == p2)
                        continue;
                    IlpConstraint c;
                    c.name = nm("pinpair", {e, v, p1, p2});
                    c.kind = "pin-pair";
                    c.terms = {{ilp.y(e, p1), Rational(1)},
                               {ilp.y(e, p2), Rational(1)},
                               {ilp.x(v, p1), Rational(-1)},
                               {ilp.x(v, p2), Rational(-1)}};
                    c.sense = Sense::Ge;
                    c.rhs = Rational(-1);
                    m.add_constraint(std::move(c));
                }
            break;
        case PartitionIlpMode::Repl: {
            IlpConstraint cover;
            cover.name = nm("pincover", {v, e});
            cover.kind = "pin-cover";
            for (int p = 0; p < P; ++p)
                cover.terms.push_back({ilp.z_pin(static_cast<int>(pi), p), Rational(1)});
            cover.sense = Sense::Eq;
            cover.rhs = Rational(1);
            m.add_constraint(std::move(cover));
            for (int p = 0; p < P; ++p) {
                IlpConstraint cx;
                cx.name = nm("zx", {v, e, p});
                cx.kind = "pin-x";
                cx.terms = {{ilp.x(v, p), Rational(1)},
                            {ilp.z_pin(static_cast<int>(pi), p), Rational(-1)}};
                cx.sense = Sense::Ge;
                cx.rhs = Rational(0);
                m.add_constraint(std::move(cx));
                IlpConstraint cy;
                cy.name = nm("zy", {v, e, p});
                cy.kind = "pin-y";
                cy.terms = {{ilp.y(e, p), Rational(1)},
                            {ilp.z_pin(static_cast<int>(pi), p), Rational(-1)}};
                cy.sense = Sense::Ge;
                cy.rhs = Rational(0);
                m.add_constraint(std::move(cy));
            }
            break;
        }
        }
    }

    // balance
    Rational bound = balance_bound(h, P, spec);
    for (int p = 0; p < P; ++p) {
        IlpConstraint c;
        c.name = nm("bal", {p});
        c.kind = "balance";
        for (int v = 0; v < h.node_count; ++v)
            c.terms.push_back(
                {ilp.x(v, p), spec.weighted ? h.node_weight[v] : Rational(1)});
        c.sense = Sense::Le;
        c.rhs = bound;
        m.add_constraint(std::move(c));
    }

    // objective: sum_e mu(e) (sum_p y_{e,p} - 1)
    for (int e = 0; e < h.edge_count(); ++e) {
        for (int p = 0; p < P; ++p)
            m.objective.push_back({ilp.y(e, p), h.edge_weight[e]});
        m.objective_constant -= h.edge_weight[e];
    }
    return ilp;
}

ReplicatedPartition decode_partition(const PartitionIlp &ilp, const IlpSolution &sol) {
    ReplicatedPartition part = ReplicatedPartition::empty(ilp.n, ilp.P);
    for (int v = 0; v < ilp.n; ++v)
        for (int p = 0; p < ilp.P; ++p)
            if (sol.values[ilp.x(v, p)] == Rational(1))
                part.node_mask[v] |= 1u << p;
    for (int v = 0; v < ilp.n; ++v)
        if (part.node_mask[v] == 0)
            throw UncoveredNodeError(v);
    if (ilp.mode == PartitionIlpMode::Dupl)
        for (int v = 0; v < ilp.n; ++v)
            if (std::popcount(part.node_mask[v]) > 2)
                throw Error("inconsistent solution: node " + std::to_string(v) +
                            " uses more than 2 replicas in dupl mode");
    if (ilp.mode == PartitionIlpMode::Repl) {
        for (size_t pi = 0; pi < ilp.pins.size(); ++pi) {
            auto [e, v] = ilp.pins[pi];
            int covered = 0;
            for (int p = 0; p < ilp.P; ++p)
                if (sol.values[ilp.z_pin(static_cast<int>(pi), p)] == Rational(1)) {
                    ++covered;
                    if (sol.values[ilp.x(v, p)] != Rational(1))
                        throw Error("inconsistent solution: pin (" + std::to_string(v) + "," +
                                    std::to_string(e) + ") covered on a processor without x");
                }
            if (covered != 1)
                throw Error("inconsistent solution: pin (" + std::to_string(v) + "," +
                            std::to_string(e) + ") has " + std::to_string(covered) +
                            " covering z variables");
        }
    }
    return part;
}

IlpSolution encode_partition(const PartitionIlp &ilp, const ReplicatedPartition &part) {
    if (part.node_count() != ilp.n || part.num_procs != ilp.P)
        throw Error("partition shape does not match the model");
    IlpSolution sol;
    sol.values.assign(ilp.model.vars.size(), Rational(0));
    for (int v = 0; v < ilp.n; ++v) {
        std::uint32_t m = part.node_mask[v];
        if (m == 0)
            throw UncoveredNodeError(v);
        int copies = std::popcount(m);
        if (ilp.mode == PartitionIlpMode::Base && copies != 1)
            throw Error("base mode cannot encode a replicated node");
        if (ilp.mode == PartitionIlpMode::Dupl && copies > 2)
            throw Error("dupl mode caps replicas at 2");
        for (int p = 0; p < ilp.P; ++p)
            if (m >> p & 1)
                sol.values[ilp.x(v, p)] = Rational(1);
        if (ilp.mode == PartitionIlpMode::Dupl)
            sol.values[ilp.zv(v)] = Rational(copies - 1);
    }
    // per-edge minimal y pattern, pins covered by the least processor in it
    std::vector<std::uint32_t> ymask(ilp.num_edges, 0);
    std::vector<std::vector<std::uint32_t>> pin_xmasks(ilp.num_edges);
    for (auto [e, v] : ilp.pins)
        pin_xmasks[e].push_back(part.node_mask[v]);
    for (int e = 0; e < ilp.num_edges; ++e) {
        ymask[e] = min_y_mask(ilp.mode, pin_xmasks[e], ilp.P);
        for (int p = 0; p < ilp.P; ++p)
            if (ymask[e] >> p & 1)
                sol.values[ilp.y(e, p)] = Rational(1);
    }
    if (ilp.mode == PartitionIlpMode::Repl)
        for (size_t pi = 0; pi < ilp.pins.size(); ++pi) {
            auto [e, v] = ilp.pins[pi];
            std::uint32_t usable = part.node_mask[v] & ymask[e];
            if (usable == 0)
                throw Error("internal: min y pattern misses a pin");
            int p = std::countr_zero(usable);
            sol.values[ilp.z_pin(static_cast<int>(pi), p)] = Rational(1);
        }
    sol.objective = eval_objective(ilp.model, sol.values);
    sol.status = SolutionStatus::Feasible;
    return sol;
}

IlpSolution solve_partition_ilp_exhaustive(const PartitionIlp &ilp, long long max_leaves) {
    const int P = ilp.P;
    std::vector<std::uint32_t> allowed;
    for (std::uint32_t m = 1; m < (1u << P); ++m) {
        int k = std::popcount(m);
        if (ilp.mode == PartitionIlpMode::Base && k != 1)
            continue;
        if (ilp.mode == PartitionIlpMode::Dupl && k > 2)
            continue;
        allowed.push_back(m);
    }
    long long leaves = 1;
    for (int i = 0; i < ilp.n; ++i) {
        leaves *= static_cast<long long>(allowed.size());
        if (leaves > max_leaves)
            throw TooLargeError("model enumeration space too large");
    }

    // balance rows, read from the model
    std::vector<Rational> weight(ilp.n, Rational(1));
    Rational bound(0);
    for (const auto &c : ilp.model.constraints)
        if (c.kind == "balance") {
            bound = c.rhs;
            for (const auto &[idx, coeff] : c.terms) {
                int v = (idx - ilp.x_base) / P;
                weight[v] = coeff;
            }
            break;
        }

    std::vector<std::vector<std::uint32_t>> pin_xmasks(ilp.num_edges);
    std::vector<std::vector<int>> node_edges(ilp.n);
    for (auto [e, v] : ilp.pins)
        if (std::find(node_edges[v].begin(), node_edges[v].end(), e) == node_edges[v].end())
            node_edges[v].push_back(e);
    std::vector<Rational> mu(ilp.num_edges, Rational(0));
    for (const auto &[idx, coeff] : ilp.model.objective)
        mu[(idx - ilp.y_base) / P] = coeff;

    std::vector<std::uint32_t> mask(ilp.n, 0);
    std::vector<Rational> load(P, Rational(0));
    std::vector<Rational> contribution(ilp.num_edges, Rational(0));
    Rational partial(0);
    bool have_best = false;
    Rational best_cost(0);
    std::vector<std::uint32_t> best_mask;

    // every unassigned node contributes at least one copy, and total loads
    // cannot exceed P * bound
    Rational capacity = bound * Rational(P);
    Rational assigned_sum(0);
    Rational remaining_min(0);
    for (int v = 0; v < ilp.n; ++v)
        remaining_min += weight[v];

    // rebuilds edge e's pin mask list from currently assigned pins
    auto edge_masks = [&](int e) {
        std::vector<std::uint32_t> ms;
        const auto &pins = ilp.pins;
        for (auto [pe, pv] : pins)
            if (pe == e && mask[pv] != 0)
                ms.push_back(mask[pv]);
        return ms;
    };

    auto dfs = [&](auto &&self, int v) -> void {
        if (v == ilp.n) {
            if (!have_best || partial < best_cost) {
                best_cost = partial;
                best_mask = mask;
                have_best = true;
            }
            return;
        }
        for (std::uint32_t m : allowed) {
            if (have_best && partial >= best_cost)
                return;
            bool ok = true;
            Rational added(0);
            for (int p = 0; p < P && ok; ++p)
                if (m >> p & 1) {
                    if (load[p] + weight[v] > bound)
                        ok = false;
                    added += weight[v];
                }
            if (!ok)
                continue;
            if (assigned_sum + added + (remaining_min - weight[v]) > capacity)
                continue;
            mask[v] = m;
            assigned_sum += added;
            remaining_min -= weight[v];
            for (int p = 0; p < P; ++p)
                if (m >> p & 1)
                    load[p] += weight[v];
            Rational delta(0);
            std::vector<std::pair<int, Rational>> touched;
            for (int e : node_edges[v]) {
                std::uint32_t ym = min_y_mask(ilp.mode, edge_masks(e), P);
                Rational fresh = mu[e] * Rational(std::max(0, std::popcount(ym) - 1));
                if (fresh != contribution[e]) {
                    touched.push_back({e, contribution[e]});
                    delta += fresh - contribution[e];
                    contribution[e] = fresh;
                }
            }
            partial += delta;
            if (!have_best || partial < best_cost)
                self(self, v + 1);
            partial -= delta;
            for (auto &[e, old] : touched)
                contribution[e] = old;
            for (int p = 0; p < P; ++p)
                if (m >> p & 1)
                    load[p] -= weight[v];
            assigned_sum -= added;
            remaining_min += weight[v];
            mask[v] = 0;
        }
    };
    dfs(dfs, 0);
    if (!have_best)
        throw InfeasibleError("model admits no feasible assignment");

    IlpSolution sol = encode_partition(ilp, ReplicatedPartition{P, best_mask});
    sol.status = SolutionStatus::Optimal;
    if (!check_feasible(ilp.model, sol.values))
        throw Error("internal: exhaustive optimum violates a model row");
    return sol;
}

} // namespace repart
