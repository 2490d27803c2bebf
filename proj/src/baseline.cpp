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

#include "repart/baseline.hpp"

#include <algorithm>
#include <map>

#include "repart/errors.hpp"

namespace repart {

namespace {

// omega-weighted longest path to a sink, including the node itself
std::vector<Rational> bottom_levels(const Dag &dag) {
    std::vector<Rational> bl(dag.node_count, Rational(0));
    std::vector<int> order = validate_dag(dag);
    const auto &children = dag.children();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        Rational best(0);
        for (int c : children[v])
            best = std::max(best, bl[c]);
        bl[v] = dag.work[v] + best;
    }
    return bl;
}

long long ceil_of(const Rational &r) {
    return -rational_floor(-r);
}

// Builds the schedule from a compute assignment, materializing each needed
// cross-processor value in the latest superstep before its first use.
// Returns false if the assignment violates a precedence constraint.
bool build_with_lazy_sends(const Dag &dag, const std::vector<int> &proc_of,
                           const std::vector<int> &step_of, int P, int S, BspSchedule &out) {
    for (auto &[u, v] : dag.edges) {
        if (proc_of[u] == proc_of[v] ? step_of[u] > step_of[v] : step_of[u] >= step_of[v])
            return false;
    }
    out = BspSchedule::empty(P, S);
    for (int v = 0; v < dag.node_count; ++v)
        out.add_compute(proc_of[v], step_of[v], v);
    std::map<std::pair<int, int>, int> first_need; // (node, target proc) -> superstep
    for (auto &[u, v] : dag.edges) {
        if (proc_of[u] == proc_of[v])
            continue;
        auto key = std::make_pair(u, proc_of[v]);
        auto it = first_need.find(key);
        if (it == first_need.end())
            first_need[key] = step_of[v];
        else
            it->second = std::min(it->second, step_of[v]);
    }
    for (auto &[key, need] : first_need)
        out.add_send(proc_of[key.first], need - 1, key.first, key.second);
    return true;
}

} // namespace

BspSchedule sequential_schedule(const Dag &dag, const BspParams &params) {
    BspSchedule sched = BspSchedule::empty(params.processors, 1);
    for (int v = 0; v < dag.node_count; ++v)
        sched.add_compute(0, 0, v);
    return sched;
}

BspSchedule greedy_schedule(const Dag &dag, const BspParams &params, const SchedulerConfig &cfg) {
    const int P = params.processors;
    const int n = dag.node_count;
    validate_dag(dag);
    if (n == 0)
        return BspSchedule::empty(P, 1);

    std::vector<Rational> priority = bottom_levels(dag);
    const auto &parents = dag.parents();
    const auto &children = dag.children();

    std::vector<int> remaining(n, 0);
    for (auto &[u, v] : dag.edges) {
        (void)u;
        ++remaining[v];
    }
    std::vector<int> proc_of(n, -1), step_of(n, -1);
    std::vector<char> placed(n, 0);
    std::vector<int> ready;
    for (int v = 0; v < n; ++v)
        if (remaining[v] == 0)
            ready.push_back(v);

    int s = 0;
    std::vector<Rational> load(P, Rational(0));
    int min_progress_procs = static_cast<int>(ceil_of(cfg.max_parallelism_slack * Rational(P)));
    min_progress_procs = std::max(1, std::min(P, min_progress_procs));
    int placed_count = 0;

    while (placed_count < n) {
        // classify ready nodes: placeable procs = all, or the single proc
        // shared by all parents computed in the current superstep
        int best = -1;
        std::uint32_t best_allowed = 0;
        bool any_blocked = false;
        std::uint32_t progress_procs = 0;
        for (int v : ready) {
            std::uint32_t allowed = P >= 32 ? ~0u : (1u << P) - 1;
            for (int u : parents[v])
                if (step_of[u] == s)
                    allowed &= 1u << proc_of[u];
            if (allowed == 0) {
                any_blocked = true;
                continue;
            }
            progress_procs |= allowed;
            if (best < 0 || priority[v] > priority[best] ||
                (priority[v] == priority[best] && v < best)) {
                best = v;
                best_allowed = allowed;
            }
        }

        bool close = best < 0;
        if (!close && any_blocked &&
            std::popcount(progress_procs) < min_progress_procs)
            close = true;
        if (close) {
            ++s;
            load.assign(P, Rational(0));
            continue;
        }

        int target = -1;
        for (int p = 0; p < P; ++p)
            if (best_allowed >> p & 1)
                if (target < 0 || load[p] < load[target])
                    target = p;
        proc_of[best] = target;
        step_of[best] = s;
        placed[best] = 1;
        load[target] += dag.work[best];
        ++placed_count;
        ready.erase(std::find(ready.begin(), ready.end(), best));
        for (int c : children[best])
            if (--remaining[c] == 0)
                ready.push_back(c);
        std::sort(ready.begin(), ready.end());
    }

    BspSchedule sched;
    if (!build_with_lazy_sends(dag, proc_of, step_of, P, s + 1, sched))
        throw Error("internal: greedy placement violated a precedence constraint");
    return sched;
}

namespace {

struct Assignment {
    std::vector<int> proc_of, step_of;
};

Assignment assignment_of(const Dag &dag, const BspSchedule &sched) {
    Assignment a;
    a.proc_of.assign(dag.node_count, -1);
    a.step_of.assign(dag.node_count, -1);
    for (int p = 0; p < sched.P; ++p)
        for (int s = 0; s < sched.S; ++s)
            for (int v : sched.compute[p][s]) {
                if (a.proc_of[v] != -1)
                    throw Error("hill climbing expects a non-replicating schedule");
                a.proc_of[v] = p;
                a.step_of[v] = s;
            }
    for (int v = 0; v < dag.node_count; ++v)
        if (a.proc_of[v] < 0)
            throw Error("hill climbing expects a full schedule");
    return a;
}

// legality of node v's position against its own neighborhood only
bool position_legal(const Dag &dag, const Assignment &a, int v) {
    for (int u : dag.parents()[v])
        if (a.proc_of[u] == a.proc_of[v] ? a.step_of[u] > a.step_of[v]
                                         : a.step_of[u] >= a.step_of[v])
            return false;
    for (int c : dag.children()[v])
        if (a.proc_of[v] == a.proc_of[c] ? a.step_of[v] > a.step_of[c]
                                         : a.step_of[v] >= a.step_of[c])
            return false;
    return true;
}

BspSchedule trim_trailing_empty(BspSchedule sched) {
    while (sched.S > 1) {
        bool empty = true;
        for (int p = 0; p < sched.P && empty; ++p)
            empty = sched.compute[p][sched.S - 1].empty() && sched.comm[p][sched.S - 1].empty();
        if (!empty)
            break;
        --sched.S;
        for (int p = 0; p < sched.P; ++p) {
            sched.compute[p].pop_back();
            sched.comm[p].pop_back();
        }
    }
    return sched;
}

} // namespace

BspSchedule hill_climb(const Dag &dag, const BspSchedule &input, const BspParams &params,
                       const SchedulerConfig &cfg) {
    const int P = input.P;
    const int S = input.S;
    Assignment cur = assignment_of(dag, input);
    BspSchedule best_sched = input;
    Rational best_cost = schedule_cost(dag, input, params);

    int offset = static_cast<int>(cfg.rng_seed % static_cast<std::uint64_t>(dag.node_count ? dag.node_count : 1));
    for (int sweep = 0; sweep < cfg.hill_climb_budget; ++sweep) {
        bool improved = false;
        for (int i = 0; i < dag.node_count; ++i) {
            int v = (i + offset) % dag.node_count;
            int old_p = cur.proc_of[v], old_s = cur.step_of[v];
            // moves of v to any other slot
            for (int p = 0; p < P; ++p)
                for (int s = 0; s < S; ++s) {
                    if (p == old_p && s == old_s)
                        continue;
                    cur.proc_of[v] = p;
                    cur.step_of[v] = s;
                    if (position_legal(dag, cur, v)) {
                        BspSchedule cand;
                        if (build_with_lazy_sends(dag, cur.proc_of, cur.step_of, P, S, cand)) {
                            Rational c = schedule_cost(dag, cand, params);
                            if (c < best_cost) {
                                best_cost = c;
                                best_sched = cand;
                                old_p = p;
                                old_s = s;
                                improved = true;
                                goto moved;
                            }
                        }
                    }
                    cur.proc_of[v] = old_p;
                    cur.step_of[v] = old_s;
                }
        moved:
            cur.proc_of[v] = old_p;
            cur.step_of[v] = old_s;
            // swaps of v with a node on another processor, same superstep
            for (int w = 0; w < dag.node_count; ++w) {
                if (w == v || cur.step_of[w] != old_s || cur.proc_of[w] == old_p)
                    continue;
                int wp = cur.proc_of[w];
                cur.proc_of[v] = wp;
                cur.proc_of[w] = old_p;
                if (position_legal(dag, cur, v) && position_legal(dag, cur, w)) {
                    BspSchedule cand;
                    if (build_with_lazy_sends(dag, cur.proc_of, cur.step_of, P, S, cand)) {
                        Rational c = schedule_cost(dag, cand, params);
                        if (c < best_cost) {
                            best_cost = c;
                            best_sched = cand;
                            improved = true;
                            goto swapped;
                        }
                    }
                }
                cur.proc_of[v] = old_p;
                cur.proc_of[w] = wp;
            }
        swapped:;
        }
        if (!improved)
            break;
    }
    return trim_trailing_empty(best_sched);
}

} // namespace repart
