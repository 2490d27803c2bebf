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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "repart/bsp.hpp"
#include "repart/errors.hpp"
#include "test_support.hpp"

using namespace repart;
using namespace repart::testing;

namespace {

// Second implementation of the cost formula with a different traversal order
// (receive-major), used as the oracle for superstep_costs.
Rational cost_redundant(const Dag &dag, const BspSchedule &sched, const BspParams &params) {
    Rational total(0);
    for (int s = 0; s < sched.S; ++s) {
        Rational work(0);
        for (int p = sched.P - 1; p >= 0; --p) {
            Rational w(0);
            for (int v : sched.compute[p][s])
                w += dag.work[v];
            if (w > work)
                work = w;
        }
        Rational h(0);
        bool any = false;
        for (int target = 0; target < sched.P; ++target) {
            Rational incoming(0);
            for (int q = 0; q < sched.P; ++q)
                for (const Send &send : sched.comm[q][s])
                    if (send.to == target) {
                        incoming += dag.comm[send.node];
                        any = true;
                    }
            if (incoming > h)
                h = incoming;
        }
        for (int q = 0; q < sched.P; ++q) {
            Rational outgoing(0);
            for (const Send &send : sched.comm[q][s]) {
                outgoing += dag.comm[send.node];
                any = true;
            }
            if (outgoing > h)
                h = outgoing;
        }
        total += work + (any ? params.L + params.g * h : Rational(0));
    }
    return total;
}

// A valid random schedule. Node steps follow the longest-path depth (clamped
// to the last superstep), so cross-processor edges always go strictly
// forward; everything at the clamp lands on processor 0 where in-phase
// ordering covers the remaining dependencies. Sends are materialized lazily.
BspSchedule random_valid_schedule(const Dag &dag, int P, int S, Rng &rng) {
    BspSchedule sched = BspSchedule::empty(P, S);
    std::vector<int> depth(dag.node_count, 0);
    const auto &parents = dag.parents();
    std::vector<int> order = validate_dag(dag);
    for (int v : order)
        for (int u : parents[v])
            depth[v] = std::max(depth[v], depth[u] + 1);
    std::vector<int> proc_of(dag.node_count), step_of(dag.node_count);
    for (int v : order) {
        step_of[v] = std::min(depth[v], S - 1);
        proc_of[v] = depth[v] >= S - 1 ? 0 : static_cast<int>(rng.below(P));
        sched.add_compute(proc_of[v], step_of[v], v);
    }
    for (auto &[u, v] : dag.edges) {
        if (proc_of[u] == proc_of[v])
            continue;
        int s_send = step_of[v] - 1;
        REQUIRE(s_send >= step_of[u]);
        if (!std::binary_search(sched.comm[proc_of[u]][s_send].begin(),
                                sched.comm[proc_of[u]][s_send].end(), Send{u, proc_of[v]}))
            sched.add_send(proc_of[u], s_send, u, proc_of[v]);
    }
    return sched;
}

} // namespace

TEST_CASE("single node schedule is valid, costs its work") {
    Dag dag = Dag::uniform(1, {});
    BspSchedule sched = BspSchedule::empty(1, 1);
    sched.add_compute(0, 0, 0);
    BspParams params{1, Rational(4), Rational(20)};
    CHECK(validate_schedule(dag, sched, params, false).empty());
    CHECK(schedule_cost(dag, sched, params) == Rational(1));
}

TEST_CASE("replica addition with parents present stays valid") {
    // two parents a,b; child v. a on proc 0, b computed on proc 1; a sent to
    // proc 1 in superstep 0; v computed on proc 0 in superstep 1 (b sent back).
    // By superstep 2 both parents are present on proc 1, so adding v there
    // keeps the schedule valid.
    Dag dag = Dag::uniform(3, {{0, 2}, {1, 2}});
    BspSchedule sched = BspSchedule::empty(2, 3);
    sched.add_compute(0, 0, 0); // a
    sched.add_compute(1, 0, 1); // b
    sched.add_send(0, 0, 0, 1); // a -> proc 1
    sched.add_send(1, 0, 1, 0); // b -> proc 0
    sched.add_compute(0, 1, 2); // v on proc 0
    BspParams params{2, Rational(1), Rational(1)};
    REQUIRE(validate_schedule(dag, sched, params, false).empty());

    BspSchedule replicated = sched;
    replicated.add_compute(1, 2, 2); // v replicated on proc 1
    CHECK(validate_schedule(dag, replicated, params, true).empty());
    // but it is a disjointness violation if replication is disallowed
    auto violations = validate_schedule(dag, replicated, params, false);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == ViolationKind::NotDisjoint);
}

TEST_CASE("deleting a parent's send is flagged on the dependent computation") {
    Rng rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        Dag dag = random_dag(12, 8, rng);
        BspSchedule sched = random_valid_schedule(dag, 3, 4, rng);
        BspParams params{3, Rational(2), Rational(5)};
        REQUIRE(validate_schedule(dag, sched, params, false).empty());
        // delete the first send found, if any
        bool deleted = false;
        Send victim{};
        for (int p = 0; p < sched.P && !deleted; ++p)
            for (int s = 0; s < sched.S && !deleted; ++s)
                if (!sched.comm[p][s].empty()) {
                    victim = sched.comm[p][s].front();
                    sched.comm[p][s].erase(sched.comm[p][s].begin());
                    deleted = true;
                }
        if (!deleted)
            continue;
        auto violations = validate_schedule(dag, sched, params, false);
        CHECK(!violations.empty());
        for (auto &viol : violations) {
            CHECK(viol.kind == ViolationKind::MissingParent);
            CHECK(viol.proc == victim.to);
            // the flagged computation depends on the deleted value
            const auto &parents = dag.parents()[viol.node];
            CHECK(std::find(parents.begin(), parents.end(), victim.node) != parents.end());
        }
    }
}

TEST_CASE("one superstep, all nodes on one processor: compute-only cost n") {
    int n = 7;
    Dag dag = Dag::uniform(n, {{0, 1}, {1, 2}, {2, 3}});
    BspSchedule sched = BspSchedule::empty(2, 1);
    for (int v = 0; v < n; ++v)
        sched.add_compute(0, 0, v);
    BspParams params{2, Rational(4), Rational(20)};
    CHECK(schedule_cost(dag, sched, params) == Rational(n));
}

TEST_CASE("single unit send with g=4, L=20 costs 24") {
    Dag dag = Dag::uniform(2, {{0, 1}});
    BspSchedule sched = BspSchedule::empty(2, 2);
    sched.add_compute(0, 0, 0);
    sched.add_send(0, 0, 0, 1);
    sched.add_compute(1, 1, 1);
    BspParams params{2, Rational(4), Rational(20)};
    auto costs = superstep_costs(dag, sched, params);
    CHECK(costs.comm[0] == Rational(24));
    CHECK(costs.comm[1] == Rational(0));
    CHECK(costs.total == Rational(1 + 24 + 1));
}

TEST_CASE("random valid schedules: cost equals the redundant evaluator") {
    Rng rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        Dag dag = random_dag(rng.range(5, 15), rng.range(0, 10), rng);
        for (int v = 0; v < dag.node_count; ++v) {
            dag.work[v] = Rational(rng.range(1, 5));
            dag.comm[v] = Rational(rng.range(1, 3), rng.range(1, 2));
        }
        BspSchedule sched = random_valid_schedule(dag, rng.range(2, 3), rng.range(2, 4), rng);
        BspParams params{sched.P, Rational(rng.range(0, 8)), Rational(rng.range(0, 30))};
        REQUIRE(validate_schedule(dag, sched, params, false).empty());
        CHECK(schedule_cost(dag, sched, params) == cost_redundant(dag, sched, params));
    }
}

TEST_CASE("surplus cost identities") {
    // perfectly balanced comm-free single superstep: surplus 0
    Dag dag = Dag::uniform(4, {});
    BspSchedule sched = BspSchedule::empty(2, 1);
    sched.add_compute(0, 0, 0);
    sched.add_compute(0, 0, 1);
    sched.add_compute(1, 0, 2);
    sched.add_compute(1, 0, 3);
    BspParams params{2, Rational(4), Rational(20)};
    CHECK(surplus_cost(dag, sched, params) == Rational(0));

    // single-processor schedule of n unit nodes with P=2: surplus n/2
    BspSchedule seq = BspSchedule::empty(2, 1);
    for (int v = 0; v < 4; ++v)
        seq.add_compute(0, 0, v);
    CHECK(surplus_cost(dag, seq, params) == Rational(2));
}

TEST_CASE("surplus equals total minus omega(V)/P on random schedules") {
    Rng rng(59);
    for (int trial = 0; trial < 20; ++trial) {
        Dag dag = random_dag(10, 6, rng);
        BspSchedule sched = random_valid_schedule(dag, 2, 3, rng);
        BspParams params{2, Rational(3), Rational(7)};
        CHECK(surplus_cost(dag, sched, params) ==
              schedule_cost(dag, sched, params) - dag.total_work() / Rational(2));
    }
}

TEST_CASE("removing a send never increases total cost") {
    Rng rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        Dag dag = random_dag(10, 8, rng);
        BspSchedule sched = random_valid_schedule(dag, 3, 3, rng);
        BspParams params{3, Rational(4), Rational(20)};
        Rational before = schedule_cost(dag, sched, params);
        for (int p = 0; p < sched.P; ++p)
            for (int s = 0; s < sched.S; ++s)
                if (!sched.comm[p][s].empty()) {
                    BspSchedule cut = sched;
                    cut.comm[p][s].erase(cut.comm[p][s].begin());
                    CHECK(schedule_cost(dag, cut, params) <= before);
                }
    }
}

TEST_CASE("cost invariant under processor relabeling") {
    Rng rng(67);
    Dag dag = random_dag(10, 6, rng);
    BspSchedule sched = random_valid_schedule(dag, 3, 3, rng);
    BspParams params{3, Rational(2), Rational(9)};
    BspSchedule relabeled = BspSchedule::empty(3, 3);
    int perm[3] = {2, 0, 1};
    for (int p = 0; p < 3; ++p)
        for (int s = 0; s < 3; ++s) {
            for (int v : sched.compute[p][s])
                relabeled.add_compute(perm[p], s, v);
            for (const Send &send : sched.comm[p][s])
                relabeled.add_send(perm[p], s, send.node, perm[send.to]);
        }
    CHECK(schedule_cost(dag, sched, params) == schedule_cost(dag, relabeled, params));
}

TEST_CASE("schedule text round-trip is bit-exact") {
    Rng rng(71);
    Dag dag = random_dag(8, 5, rng);
    BspSchedule sched = random_valid_schedule(dag, 2, 3, rng);
    std::ostringstream os;
    write_schedule(os, sched);
    std::istringstream is(os.str());
    BspSchedule back = read_schedule(is);
    CHECK(back == sched);
    std::ostringstream os2;
    write_schedule(os2, back);
    CHECK(os2.str() == os.str());
}

TEST_CASE("validator flags self-sends and duplicate sends") {
    Dag dag = Dag::uniform(2, {{0, 1}});
    BspSchedule sched = BspSchedule::empty(2, 2);
    sched.add_compute(0, 0, 0);
    sched.add_send(0, 0, 0, 0); // self send
    sched.add_send(0, 0, 0, 1);
    sched.add_send(0, 0, 0, 1); // duplicate
    sched.add_compute(1, 1, 1);
    BspParams params{2, Rational(1), Rational(1)};
    auto violations = validate_schedule(dag, sched, params, false);
    bool self_send = false, duplicate = false;
    for (auto &v : violations) {
        self_send |= v.kind == ViolationKind::SelfSend;
        duplicate |= v.kind == ViolationKind::DuplicateSend;
    }
    CHECK(self_send);
    CHECK(duplicate);
}
