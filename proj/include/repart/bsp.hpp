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

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "repart/dag.hpp"
#include "repart/rational.hpp"

namespace repart {

struct BspParams {
    int processors = 1;
    Rational g{0}; // per-unit communication cost
    Rational L{0}; // per-superstep synchronization cost
};

struct Send {
    int node;
    int to;
    auto operator<=>(const Send &) const = default;
};

/// A BSP schedule: compute phases V_{p,s} and communication phases
/// Gamma_{p,s} over P processors and S supersteps (0-based indices).
/// Node lists and send lists are kept sorted; two schedules are equal iff
/// their canonical forms are identical.
struct BspSchedule {
    int P = 0;
    int S = 0;
    std::vector<std::vector<std::vector<int>>> compute; // [p][s] sorted nodes
    std::vector<std::vector<std::vector<Send>>> comm;   // [p][s] sorted sends

    static BspSchedule empty(int P, int S);

    void normalize(); // sort all phase lists
    bool operator==(const BspSchedule &) const = default;

    void add_compute(int p, int s, int v);
    void add_send(int p, int s, int v, int to);
    bool erase_send(int p, int s, int v, int to);
    bool computes(int v, int p) const; // v in some V_{p,s}
};

constexpr int kNever = std::numeric_limits<int>::max();

/// earliest[v][p]: first superstep where v is already present on p
/// (computed at s' <= s, or received at s' < s), or kNever.
struct PresenceMap {
    std::vector<std::vector<int>> earliest;
    int at(int v, int p) const { return earliest[v][p]; }
    bool present_by(int v, int p, int s) const { return earliest[v][p] <= s; }
};

PresenceMap compute_presence(const Dag &dag, const BspSchedule &sched);

enum class ViolationKind {
    MissingParent,   // computed node whose parent is not present
    SenderLacksValue,
    Uncovered,       // node computed nowhere
    RecomputedOnProc,
    NotDisjoint,     // replication found while disallowed
    SelfSend,
    DuplicateSend,
};

struct Violation {
    ViolationKind kind;
    int node;
    int proc;
    int superstep;
};

std::string describe(const Violation &v);

/// Checks parent presence, sender presence, full cover, same-processor
/// recomputation, self-sends, per-superstep duplicate sends, and (when
/// replication is disallowed) disjointness. Throws IndexError on malformed
/// indices; semantic problems come back as the violation list.
std::vector<Violation> validate_schedule(const Dag &dag, const BspSchedule &sched,
                                         const BspParams &params, bool allow_replication);

struct SuperstepCosts {
    std::vector<Rational> work; // max_p sum of omega over V_{p,s}
    std::vector<Rational> comm; // 0 if the superstep moves nothing, else L + g*h_s
    Rational total{0};
};

SuperstepCosts superstep_costs(const Dag &dag, const BspSchedule &sched, const BspParams &params);

inline Rational schedule_cost(const Dag &dag, const BspSchedule &sched, const BspParams &params) {
    return superstep_costs(dag, sched, params).total;
}

/// total cost minus omega(V)/P, the unavoidable compute floor.
Rational surplus_cost(const Dag &dag, const BspSchedule &sched, const BspParams &params);

/// Text format: header `P S`, then `compute p s v` and `send p s v p'`
/// lines (0-based ids). Writing a canonical schedule and re-reading it is
/// bit-exact.
void write_schedule(std::ostream &out, const BspSchedule &sched);
BspSchedule read_schedule(std::istream &in);

} // namespace repart
