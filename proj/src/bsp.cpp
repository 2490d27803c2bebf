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

#include "repart/bsp.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "repart/errors.hpp"

namespace repart {

BspSchedule BspSchedule::empty(int P, int S) {
    BspSchedule s;
    s.P = P;
    s.S = S;
    s.compute.assign(P, std::vector<std::vector<int>>(S));
    s.comm.assign(P, std::vector<std::vector<Send>>(S));
    return s;
}

void BspSchedule::normalize() {
    for (auto &per_proc : compute)
        for (auto &phase : per_proc)
            std::sort(phase.begin(), phase.end());
    for (auto &per_proc : comm)
        for (auto &phase : per_proc)
            std::sort(phase.begin(), phase.end());
}

void BspSchedule::add_compute(int p, int s, int v) {
    auto &phase = compute[p][s];
    phase.insert(std::lower_bound(phase.begin(), phase.end(), v), v);
}

void BspSchedule::add_send(int p, int s, int v, int to) {
    auto &phase = comm[p][s];
    Send send{v, to};
    phase.insert(std::lower_bound(phase.begin(), phase.end(), send), send);
}

bool BspSchedule::erase_send(int p, int s, int v, int to) {
    auto &phase = comm[p][s];
    Send send{v, to};
    auto it = std::lower_bound(phase.begin(), phase.end(), send);
    if (it == phase.end() || !(*it == send))
        return false;
    phase.erase(it);
    return true;
}

bool BspSchedule::computes(int v, int p) const {
    for (int s = 0; s < S; ++s)
        if (std::binary_search(compute[p][s].begin(), compute[p][s].end(), v))
            return true;
    return false;
}

PresenceMap compute_presence(const Dag &dag, const BspSchedule &sched) {
    PresenceMap map;
    map.earliest.assign(dag.node_count, std::vector<int>(sched.P, kNever));
    for (int p = 0; p < sched.P; ++p)
        for (int s = 0; s < sched.S; ++s)
            for (int v : sched.compute[p][s])
                map.earliest[v][p] = std::min(map.earliest[v][p], s);
    for (int p = 0; p < sched.P; ++p)
        for (int s = 0; s < sched.S; ++s)
            for (const Send &send : sched.comm[p][s])
                if (send.to != p) // self-sends are invalid and grant nothing
                    map.earliest[send.node][send.to] =
                        std::min(map.earliest[send.node][send.to], s + 1);
    return map;
}

namespace {

void check_indices(const Dag &dag, const BspSchedule &sched) {
    if (sched.P <= 0 || sched.S <= 0)
        throw IndexError("schedule needs P >= 1 and S >= 1");
    if (static_cast<int>(sched.compute.size()) != sched.P ||
        static_cast<int>(sched.comm.size()) != sched.P)
        throw IndexError("schedule phase arrays do not match P");
    for (int p = 0; p < sched.P; ++p) {
        if (static_cast<int>(sched.compute[p].size()) != sched.S ||
            static_cast<int>(sched.comm[p].size()) != sched.S)
            throw IndexError("schedule phase arrays do not match S");
        for (int s = 0; s < sched.S; ++s) {
            for (int v : sched.compute[p][s])
                if (v < 0 || v >= dag.node_count)
                    throw IndexError("computed node id out of range");
            for (const Send &send : sched.comm[p][s]) {
                if (send.node < 0 || send.node >= dag.node_count)
                    throw IndexError("sent node id out of range");
                if (send.to < 0 || send.to >= sched.P)
                    throw IndexError("send target out of range");
            }
        }
    }
}

} // namespace

std::string describe(const Violation &v) {
    const char *what = nullptr;
    switch (v.kind) {
    case ViolationKind::MissingParent:
        what = "parent not present for computation";
        break;
    case ViolationKind::SenderLacksValue:
        what = "sender does not hold the value";
        break;
    case ViolationKind::Uncovered:
        what = "node never computed";
        break;
    case ViolationKind::RecomputedOnProc:
        what = "node computed twice on one processor";
        break;
    case ViolationKind::NotDisjoint:
        what = "node replicated while replication is disallowed";
        break;
    case ViolationKind::SelfSend:
        what = "send targets its own sender";
        break;
    case ViolationKind::DuplicateSend:
        what = "duplicate send in one superstep";
        break;
    }
    std::ostringstream os;
    os << what << " (node " << v.node << ", proc " << v.proc << ", superstep " << v.superstep
       << ")";
    return os.str();
}

std::vector<Violation> validate_schedule(const Dag &dag, const BspSchedule &sched,
                                         const BspParams &params, bool allow_replication) {
    check_indices(dag, sched);
    if (params.processors != sched.P)
        throw IndexError("schedule P does not match params");
    std::vector<Violation> out;
    PresenceMap presence = compute_presence(dag, sched);
    const auto &parents = dag.parents();

    std::vector<int> copies(dag.node_count, 0);
    for (int p = 0; p < sched.P; ++p) {
        std::vector<int> seen_on_proc; // nodes computed on p, for recompute check
        for (int s = 0; s < sched.S; ++s) {
            for (int v : sched.compute[p][s]) {
                for (int u : parents[v])
                    if (!presence.present_by(u, p, s))
                        out.push_back({ViolationKind::MissingParent, v, p, s});
                seen_on_proc.push_back(v);
                ++copies[v];
            }
            const auto &phase = sched.comm[p][s];
            for (size_t i = 0; i < phase.size(); ++i) {
                const Send &send = phase[i];
                if (send.to == p)
                    out.push_back({ViolationKind::SelfSend, send.node, p, s});
                else if (!presence.present_by(send.node, p, s))
                    out.push_back({ViolationKind::SenderLacksValue, send.node, p, s});
                if (i > 0 && phase[i - 1] == send)
                    out.push_back({ViolationKind::DuplicateSend, send.node, p, s});
            }
        }
        std::sort(seen_on_proc.begin(), seen_on_proc.end());
        for (size_t i = 1; i < seen_on_proc.size(); ++i)
            if (seen_on_proc[i] == seen_on_proc[i - 1])
                out.push_back({ViolationKind::RecomputedOnProc, seen_on_proc[i], p, -1});
    }
    for (int v = 0; v < dag.node_count; ++v) {
        if (copies[v] == 0)
            out.push_back({ViolationKind::Uncovered, v, -1, -1});
        if (!allow_replication) {
            int procs_with_v = 0;
            for (int p = 0; p < sched.P; ++p)
                if (sched.computes(v, p))
                    ++procs_with_v;
            if (procs_with_v > 1)
                out.push_back({ViolationKind::NotDisjoint, v, -1, -1});
        }
    }
    return out;
}

SuperstepCosts superstep_costs(const Dag &dag, const BspSchedule &sched, const BspParams &params) {
    check_indices(dag, sched);
    SuperstepCosts costs;
    costs.work.assign(sched.S, Rational(0));
    costs.comm.assign(sched.S, Rational(0));
    for (int s = 0; s < sched.S; ++s) {
        Rational work_max(0);
        for (int p = 0; p < sched.P; ++p) {
            Rational w(0);
            for (int v : sched.compute[p][s])
                w += dag.work[v];
            work_max = std::max(work_max, w);
        }
        costs.work[s] = work_max;

        std::vector<Rational> sent(sched.P, Rational(0)), recv(sched.P, Rational(0));
        bool any = false;
        for (int p = 0; p < sched.P; ++p)
            for (const Send &send : sched.comm[p][s]) {
                any = true;
                sent[p] += dag.comm[send.node];
                recv[send.to] += dag.comm[send.node];
            }
        if (any) {
            Rational h(0);
            for (int p = 0; p < sched.P; ++p)
                h = std::max(h, std::max(sent[p], recv[p]));
            costs.comm[s] = params.L + params.g * h;
        }
        costs.total += costs.work[s] + costs.comm[s];
    }
    return costs;
}

Rational surplus_cost(const Dag &dag, const BspSchedule &sched, const BspParams &params) {
    return superstep_costs(dag, sched, params).total -
           dag.total_work() / Rational(params.processors);
}

void write_schedule(std::ostream &out, const BspSchedule &sched) {
    out << sched.P << ' ' << sched.S << '\n';
    for (int s = 0; s < sched.S; ++s)
        for (int p = 0; p < sched.P; ++p)
            for (int v : sched.compute[p][s])
                out << "compute " << p << ' ' << s << ' ' << v << '\n';
    for (int s = 0; s < sched.S; ++s)
        for (int p = 0; p < sched.P; ++p)
            for (const Send &send : sched.comm[p][s])
                out << "send " << p << ' ' << s << ' ' << send.node << ' ' << send.to << '\n';
}

BspSchedule read_schedule(std::istream &in) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("schedule file: missing header");
    std::istringstream header(line);
    int P, S;
    if (!(header >> P >> S) || P <= 0 || S <= 0)
        throw ParseError("schedule file: malformed header (want `P S`)");
    BspSchedule sched = BspSchedule::empty(P, S);
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "compute") {
            int p, s, v;
            if (!(ls >> p >> s >> v))
                throw ParseError("schedule line " + std::to_string(lineno) + ": malformed compute");
            if (p < 0 || p >= P || s < 0 || s >= S)
                throw ParseError("schedule line " + std::to_string(lineno) + ": index out of range");
            sched.compute[p][s].push_back(v);
        } else if (tag == "send") {
            int p, s, v, to;
            if (!(ls >> p >> s >> v >> to))
                throw ParseError("schedule line " + std::to_string(lineno) + ": malformed send");
            if (p < 0 || p >= P || s < 0 || s >= S || to < 0 || to >= P)
                throw ParseError("schedule line " + std::to_string(lineno) + ": index out of range");
            sched.comm[p][s].push_back({v, to});
        } else {
            throw ParseError("schedule line " + std::to_string(lineno) + ": unknown tag " + tag);
        }
    }
    sched.normalize();
    return sched;
}

} // namespace repart
