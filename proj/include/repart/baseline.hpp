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

#include "repart/bsp.hpp"

namespace repart {

struct SchedulerConfig {
    // Superstep opening: close the current superstep once some ready node is
    // blocked on cross-processor data AND fewer than ceil(slack * P)
    // processors can still make progress.
    Rational max_parallelism_slack{1, 2};
    // Hard cap on hill-climbing sweeps; the climb stops at the first sweep
    // that accepts no move regardless.
    int hill_climb_budget = 50;
    // Rotates the hill-climbing scan offset. The passes are deterministic
    // for a fixed seed.
    std::uint64_t rng_seed = 0;
};

/// Non-replicating greedy BSP list scheduler. Nodes are taken by weighted
/// longest-path-to-sink priority (ties by id) and placed on the processor
/// where all parents are present and the current compute load is least;
/// cross-processor values are sent in the latest superstep before first use.
BspSchedule greedy_schedule(const Dag &dag, const BspParams &params, const SchedulerConfig &cfg);

/// Strict-improvement local search over node moves (to another processor
/// and/or superstep, with sends rebuilt lazily) and same-superstep
/// cross-processor swaps. Output cost <= input cost; non-replicating
/// validity is preserved.
BspSchedule hill_climb(const Dag &dag, const BspSchedule &sched, const BspParams &params,
                       const SchedulerConfig &cfg);

/// Everything on processor 0 in one superstep: cost omega(V), no L charged.
BspSchedule sequential_schedule(const Dag &dag, const BspParams &params);

} // namespace repart
