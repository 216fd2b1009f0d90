#pragma once

// Seeded random task-set generation: Erdos-Renyi DAGs over a random vertex
// permutation (edges only go forward in permutation order, so graphs are
// acyclic by construction), weak-connectivity repair, and period assignment
// from a sampled tensity target.

#include <cstdint>
#include <utility>

#include "rng.hpp"
#include "task.hpp"

namespace dagsched {

struct GenConfig {
    std::pair<int, int> n_tasks_range{2, 6};
    std::pair<int, int> n_vertices_range{10, 30};
    std::pair<long long, long long> wcet_range{5, 15};
    Rat edge_prob = rat(1, 10);
    // gamma_up is drawn per set from (lo, hi] on the 1/1000 grid; lo == hi
    // pins it. Per-task tensity targets are gamma_up scaled by a uniform
    // fraction k/1000, k in [1, 1000].
    std::pair<Rat, Rat> gamma_up_range{rat(1, 10), rat(3, 5)};
    Rat target_normalized_utilization = rat(1, 2);

    // Tractable sizes for property suites and CI runs.
    static GenConfig desk();
    // Vertex counts [50,150], WCETs [20,50], n in [2,10].
    static GenConfig paper_scale();
};

// Vertex count, WCETs and edges from one structure stream; period left 0.
DagTask gen_dag(Rng& rng, const GenConfig& cfg, int task_id);

// T = ceil(L / gamma_target); the realized tensity L/T never exceeds the
// target and L <= T always holds.
DagTask assign_period(const DagTask& task, const Rat& gamma_target);

struct GeneratedSet {
    TaskSet set;
    Rat gamma_up;
};

// Deterministic under (seed, cfg); per-task substreams are derived from the
// seed and the task index, so tasks are independent of the set size.
GeneratedSet gen_taskset(std::uint64_t seed, const GenConfig& cfg);

// m = ceil(U_sum / U); the realized normalized utilization never exceeds U.
int processors_for(const TaskSet& set, const Rat& target_normalized_utilization);

}  // namespace dagsched
