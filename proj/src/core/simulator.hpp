#pragma once

// Discrete-time preemptive global scheduler (G-RM / G-EDF) with free
// migration. Time advances in unit steps; each step ranks the active jobs,
// hands the m processors to eligible vertices in rank order (vertex-id order
// within a job), and executes one unit on each. Used to falsify sufficient
// tests, never to prove schedulability.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rng.hpp"
#include "task.hpp"

namespace dagsched {

enum class Policy { rm, edf };

struct Release {
    int task_index = 0;  // index into TaskSet::tasks
    long long time = 0;
};

struct ReleasePattern {
    enum class Kind { synchronous, offsets, explicit_list };
    Kind kind = Kind::synchronous;
    std::vector<long long> offsets;   // per task, periodic from the offset
    std::vector<Release> releases;    // one job each, explicit_list only

    static ReleasePattern synchronous() { return {}; }
    static ReleasePattern with_offsets(std::vector<long long> offs) {
        ReleasePattern p;
        p.kind = Kind::offsets;
        p.offsets = std::move(offs);
        return p;
    }
    static ReleasePattern explicit_jobs(std::vector<Release> rel) {
        ReleasePattern p;
        p.kind = Kind::explicit_list;
        p.releases = std::move(rel);
        return p;
    }
};

struct MissInfo {
    int task_id = 0;
    long long release = 0;
    long long deadline = 0;
    long long unfinished = 0;  // remaining work at the deadline
};

struct JobRecord {
    int task_id = 0;
    long long release = 0;
    long long finish = 0;
    long long response = 0;
};

struct SimResult {
    long long horizon = 0;
    std::optional<MissInfo> first_miss;
    std::vector<JobRecord> completed;  // in completion order
    std::vector<int> busy;             // busy processors per step (optional)
    long long executed_work = 0;
};

struct SimOptions {
    Policy policy = Policy::rm;
    ReleasePattern pattern;
    long long horizon = 0;
    bool stop_on_first_miss = true;
    bool record_busy_profile = true;
    std::ostream* trace = nullptr;  // one line per executed step
};

SimResult simulate(const TaskSet& set, int m, const SimOptions& opt);

// lcm of the periods, saturated at cap.
long long hyperperiod_capped(const TaskSet& set, long long cap);

struct Counterexample {
    std::string pattern;  // "synchronous" or "offsets trial k"
    std::vector<long long> offsets;
    MissInfo miss;
};

// Synchronous periodic release over min(hyperperiod, cap) steps, then
// `trials` random-offset periodic patterns. Returns the first miss found.
std::optional<Counterexample> falsify(const TaskSet& set, int m, int trials,
                                      std::uint64_t seed,
                                      long long horizon_cap = 1'000'000);

}  // namespace dagsched
