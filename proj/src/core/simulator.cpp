#include "simulator.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace dagsched {

namespace {

struct SimJob {
    int task_index = 0;
    int task_id = 0;
    int job_index = 0;  // per-task sequence number
    long long release = 0;
    long long deadline = 0;
    long long period = 0;
    std::vector<long long> remaining;  // per vertex (graph index order)
    std::vector<int> pending;          // unfinished predecessor count
    std::vector<int> eligible;         // vertex indices, ascending (== id order)
    long long left = 0;                // total remaining work
    int finished_vertices = 0;
    bool missed = false;

    bool complete(int nv) const { return finished_vertices == nv; }
};

// Vertex finished: unlock successors; zero-wcet successors finish instantly.
void cascade_finish(SimJob& job, const TaskGraph& g, int v) {
    std::vector<int> stack{v};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        ++job.finished_vertices;
        for (int w : g.succs[u]) {
            if (--job.pending[w] == 0) {
                if (g.wcet[w] == 0) {
                    stack.push_back(w);
                } else {
                    job.eligible.insert(
                        std::lower_bound(job.eligible.begin(), job.eligible.end(), w), w);
                }
            }
        }
    }
}

SimJob make_job(const TaskSet& set, const std::vector<TaskGraph>& graphs, int task_index,
                int job_index, long long release) {
    const TaskGraph& g = graphs[task_index];
    SimJob job;
    job.task_index = task_index;
    job.task_id = set.tasks[task_index].task_id;
    job.job_index = job_index;
    job.release = release;
    job.period = set.tasks[task_index].period;
    job.deadline = release + job.period;
    job.remaining.assign(g.size(), 0);
    job.pending.assign(g.size(), 0);
    for (std::size_t v = 0; v < g.size(); ++v) {
        job.remaining[v] = g.wcet[v];
        job.pending[v] = static_cast<int>(g.preds[v].size());
        job.left += g.wcet[v];
    }
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (job.pending[v] == 0) {
            if (g.wcet[v] == 0)
                cascade_finish(job, g, static_cast<int>(v));
            else
                job.eligible.push_back(static_cast<int>(v));
        }
    }
    return job;
}

}  // namespace

long long hyperperiod_capped(const TaskSet& set, long long cap) {
    if (set.tasks.empty()) throw Error(Errc::empty_task_set, "hyperperiod of empty set");
    mpz_class l(1);
    const mpz_class cap_z(static_cast<long>(cap));
    for (const auto& t : set.tasks) {
        mpz_class p(static_cast<long>(t.period));
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.get_mpz_t());
        if (l > cap_z) return cap;
    }
    return l.get_si();
}

SimResult simulate(const TaskSet& set, int m, const SimOptions& opt) {
    if (m < 1) throw Error(Errc::invalid_argument, "processor count must be >= 1");
    if (opt.horizon < 1) throw Error(Errc::horizon_nonpositive, "horizon must be >= 1");
    if (set.tasks.empty()) throw Error(Errc::empty_task_set, "nothing to simulate");
    const std::size_t n = set.tasks.size();
    if (opt.pattern.kind == ReleasePattern::Kind::offsets && opt.pattern.offsets.size() != n)
        throw Error(Errc::invalid_argument, "one offset per task required");

    std::vector<TaskGraph> graphs;
    graphs.reserve(n);
    for (const auto& t : set.tasks) graphs.push_back(TaskGraph::build(t));

    // Periodic next-release bookkeeping (synchronous is offsets all-zero).
    const bool periodic = opt.pattern.kind != ReleasePattern::Kind::explicit_list;
    std::vector<long long> next_release(n, 0);
    if (opt.pattern.kind == ReleasePattern::Kind::offsets)
        next_release = opt.pattern.offsets;
    std::vector<Release> explicit_queue = opt.pattern.releases;
    for (const auto& r : explicit_queue)
        if (r.time < 0) throw Error(Errc::invalid_argument, "release times must be >= 0");
    std::stable_sort(explicit_queue.begin(), explicit_queue.end(),
                     [](const Release& a, const Release& b) { return a.time < b.time; });
    std::size_t explicit_pos = 0;
    std::vector<int> job_counter(n, 0);

    SimResult res;
    res.horizon = opt.horizon;
    if (opt.record_busy_profile) res.busy.assign(static_cast<std::size_t>(opt.horizon), 0);

    std::vector<SimJob> active;
    auto release_due = [&](long long t) {
        if (periodic) {
            for (std::size_t i = 0; i < n; ++i) {
                while (next_release[i] <= t) {
                    if (next_release[i] == t)
                        active.push_back(make_job(set, graphs, static_cast<int>(i),
                                                  job_counter[i]++, t));
                    next_release[i] += set.tasks[i].period;
                }
            }
        } else {
            while (explicit_pos < explicit_queue.size() &&
                   explicit_queue[explicit_pos].time <= t) {
                const Release& r = explicit_queue[explicit_pos];
                if (r.task_index < 0 || r.task_index >= static_cast<int>(n))
                    throw Error(Errc::invalid_argument, "release references missing task");
                if (r.time == t)
                    active.push_back(
                        make_job(set, graphs, r.task_index, job_counter[r.task_index]++, t));
                ++explicit_pos;
            }
        }
    };
    auto next_event_after = [&](long long t) -> long long {
        long long best = opt.horizon;
        if (periodic) {
            for (std::size_t i = 0; i < n; ++i) best = std::min(best, next_release[i]);
        } else if (explicit_pos < explicit_queue.size()) {
            best = std::min(best, explicit_queue[explicit_pos].time);
        }
        return std::max(best, t + 1);
    };

    auto rank_less = [&](const SimJob& a, const SimJob& b) {
        if (opt.policy == Policy::rm) {
            if (a.period != b.period) return a.period < b.period;
        } else {
            if (a.deadline != b.deadline) return a.deadline < b.deadline;
        }
        if (a.task_id != b.task_id) return a.task_id < b.task_id;
        return a.release < b.release;
    };

    long long t = 0;
    while (t < opt.horizon) {
        release_due(t);

        // Deadline audit before executing [t, t+1).
        for (auto& job : active) {
            if (!job.missed && job.deadline <= t && job.left > 0) {
                job.missed = true;
                if (!res.first_miss)
                    res.first_miss = MissInfo{job.task_id, job.release, job.deadline, job.left};
            }
        }
        if (res.first_miss && opt.stop_on_first_miss) return res;

        if (active.empty()) {
            t = next_event_after(t);
            continue;
        }

        std::sort(active.begin(), active.end(), rank_less);

        int procs = m;
        std::vector<std::pair<SimJob*, int>> executing;
        for (auto& job : active) {
            if (procs == 0) break;
            for (int v : job.eligible) {
                executing.push_back({&job, v});
                if (--procs == 0) break;
            }
        }
        if (opt.trace && !executing.empty()) {
            *opt.trace << t;
            int proc = 0;
            for (auto& [job, v] : executing)
                *opt.trace << " (" << proc++ << "," << job->task_id << "#" << job->job_index
                           << "," << graphs[job->task_index].ids[v] << ")";
            *opt.trace << "\n";
        }
        if (opt.record_busy_profile) res.busy[static_cast<std::size_t>(t)] =
            static_cast<int>(executing.size());
        res.executed_work += static_cast<long long>(executing.size());

        for (auto& [job, v] : executing) {
            if (--job->remaining[v] == 0) {
                auto it = std::lower_bound(job->eligible.begin(), job->eligible.end(), v);
                job->eligible.erase(it);
                cascade_finish(*job, graphs[job->task_index], v);
            }
            --job->left;
        }

        // Retire finished jobs.
        for (std::size_t i = 0; i < active.size();) {
            SimJob& job = active[i];
            if (job.complete(static_cast<int>(graphs[job.task_index].size()))) {
                res.completed.push_back(
                    {job.task_id, job.release, t + 1, t + 1 - job.release});
                active[i] = std::move(active.back());
                active.pop_back();
            } else {
                ++i;
            }
        }
        ++t;
    }

    // Jobs whose deadline lands exactly on the horizon still count.
    for (auto& job : active) {
        if (!job.missed && job.deadline <= opt.horizon && job.left > 0 && !res.first_miss)
            res.first_miss = MissInfo{job.task_id, job.release, job.deadline, job.left};
    }
    return res;
}

std::optional<Counterexample> falsify(const TaskSet& set, int m, int trials,
                                      std::uint64_t seed, long long horizon_cap) {
    if (m < 1) throw Error(Errc::invalid_argument, "processor count must be >= 1");
    if (trials < 0) throw Error(Errc::invalid_argument, "trials must be >= 0");
    if (horizon_cap < 1) throw Error(Errc::horizon_nonpositive, "horizon cap must be >= 1");

    const long long hyper = hyperperiod_capped(set, horizon_cap);

    SimOptions opt;
    opt.policy = Policy::rm;
    opt.horizon = hyper;
    opt.record_busy_profile = false;
    SimResult sync = simulate(set, m, opt);
    if (sync.first_miss)
        return Counterexample{"synchronous", {}, *sync.first_miss};

    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::derive(seed, 0x6f666673 /*offsets*/, static_cast<std::uint64_t>(k));
        std::vector<long long> offsets;
        long long max_off = 0;
        offsets.reserve(set.tasks.size());
        for (const auto& t : set.tasks) {
            long long o = rng.uniform_int(0, t.period - 1);
            offsets.push_back(o);
            max_off = std::max(max_off, o);
        }
        SimOptions trial = opt;
        trial.pattern = ReleasePattern::with_offsets(offsets);
        trial.horizon = std::min(horizon_cap, max_off + hyper);
        SimResult r = simulate(set, m, trial);
        if (r.first_miss)
            return Counterexample{"offsets trial " + std::to_string(k), offsets,
                                  *r.first_miss};
    }
    return std::nullopt;
}

}  // namespace dagsched
