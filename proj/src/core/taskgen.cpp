#include "taskgen.hpp"

#include <algorithm>
#include <numeric>

namespace dagsched {

namespace {

// Substream tags (arbitrary fixed constants, part of the determinism
// contract).
constexpr std::uint64_t kTagMeta = 0x6d657461;      // set-level draws
constexpr std::uint64_t kTagStruct = 0x73747275;    // per-task graph structure
constexpr std::uint64_t kTagTensity = 0x74656e73;   // per-task tensity target

long long grid_1000(const Rat& x) {
    Rat scaled = x * 1000;
    if (scaled.get_den() != 1)
        throw Error(Errc::invalid_argument,
                    "gamma/utilization bounds must be multiples of 1/1000, got " + rat_str(x));
    return rat_floor_ll(scaled);
}

}  // namespace

GenConfig GenConfig::desk() { return GenConfig{}; }

GenConfig GenConfig::paper_scale() {
    GenConfig cfg;
    cfg.n_tasks_range = {2, 10};
    cfg.n_vertices_range = {50, 150};
    cfg.wcet_range = {20, 50};
    return cfg;
}

DagTask gen_dag(Rng& rng, const GenConfig& cfg, int task_id) {
    if (cfg.n_vertices_range.first < 1 ||
        cfg.n_vertices_range.first > cfg.n_vertices_range.second)
        throw Error(Errc::invalid_argument, "bad vertex count range");
    if (cfg.wcet_range.first < 1 || cfg.wcet_range.first > cfg.wcet_range.second)
        throw Error(Errc::invalid_argument, "bad wcet range");
    if (cfg.edge_prob <= 0 || cfg.edge_prob >= 1)
        throw Error(Errc::invalid_argument, "edge probability must lie in (0,1)");

    DagTask task;
    task.task_id = task_id;
    const int nv =
        static_cast<int>(rng.uniform_int(cfg.n_vertices_range.first, cfg.n_vertices_range.second));
    for (int i = 1; i <= nv; ++i)
        task.vertices.push_back({i, rng.uniform_int(cfg.wcet_range.first, cfg.wcet_range.second)});

    // Random permutation; an edge may only run from an earlier to a later
    // position, which keeps the graph acyclic for any edge subset.
    std::vector<int> perm(nv);
    std::iota(perm.begin(), perm.end(), 1);
    rng.shuffle(perm);

    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            if (rng.bernoulli(cfg.edge_prob)) task.edges.push_back({perm[i], perm[j]});

    // Weak-connectivity repair: link consecutive components (ordered by their
    // earliest permutation position) with one forward edge each.
    {
        std::vector<int> pos(nv + 1);
        for (int i = 0; i < nv; ++i) pos[perm[i]] = i;

        std::vector<int> comp(nv + 1, -1);
        int n_comp = 0;
        std::vector<std::vector<int>> adj(nv + 1);
        for (const auto& e : task.edges) {
            adj[e.src].push_back(e.dst);
            adj[e.dst].push_back(e.src);
        }
        for (int v = 1; v <= nv; ++v) {
            if (comp[v] >= 0) continue;
            std::vector<int> stack{v};
            comp[v] = n_comp;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int w : adj[u])
                    if (comp[w] < 0) {
                        comp[w] = n_comp;
                        stack.push_back(w);
                    }
            }
            ++n_comp;
        }
        if (n_comp > 1) {
            // representative = vertex with the smallest permutation position
            std::vector<int> rep(n_comp, -1);
            for (int i = 0; i < nv; ++i) {
                int v = perm[i];
                if (rep[comp[v]] < 0) rep[comp[v]] = v;
            }
            std::sort(rep.begin(), rep.end(),
                      [&](int a, int b) { return pos[a] < pos[b]; });
            for (int c = 0; c + 1 < n_comp; ++c)
                task.edges.push_back({rep[c], rep[c + 1]});
        }
    }

    return normalize(task);
}

DagTask assign_period(const DagTask& task, const Rat& gamma_target) {
    if (gamma_target <= 0 || gamma_target > 1)
        throw Error(Errc::invalid_argument,
                    "tensity target must lie in (0,1], got " + rat_str(gamma_target));
    DagTask out = task;
    out.period = 1;  // placeholder so metrics() accepts the task
    TaskMetrics m = metrics(out);
    out.period = std::max(1LL, rat_ceil_ll(rat(m.critical_path) / gamma_target));
    return out;
}

GeneratedSet gen_taskset(std::uint64_t seed, const GenConfig& cfg) {
    if (cfg.n_tasks_range.first < 1 || cfg.n_tasks_range.first > cfg.n_tasks_range.second)
        throw Error(Errc::invalid_argument, "bad task count range");
    const long long g_lo = grid_1000(cfg.gamma_up_range.first);
    const long long g_hi = grid_1000(cfg.gamma_up_range.second);
    if (g_hi < 1 || g_hi > 1000 || g_lo < 0 || g_lo > g_hi)
        throw Error(Errc::invalid_argument, "gamma_up range must satisfy 0 <= lo <= hi <= 1");

    Rng meta = Rng::derive(seed, kTagMeta);
    const int n =
        static_cast<int>(meta.uniform_int(cfg.n_tasks_range.first, cfg.n_tasks_range.second));
    // gamma_up uniform on the 1/1000 grid over (lo, hi]
    const long long k_up = g_lo == g_hi ? g_hi : meta.uniform_int(g_lo + 1, g_hi);
    const Rat gamma_up = rat(k_up, 1000);

    GeneratedSet out;
    out.gamma_up = gamma_up;
    for (int i = 0; i < n; ++i) {
        Rng structure = Rng::derive(seed, kTagStruct, static_cast<std::uint64_t>(i));
        DagTask dag = gen_dag(structure, cfg, i + 1);
        Rng tensity = Rng::derive(seed, kTagTensity, static_cast<std::uint64_t>(i));
        Rat fraction = rat(tensity.uniform_int(1, 1000), 1000);
        out.set.tasks.push_back(assign_period(dag, gamma_up * fraction));
    }
    return out;
}

int processors_for(const TaskSet& set, const Rat& target_normalized_utilization) {
    if (target_normalized_utilization <= 0)
        throw Error(Errc::invalid_argument, "target normalized utilization must be positive");
    SetMetrics sm = set_metrics(set, 1);
    long long m = rat_ceil_ll(sm.total_utilization / target_normalized_utilization);
    if (m < 1) m = 1;
    if (m > 1'000'000'000)
        throw Error(Errc::invalid_argument, "derived processor count is implausibly large");
    return static_cast<int>(m);
}

}  // namespace dagsched
