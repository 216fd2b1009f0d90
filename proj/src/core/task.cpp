#include "task.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace dagsched {

namespace {

std::string edge_str(const Edge& e) {
    std::ostringstream os;
    os << "(" << e.src << "," << e.dst << ")";
    return os.str();
}

}  // namespace

ValidationResult validate(const DagTask& raw) {
    ValidationResult res;
    auto issue = [&](Errc code, const std::string& msg) {
        res.issues.push_back({code, msg});
    };

    if (raw.period < 1) {
        issue(Errc::nonpositive_period,
              "task " + std::to_string(raw.task_id) + " has period " +
                  std::to_string(raw.period));
    }
    if (raw.vertices.empty()) {
        issue(Errc::empty_graph, "task " + std::to_string(raw.task_id) + " has no vertices");
        return res;
    }

    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < raw.vertices.size(); ++i) {
        const auto& v = raw.vertices[i];
        if (index.count(v.id)) {
            issue(Errc::duplicate_vertex, "vertex id " + std::to_string(v.id) + " repeats");
            continue;
        }
        index[v.id] = i;
    }

    // Structural edge checks; only clean edges participate in the cycle and
    // degree analysis below.
    std::vector<Edge> clean;
    std::set<std::pair<int, int>> seen;
    for (const auto& e : raw.edges) {
        bool broken = false;
        if (!index.count(e.src)) {
            issue(Errc::dangling_edge, "edge " + edge_str(e) + " references missing vertex " +
                                           std::to_string(e.src));
            broken = true;
        }
        if (!index.count(e.dst)) {
            issue(Errc::dangling_edge, "edge " + edge_str(e) + " references missing vertex " +
                                           std::to_string(e.dst));
            broken = true;
        }
        if (broken) continue;
        if (e.src == e.dst) {
            issue(Errc::cycle_detected, "self-loop on vertex " + std::to_string(e.src));
            continue;
        }
        if (!seen.insert({e.src, e.dst}).second) {
            issue(Errc::duplicate_edge, "edge " + edge_str(e) + " repeats");
            continue;
        }
        clean.push_back(e);
    }

    std::map<int, int> indeg, outdeg;
    for (const auto& [id, i] : index) {
        (void)i;
        indeg[id] = 0;
        outdeg[id] = 0;
    }
    for (const auto& e : clean) {
        ++outdeg[e.src];
        ++indeg[e.dst];
    }
    int n_sources = 0, n_sinks = 0;
    for (const auto& [id, d] : indeg)
        if (d == 0) ++n_sources;
    for (const auto& [id, d] : outdeg)
        if (d == 0) ++n_sinks;

    for (const auto& v : raw.vertices) {
        if (v.wcet < 0) {
            issue(Errc::nonpositive_wcet, "vertex " + std::to_string(v.id) + " has wcet " +
                                              std::to_string(v.wcet));
        } else if (v.wcet == 0) {
            bool sole_head = indeg[v.id] == 0 && n_sources == 1;
            bool sole_tail = outdeg[v.id] == 0 && n_sinks == 1;
            if (!sole_head && !sole_tail) {
                issue(Errc::nonpositive_wcet,
                      "vertex " + std::to_string(v.id) +
                          " has wcet 0 outside head/tail position");
            }
        }
    }

    // Kahn's algorithm on the clean edges; leftovers sit on a cycle.
    {
        std::map<int, int> deg = indeg;
        std::map<int, std::vector<int>> succ;
        for (const auto& e : clean) succ[e.src].push_back(e.dst);
        std::vector<int> queue;
        for (const auto& [id, d] : deg)
            if (d == 0) queue.push_back(id);
        std::size_t removed = 0;
        while (!queue.empty()) {
            int u = queue.back();
            queue.pop_back();
            ++removed;
            for (int w : succ[u])
                if (--deg[w] == 0) queue.push_back(w);
        }
        if (removed != index.size()) {
            std::vector<int> on_cycle;
            for (const auto& [id, d] : deg)
                if (d > 0) on_cycle.push_back(id);
            std::ostringstream os;
            os << "cycle through vertices {";
            for (std::size_t i = 0; i < on_cycle.size(); ++i)
                os << (i ? "," : "") << on_cycle[i];
            os << "}";
            issue(Errc::cycle_detected, os.str());
        }
    }

    if (res.issues.empty()) res.task = raw;
    return res;
}

DagTask normalize(const DagTask& task) {
    std::set<int> has_pred, has_succ, ids;
    for (const auto& v : task.vertices) ids.insert(v.id);
    for (const auto& e : task.edges) {
        has_succ.insert(e.src);
        has_pred.insert(e.dst);
    }
    std::vector<int> sources, sinks;
    for (const auto& v : task.vertices) {
        if (!has_pred.count(v.id)) sources.push_back(v.id);
        if (!has_succ.count(v.id)) sinks.push_back(v.id);
    }
    if (sources.size() <= 1 && sinks.size() <= 1) return task;

    DagTask out = task;
    int next_id = ids.empty() ? 0 : *ids.rbegin() + 1;
    if (sources.size() > 1) {
        int head = next_id++;
        out.vertices.push_back({head, 0});
        for (int s : sources) out.edges.push_back({head, s});
    }
    if (sinks.size() > 1) {
        int tail = next_id++;
        out.vertices.push_back({tail, 0});
        for (int s : sinks) out.edges.push_back({s, tail});
    }
    return out;
}

TaskGraph TaskGraph::build(const DagTask& task) {
    TaskGraph g;
    g.ids.reserve(task.vertices.size());
    std::map<int, std::size_t> pos;  // id -> position in task.vertices
    for (std::size_t i = 0; i < task.vertices.size(); ++i) pos[task.vertices[i].id] = i;

    for (const auto& [id, i] : pos) {
        g.ids.push_back(id);
        g.wcet.push_back(task.vertices[i].wcet);
    }
    std::map<int, int> idx;  // id -> index in g (ascending id order)
    for (std::size_t i = 0; i < g.ids.size(); ++i) idx[g.ids[i]] = static_cast<int>(i);

    g.preds.assign(g.size(), {});
    g.succs.assign(g.size(), {});
    for (const auto& e : task.edges) {
        g.succs[idx.at(e.src)].push_back(idx.at(e.dst));
        g.preds[idx.at(e.dst)].push_back(idx.at(e.src));
    }
    for (auto& v : g.preds) std::sort(v.begin(), v.end());
    for (auto& v : g.succs) std::sort(v.begin(), v.end());

    // Topological order (Kahn, smallest index first for determinism).
    std::vector<int> deg(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) deg[i] = static_cast<int>(g.preds[i].size());
    std::set<int> ready;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (deg[i] == 0) ready.insert(static_cast<int>(i));
    while (!ready.empty()) {
        int u = *ready.begin();
        ready.erase(ready.begin());
        g.order.push_back(u);
        for (int w : g.succs[u])
            if (--deg[w] == 0) ready.insert(w);
    }
    if (g.order.size() != g.size())
        throw Error(Errc::cycle_detected, "task " + std::to_string(task.task_id) +
                                              " is not acyclic");
    return g;
}

TaskMetrics metrics(const DagTask& task) {
    if (task.period < 1)
        throw Error(Errc::nonpositive_period,
                    "task " + std::to_string(task.task_id) + " has no positive period");
    TaskGraph g = TaskGraph::build(task);
    TaskMetrics m;
    std::vector<long long> dist(g.size(), 0);
    long long longest = 0;
    for (int u : g.order) {
        long long best = 0;
        for (int p : g.preds[u]) best = std::max(best, dist[p]);
        dist[u] = best + g.wcet[u];
        longest = std::max(longest, dist[u]);
        m.volume += g.wcet[u];
    }
    m.critical_path = longest;
    m.utilization = rat(m.volume, task.period);
    m.tensity = rat(m.critical_path, task.period);
    return m;
}

SetMetrics set_metrics(const TaskSet& set, int m) {
    if (set.tasks.empty()) throw Error(Errc::empty_task_set, "set metrics need tasks");
    if (m < 1) throw Error(Errc::invalid_argument, "processor count must be >= 1");
    SetMetrics out;
    out.total_utilization = 0;
    out.gamma_max = 0;
    for (const auto& t : set.tasks) {
        TaskMetrics tm = metrics(t);
        out.total_utilization += tm.utilization;
        if (tm.tensity > out.gamma_max) out.gamma_max = tm.tensity;
    }
    out.normalized_utilization = out.total_utilization / m;
    return out;
}

}  // namespace dagsched
