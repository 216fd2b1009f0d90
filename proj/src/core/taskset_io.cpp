#include "taskset_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dagsched {

using nlohmann::ordered_json;

std::string taskset_to_string(const TaskSet& set) {
    TaskSet sorted = set;
    std::sort(sorted.tasks.begin(), sorted.tasks.end(),
              [](const DagTask& a, const DagTask& b) { return a.task_id < b.task_id; });
    ordered_json root;
    root["tasks"] = ordered_json::array();
    for (auto& t : sorted.tasks) {
        std::sort(t.vertices.begin(), t.vertices.end(),
                  [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
        std::sort(t.edges.begin(), t.edges.end(), [](const Edge& a, const Edge& b) {
            return a.src != b.src ? a.src < b.src : a.dst < b.dst;
        });
        ordered_json jt;
        jt["id"] = t.task_id;
        jt["period"] = t.period;
        jt["vertices"] = ordered_json::array();
        for (const auto& v : t.vertices) {
            ordered_json jv;
            jv["id"] = v.id;
            jv["wcet"] = v.wcet;
            jt["vertices"].push_back(jv);
        }
        jt["edges"] = ordered_json::array();
        for (const auto& e : t.edges) {
            ordered_json je;
            je["src"] = e.src;
            je["dst"] = e.dst;
            jt["edges"].push_back(je);
        }
        root["tasks"].push_back(jt);
    }
    return root.dump(2) + "\n";
}

TasksetParseResult taskset_from_string(const std::string& text) {
    TasksetParseResult res;
    ordered_json root;
    try {
        root = ordered_json::parse(text);
    } catch (const std::exception& e) {
        res.issues.push_back({Errc::parse_error, e.what()});
        return res;
    }
    TaskSet set;
    try {
        if (!root.is_object() || !root.contains("tasks") || !root["tasks"].is_array())
            throw Error(Errc::parse_error, "top-level object with a tasks[] array expected");
        for (const auto& jt : root["tasks"]) {
            DagTask t;
            t.task_id = jt.at("id").get<int>();
            t.period = jt.at("period").get<long long>();
            for (const auto& jv : jt.at("vertices"))
                t.vertices.push_back({jv.at("id").get<int>(), jv.at("wcet").get<long long>()});
            for (const auto& je : jt.at("edges"))
                t.edges.push_back({je.at("src").get<int>(), je.at("dst").get<int>()});
            set.tasks.push_back(std::move(t));
        }
    } catch (const std::exception& e) {
        res.issues.push_back({Errc::parse_error, e.what()});
        return res;
    }

    std::set<int> ids;
    for (const auto& t : set.tasks) {
        if (!ids.insert(t.task_id).second)
            res.issues.push_back(
                {Errc::invalid_argument, "task id " + std::to_string(t.task_id) + " repeats"});
        ValidationResult v = validate(t);
        for (auto& issue : v.issues) {
            issue.message = "task " + std::to_string(t.task_id) + ": " + issue.message;
            res.issues.push_back(issue);
        }
    }
    if (res.issues.empty()) res.set = std::move(set);
    return res;
}

TasksetParseResult load_taskset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        TasksetParseResult res;
        res.issues.push_back({Errc::io_error, "cannot open " + path});
        return res;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return taskset_from_string(buf.str());
}

void save_taskset(const TaskSet& set, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot open " + path + " for writing");
    out << taskset_to_string(set);
    if (!out) throw Error(Errc::io_error, "write to " + path + " failed");
}

}  // namespace dagsched
