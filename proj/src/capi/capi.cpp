#include "dagsched.h"

#include <cstring>
#include <sstream>

#include "json.hpp"

#include "core/experiments.hpp"
#include "core/sched_tests.hpp"
#include "core/simulator.hpp"
#include "core/taskgen.hpp"
#include "core/taskset_io.hpp"
#include "core/work_function.hpp"

using json = nlohmann::ordered_json;
using namespace dagsched;

struct ds_taskset {
    TaskSet set;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ds_status status_for(Errc code) {
    switch (code) {
        case Errc::parse_error: return DS_ERR_PARSE;
        case Errc::io_error: return DS_ERR_IO;
        case Errc::unknown_test_name: return DS_ERR_UNKNOWN_TEST;
        case Errc::cycle_detected:
        case Errc::dangling_edge:
        case Errc::duplicate_edge:
        case Errc::duplicate_vertex:
        case Errc::empty_graph:
        case Errc::nonpositive_wcet:
        case Errc::nonpositive_period: return DS_ERR_VALIDATION;
        default: return DS_ERR_INVALID_ARGUMENT;
    }
}

template <typename F>
ds_status wrap(F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_for(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DS_ERR_INTERNAL;
    }
}

ds_status fail(ds_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

std::string issues_text(const std::vector<ValidationIssue>& issues) {
    std::string out;
    for (const auto& i : issues) {
        if (!out.empty()) out += "\n";
        out += std::string(errc_name(i.code)) + ": " + i.message;
    }
    return out;
}

// Rational config field: exact when given as a string, snapped to the 1/1000
// grid when given as a bare number.
Rat rat_field(const json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return rat(j.get<long long>());
    if (j.is_number()) {
        double v = j.get<double>();
        return rat(static_cast<long long>(v * 1000 + (v >= 0 ? 0.5 : -0.5)), 1000);
    }
    throw Error(Errc::parse_error, "expected a number or rational string");
}

std::pair<Rat, Rat> rat_range_field(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw Error(Errc::parse_error, "expected a [lo, hi] pair");
    return {rat_field(j[0]), rat_field(j[1])};
}

std::pair<long long, long long> int_range_field(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw Error(Errc::parse_error, "expected a [lo, hi] pair");
    return {j[0].get<long long>(), j[1].get<long long>()};
}

GenConfig gen_config_from_json(const json& j) {
    GenConfig cfg = GenConfig::desk();
    if (j.contains("preset")) {
        std::string p = j["preset"].get<std::string>();
        if (p == "desk") cfg = GenConfig::desk();
        else if (p == "paper") cfg = GenConfig::paper_scale();
        else throw Error(Errc::invalid_argument, "unknown preset " + p);
    }
    if (j.contains("n_tasks")) {
        auto r = int_range_field(j["n_tasks"]);
        cfg.n_tasks_range = {static_cast<int>(r.first), static_cast<int>(r.second)};
    }
    if (j.contains("vertices")) {
        auto r = int_range_field(j["vertices"]);
        cfg.n_vertices_range = {static_cast<int>(r.first), static_cast<int>(r.second)};
    }
    if (j.contains("wcet")) cfg.wcet_range = int_range_field(j["wcet"]);
    if (j.contains("p")) cfg.edge_prob = rat_field(j["p"]);
    if (j.contains("gamma_up")) cfg.gamma_up_range = rat_range_field(j["gamma_up"]);
    return cfg;
}

json rat_json(const Rat& r) {
    json out;
    out["exact"] = rat_str(r);
    out["decimal"] = rat_d(r);
    return out;
}

json verdict_json(const Verdict& v) {
    json out;
    out["name"] = v.test_name;
    out["decision"] = decision_str(v.decision);
    out["margin"] = rat_str(v.margin);
    out["margin_decimal"] = rat_d(v.margin);
    out["detail"] = v.detail;
    return out;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream stream(s);
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

extern "C" {

const char* ds_version(void) { return "1.0.0"; }

const char* ds_last_error(void) { return g_last_error.c_str(); }

void ds_string_free(char* s) { std::free(s); }

void ds_taskset_free(ds_taskset* ts) { delete ts; }

ds_status ds_taskset_from_json(const char* json_text, ds_taskset** out) {
    return wrap([&]() -> ds_status {
        if (!json_text || !out) return fail(DS_ERR_INVALID_ARGUMENT, "null argument");
        TasksetParseResult res = taskset_from_string(json_text);
        if (!res.ok()) return fail(DS_ERR_VALIDATION, issues_text(res.issues));
        *out = new ds_taskset{std::move(*res.set)};
        return DS_OK;
    });
}

ds_status ds_taskset_load(const char* path, ds_taskset** out) {
    return wrap([&]() -> ds_status {
        if (!path || !out) return fail(DS_ERR_INVALID_ARGUMENT, "null argument");
        TasksetParseResult res = load_taskset(path);
        if (!res.ok()) {
            ds_status code = res.issues.size() == 1 && res.issues[0].code == Errc::io_error
                                 ? DS_ERR_IO
                                 : DS_ERR_VALIDATION;
            return fail(code, issues_text(res.issues));
        }
        *out = new ds_taskset{std::move(*res.set)};
        return DS_OK;
    });
}

ds_status ds_taskset_to_json(const ds_taskset* ts, char** json_out) {
    return wrap([&]() -> ds_status {
        if (!ts || !json_out) return fail(DS_ERR_INVALID_ARGUMENT, "null argument");
        *json_out = dup_string(taskset_to_string(ts->set));
        return DS_OK;
    });
}

ds_status ds_taskset_save(const ds_taskset* ts, const char* path) {
    return wrap([&]() -> ds_status {
        if (!ts || !path) return fail(DS_ERR_INVALID_ARGUMENT, "null argument");
        save_taskset(ts->set, path);
        return DS_OK;
    });
}

ds_status ds_analyze(const ds_taskset* ts, int m, char** json_out) {
    return wrap([&]() -> ds_status {
        if (!ts || !json_out) return fail(DS_ERR_INVALID_ARGUMENT, "null argument");
        json out;
        out["tasks"] = json::array();
        for (const auto& t : ts->set.tasks) {
            TaskMetrics tm = metrics(t);
            json jt;
            jt["id"] = t.task_id;
            jt["period"] = t.period;
            jt["vertices"] = t.vertices.size();
            jt["volume"] = tm.volume;
            jt["critical_path"] = tm.critical_path;
            jt["utilization"] = rat_json(tm.utilization);
            jt["tensity"] = rat_json(tm.tensity);
            out["tasks"].push_back(jt);
        }
        SetMetrics sm = set_metrics(ts->set, m);
        out["m"] = m;
        out["total_utilization"] = rat_json(sm.total_utilization);
        out["normalized_utilization"] = rat_json(sm.normalized_utilization);
        out["gamma_max"] = rat_json(sm.gamma_max);
        *json_out = dup_string(out.dump(2) + "\n");
        return DS_OK;
    });
}

ds_status ds_run_tests(const ds_taskset* ts, int m, const char* tests_csv, int min_m_cap,
                       char** json_out) {
    return wrap([&]() -> ds_status {
        if (!ts || !json_out) return fail(DS_ERR_INVALID_ARGUMENT, "null argument");
        std::vector<TestRun> runs;
        if (!tests_csv || std::string(tests_csv) == "all") {
            runs = run_all(ts->set, m, min_m_cap);
        } else {
            runs = run_tests(ts->set, m, split_csv(tests_csv), min_m_cap);
        }
        json out;
        out["m"] = m;
        out["tests"] = json::array();
        bool all_accepted = true;
        for (const auto& r : runs) {
            json jt = verdict_json(r.verdict);
            if (r.min_m)
                jt["min_m"] = *r.min_m;
            else if (min_m_cap > 0)
                jt["min_m"] = nullptr;
            out["tests"].push_back(jt);
            if (r.verdict.test_name != "necessary" && !r.verdict.accepted())
                all_accepted = false;
        }
        out["all_accepted"] = all_accepted;
        *json_out = dup_string(out.dump(2) + "\n");
        return DS_OK;
    });
}

ds_status ds_work_eval(const ds_taskset* ts, int task_id, long long t, const char* speed,
                       char** json_out) {
    return wrap([&]() -> ds_status {
        if (!ts || !json_out) return fail(DS_ERR_INVALID_ARGUMENT, "null argument");
        if (t < 0) return fail(DS_ERR_INVALID_ARGUMENT, "t must be >= 0");
        Rat s = speed ? rat_from_string(speed) : Rat(1);
        const DagTask* task = nullptr;
        for (const auto& cand : ts->set.tasks)
            if (cand.task_id == task_id) task = &cand;
        if (!task)
            return fail(DS_ERR_INVALID_ARGUMENT,
                        "no task with id " + std::to_string(task_id));
        WorkProfile profile(*task, s);
        json out;
        out["task_id"] = task_id;
        out["t"] = t;
        out["speed"] = rat_str(s);
        out["q"] = rat_json(profile.q(rat(t)));
        out["work"] = rat_json(profile.work(t));
        out["volume"] = profile.volume();
        out["makespan"] = rat_json(profile.makespan());
        *json_out = dup_string(out.dump(2) + "\n");
        return DS_OK;
    });
}

ds_status ds_generate(const char* config_json, ds_taskset** out, char** info_json) {
    return wrap([&]() -> ds_status {
        if (!config_json || !out) return fail(DS_ERR_INVALID_ARGUMENT, "null argument");
        json j = json::parse(config_json, nullptr, false);
        if (j.is_discarded()) return fail(DS_ERR_PARSE, "malformed config JSON");
        if (!j.contains("seed")) return fail(DS_ERR_INVALID_ARGUMENT, "seed is required");
        GenConfig cfg = gen_config_from_json(j);
        GeneratedSet gs = gen_taskset(j["seed"].get<std::uint64_t>(), cfg);
        if (info_json) {
            json info;
            info["gamma_up"] = rat_str(gs.gamma_up);
            info["n_tasks"] = gs.set.tasks.size();
            *info_json = dup_string(info.dump());
        }
        *out = new ds_taskset{std::move(gs.set)};
        return DS_OK;
    });
}

ds_status ds_simulate(const ds_taskset* ts, int m, const char* policy, long long horizon,
                      const char* options_json, char** json_out) {
    return wrap([&]() -> ds_status {
        if (!ts || !policy || !json_out) return fail(DS_ERR_INVALID_ARGUMENT, "null argument");
        SimOptions opt;
        std::string pol(policy);
        if (pol == "rm") opt.policy = Policy::rm;
        else if (pol == "edf") opt.policy = Policy::edf;
        else return fail(DS_ERR_INVALID_ARGUMENT, "policy must be rm or edf");
        opt.horizon = horizon;

        bool want_trace = false;
        if (options_json) {
            json j = json::parse(options_json, nullptr, false);
            if (j.is_discarded()) return fail(DS_ERR_PARSE, "malformed options JSON");
            if (j.contains("stop_on_miss")) opt.stop_on_first_miss = j["stop_on_miss"].get<bool>();
            if (j.contains("record_busy")) opt.record_busy_profile = j["record_busy"].get<bool>();
            if (j.contains("trace")) want_trace = j["trace"].get<bool>();
            if (j.contains("pattern") && !j["pattern"].is_string()) {
                const json& p = j["pattern"];
                if (p.contains("offsets")) {
                    opt.pattern = ReleasePattern::with_offsets(
                        p["offsets"].get<std::vector<long long>>());
                } else if (p.contains("releases")) {
                    std::vector<Release> rel;
                    for (const auto& r : p["releases"]) {
                        int id = r[0].get<int>();
                        int idx = -1;
                        for (std::size_t i = 0; i < ts->set.tasks.size(); ++i)
                            if (ts->set.tasks[i].task_id == id) idx = static_cast<int>(i);
                        if (idx < 0)
                            return fail(DS_ERR_INVALID_ARGUMENT,
                                        "release references unknown task " + std::to_string(id));
                        rel.push_back({idx, r[1].get<long long>()});
                    }
                    opt.pattern = ReleasePattern::explicit_jobs(std::move(rel));
                }
            }
        }
        std::ostringstream trace;
        if (want_trace) opt.trace = &trace;

        SimResult res = simulate(ts->set, m, opt);
        json out;
        out["horizon"] = res.horizon;
        if (res.first_miss) {
            json miss;
            miss["task_id"] = res.first_miss->task_id;
            miss["release"] = res.first_miss->release;
            miss["deadline"] = res.first_miss->deadline;
            miss["unfinished"] = res.first_miss->unfinished;
            out["first_miss"] = miss;
        } else {
            out["first_miss"] = nullptr;
        }
        out["executed_work"] = res.executed_work;
        out["completed"] = json::array();
        for (const auto& jr : res.completed) {
            json jj;
            jj["task_id"] = jr.task_id;
            jj["release"] = jr.release;
            jj["finish"] = jr.finish;
            jj["response"] = jr.response;
            out["completed"].push_back(jj);
        }
        if (want_trace) out["trace"] = trace.str();
        *json_out = dup_string(out.dump(2) + "\n");
        return DS_OK;
    });
}

ds_status ds_falsify(const ds_taskset* ts, int m, int trials, unsigned long long seed,
                     long long horizon_cap, char** json_out) {
    return wrap([&]() -> ds_status {
        if (!ts || !json_out) return fail(DS_ERR_INVALID_ARGUMENT, "null argument");
        auto cex = falsify(ts->set, m, trials, seed, horizon_cap);
        json out;
        if (cex) {
            out["miss_found"] = true;
            out["pattern"] = cex->pattern;
            out["offsets"] = cex->offsets;
            json miss;
            miss["task_id"] = cex->miss.task_id;
            miss["release"] = cex->miss.release;
            miss["deadline"] = cex->miss.deadline;
            miss["unfinished"] = cex->miss.unfinished;
            out["miss"] = miss;
        } else {
            out["miss_found"] = false;
        }
        *json_out = dup_string(out.dump(2) + "\n");
        return DS_OK;
    });
}

ds_status ds_experiment(const char* config_json, char** csv_out, char** svg_out) {
    return wrap([&]() -> ds_status {
        if (!config_json || !csv_out) return fail(DS_ERR_INVALID_ARGUMENT, "null argument");
        json j = json::parse(config_json, nullptr, false);
        if (j.is_discarded()) return fail(DS_ERR_PARSE, "malformed config JSON");
        ExpConfig cfg;
        if (!j.contains("axis") || !j.contains("values") || !j.contains("tests") ||
            !j.contains("seed"))
            return fail(DS_ERR_INVALID_ARGUMENT, "axis, values, tests and seed are required");
        cfg.axis = axis_from_name(j["axis"].get<std::string>());
        for (const auto& v : j["values"]) cfg.axis_values.push_back(rat_field(v));
        cfg.tests = j["tests"].get<std::vector<std::string>>();
        cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("sets_per_point")) cfg.sets_per_point = j["sets_per_point"].get<int>();
        if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
        if (j.contains("u_range")) cfg.u_range = rat_range_field(j["u_range"]);
        cfg.gen = gen_config_from_json(j);
        auto curves = acceptance_curve(cfg);
        *csv_out = dup_string(curves_to_csv(curves));
        if (svg_out) *svg_out = dup_string(curves_to_svg(curves));
        return DS_OK;
    });
}

ds_status ds_bound_curve(const char* test, const char* gammas_csv, char** json_out) {
    return wrap([&]() -> ds_status {
        if (!test || !json_out) return fail(DS_ERR_INVALID_ARGUMENT, "null argument");
        std::vector<Rat> gammas;
        if (gammas_csv)
            for (const auto& g : split_csv(gammas_csv)) gammas.push_back(rat_from_string(g));
        auto curve = bound_curve(test, gammas);
        json out;
        out["test"] = test;
        out["points"] = json::array();
        for (const auto& [g, thr] : curve) {
            json p;
            p["gamma"] = rat_str(g);
            p["gamma_decimal"] = rat_d(g);
            p["threshold"] = rat_str(thr);
            p["threshold_decimal"] = rat_d(thr);
            out["points"].push_back(p);
        }
        *json_out = dup_string(out.dump(2) + "\n");
        return DS_OK;
    });
}

}  // extern "C"
