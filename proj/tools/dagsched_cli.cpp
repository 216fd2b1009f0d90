// Command-line front end over the dagsched C API.
//
// Exit codes: 0 success (and, for test/simulate, "accepted"/"no miss"),
// 2 analysis completed but the verdict is UNKNOWN (or a miss was found),
// 1 operational error (bad flags, unreadable/invalid files, ...).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dagsched.h"

using json = nlohmann::json;

namespace {

[[noreturn]] void die(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    std::exit(1);
}

void check(ds_status st) {
    if (st != DS_OK) die(ds_last_error());
}

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { ds_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

struct OwnedTaskset {
    ds_taskset* ptr = nullptr;
    ~OwnedTaskset() { ds_taskset_free(ptr); }
};

OwnedTaskset load(const std::string& path) {
    OwnedTaskset ts;
    check(ds_taskset_load(path.c_str(), &ts.ptr));
    return ts;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("DAGSCHED_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

// "lo:hi" -> two strings
std::pair<std::string, std::string> split_range(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) return {s, s};
    return {s.substr(0, colon), s.substr(colon + 1)};
}

json range_json(const std::string& s) {
    auto [lo, hi] = split_range(s);
    return json::array({lo, hi});
}

std::string fixed3(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string rat_cell(const json& r) {
    return r["exact"].get<std::string>() + " (" + fixed3(r["decimal"].get<double>()) + ")";
}

void print_table(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return;
    std::vector<std::size_t> width(rows[0].size(), 0);
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], row[c].size());
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::cout << row[c];
            if (c + 1 < row.size())
                std::cout << std::string(width[c] - row[c].size() + 2, ' ');
        }
        std::cout << "\n";
    }
}

int cmd_analyze(const std::string& file, int m, bool raw) {
    OwnedTaskset ts = load(file);
    OwnedString out;
    check(ds_analyze(ts.ptr, m, &out.ptr));
    if (raw) {
        std::cout << out.str();
        return 0;
    }
    json j = json::parse(out.str());
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"task", "vertices", "period", "C", "L", "u", "gamma"});
    for (const auto& t : j["tasks"]) {
        rows.push_back({std::to_string(t["id"].get<int>()),
                        std::to_string(t["vertices"].get<long long>()),
                        std::to_string(t["period"].get<long long>()),
                        std::to_string(t["volume"].get<long long>()),
                        std::to_string(t["critical_path"].get<long long>()),
                        rat_cell(t["utilization"]), rat_cell(t["tensity"])});
    }
    print_table(rows);
    std::cout << "\nset: U_sum=" << rat_cell(j["total_utilization"]) << "  m=" << m
              << "  U=" << rat_cell(j["normalized_utilization"])
              << "  gamma_max=" << rat_cell(j["gamma_max"]) << "\n";
    return 0;
}

int cmd_test(const std::string& file, int m, const std::string& tests, int min_m_cap,
             bool raw, bool verbose) {
    OwnedTaskset ts = load(file);
    OwnedString out;
    check(ds_run_tests(ts.ptr, m, tests.empty() ? nullptr : tests.c_str(), min_m_cap,
                       &out.ptr));
    json j = json::parse(out.str());
    if (raw) {
        std::cout << out.str();
    } else {
        std::vector<std::vector<std::string>> rows;
        rows.push_back(min_m_cap > 0
                           ? std::vector<std::string>{"test", "decision", "margin", "min_m"}
                           : std::vector<std::string>{"test", "decision", "margin"});
        for (const auto& t : j["tests"]) {
            std::vector<std::string> row{
                t["name"].get<std::string>(), t["decision"].get<std::string>(),
                t["margin"].get<std::string>() + " (" +
                    fixed3(t["margin_decimal"].get<double>()) + ")"};
            if (min_m_cap > 0)
                row.push_back(t.contains("min_m") && !t["min_m"].is_null()
                                  ? std::to_string(t["min_m"].get<int>())
                                  : std::string("> cap"));
            rows.push_back(row);
        }
        print_table(rows);
        if (verbose) {
            for (const auto& t : j["tests"])
                for (const auto& d : t["detail"])
                    std::cout << "  [" << t["name"].get<std::string>() << "] "
                              << d.get<std::string>() << "\n";
        }
    }
    return j["all_accepted"].get<bool>() ? 0 : 2;
}

int cmd_work(const std::string& file, int task_id, long long t, const std::string& speed,
             bool raw) {
    OwnedTaskset ts = load(file);
    OwnedString out;
    check(ds_work_eval(ts.ptr, task_id, t, speed.c_str(), &out.ptr));
    if (raw) {
        std::cout << out.str();
        return 0;
    }
    json j = json::parse(out.str());
    std::cout << "task " << task_id << ", t=" << t << ", speed=" << j["speed"].get<std::string>()
              << "\n";
    std::cout << "  q    = " << rat_cell(j["q"]) << "\n";
    std::cout << "  work = " << rat_cell(j["work"]) << "\n";
    return 0;
}

int cmd_generate(std::uint64_t seed, const std::string& preset, const std::string& p,
                 const std::string& gamma_up, const std::string& n_tasks,
                 const std::string& vertices, const std::string& wcet,
                 const std::string& out_path, bool quiet) {
    json cfg;
    cfg["seed"] = seed;
    cfg["preset"] = preset;
    if (!p.empty()) cfg["p"] = p;
    if (!gamma_up.empty()) cfg["gamma_up"] = range_json(gamma_up);
    if (!n_tasks.empty()) cfg["n_tasks"] = {std::stoll(split_range(n_tasks).first),
                                            std::stoll(split_range(n_tasks).second)};
    if (!vertices.empty()) cfg["vertices"] = {std::stoll(split_range(vertices).first),
                                              std::stoll(split_range(vertices).second)};
    if (!wcet.empty()) cfg["wcet"] = {std::stoll(split_range(wcet).first),
                                      std::stoll(split_range(wcet).second)};
    OwnedTaskset ts;
    OwnedString info;
    check(ds_generate(cfg.dump().c_str(), &ts.ptr, &info.ptr));
    check(ds_taskset_save(ts.ptr, out_path.c_str()));
    if (!quiet) {
        json ji = json::parse(info.str());
        std::cout << "wrote " << out_path << " (" << ji["n_tasks"].get<int>()
                  << " tasks, gamma_up=" << ji["gamma_up"].get<std::string>() << ")\n";
    }
    return 0;
}

int cmd_simulate(const std::string& file, int m, const std::string& policy,
                 long long horizon, const std::string& trace_path,
                 const std::string& offsets_csv, bool keep_going, int falsify_trials,
                 std::uint64_t seed, long long cap, bool raw) {
    OwnedTaskset ts = load(file);

    if (falsify_trials >= 0) {
        OwnedString out;
        check(ds_falsify(ts.ptr, m, falsify_trials, seed, cap, &out.ptr));
        json j = json::parse(out.str());
        if (raw) {
            std::cout << out.str();
        } else if (j["miss_found"].get<bool>()) {
            std::cout << "deadline miss under pattern '" << j["pattern"].get<std::string>()
                      << "': task " << j["miss"]["task_id"] << " released at "
                      << j["miss"]["release"] << " missed deadline " << j["miss"]["deadline"]
                      << " with " << j["miss"]["unfinished"] << " work left\n";
        } else {
            std::cout << "no deadline miss found\n";
        }
        return j["miss_found"].get<bool>() ? 2 : 0;
    }

    json opt;
    opt["trace"] = !trace_path.empty();
    opt["stop_on_miss"] = !keep_going;
    opt["record_busy"] = false;
    if (!offsets_csv.empty()) {
        std::vector<long long> offs;
        std::string item;
        std::istringstream ss(offsets_csv);
        while (std::getline(ss, item, ',')) offs.push_back(std::stoll(item));
        opt["pattern"] = {{"offsets", offs}};
    }
    OwnedString out;
    check(ds_simulate(ts.ptr, m, policy.c_str(), horizon, opt.dump().c_str(), &out.ptr));
    json j = json::parse(out.str());
    if (!trace_path.empty()) {
        std::ofstream tf(trace_path, std::ios::binary);
        if (!tf) die("cannot open " + trace_path);
        tf << j["trace"].get<std::string>();
    }
    if (raw) {
        std::cout << out.str();
    } else {
        std::cout << "horizon " << j["horizon"] << ", executed work " << j["executed_work"]
                  << ", " << j["completed"].size() << " jobs completed\n";
        if (!j["first_miss"].is_null()) {
            std::cout << "first miss: task " << j["first_miss"]["task_id"] << " released at "
                      << j["first_miss"]["release"] << " missed deadline "
                      << j["first_miss"]["deadline"] << "\n";
        } else {
            long long worst = 0;
            for (const auto& job : j["completed"])
                worst = std::max(worst, job["response"].get<long long>());
            std::cout << "no deadline miss; max response " << worst << "\n";
        }
    }
    return j["first_miss"].is_null() ? 0 : 2;
}

int cmd_experiment(const std::string& axis, const std::string& values_csv, int sets,
                   const std::string& tests_csv, std::uint64_t seed,
                   const std::string& preset, const std::string& gamma_up,
                   const std::string& u_range, const std::string& p, int threads,
                   const std::string& out_csv, const std::string& out_svg) {
    json cfg;
    cfg["axis"] = axis;
    cfg["values"] = json::array();
    {
        std::string item;
        std::istringstream ss(values_csv);
        while (std::getline(ss, item, ',')) cfg["values"].push_back(item);
    }
    cfg["tests"] = json::array();
    {
        std::string item;
        std::istringstream ss(tests_csv);
        while (std::getline(ss, item, ',')) cfg["tests"].push_back(item);
    }
    cfg["sets_per_point"] = sets;
    cfg["seed"] = seed;
    cfg["threads"] = threads;
    cfg["preset"] = preset;
    if (!gamma_up.empty()) cfg["gamma_up"] = range_json(gamma_up);
    if (!u_range.empty()) cfg["u_range"] = range_json(u_range);
    if (!p.empty()) cfg["p"] = p;

    OwnedString csv, svg;
    check(ds_experiment(cfg.dump().c_str(), &csv.ptr, out_svg.empty() ? nullptr : &svg.ptr));
    if (out_csv.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream f(out_csv, std::ios::binary);
        if (!f) die("cannot open " + out_csv);
        f << csv.str();
        std::cout << "wrote " << out_csv << "\n";
    }
    if (!out_svg.empty()) {
        std::ofstream f(out_svg, std::ios::binary);
        if (!f) die("cannot open " + out_svg);
        f << svg.str();
        std::cout << "wrote " << out_svg << "\n";
    }
    return 0;
}

int cmd_bound_curve(const std::string& test, const std::string& gammas,
                    const std::string& out_path, bool raw) {
    OwnedString out;
    check(ds_bound_curve(test.c_str(), gammas.c_str(), &out.ptr));
    json j = json::parse(out.str());
    std::string rendered;
    if (raw) {
        rendered = out.str();
    } else {
        rendered = "gamma,threshold,gamma_decimal,threshold_decimal\n";
        for (const auto& pt : j["points"]) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6f,%.6f",
                          pt["gamma_decimal"].get<double>(),
                          pt["threshold_decimal"].get<double>());
            rendered += pt["gamma"].get<std::string>() + "," +
                        pt["threshold"].get<std::string>() + "," + buf + "\n";
        }
    }
    if (out_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) die("cannot open " + out_path);
        f << rendered;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"schedulability analysis for parallel DAG task systems under "
                 "global rate-monotonic scheduling"};
    app.require_subcommand(1);
    bool raw = false;
    app.add_flag("--json", raw, "machine-readable JSON output");

    // analyze
    std::string file;
    int m = 1;
    auto* analyze = app.add_subcommand("analyze", "per-task and set metrics");
    analyze->add_option("file", file)->required();
    analyze->add_option("--m", m, "processor count for normalized utilization");

    // test
    std::string tests;
    int min_m_cap = 0;
    bool verbose = false;
    auto* test = app.add_subcommand("test", "run schedulability tests");
    test->add_option("file", file)->required();
    test->add_option("--m", m, "processor count")->required();
    test->add_option("--tests", tests, "comma list (default: all)");
    test->add_flag("--min-m{1024}", min_m_cap, "report smallest accepting m (cap 1024)");
    test->add_flag("-v,--verbose", verbose, "per-task details");

    // work
    int task_id = 1;
    long long t_arg = 0;
    std::string speed = "1";
    auto* work = app.add_subcommand("work", "evaluate q(t,s) and work(t,s)");
    work->add_option("file", file)->required();
    work->add_option("--task", task_id, "task id")->required();
    work->add_option("--t", t_arg, "window length")->required();
    work->add_option("--speed", speed, "processor speed (p/q or decimal, >= 1)");

    // generate
    std::uint64_t seed = default_seed();
    std::string preset = "desk", p, gamma_up, n_tasks, vertices, wcet, out_path;
    bool quiet = false;
    auto* gen = app.add_subcommand("generate", "generate a random task set");
    gen->add_option("--seed", seed, "RNG seed (default: $DAGSCHED_SEED or 1)");
    gen->add_option("--preset", preset, "desk | paper")
        ->check(CLI::IsMember({"desk", "paper"}));
    gen->add_option("--p", p, "edge probability");
    gen->add_option("--gamma-up", gamma_up, "tensity upper-bound range lo:hi");
    gen->add_option("--n", n_tasks, "task count range lo:hi");
    gen->add_option("--vertices", vertices, "vertex count range lo:hi");
    gen->add_option("--wcet", wcet, "wcet range lo:hi");
    gen->add_option("-o,--output", out_path, "output file")->required();
    gen->add_flag("-q,--quiet", quiet);

    // simulate
    std::string policy = "rm", trace_path, offsets_csv;
    long long horizon = 0, cap = 1'000'000;
    bool keep_going = false;
    int falsify_trials = -1;
    auto* sim = app.add_subcommand("simulate", "discrete-time global scheduling");
    sim->add_option("file", file)->required();
    sim->add_option("--m", m, "processor count")->required();
    sim->add_option("--policy", policy, "rm | edf")->check(CLI::IsMember({"rm", "edf"}));
    sim->add_option("--horizon", horizon, "simulation length in time units");
    sim->add_option("--trace", trace_path, "write per-step trace to file");
    sim->add_option("--offsets", offsets_csv, "per-task release offsets");
    sim->add_flag("--continue-after-miss", keep_going);
    sim->add_option("--falsify", falsify_trials,
                    "falsification mode: synchronous + N random-offset trials");
    sim->add_option("--seed", seed, "seed for falsification offsets");
    sim->add_option("--horizon-cap", cap, "falsification horizon cap");

    // experiment
    std::string axis = "utilization", values_csv, u_range;
    int sets_per_point = 200, threads = 1;
    std::string exp_tests = "rm-basic,rm-ut,rm-tighter,rm-work,cab-li,cab-new,edf-ut,edf-cab";
    std::string out_csv, out_svg;
    auto* exp = app.add_subcommand("experiment", "acceptance-ratio sweeps");
    exp->add_option("--axis", axis, "utilization | gamma | ntasks")
        ->check(CLI::IsMember({"utilization", "gamma", "ntasks"}));
    exp->add_option("--values", values_csv, "axis values, comma list")->required();
    exp->add_option("--sets-per-point", sets_per_point);
    exp->add_option("--tests", exp_tests, "comma list");
    exp->add_option("--seed", seed);
    exp->add_option("--preset", preset)->check(CLI::IsMember({"desk", "paper"}));
    exp->add_option("--gamma-up", gamma_up, "off-axis tensity bound range lo:hi");
    exp->add_option("--u-range", u_range, "off-axis utilization range lo:hi");
    exp->add_option("--p", p, "edge probability");
    exp->add_option("--threads", threads);
    exp->add_option("-o,--output", out_csv, "CSV output path");
    exp->add_option("--svg", out_svg, "SVG output path");

    // bound-curve
    std::string curve_test = "rm-ut", gammas;
    auto* curve = app.add_subcommand("bound-curve", "closed-form bound thresholds");
    curve->add_option("--test", curve_test)->required();
    curve->add_option("--gammas", gammas, "tensity grid, comma list");
    curve->add_option("-o,--output", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*analyze) return cmd_analyze(file, m, raw);
        if (*test) return cmd_test(file, m, tests, min_m_cap, raw, verbose);
        if (*work) return cmd_work(file, task_id, t_arg, speed, raw);
        if (*gen)
            return cmd_generate(seed, preset, p, gamma_up, n_tasks, vertices, wcet, out_path,
                                quiet);
        if (*sim)
            return cmd_simulate(file, m, policy, horizon, trace_path, offsets_csv, keep_going,
                                falsify_trials, seed, cap, raw);
        if (*exp)
            return cmd_experiment(axis, values_csv, sets_per_point, exp_tests, seed, preset,
                                  gamma_up, u_range, p, threads, out_csv, out_svg);
        if (*curve) return cmd_bound_curve(curve_test, gammas, out_path, raw);
    } catch (const std::exception& e) {
        die(e.what());
    }
    return 1;
}
