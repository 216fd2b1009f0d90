#include "doctest.h"

#include <string>

#include "dagsched.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

const char* kTwoTasks = R"({
  "tasks": [
    {"id": 1, "period": 15,
     "vertices": [{"id":1,"wcet":2},{"id":2,"wcet":3},{"id":3,"wcet":4},
                  {"id":4,"wcet":3},{"id":5,"wcet":2},{"id":6,"wcet":2},{"id":7,"wcet":2}],
     "edges": [{"src":1,"dst":2},{"src":1,"dst":3},{"src":1,"dst":4},
               {"src":2,"dst":5},{"src":3,"dst":5},{"src":4,"dst":6},
               {"src":5,"dst":7},{"src":6,"dst":7}]},
    {"id": 2, "period": 8,
     "vertices": [{"id":1,"wcet":4}],
     "edges": []}
  ]
})";

struct Handle {
    ds_taskset* ts = nullptr;
    ~Handle() { ds_taskset_free(ts); }
};

struct Str {
    char* p = nullptr;
    ~Str() { ds_string_free(p); }
    std::string get() const { return p ? p : ""; }
};

}  // namespace

TEST_SUITE("c-api") {

TEST_CASE("load, canonicalize, analyze") {
    Handle h;
    REQUIRE(ds_taskset_from_json(kTwoTasks, &h.ts) == DS_OK);

    Str canon;
    REQUIRE(ds_taskset_to_json(h.ts, &canon.p) == DS_OK);
    Handle h2;
    REQUIRE(ds_taskset_from_json(canon.p, &h2.ts) == DS_OK);
    Str canon2;
    REQUIRE(ds_taskset_to_json(h2.ts, &canon2.p) == DS_OK);
    CHECK(canon.get() == canon2.get());

    Str out;
    REQUIRE(ds_analyze(h.ts, 2, &out.p) == DS_OK);
    json j = json::parse(out.get());
    CHECK(j["tasks"][0]["volume"] == 18);
    CHECK(j["tasks"][0]["critical_path"] == 10);
    CHECK(j["tasks"][0]["utilization"]["exact"] == "6/5");
    CHECK(j["tasks"][0]["tensity"]["exact"] == "2/3");
    CHECK(j["gamma_max"]["exact"] == "2/3");
}

TEST_CASE("validation failures carry every issue") {
    const char* bad = R"({"tasks":[{"id":1,"period":0,
        "vertices":[{"id":1,"wcet":2},{"id":2,"wcet":3}],
        "edges":[{"src":1,"dst":2},{"src":2,"dst":1},{"src":1,"dst":9}]}]})";
    Handle h;
    CHECK(ds_taskset_from_json(bad, &h.ts) == DS_ERR_VALIDATION);
    std::string err = ds_last_error();
    CHECK(err.find("NONPOSITIVE_PERIOD") != std::string::npos);
    CHECK(err.find("CYCLE_DETECTED") != std::string::npos);
    CHECK(err.find("DANGLING_EDGE") != std::string::npos);
}

TEST_CASE("status codes") {
    Handle h;
    CHECK(ds_taskset_from_json("nonsense", &h.ts) == DS_ERR_VALIDATION);
    CHECK(ds_taskset_load("no/such/file.json", &h.ts) == DS_ERR_IO);
    CHECK(ds_taskset_from_json(nullptr, &h.ts) == DS_ERR_INVALID_ARGUMENT);

    Handle ok;
    REQUIRE(ds_taskset_from_json(kTwoTasks, &ok.ts) == DS_OK);
    Str out;
    CHECK(ds_run_tests(ok.ts, 2, "rm-chen", 0, &out.p) == DS_ERR_UNKNOWN_TEST);
    CHECK(ds_work_eval(ok.ts, 99, 5, "1", &out.p) == DS_ERR_INVALID_ARGUMENT);
    CHECK(ds_work_eval(ok.ts, 1, 5, "1/2", &out.p) == DS_ERR_INVALID_ARGUMENT);
    CHECK(ds_simulate(ok.ts, 2, "lifo", 10, nullptr, &out.p) == DS_ERR_INVALID_ARGUMENT);
    CHECK(ds_bound_curve("rm-work", "0.5", &out.p) == DS_ERR_UNKNOWN_TEST);
}

TEST_CASE("work evaluation on the reference task") {
    Handle h;
    REQUIRE(ds_taskset_from_json(kTwoTasks, &h.ts) == DS_OK);
    Str out;
    REQUIRE(ds_work_eval(h.ts, 1, 13, "2", &out.p) == DS_OK);
    json j = json::parse(out.get());
    CHECK(j["q"]["exact"] == "18");       // saturated: 13 > makespan
    CHECK(j["work"]["exact"] == "10");    // 18 - q(2,2) = 18 - 8
    CHECK(j["makespan"]["exact"] == "5"); // 10 / 2

    Str out2;
    REQUIRE(ds_work_eval(h.ts, 1, 2, "2", &out2.p) == DS_OK);
    CHECK(json::parse(out2.get())["q"]["exact"] == "8");
}

TEST_CASE("tests and verdicts") {
    Handle h;
    REQUIRE(ds_taskset_from_json(kTwoTasks, &h.ts) == DS_OK);
    Str out;
    REQUIRE(ds_run_tests(h.ts, 3, "rm-work,rm-ut", 64, &out.p) == DS_OK);
    json j = json::parse(out.get());
    CHECK(j["tests"].size() == 2);
    CHECK(j["tests"][0]["name"] == "rm-work");
    for (const auto& t : j["tests"]) {
        CHECK(t.contains("decision"));
        CHECK(t.contains("margin"));
        CHECK(t.contains("min_m"));
    }
    Str all;
    REQUIRE(ds_run_tests(h.ts, 3, nullptr, 0, &all.p) == DS_OK);
    json ja = json::parse(all.get());
    CHECK(ja["tests"].size() == 9);  // necessary + 8 registered tests
    CHECK(ja["tests"][0]["name"] == "necessary");
}

TEST_CASE("generation through the C surface is deterministic") {
    const char* cfg = R"({"seed": 11, "preset": "desk"})";
    Handle a, b;
    Str ia, ib;
    REQUIRE(ds_generate(cfg, &a.ts, &ia.p) == DS_OK);
    REQUIRE(ds_generate(cfg, &b.ts, &ib.p) == DS_OK);
    Str ja, jb;
    REQUIRE(ds_taskset_to_json(a.ts, &ja.p) == DS_OK);
    REQUIRE(ds_taskset_to_json(b.ts, &jb.p) == DS_OK);
    CHECK(ja.get() == jb.get());
    CHECK(ia.get() == ib.get());
    CHECK(ds_generate(R"({"preset":"desk"})", &a.ts, nullptr) == DS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("simulation and falsification") {
    Handle h;
    REQUIRE(ds_taskset_from_json(kTwoTasks, &h.ts) == DS_OK);
    Str out;
    REQUIRE(ds_simulate(h.ts, 3, "rm", 120, R"({"trace":true})", &out.p) == DS_OK);
    json j = json::parse(out.get());
    CHECK(j["first_miss"].is_null());
    CHECK(j["trace"].is_string());
    CHECK(j["executed_work"].get<long long>() > 0);

    Str f;
    REQUIRE(ds_falsify(h.ts, 3, 3, 42, 100000, &f.p) == DS_OK);
    json jf = json::parse(f.get());
    CHECK(jf["miss_found"] == false);
}

TEST_CASE("experiment CSV through the C surface") {
    const char* cfg = R"({"axis":"utilization","values":["0.1","0.5"],
        "tests":["rm-ut","cab-li"],"seed":3,"sets_per_point":15,"preset":"desk"})";
    Str csv1, csv2, svg;
    REQUIRE(ds_experiment(cfg, &csv1.p, &svg.p) == DS_OK);
    REQUIRE(ds_experiment(cfg, &csv2.p, nullptr) == DS_OK);
    CHECK(csv1.get() == csv2.get());
    CHECK(csv1.get().substr(0, 32) == "axis,test,accepted,total,ratio\n0");
    CHECK(svg.get().find("<svg") == 0);
}

TEST_CASE("bound curve JSON") {
    Str out;
    REQUIRE(ds_bound_curve("rm-ut", "0.5", &out.p) == DS_OK);
    json j = json::parse(out.get());
    CHECK(j["points"][0]["threshold"] == "3/14");
}

}  // TEST_SUITE
