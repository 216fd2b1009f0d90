#include "doctest.h"

#include <set>

#include "core/taskgen.hpp"
#include "core/taskset_io.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace dagsched;
using namespace dagsched::testing;

TEST_SUITE("taskgen") {

TEST_CASE("generation is deterministic under the seed") {
    GenConfig cfg = GenConfig::desk();
    GeneratedSet a = gen_taskset(123, cfg);
    GeneratedSet b = gen_taskset(123, cfg);
    CHECK(taskset_to_string(a.set) == taskset_to_string(b.set));
    CHECK(a.gamma_up == b.gamma_up);
    GeneratedSet c = gen_taskset(124, cfg);
    CHECK(taskset_to_string(a.set) != taskset_to_string(c.set));
}

TEST_CASE("edge probability near 1 yields the complete forward DAG") {
    GenConfig cfg;
    cfg.n_vertices_range = {5, 5};
    cfg.wcet_range = {1, 9};
    cfg.edge_prob = rat(999'999'999, 1'000'000'000);
    Rng rng(2024);
    DagTask t = gen_dag(rng, cfg, 1);
    CHECK(t.vertices.size() == 5);  // complete DAG needs no dummies
    CHECK(t.edges.size() == 10);
    t.period = 1000;
    TaskMetrics m = metrics(t);
    CHECK(m.critical_path == m.volume);  // one path through all vertices
}

TEST_CASE("edge probability near 0 relies on the connectivity repair") {
    GenConfig cfg;
    cfg.n_vertices_range = {5, 5};
    cfg.wcet_range = {1, 9};
    cfg.edge_prob = rat(1, 1'000'000'000'000'000LL);
    Rng rng(99);
    DagTask t = gen_dag(rng, cfg, 1);
    CHECK(oracle_weak_components(t) == 1);
    CHECK(validate({t.task_id, t.vertices, t.edges, 10}).ok());
    // count edges between real vertices (ids 1..5): the repair chain
    int real_edges = 0;
    for (const auto& e : t.edges)
        if (e.src <= 5 && e.dst <= 5) ++real_edges;
    CHECK(real_edges == 4);
}

TEST_CASE("every generated task is valid, weakly connected and feasible") {
    GenConfig cfg = GenConfig::desk();
    for (int i = 0; i < 200; ++i) {
        GeneratedSet gs = gen_taskset(5000 + i, cfg);
        CHECK(!gs.set.tasks.empty());
        for (const auto& t : gs.set.tasks) {
            CHECK(validate(t).ok());
            CHECK(oracle_weak_components(t) == 1);
            TaskMetrics m = metrics(t);
            CHECK(m.critical_path <= t.period);      // L <= T by construction
            CHECK(m.tensity <= gs.gamma_up);
        }
    }
}

TEST_CASE("period assignment") {
    DagTask t = sample_task();  // L = 10
    CHECK(assign_period(t, rat(2, 3)).period == 15);
    CHECK(assign_period(t, rat(3, 10)).period == 34);  // ceil(100/3)
    CHECK(assign_period(t, Rat(1)).period == 10);
    CHECK_THROWS_AS(assign_period(t, Rat(0)), Error);
    CHECK_THROWS_AS(assign_period(t, rat(11, 10)), Error);
}

TEST_CASE("processor derivation") {
    TaskSet one{{sample_task()}};  // U_sum = 6/5
    CHECK(processors_for(one, rat(3, 5)) == 2);
    CHECK(processors_for(one, rat(1, 2)) == 3);
    TaskSet three{{sample_task(1), sample_task(2), sample_task(3)}};  // 18/5
    CHECK(processors_for(three, rat(2, 5)) == 9);
    CHECK_THROWS_AS(processors_for(one, Rat(0)), Error);
}

TEST_CASE("draws cover the configured ranges") {
    GenConfig cfg = GenConfig::desk();  // vertices [10,30], wcet [5,15], n [2,6]
    std::set<std::size_t> n_seen;
    std::set<std::size_t> nv_seen;
    std::set<long long> wcet_seen;
    for (int i = 0; i < 1000; ++i) {
        GeneratedSet gs = gen_taskset(9000 + i, cfg);
        n_seen.insert(gs.set.tasks.size());
        for (const auto& t : gs.set.tasks) {
            std::size_t real = 0;
            for (const auto& v : t.vertices)
                if (v.wcet > 0) ++real;  // dummies excluded
            nv_seen.insert(real);
            for (const auto& v : t.vertices)
                if (v.wcet > 0) wcet_seen.insert(v.wcet);
        }
    }
    CHECK(n_seen.count(2));
    CHECK(n_seen.count(6));
    CHECK(nv_seen.count(10));
    CHECK(nv_seen.count(30));
    CHECK(wcet_seen.count(5));
    CHECK(wcet_seen.count(15));
    CHECK(*wcet_seen.begin() >= 5);
    CHECK(*wcet_seen.rbegin() <= 15);
}

TEST_CASE("gamma_up draws stay inside the half-open range") {
    GenConfig cfg = GenConfig::desk();
    cfg.gamma_up_range = {rat(1, 10), rat(3, 5)};
    for (int i = 0; i < 500; ++i) {
        GeneratedSet gs = gen_taskset(i, cfg);
        CHECK(gs.gamma_up > rat(1, 10));
        CHECK(gs.gamma_up <= rat(3, 5));
    }
    cfg.gamma_up_range = {rat(2, 5), rat(2, 5)};
    CHECK(gen_taskset(1, cfg).gamma_up == rat(2, 5));
}

TEST_CASE("config validation") {
    GenConfig cfg = GenConfig::desk();
    cfg.edge_prob = Rat(1);
    Rng rng(1);
    CHECK_THROWS_AS(gen_dag(rng, cfg, 1), Error);
    cfg = GenConfig::desk();
    cfg.gamma_up_range = {rat(1, 10), rat(7, 5)};
    CHECK_THROWS_AS(gen_taskset(1, cfg), Error);
    cfg = GenConfig::desk();
    cfg.n_tasks_range = {0, 4};
    CHECK_THROWS_AS(gen_taskset(1, cfg), Error);
}

}  // TEST_SUITE
