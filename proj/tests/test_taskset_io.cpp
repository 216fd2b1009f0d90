#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "core/taskset_io.hpp"
#include "test_helpers.hpp"

using namespace dagsched;
using namespace dagsched::testing;

TEST_SUITE("taskset-io") {

TEST_CASE("canonical serialization round-trips byte-identically") {
    TaskSet set{{sample_task(2), single_vertex_task(1, 4, 8)}};
    std::string text = taskset_to_string(set);
    auto parsed = taskset_from_string(text);
    REQUIRE(parsed.ok());
    CHECK(taskset_to_string(*parsed.set) == text);
    // canonical order: task 1 before task 2
    CHECK(parsed.set->tasks[0].task_id == 1);
    CHECK(parsed.set->tasks[1].task_id == 2);
}

TEST_CASE("serialization sorts vertices and edges") {
    DagTask t = mk_task(1, 9, {2, 3}, {{1, 2}});
    std::swap(t.vertices[0], t.vertices[1]);
    std::string text = taskset_to_string(TaskSet{{t}});
    auto i1 = text.find("\"id\": 1");
    auto i2 = text.find("\"id\": 2", text.find("vertices"));
    CHECK(i1 != std::string::npos);
    CHECK(i2 != std::string::npos);
}

TEST_CASE("malformed input reports parse errors") {
    CHECK_FALSE(taskset_from_string("not json").ok());
    CHECK_FALSE(taskset_from_string("{}").ok());
    CHECK_FALSE(taskset_from_string(R"({"tasks":[{"id":1}]})").ok());
}

TEST_CASE("validation issues carry the task id") {
    TaskSet bad{{mk_task(7, 10, {2, 3}, {{1, 2}, {2, 1}})}};
    auto res = taskset_from_string(taskset_to_string(bad));
    REQUIRE_FALSE(res.ok());
    bool found = false;
    for (const auto& i : res.issues)
        if (i.message.find("task 7") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("duplicate task ids are rejected") {
    TaskSet dup{{single_vertex_task(1, 2, 5), single_vertex_task(1, 3, 7)}};
    CHECK_FALSE(taskset_from_string(taskset_to_string(dup)).ok());
}

TEST_CASE("file save/load round trip") {
    std::string path = "io_roundtrip_test.json";
    TaskSet set{{sample_task()}};
    save_taskset(set, path);
    auto res = load_taskset(path);
    REQUIRE(res.ok());
    CHECK(taskset_to_string(*res.set) == taskset_to_string(set));
    std::remove(path.c_str());

    CHECK_FALSE(load_taskset("does/not/exist.json").ok());
}

}  // TEST_SUITE
