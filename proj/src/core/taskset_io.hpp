#pragma once

// Canonical task-set file format (JSON): {"tasks":[{"id","period","vertices":
// [{"id","wcet"}],"edges":[{"src","dst"}]}]}. Serialization sorts tasks,
// vertices and edges by id so a file round-trips byte-identically.

#include <string>

#include "task.hpp"

namespace dagsched {

std::string taskset_to_string(const TaskSet& set);

// Parsing validates every task and collects all issues; malformed JSON or
// missing fields surface as a single parse_error issue.
struct TasksetParseResult {
    std::optional<TaskSet> set;
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

TasksetParseResult taskset_from_string(const std::string& text);
TasksetParseResult load_taskset(const std::string& path);
void save_taskset(const TaskSet& set, const std::string& path);

}  // namespace dagsched
