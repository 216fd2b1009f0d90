#pragma once

// DAG task model: a recurrent task is a directed acyclic graph of vertices
// with integer worst-case execution times, released sporadically with an
// implicit deadline equal to its period.

#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace dagsched {

struct Vertex {
    int id = 0;
    long long wcet = 0;  // work units; 0 only for synthetic head/tail dummies
};

struct Edge {
    int src = 0;
    int dst = 0;
};

struct DagTask {
    int task_id = 0;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    long long period = 0;  // implicit deadline
};

struct TaskSet {
    std::vector<DagTask> tasks;
};

struct TaskMetrics {
    long long volume = 0;         // total work C
    long long critical_path = 0;  // longest source-to-sink path L
    Rat utilization;              // C / T
    Rat tensity;                  // L / T
};

struct SetMetrics {
    Rat total_utilization;       // sum of per-task utilizations
    Rat normalized_utilization;  // total / m
    Rat gamma_max;               // max tensity
};

struct ValidationIssue {
    Errc code;
    std::string message;
};

struct ValidationResult {
    std::optional<DagTask> task;  // present iff issues is empty
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

// Checks a raw vertex/edge description and reports every violation, not just
// the first. wcet 0 is tolerated only on a vertex in sole-head or sole-tail
// position (the shape normalize() produces).
ValidationResult validate(const DagTask& raw);

// Adds a zero-wcet dummy head/tail when the graph has several sources/sinks.
// Idempotent; returns the input unchanged when it is already normal.
DagTask normalize(const DagTask& task);

TaskMetrics metrics(const DagTask& task);

SetMetrics set_metrics(const TaskSet& set, int m);

// Index-based adjacency view used by the schedule and work-function code.
// Vertices are ordered by ascending id; `order` is a topological order over
// those indices.
struct TaskGraph {
    std::vector<int> ids;
    std::vector<long long> wcet;
    std::vector<std::vector<int>> preds;
    std::vector<std::vector<int>> succs;
    std::vector<int> order;

    static TaskGraph build(const DagTask& task);
    std::size_t size() const { return ids.size(); }
};

}  // namespace dagsched
