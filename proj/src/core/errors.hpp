#pragma once

#include <stdexcept>
#include <string>

namespace dagsched {

enum class Errc {
    cycle_detected,
    dangling_edge,
    duplicate_edge,
    duplicate_vertex,
    empty_graph,
    nonpositive_wcet,
    nonpositive_period,
    speed_below_one,
    degenerate_tensity,
    horizon_nonpositive,
    unknown_test_name,
    empty_task_set,
    invalid_argument,
    parse_error,
    io_error,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::cycle_detected: return "CYCLE_DETECTED";
        case Errc::dangling_edge: return "DANGLING_EDGE";
        case Errc::duplicate_edge: return "DUPLICATE_EDGE";
        case Errc::duplicate_vertex: return "DUPLICATE_VERTEX";
        case Errc::empty_graph: return "EMPTY_GRAPH";
        case Errc::nonpositive_wcet: return "NONPOSITIVE_WCET";
        case Errc::nonpositive_period: return "NONPOSITIVE_PERIOD";
        case Errc::speed_below_one: return "SPEED_BELOW_ONE";
        case Errc::degenerate_tensity: return "DEGENERATE_TENSITY";
        case Errc::horizon_nonpositive: return "HORIZON_NONPOSITIVE";
        case Errc::unknown_test_name: return "UNKNOWN_TEST_NAME";
        case Errc::empty_task_set: return "EMPTY_TASK_SET";
        case Errc::invalid_argument: return "INVALID_ARGUMENT";
        case Errc::parse_error: return "PARSE_ERROR";
        case Errc::io_error: return "IO_ERROR";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

}  // namespace dagsched
