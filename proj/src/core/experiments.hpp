#pragma once

// Acceptance-ratio experiments: sweep one generation parameter, generate a
// batch of seeded task sets per point, run the selected tests on each and
// tally acceptance ratios. Per-set seeds depend only on the set index, so a
// sweep reuses the same underlying draws across points (the utilization axis
// varies nothing but the derived processor count).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "taskgen.hpp"

namespace dagsched {

enum class Axis { utilization, gamma_up, n_tasks };

const char* axis_name(Axis a);
Axis axis_from_name(const std::string& name);

struct ExpConfig {
    Axis axis = Axis::utilization;
    std::vector<Rat> axis_values;  // ascending
    int sets_per_point = 200;
    GenConfig gen;                            // off-axis structure/gamma ranges
    std::pair<Rat, Rat> u_range{rat(1, 10), rat(3, 5)};  // off-axis U, inclusive
    std::vector<std::string> tests;
    std::uint64_t seed = 1;
    int threads = 1;
};

struct CurvePoint {
    Rat axis_value;
    std::string test;
    long long accepted = 0;
    long long total = 0;
    Rat ratio() const { return total ? rat(accepted, total) : Rat(0); }
};

std::vector<CurvePoint> acceptance_curve(const ExpConfig& cfg);

// Closed-form utilization thresholds over a tensity grid for rm-ut, rm-basic
// and edf-ut; for the capacity-augmentation tests the three corner points of
// their acceptance rectangle.
std::vector<std::pair<Rat, Rat>> bound_curve(const std::string& test,
                                             const std::vector<Rat>& gammas);

std::string curves_to_csv(const std::vector<CurvePoint>& curves);
std::string curves_to_svg(const std::vector<CurvePoint>& curves);

void emit_csv(const std::vector<CurvePoint>& curves, const std::string& path);
void emit_svg(const std::vector<CurvePoint>& curves, const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace dagsched
