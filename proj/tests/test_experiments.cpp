#include "doctest.h"

#include <map>
#include <sstream>

#include "core/experiments.hpp"
#include "core/sched_tests.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace dagsched;
using namespace dagsched::testing;

namespace {

ExpConfig small_cfg() {
    ExpConfig cfg;
    cfg.axis = Axis::utilization;
    cfg.axis_values = {rat(1, 10), rat(3, 10), rat(6, 10)};
    cfg.sets_per_point = 40;
    cfg.tests = {"rm-ut", "cab-new", "cab-li"};
    cfg.seed = 20240701;
    return cfg;
}

std::map<std::pair<std::string, std::string>, CurvePoint> index_curves(
    const std::vector<CurvePoint>& curves) {
    std::map<std::pair<std::string, std::string>, CurvePoint> out;
    for (const auto& cp : curves)
        out[{rat_str(cp.axis_value), cp.test}] = cp;
    return out;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("acceptance curves are reproducible and thread-count independent") {
    ExpConfig cfg = small_cfg();
    std::string csv1 = curves_to_csv(acceptance_curve(cfg));
    std::string csv2 = curves_to_csv(acceptance_curve(cfg));
    CHECK(csv1 == csv2);
    cfg.threads = 2;
    CHECK(curves_to_csv(acceptance_curve(cfg)) == csv1);
}

TEST_CASE("proven hierarchies dominate pointwise") {
    ExpConfig cfg = small_cfg();
    cfg.tests = {"rm-ut", "rm-tighter", "cab-new", "cab-li"};
    auto idx = index_curves(acceptance_curve(cfg));
    for (const auto& v : cfg.axis_values) {
        auto key = [&](const char* t) { return std::make_pair(rat_str(v), std::string(t)); };
        CHECK(idx[key("rm-ut")].accepted >= idx[key("cab-new")].accepted);
        CHECK(idx[key("rm-tighter")].accepted >= idx[key("rm-ut")].accepted);
        CHECK(idx[key("rm-ut")].accepted >= idx[key("cab-li")].accepted);
    }
}

TEST_CASE("utilization axis ratios never increase") {
    ExpConfig cfg = small_cfg();
    cfg.axis_values = {rat(1, 10), rat(2, 10), rat(4, 10), rat(8, 10)};
    auto curves = acceptance_curve(cfg);
    for (const auto& name : cfg.tests) {
        long long prev = -1;
        bool first = true;
        for (const auto& cp : curves) {
            if (cp.test != name) continue;
            if (!first) CHECK(cp.accepted <= prev);
            prev = cp.accepted;
            first = false;
        }
    }
}

TEST_CASE("config validation") {
    ExpConfig cfg = small_cfg();
    cfg.tests = {"rm-chen"};
    CHECK_THROWS_AS(acceptance_curve(cfg), Error);
    cfg = small_cfg();
    cfg.tests = {};
    CHECK_THROWS_AS(acceptance_curve(cfg), Error);
    cfg = small_cfg();
    cfg.axis_values = {rat(3, 10), rat(1, 10)};
    CHECK_THROWS_AS(acceptance_curve(cfg), Error);
    cfg = small_cfg();
    cfg.sets_per_point = 0;
    CHECK_THROWS_AS(acceptance_curve(cfg), Error);
}

TEST_CASE("CSV emission round-trips") {
    std::vector<CurvePoint> curves;
    CurvePoint a;
    a.axis_value = rat(1, 10);
    a.test = "rm-ut";
    a.accepted = 19;
    a.total = 40;
    curves.push_back(a);
    std::string csv = curves_to_csv(curves);
    CHECK(csv == "axis,test,accepted,total,ratio\n0.1,rm-ut,19,40,0.475000\n");

    // parse back
    std::istringstream in(csv);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "axis,test,accepted,total,ratio");
    CHECK(row.substr(0, 12) == "0.1,rm-ut,19");

    CHECK(curves_to_csv({}) == "axis,test,accepted,total,ratio\n");
}

TEST_CASE("SVG emission") {
    std::vector<CurvePoint> curves;
    for (int i = 1; i <= 2; ++i) {
        CurvePoint p;
        p.axis_value = rat(i, 10);
        p.test = "rm-ut";
        p.accepted = 3 - i;
        p.total = 4;
        curves.push_back(p);
    }
    std::string svg = curves_to_svg(curves);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("rm-ut") != std::string::npos);
    // two points -> polyline with two coordinate pairs
    auto pts = svg.find("points=\"");
    auto end = svg.find("\"", pts + 8);
    std::string coords = svg.substr(pts + 8, end - pts - 8);
    int commas = 0;
    for (char c : coords)
        if (c == ',') ++commas;
    CHECK(commas == 2);
    // byte determinism
    CHECK(curves_to_svg(curves) == svg);
}

TEST_CASE("closed-form bound curves") {
    auto rm = bound_curve("rm-ut", {rat(1, 2)});
    REQUIRE(rm.size() == 1);
    CHECK(rm[0].second == rat(3, 14));
    auto edf = bound_curve("edf-ut", {rat(1, 2)});
    CHECK(edf[0].second == rat(1, 4));
    CHECK_THROWS_AS(bound_curve("rm-ut", {Rat(0)}), Error);
    CHECK_THROWS_AS(bound_curve("rm-work", {rat(1, 2)}), Error);
}

TEST_CASE("capacity rectangles carry the enclosure corner") {
    auto rect = bound_curve("cab-new", {});
    REQUIRE(rect.size() == 3);
    CHECK(rect[1].first == rect[1].second);  // the corner is on the diagonal
    // (7-sqrt(33))/4 to twelve digits
    RatInterval s33 = sqrt_enclosure(33);
    Rat exact_corner = (7 - s33.hi) / 4;
    Rat err = rect[1].first - exact_corner;
    CHECK(err < rat(1, 1'000'000'000'000LL));
    CHECK(err > -rat(1, 1'000'000'000'000LL));

    auto li = bound_curve("cab-li", {});
    RatInterval s3 = sqrt_enclosure(3);
    Rat li_corner = 2 - s3.hi;  // 1/(2+sqrt(3)) = 2-sqrt(3)
    Rat li_err = li[1].first - li_corner;
    CHECK(li_err < rat(1, 1'000'000'000'000LL));
    CHECK(li_err > -rat(1, 1'000'000'000'000LL));
}

TEST_CASE("rm-ut and edf-ut threshold curves cross inside (0,1)") {
    auto diff = [](double g) {
        return (1 - g) * (2 - g) / (4 - g) - (1 - g) * (1 - g);
    };
    // the curves cross where the difference changes sign
    CHECK(diff(0.1) < 0);
    CHECK(diff(0.9) > 0);
    double root = oracle_bisect(diff, 0.1, 0.9);
    CHECK(root == doctest::Approx(0.585786).epsilon(1e-4));  // 2 - sqrt(2)
    Rat g = rat(static_cast<long long>(root * 1000), 1000);
    Rat delta = rm_ut_threshold(g) - edf_ut_threshold(g);
    CHECK(delta < rat(1, 100));
    CHECK(delta > -rat(1, 100));
}

TEST_CASE("gamma axis drives ratios down") {
    ExpConfig cfg = small_cfg();
    cfg.axis = Axis::gamma_up;
    cfg.axis_values = {rat(1, 10), rat(5, 10), rat(9, 10)};
    cfg.tests = {"rm-ut"};
    auto curves = acceptance_curve(cfg);
    CHECK(curves.front().accepted >= curves.back().accepted);
}

TEST_CASE("ntasks axis accepts integer values only") {
    ExpConfig cfg = small_cfg();
    cfg.axis = Axis::n_tasks;
    cfg.axis_values = {Rat(2), Rat(4)};
    cfg.tests = {"rm-ut"};
    cfg.sets_per_point = 10;
    auto curves = acceptance_curve(cfg);
    CHECK(curves.size() == 2);
    cfg.axis_values = {rat(5, 2)};
    CHECK_THROWS_AS(acceptance_curve(cfg), Error);
}

}  // TEST_SUITE
