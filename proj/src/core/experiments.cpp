#include "experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "sched_tests.hpp"

namespace dagsched {

namespace {

constexpr std::uint64_t kTagSet = 0x736574;     // per-set seed
constexpr std::uint64_t kTagOffU = 0x6f666675;  // off-axis utilization draw

Rat draw_u(std::uint64_t set_seed, const std::pair<Rat, Rat>& range) {
    Rat lo1000 = range.first * 1000, hi1000 = range.second * 1000;
    if (lo1000.get_den() != 1 || hi1000.get_den() != 1)
        throw Error(Errc::invalid_argument, "utilization range must be multiples of 1/1000");
    long long lo = rat_floor_ll(lo1000), hi = rat_floor_ll(hi1000);
    if (lo < 1 || lo > hi)
        throw Error(Errc::invalid_argument, "bad utilization range");
    Rng rng = Rng::derive(set_seed, kTagOffU);
    return rat(rng.uniform_int(lo, hi), 1000);
}

struct PointSetup {
    GenConfig gen;
    bool fixed_u = false;
    Rat u_value;
};

PointSetup setup_for(const ExpConfig& cfg, const Rat& axis_value) {
    PointSetup p;
    p.gen = cfg.gen;
    switch (cfg.axis) {
        case Axis::utilization:
            p.fixed_u = true;
            p.u_value = axis_value;
            if (axis_value <= 0)
                throw Error(Errc::invalid_argument, "utilization values must be positive");
            break;
        case Axis::gamma_up:
            p.gen.gamma_up_range = {axis_value, axis_value};
            break;
        case Axis::n_tasks: {
            if (axis_value.get_den() != 1 || axis_value < 1)
                throw Error(Errc::invalid_argument, "task-count values must be integers >= 1");
            int n = static_cast<int>(rat_floor_ll(axis_value));
            p.gen.n_tasks_range = {n, n};
            break;
        }
    }
    return p;
}

}  // namespace

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::utilization: return "utilization";
        case Axis::gamma_up: return "gamma";
        case Axis::n_tasks: return "ntasks";
    }
    return "?";
}

Axis axis_from_name(const std::string& name) {
    if (name == "utilization") return Axis::utilization;
    if (name == "gamma") return Axis::gamma_up;
    if (name == "ntasks") return Axis::n_tasks;
    throw Error(Errc::invalid_argument, "unknown axis " + name);
}

std::vector<CurvePoint> acceptance_curve(const ExpConfig& cfg) {
    if (cfg.axis_values.empty())
        throw Error(Errc::invalid_argument, "experiment needs axis values");
    if (!std::is_sorted(cfg.axis_values.begin(), cfg.axis_values.end()))
        throw Error(Errc::invalid_argument, "axis values must be ascending");
    if (cfg.sets_per_point < 1)
        throw Error(Errc::invalid_argument, "sets_per_point must be >= 1");
    if (cfg.tests.empty()) throw Error(Errc::invalid_argument, "empty test list");
    for (const auto& t : cfg.tests)
        if (!is_registered_test(t)) throw Error(Errc::unknown_test_name, t);

    const int n_tests = static_cast<int>(cfg.tests.size());
    const int n_sets = cfg.sets_per_point;
    std::vector<CurvePoint> out;

    for (const Rat& axis_value : cfg.axis_values) {
        PointSetup point = setup_for(cfg, axis_value);

        // accept[j * n_tests + t]; merged by set index, so worker count never
        // changes the tallies.
        std::vector<char> accept(static_cast<std::size_t>(n_sets) * n_tests, 0);
        std::string first_error;
        std::mutex error_mutex;

        auto worker = [&](int begin, int end) {
            try {
                for (int j = begin; j < end; ++j) {
                    std::uint64_t set_seed =
                        derive_seed(cfg.seed, kTagSet, static_cast<std::uint64_t>(j));
                    GeneratedSet gs = gen_taskset(set_seed, point.gen);
                    Rat u = point.fixed_u ? point.u_value : draw_u(set_seed, cfg.u_range);
                    int m = processors_for(gs.set, u);
                    for (int t = 0; t < n_tests; ++t)
                        accept[static_cast<std::size_t>(j) * n_tests + t] =
                            run_test(cfg.tests[t], gs.set, m).accepted() ? 1 : 0;
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) first_error = e.what();
            }
        };

        int n_threads = std::max(1, cfg.threads);
        n_threads = std::min(n_threads, n_sets);
        if (n_threads == 1) {
            worker(0, n_sets);
        } else {
            std::vector<std::thread> pool;
            int chunk = (n_sets + n_threads - 1) / n_threads;
            for (int w = 0; w < n_threads; ++w) {
                int b = w * chunk, e = std::min(n_sets, b + chunk);
                if (b >= e) break;
                pool.emplace_back(worker, b, e);
            }
            for (auto& th : pool) th.join();
        }
        if (!first_error.empty()) throw Error(Errc::invalid_argument, first_error);

        for (int t = 0; t < n_tests; ++t) {
            CurvePoint cp;
            cp.axis_value = axis_value;
            cp.test = cfg.tests[t];
            cp.total = n_sets;
            for (int j = 0; j < n_sets; ++j)
                cp.accepted += accept[static_cast<std::size_t>(j) * n_tests + t];
            out.push_back(std::move(cp));
        }
    }
    return out;
}

std::vector<std::pair<Rat, Rat>> bound_curve(const std::string& test,
                                             const std::vector<Rat>& gammas) {
    Rat (*closed_form)(const Rat&) = nullptr;
    const RatInterval* rho = nullptr;
    if (test == "rm-ut") closed_form = rm_ut_threshold;
    else if (test == "rm-basic") closed_form = rm_basic_threshold;
    else if (test == "edf-ut") closed_form = edf_ut_threshold;
    else if (test == "cab-new") rho = &BoundConstants::rho_rm_new();
    else if (test == "cab-li") rho = &BoundConstants::rho_rm_li();
    else if (test == "edf-cab") rho = &BoundConstants::rho_edf();
    else throw Error(Errc::unknown_test_name, test + " has no closed-form bound curve");

    std::vector<std::pair<Rat, Rat>> out;
    if (rho) {
        Rat corner = 1 / rho->hi;
        out.push_back({Rat(0), corner});
        out.push_back({corner, corner});
        out.push_back({corner, Rat(0)});
        return out;
    }
    for (const auto& g : gammas) {
        if (g <= 0 || g >= 1)
            throw Error(Errc::invalid_argument, "tensity grid must lie in (0,1)");
        out.push_back({g, closed_form(g)});
    }
    return out;
}

std::string curves_to_csv(const std::vector<CurvePoint>& curves) {
    std::string out = "axis,test,accepted,total,ratio\n";
    char buf[64];
    for (const auto& cp : curves) {
        double ratio = cp.total ? static_cast<double>(cp.accepted) / cp.total : 0.0;
        std::snprintf(buf, sizeof buf, "%.6f", ratio);
        out += rat_decimal_or_fraction(cp.axis_value) + "," + cp.test + "," +
               std::to_string(cp.accepted) + "," + std::to_string(cp.total) + "," + buf +
               "\n";
    }
    return out;
}

std::string curves_to_svg(const std::vector<CurvePoint>& curves) {
    static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                     "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    const double W = 720, H = 480, ml = 60, mr = 160, mt = 20, mb = 40;
    std::vector<std::string> tests;
    double xmin = 0, xmax = 1;
    bool first = true;
    for (const auto& cp : curves) {
        if (std::find(tests.begin(), tests.end(), cp.test) == tests.end())
            tests.push_back(cp.test);
        double x = rat_d(cp.axis_value);
        if (first || x < xmin) xmin = x;
        if (first || x > xmax) xmax = x;
        first = false;
    }
    if (xmax <= xmin) xmax = xmin + 1;

    auto fmt = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.2f", v);
        return std::string(b);
    };
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - y * (H - mt - mb); };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) +
                      "\" height=\"" + fmt(H) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(H - mb) + "\" x2=\"" + fmt(W - mr) +
           "\" y2=\"" + fmt(H - mb) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) +
           "\" y2=\"" + fmt(H - mb) + "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        double y = i / 5.0;
        svg += "<text x=\"" + fmt(ml - 35) + "\" y=\"" + fmt(py(y) + 4) +
               "\" font-size=\"12\">" + fmt(y) + "</text>\n";
    }
    int color = 0;
    for (const auto& name : tests) {
        std::string pts;
        for (const auto& cp : curves) {
            if (cp.test != name) continue;
            double ratio = cp.total ? static_cast<double>(cp.accepted) / cp.total : 0.0;
            pts += fmt(px(rat_d(cp.axis_value))) + "," + fmt(py(ratio)) + " ";
        }
        const char* c = kPalette[color % 8];
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(c) +
               "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
        svg += "<text x=\"" + fmt(W - mr + 10) + "\" y=\"" + fmt(mt + 16 + 18 * color) +
               "\" font-size=\"13\" fill=\"" + c + "\">" + name + "</text>\n";
        ++color;
    }
    svg += "</svg>\n";
    return svg;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot open " + path + " for writing");
    out << content;
    if (!out) throw Error(Errc::io_error, "write to " + path + " failed");
}

void emit_csv(const std::vector<CurvePoint>& curves, const std::string& path) {
    write_text_file(path, curves_to_csv(curves));
}

void emit_svg(const std::vector<CurvePoint>& curves, const std::string& path) {
    write_text_file(path, curves_to_svg(curves));
}

}  // namespace dagsched
