#include "work_function.hpp"

#include <algorithm>
#include <set>

namespace dagsched {

SInftySchedule sinfty_schedule(const DagTask& task, const Rat& speed) {
    if (speed < 1)
        throw Error(Errc::speed_below_one, "speed " + rat_str(speed) + " is below 1");
    TaskGraph g = TaskGraph::build(task);
    SInftySchedule s;
    s.speed = speed;
    s.vertex_ids = g.ids;
    s.start.assign(g.size(), Rat(0));
    s.finish.assign(g.size(), Rat(0));
    s.makespan = 0;
    for (int u : g.order) {
        Rat begin(0);
        for (int p : g.preds[u]) begin = std::max(begin, s.finish[p]);
        s.start[u] = begin;
        s.finish[u] = begin + rat(g.wcet[u]) / speed;
        s.makespan = std::max(s.makespan, s.finish[u]);
    }
    return s;
}

WorkProfile::WorkProfile(const DagTask& task, const Rat& speed) : speed_(speed) {
    if (task.period < 1)
        throw Error(Errc::nonpositive_period,
                    "task " + std::to_string(task.task_id) + " has no positive period");
    SInftySchedule sched = sinfty_schedule(task, speed);
    period_ = task.period;
    for (const auto& v : task.vertices) volume_ += v.wcet;
    makespan_ = sched.makespan;

    std::set<Rat> points{Rat(0)};
    for (std::size_t i = 0; i < sched.start.size(); ++i) {
        points.insert(sched.start[i]);
        points.insert(sched.finish[i]);
    }
    bp_.assign(points.begin(), points.end());

    // wcets in the schedule's ascending-id order
    std::vector<long long> wcets;
    {
        std::vector<std::pair<int, long long>> byid;
        for (const auto& v : task.vertices) byid.push_back({v.id, v.wcet});
        std::sort(byid.begin(), byid.end());
        for (auto& [id, w] : byid) wcets.push_back(w);
    }

    qv_.reserve(bp_.size());
    slope_.reserve(bp_.size());
    for (const Rat& t : bp_) {
        Rat value(0);
        int active = 0;
        for (std::size_t i = 0; i < sched.start.size(); ++i) {
            if (t > sched.start[i]) {
                Rat done = speed * (t - sched.start[i]);
                Rat cap = rat(wcets[i]);
                value += done < cap ? done : cap;
            }
            if (sched.start[i] <= t && t < sched.finish[i]) ++active;
        }
        qv_.push_back(value);
        slope_.push_back(speed * active);
    }
}

Rat WorkProfile::q(const Rat& t) const {
    if (t <= 0) return Rat(0);
    if (t >= makespan_) return rat(volume_);
    auto it = std::upper_bound(bp_.begin(), bp_.end(), t);
    std::size_t j = static_cast<std::size_t>(it - bp_.begin()) - 1;
    return qv_[j] + slope_[j] * (t - bp_[j]);
}

Rat WorkProfile::work(long long t) const {
    if (t < 0) throw Error(Errc::invalid_argument, "work() needs t >= 0");
    if (t <= period_) return rat(volume_) - q(rat(period_ - t));
    long long k = t / period_;
    long long rem = t - k * period_;
    return rat(volume_) * rat(k) + (rat(volume_) - q(rat(period_ - rem)));
}

Rat WorkProfile::sup_work_ratio(const Rat& delta) const {
    if (speed_ != 1)
        throw Error(Errc::invalid_argument, "sup_work_ratio is defined on speed-1 profiles");
    if (delta < 0) throw Error(Errc::invalid_argument, "delta must be >= 0");
    const long long T = period_;
    // work(t) restricted to (T, 2T] is affine between images of q's
    // breakpoints, and (affine + delta)/t is monotone on each piece, so the
    // maximum over the integer grid is attained at a piece endpoint. All
    // breakpoints are integers at speed 1. T+1 guards the jump at t = T.
    std::set<long long> candidates{T, std::min(T + 1, 2 * T), 2 * T};
    for (const auto& b : bp_) {
        long long bi = rat_floor_ll(b);  // integer already at speed 1
        if (bi >= 0 && bi <= T) {
            long long t = 2 * T - bi;
            if (t >= T && t <= 2 * T) candidates.insert(t);
        }
    }
    Rat best(-1);
    for (long long t : candidates) {
        Rat ratio = (work(t) + delta) / rat(t);
        if (ratio > best) best = ratio;
    }
    return best;
}

Rat q_value(const DagTask& task, const Rat& t, const Rat& speed) {
    return WorkProfile(task, speed).q(t);
}

Rat work_value(const DagTask& task, long long t, const Rat& speed) {
    return WorkProfile(task, speed).work(t);
}

Rat sup_work_ratio(const DagTask& task, const Rat& delta) {
    return WorkProfile(task, Rat(1)).sup_work_ratio(delta);
}

Rat bound_unit(const DagTask& task) {
    TaskMetrics m = metrics(task);
    if (m.utilization <= 1) return m.utilization;
    if (m.tensity >= 1)
        throw Error(Errc::degenerate_tensity,
                    "task " + std::to_string(task.task_id) +
                        " has utilization > 1 and tensity >= 1");
    return (m.utilization - m.tensity) / (1 - m.tensity);
}

Rat bound_geq_period(const DagTask& task) {
    TaskMetrics m = metrics(task);
    if (m.utilization <= 1) return m.utilization;
    if (m.tensity >= 2)
        throw Error(Errc::degenerate_tensity,
                    "task " + std::to_string(task.task_id) + " has tensity >= 2");
    return (2 * m.utilization - m.tensity) / (2 - m.tensity);
}

Rat bound_speed(const DagTask& task, const Rat& s) {
    if (s <= 1) throw Error(Errc::invalid_argument, "bound_speed needs s > 1");
    TaskMetrics m = metrics(task);
    if (m.utilization <= s) return m.utilization;
    return (m.utilization - 1) / (1 - 1 / s);
}

}  // namespace dagsched
