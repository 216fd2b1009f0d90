#pragma once

// The hypothetical schedule of one task on infinitely many speed-s processors
// and the derived demand functions:
//
//   q(t, s)    work that schedule finishes within t time units of release
//   work(t, s) maximum in-window demand from jobs with deadlines inside any
//              window of length t; for t <= T it is C - q(T - t, s) and for
//              larger t it unrolls whole periods
//
// q is piecewise linear with breakpoints only at vertex start/finish times,
// so a profile stores the breakpoints once and evaluates in O(log V).

#include <vector>

#include "task.hpp"

namespace dagsched {

struct SInftySchedule {
    Rat speed;
    std::vector<int> vertex_ids;  // ascending
    std::vector<Rat> start;       // aligned with vertex_ids
    std::vector<Rat> finish;
    Rat makespan;  // = L / s
};

// Requires a speed >= 1 (work()'s base case needs the whole graph finished
// within one period on the hypothetical machine).
SInftySchedule sinfty_schedule(const DagTask& task, const Rat& speed);

class WorkProfile {
  public:
    WorkProfile(const DagTask& task, const Rat& speed);

    Rat q(const Rat& t) const;
    Rat work(long long t) const;

    // max over integer t in [T, 2T] of (work(t,1)+delta)/t, which on the
    // discrete time model equals the supremum over all t >= T. Speed-1
    // profiles only.
    Rat sup_work_ratio(const Rat& delta) const;

    long long period() const { return period_; }
    long long volume() const { return volume_; }
    const Rat& makespan() const { return makespan_; }
    const Rat& speed() const { return speed_; }

  private:
    Rat speed_;
    long long period_ = 0;
    long long volume_ = 0;
    Rat makespan_;
    // q(t) = qv_[j] + slope_[j] * (t - bp_[j]) for bp_[j] <= t <= bp_[j+1]
    std::vector<Rat> bp_;
    std::vector<Rat> qv_;
    std::vector<Rat> slope_;
};

Rat q_value(const DagTask& task, const Rat& t, const Rat& speed);
Rat work_value(const DagTask& task, long long t, const Rat& speed);
Rat sup_work_ratio(const DagTask& task, const Rat& delta);

// Closed-form ceilings on work(t,1)/t.
Rat bound_unit(const DagTask& task);            // all t > 0
Rat bound_geq_period(const DagTask& task);      // t >= T
Rat bound_speed(const DagTask& task, const Rat& s);  // speed-s machine, s > 1

}  // namespace dagsched
