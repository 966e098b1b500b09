#ifndef SENSORCTL_PLANNER_HPP
#define SENSORCTL_PLANNER_HPP

#include <functional>
#include <vector>

#include "sensorctl/grid.hpp"
#include "sensorctl/types.hpp"

namespace sensorctl {

struct LossSpec {
    Vec tolerance;    // > 0 componentwise
    double priority;  // w > 0

    LossSpec(Vec eps, double w);
};

// 0 when every coordinate is strictly within tolerance, w otherwise.
double tolerance_loss(const LossSpec& spec, const Vec& p, const Vec& p_hat);

// w * P(outside tolerance) + cost_per_time * time_cost.
double decision_risk(double estimation_risk, const LossSpec& spec, double time_cost,
                     double cost_per_time = 1.0);

struct StagePlan {
    double target_confidence = 0.0;
    std::vector<double> stage_risks;  // equal risks 1 - tau^(1/i)
};

// Allocates i equal per-stage risks whose success probabilities multiply to tau.
StagePlan allocate_stage_risks(double tau, int stages);

struct TimeModel {
    std::function<double(const Vec& u)> sample_time;
    std::function<double(const Vec& u_from, const Vec& u_to)> travel_time;
};

struct BatchPlan {
    long count = 0;
    bool unobservable = false;
};

// Smallest n such that, with the true parameter at the atom nearest p_hat,
// the union bound over competing atoms of the pairwise Gaussian error
// Phi(-sqrt(n) * delta / 2) drops to stage_risk. delta is the standardized
// separation of the atoms' noiseless observations at control u. Atoms whose
// observations coincide make the parameter unobservable at this control; the
// plan is then capped at n_max and flagged.
BatchPlan batch_size(const MeasurementSystem& sys, const Vec& u, const GridPrior& prior,
                     const Vec& p_hat, double stage_risk, long n_max = 1000000);

struct ControlChoice {
    Vec control;
    long index = -1;
    long batch = 0;
    double total_time = 0.0;
};

// Minimizes travel_time(u_now, u) + sample_time(u) * batch over candidates.
// Unobservable candidates are skipped; if every candidate is unobservable a
// PlanningError is raised. Ties go to the lowest candidate index.
ControlChoice select_control(const std::vector<Vec>& candidates, const Vec& u_now,
                             const MeasurementSystem& sys, const GridPrior& prior,
                             const Vec& p_hat, double stage_risk, const TimeModel& time,
                             long n_max = 1000000);

}  // namespace sensorctl

#endif
