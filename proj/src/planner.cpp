#include "sensorctl/planner.hpp"

#include <cmath>
#include <limits>

#include "sensorctl/errors.hpp"
#include "sensorctl/measurement.hpp"

namespace sensorctl {

LossSpec::LossSpec(Vec eps, double w) : tolerance(std::move(eps)), priority(w) {
    if (tolerance.size() == 0 || (tolerance.array() <= 0.0).any())
        throw ArgumentError("LossSpec: tolerance must be positive");
    if (!(priority > 0.0)) throw ArgumentError("LossSpec: priority must be positive");
}

double tolerance_loss(const LossSpec& spec, const Vec& p, const Vec& p_hat) {
    if (p.size() != p_hat.size() || p.size() != spec.tolerance.size())
        throw ArgumentError("tolerance_loss: dimension mismatch");
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (!(std::abs(p_hat[i] - p[i]) < spec.tolerance[i])) return spec.priority;
    return 0.0;
}

double decision_risk(double estimation_risk, const LossSpec& spec, double time_cost,
                     double cost_per_time) {
    if (estimation_risk < 0.0 || estimation_risk > 1.0)
        throw ArgumentError("decision_risk: estimation risk outside [0,1]");
    return spec.priority * estimation_risk + cost_per_time * time_cost;
}

StagePlan allocate_stage_risks(double tau, int stages) {
    if (!(tau > 0.0 && tau < 1.0)) throw ArgumentError("allocate_stage_risks: tau must be in (0,1)");
    if (stages < 1) throw ArgumentError("allocate_stage_risks: need at least one stage");
    StagePlan plan;
    plan.target_confidence = tau;
    plan.stage_risks.assign(static_cast<std::size_t>(stages),
                            1.0 - std::pow(tau, 1.0 / stages));
    return plan;
}

namespace {
// Standardized separation of two atoms' noiseless observations under the
// sampling noise at the conditioning atom. Directions outside the noise span
// separate the atoms in one sample.
double standardized_separation(const Vec& d, const Mat& cov) {
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (cov + cov.transpose()));
    const Vec lam = es.eigenvalues();
    const Vec proj = es.eigenvectors().transpose() * d;
    double q = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam[i] <= 1e-14 * scale) {
            if (std::abs(proj[i]) > 1e-12 * std::max(1.0, d.cwiseAbs().maxCoeff()))
                return std::numeric_limits<double>::infinity();
        } else {
            q += proj[i] * proj[i] / lam[i];
        }
    }
    return std::sqrt(q);
}
}  // namespace

BatchPlan batch_size(const MeasurementSystem& sys, const Vec& u, const GridPrior& prior,
                     const Vec& p_hat, double stage_risk, long n_max) {
    if (!(stage_risk > 0.0 && stage_risk < 1.0))
        throw ArgumentError("batch_size: stage risk must be in (0,1)");
    if (prior.size() < 2) return {1, false};

    long nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (long i = 0; i < prior.size(); ++i) {
        const double dist = (prior.atoms[static_cast<std::size_t>(i)] - p_hat).norm();
        if (dist < best) { best = dist; nearest = i; }
    }
    const Vec& p0 = prior.atoms[static_cast<std::size_t>(nearest)];
    const Vec h0 = transfer(sys, u, p0);
    const Mat cov = sys.noise(u, p0).covariance;

    std::vector<double> deltas;
    deltas.reserve(static_cast<std::size_t>(prior.size() - 1));
    bool unobservable = false;
    for (long i = 0; i < prior.size(); ++i) {
        if (i == nearest) continue;
        const Vec d = transfer(sys, u, prior.atoms[static_cast<std::size_t>(i)]) - h0;
        const double delta = standardized_separation(d, cov);
        if (delta == 0.0) unobservable = true;
        deltas.push_back(delta);
    }
    if (unobservable) return {n_max, true};

    auto failure_bound = [&](long n) {
        double b = 0.0;
        for (double delta : deltas) {
            if (std::isinf(delta)) continue;
            b += normal_cdf(-std::sqrt(static_cast<double>(n)) * delta / 2.0);
        }
        return b;
    };
    if (failure_bound(1) <= stage_risk) return {1, false};
    long lo = 1, hi = 1;
    while (hi < n_max && failure_bound(hi) > stage_risk) { lo = hi; hi = std::min(2 * hi, n_max); }
    if (failure_bound(hi) > stage_risk) return {n_max, false};
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (failure_bound(mid) > stage_risk) lo = mid; else hi = mid;
    }
    return {hi, false};
}

ControlChoice select_control(const std::vector<Vec>& candidates, const Vec& u_now,
                             const MeasurementSystem& sys, const GridPrior& prior,
                             const Vec& p_hat, double stage_risk, const TimeModel& time,
                             long n_max) {
    if (candidates.empty()) throw ArgumentError("select_control: no candidates");
    ControlChoice choice;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const BatchPlan plan = batch_size(sys, candidates[i], prior, p_hat, stage_risk, n_max);
        if (plan.unobservable) continue;
        const double t = time.travel_time(u_now, candidates[i]) +
                         time.sample_time(candidates[i]) * static_cast<double>(plan.count);
        if (t < best) {
            best = t;
            choice.control = candidates[i];
            choice.index = static_cast<long>(i);
            choice.batch = plan.count;
            choice.total_time = t;
        }
    }
    if (choice.index < 0)
        throw PlanningError("select_control: parameter unobservable at every candidate");
    return choice;
}

}  // namespace sensorctl
