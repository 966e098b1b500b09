#include "sensorctl/refine.hpp"

#include <cmath>
#include <limits>

#include "sensorctl/errors.hpp"

namespace sensorctl {

CostModel::CostModel(double c1, std::function<double(long)> c2)
    : stage_cost(c1), sampling_cost(std::move(c2)) {
    if (stage_cost < 0.0) throw ArgumentError("CostModel: stage cost must be nonnegative");
    if (!sampling_cost) throw ArgumentError("CostModel: sampling cost required");
}

namespace {
std::vector<std::size_t> axis_indices(const GridPrior& prior, long atom_index) {
    if (atom_index < 0 || atom_index >= prior.size())
        throw ArgumentError("neighborhood: atom index out of range");
    std::vector<std::size_t> idx(prior.axes.size());
    long rem = atom_index;
    for (std::size_t d = prior.axes.size(); d-- > 0;) {  // last axis fastest
        const long n = static_cast<long>(prior.axes[d].size());
        idx[d] = static_cast<std::size_t>(rem % n);
        rem /= n;
    }
    return idx;
}
}  // namespace

ParameterBox neighborhood(const GridPrior& prior, long atom_index) {
    const auto idx = axis_indices(prior, atom_index);
    const Eigen::Index s = prior.dim();
    Vec lo(s), hi(s);
    for (Eigen::Index d = 0; d < s; ++d) {
        const auto& ax = prior.axes[static_cast<std::size_t>(d)];
        const std::size_t j = idx[static_cast<std::size_t>(d)];
        lo[d] = ax[j > 0 ? j - 1 : j];
        hi[d] = ax[j + 1 < ax.size() ? j + 1 : j];
    }
    return ParameterBox(lo, hi);
}

RefinementState refine_step(const RefinementState& state, const MeasurementSystem& sys,
                            const SufficientSummary& summary, int points_per_axis) {
    const GridPrior prior = uniform_grid(state.box, points_per_axis);
    const GridPrior post = posterior(prior, sys, summary);
    // The next interval centers on the prior point closest to the estimate
    // (the posterior mean is rarely on the grid).
    const Vec estimate = posterior_mean(post);
    long best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (long i = 0; i < post.size(); ++i) {
        const double d = (post.atoms[static_cast<std::size_t>(i)] - estimate).norm();
        if (d < dist) { dist = d; best = i; }
    }
    const Vec& pick = post.atoms[static_cast<std::size_t>(best)];

    const Eigen::Index s = state.box.dim();
    Vec lo(s), hi(s);
    for (Eigen::Index d = 0; d < s; ++d) {
        const double q = 0.25 * (state.box.upper[d] - state.box.lower[d]);
        const double c = std::min(std::max(pick[d], state.box.lower[d] + q),
                                  state.box.upper[d] - q);
        lo[d] = c - q;
        hi[d] = c + q;
    }
    RefinementState next;
    next.box = ParameterBox(lo, hi);
    next.stage = state.stage + 1;
    next.samples_used = state.samples_used + summary.total_count();
    next.post = post;
    return next;
}

double iteration_cost(double initial_width, double eps, const CostModel& cost,
                      long total_samples) {
    if (!(eps > 0.0) || initial_width < eps)
        throw ArgumentError("iteration_cost: need initial width >= eps > 0");
    const double stages = std::max(0.0, std::ceil(std::log2(initial_width / eps)));
    return cost.stage_cost * stages + cost.sampling_cost(total_samples);
}

int planned_refinements(const ParameterBox& box, const Vec& eps) {
    if (eps.size() != box.dim() || (eps.array() <= 0.0).any())
        throw ArgumentError("planned_refinements: tolerance must be positive");
    int k = 0;
    for (Eigen::Index d = 0; d < box.dim(); ++d) {
        const double hw = 0.5 * (box.upper[d] - box.lower[d]);
        if (hw > eps[d]) {
            const int kd = static_cast<int>(std::ceil(std::log2(hw / eps[d]) - 1e-12));
            k = std::max(k, kd);
        }
    }
    return k;
}

RefinementResult refine_to_tolerance(const MeasurementSystem& sys, const Vec& u,
                                     const ParameterBox& initial_box, const Vec& eps,
                                     const BatchSampler& sampler, double tau, long n_max,
                                     int points_per_axis) {
    const int planned = planned_refinements(initial_box, eps);
    const StagePlan plan = allocate_stage_risks(tau, std::max(planned, 1));

    RefinementResult result;
    RefinementState state;
    state.box = initial_box;
    double confidence = 1.0;
    long samples = 0;

    auto draw = [&](double risk) -> std::optional<SufficientSummary> {
        const GridPrior prior = uniform_grid(state.box, points_per_axis);
        const BatchPlan batch = batch_size(sys, u, prior, state.box.center(), risk, n_max);
        const std::vector<Vec> zs = sampler(batch.count);
        SufficientSummary summary;
        summary.add_batch(u, zs);
        samples += static_cast<long>(zs.size());
        if (static_cast<long>(zs.size()) < batch.count) return std::nullopt;
        return summary;
    };

    for (int k = 0; k < planned; ++k) {
        auto summary = draw(plan.stage_risks[static_cast<std::size_t>(k)]);
        if (!summary) {
            result.exhausted = true;
            break;
        }
        const RefinementState next = refine_step(state, sys, *summary, points_per_axis);
        // Captured mass: posterior mass of the atoms inside the next box.
        double captured = 0.0;
        for (long i = 0; i < next.post.size(); ++i)
            if (box_contains(next.box, next.post.atoms[static_cast<std::size_t>(i)]))
                captured += next.post.mass(i);
        confidence *= std::min(captured, 1.0);
        state = next;
        result.refinements = k + 1;
    }

    // Final estimate on the terminal grid.
    GridPrior final_post = uniform_grid(state.box, points_per_axis);
    if (!result.exhausted) {
        const double final_risk = plan.stage_risks.back();
        if (auto summary = draw(final_risk)) {
            final_post = posterior(final_post, sys, *summary);
        } else {
            result.exhausted = true;
        }
    } else if (!state.post.atoms.empty()) {
        final_post = state.post;
    }

    const Vec estimate = posterior_mean(final_post);
    result.report = EstimateReport(estimate, std::min(confidence, 1.0), samples);
    result.final_box = state.box;
    result.selected_atom = final_post.atoms[static_cast<std::size_t>(final_post.argmax_mass())];
    return result;
}

}  // namespace sensorctl
