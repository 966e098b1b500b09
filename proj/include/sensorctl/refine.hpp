#ifndef SENSORCTL_REFINE_HPP
#define SENSORCTL_REFINE_HPP

#include <functional>
#include <optional>

#include "sensorctl/grid.hpp"
#include "sensorctl/planner.hpp"

namespace sensorctl {

struct RefinementState {
    ParameterBox box;
    int stage = 0;
    long samples_used = 0;
    GridPrior post;  // posterior on the grid of `box` once a step has run
};

struct CostModel {
    double stage_cost = 0.0;                       // c1, per estimation stage
    std::function<double(long)> sampling_cost;     // c2, nondecreasing in count

    CostModel(double c1, std::function<double(long)> c2);
};

// Box spanned per coordinate by the atom's left and right grid neighbors;
// boundary atoms are their own outer neighbor.
ParameterBox neighborhood(const GridPrior& prior, long atom_index);

// Posterior over the current box's grid, then the box shrinks to the
// half-width box around the highest-mass atom (lowest index on ties). For
// interior atoms this is exactly the atom's neighborhood; at a boundary atom
// the half-width box is anchored at the boundary so that every step halves
// the box width exactly.
RefinementState refine_step(const RefinementState& state, const MeasurementSystem& sys,
                            const SufficientSummary& summary, int points_per_axis = 5);

// c1 * ceil(log2(l / eps)) + c2(total_samples); the ceiling clamps at zero.
double iteration_cost(double initial_width, double eps, const CostModel& cost,
                      long total_samples);

// Draws `n` fresh observations at the planner-chosen control; may return
// fewer when exhausted.
using BatchSampler = std::function<std::vector<Vec>(long n)>;

struct RefinementResult {
    EstimateReport report;
    ParameterBox final_box;
    Vec selected_atom;
    int refinements = 0;
    bool exhausted = false;  // sampler ran dry; report holds the partial result
};

// Interval-halving estimation: at each stage a fresh batch (sized to force
// quantization at the stage's risk allocation) drives the posterior on the
// current 5-point grid, the box halves around the selected atom, and the
// reported confidence multiplies the stage's captured posterior mass. Stops
// once every axis half-width is at or below eps; a final batch then produces
// the returned posterior-mean estimate.
RefinementResult refine_to_tolerance(const MeasurementSystem& sys, const Vec& u,
                                     const ParameterBox& initial_box, const Vec& eps,
                                     const BatchSampler& sampler, double tau,
                                     long n_max = 1000000, int points_per_axis = 5);

// Stage count the procedure will plan for: max over axes of
// ceil(log2(half_width / eps)), clamped at zero.
int planned_refinements(const ParameterBox& box, const Vec& eps);

}  // namespace sensorctl

#endif
