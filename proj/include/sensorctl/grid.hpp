#ifndef SENSORCTL_GRID_HPP
#define SENSORCTL_GRID_HPP

#include <vector>

#include "sensorctl/types.hpp"

namespace sensorctl {

// Discrete prior/posterior over a Cartesian grid of atoms. Masses are kept in
// log space and normalized so that exp sums to one.
struct GridPrior {
    std::vector<std::vector<double>> axes;  // strictly increasing per axis
    std::vector<Vec> atoms;                 // Cartesian product, last axis fastest
    Vec log_masses;

    Eigen::Index dim() const { return static_cast<Eigen::Index>(axes.size()); }
    long size() const { return static_cast<long>(atoms.size()); }
    double mass(long i) const { return std::exp(log_masses[i]); }
    // Lowest index among maximal masses.
    long argmax_mass() const;

    // Same atoms, masses proportional to exp(log_weights + log_masses).
    GridPrior reweighted(const Vec& log_weights) const;
};

// Equispaced atoms per axis including both endpoints, uniform masses.
// A degenerate axis (lower == upper) contributes a single atom.
GridPrior uniform_grid(const ParameterBox& box, int points_per_axis);

// Per-control-group sufficient statistics: control, sample mean, count and
// centered scatter (enough to evaluate exact Gaussian likelihood products
// even when the noise covariance depends on the atom).
struct ObservationGroup {
    Vec control;
    Vec mean;
    long count = 0;
    Mat scatter;  // sum of (z - mean)(z - mean)^T
};

class SufficientSummary {
public:
    void add(const Vec& u, const Vec& z);
    void add_batch(const Vec& u, const std::vector<Vec>& zs);
    const std::vector<ObservationGroup>& groups() const { return groups_; }
    long total_count() const;
    bool empty() const { return groups_.empty(); }

private:
    std::vector<ObservationGroup> groups_;
};

// Sum over groups of the exact Gaussian log likelihood of all samples in the
// group under parameter `atom`. Atom-independent constants are retained; they
// cancel in the posterior normalization.
double log_likelihood(const MeasurementSystem& sys, const Vec& atom,
                      const SufficientSummary& summary);

// Discrete Bayes rule in log space with max subtraction.
GridPrior posterior(const GridPrior& prior, const MeasurementSystem& sys,
                    const SufficientSummary& summary);

// Mass-weighted atom average.
Vec posterior_mean(const GridPrior& post);

// Sum of masses of atoms outside the closed box p_hat +- eps.
double posterior_tolerance_risk(const GridPrior& post, const Vec& p_hat, const Vec& eps);

// Mass-weighted squared deviation from p_hat, per coordinate.
Vec posterior_mse(const GridPrior& post, const Vec& p_hat);

// True iff the maximal atom mass reaches `threshold` (in (0.5, 1]).
bool is_quantized(const GridPrior& post, double threshold);

}  // namespace sensorctl

#endif
