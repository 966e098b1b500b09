#include "sensorctl/grid.hpp"

#include <limits>

#include "sensorctl/errors.hpp"

namespace sensorctl {

long GridPrior::argmax_mass() const {
    long best = 0;
    for (long i = 1; i < size(); ++i)
        if (log_masses[i] > log_masses[best]) best = i;
    return best;
}

GridPrior GridPrior::reweighted(const Vec& log_weights) const {
    if (log_weights.size() != log_masses.size())
        throw ArgumentError("GridPrior::reweighted: size mismatch");
    GridPrior out = *this;
    out.log_masses = log_masses + log_weights;
    const double lse = log_sum_exp(out.log_masses);
    if (!std::isfinite(lse))
        throw ModelError("GridPrior::reweighted: all weights vanished");
    out.log_masses.array() -= lse;
    return out;
}

GridPrior uniform_grid(const ParameterBox& box, int points_per_axis) {
    if (points_per_axis < 2) throw ArgumentError("uniform_grid: need at least 2 points per axis");
    GridPrior g;
    const Eigen::Index s = box.dim();
    g.axes.resize(static_cast<std::size_t>(s));
    long total = 1;
    for (Eigen::Index d = 0; d < s; ++d) {
        auto& ax = g.axes[static_cast<std::size_t>(d)];
        if (box.lower[d] == box.upper[d]) {
            ax = {box.lower[d]};
        } else {
            ax.resize(points_per_axis);
            for (int i = 0; i < points_per_axis; ++i)
                ax[i] = box.lower[d] +
                        (box.upper[d] - box.lower[d]) * i / (points_per_axis - 1);
            ax.back() = box.upper[d];
        }
        total *= static_cast<long>(ax.size());
    }
    g.atoms.reserve(total);
    Vec atom(s);
    std::vector<std::size_t> idx(static_cast<std::size_t>(s), 0);
    for (long n = 0; n < total; ++n) {
        for (Eigen::Index d = 0; d < s; ++d) atom[d] = g.axes[d][idx[d]];
        g.atoms.push_back(atom);
        for (Eigen::Index d = s - 1; d >= 0; --d) {  // last axis fastest
            if (++idx[d] < g.axes[d].size()) break;
            idx[d] = 0;
        }
    }
    g.log_masses = Vec::Constant(total, -std::log(static_cast<double>(total)));
    return g;
}

namespace {
bool same_control(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}
}  // namespace

void SufficientSummary::add(const Vec& u, const Vec& z) {
    for (auto& grp : groups_) {
        if (same_control(grp.control, u)) {
            grp.count += 1;
            const Vec delta = z - grp.mean;
            grp.mean += delta / static_cast<double>(grp.count);
            grp.scatter += delta * (z - grp.mean).transpose();
            return;
        }
    }
    ObservationGroup grp;
    grp.control = u;
    grp.mean = z;
    grp.count = 1;
    grp.scatter = Mat::Zero(z.size(), z.size());
    groups_.push_back(std::move(grp));
}

void SufficientSummary::add_batch(const Vec& u, const std::vector<Vec>& zs) {
    for (const auto& z : zs) add(u, z);
}

long SufficientSummary::total_count() const {
    long n = 0;
    for (const auto& g : groups_) n += g.count;
    return n;
}

double log_likelihood(const MeasurementSystem& sys, const Vec& atom,
                      const SufficientSummary& summary) {
    double ll = 0.0;
    for (const auto& grp : summary.groups()) {
        const Vec h = sys.transfer(grp.control, atom);
        const GaussianNoiseSpec spec = sys.noise(grp.control, atom);
        const Mat cov = 0.5 * (spec.covariance + spec.covariance.transpose());
        Eigen::LDLT<Mat> ldlt(cov);
        if (ldlt.info() != Eigen::Success || (ldlt.vectorD().array() <= 0.0).any())
            throw ModelError("log_likelihood: singular noise covariance");
        const Vec r = grp.mean - h - spec.mean;
        const double n = static_cast<double>(grp.count);
        const double k = static_cast<double>(grp.mean.size());
        double logdet = 0.0;
        for (Eigen::Index i = 0; i < cov.rows(); ++i) logdet += std::log(ldlt.vectorD()[i]);
        const double quad_mean = r.dot(ldlt.solve(r));
        const double quad_scatter = (ldlt.solve(grp.scatter)).trace();
        ll += -0.5 * n * k * std::log(2.0 * kPi) - 0.5 * n * logdet -
              0.5 * (n * quad_mean + quad_scatter);
    }
    return ll;
}

GridPrior posterior(const GridPrior& prior, const MeasurementSystem& sys,
                    const SufficientSummary& summary) {
    if (summary.empty()) return prior;
    Vec log_lik(prior.size());
    for (long i = 0; i < prior.size(); ++i)
        log_lik[i] = log_likelihood(sys, prior.atoms[static_cast<std::size_t>(i)], summary);
    if (!(log_lik.array() > -std::numeric_limits<double>::infinity()).any())
        throw ModelError("posterior: every atom has zero likelihood");
    return prior.reweighted(log_lik);
}

Vec posterior_mean(const GridPrior& post) {
    Vec m = Vec::Zero(post.dim());
    for (long i = 0; i < post.size(); ++i)
        m += post.mass(i) * post.atoms[static_cast<std::size_t>(i)];
    return m;
}

double posterior_tolerance_risk(const GridPrior& post, const Vec& p_hat, const Vec& eps) {
    if (eps.size() != post.dim() || (eps.array() <= 0.0).any())
        throw ArgumentError("posterior_tolerance_risk: tolerance must be positive");
    double outside = 0.0;
    for (long i = 0; i < post.size(); ++i) {
        const Vec& a = post.atoms[static_cast<std::size_t>(i)];
        for (Eigen::Index d = 0; d < post.dim(); ++d) {
            if (std::abs(a[d] - p_hat[d]) > eps[d]) {
                outside += post.mass(i);
                break;
            }
        }
    }
    return std::min(outside, 1.0);
}

Vec posterior_mse(const GridPrior& post, const Vec& p_hat) {
    Vec mse = Vec::Zero(post.dim());
    for (long i = 0; i < post.size(); ++i) {
        const Vec d = post.atoms[static_cast<std::size_t>(i)] - p_hat;
        mse += post.mass(i) * d.cwiseProduct(d);
    }
    return mse;
}

bool is_quantized(const GridPrior& post, double threshold) {
    if (!(threshold > 0.5 && threshold <= 1.0))
        throw ArgumentError("is_quantized: threshold must be in (0.5, 1]");
    return post.mass(post.argmax_mass()) >= threshold;
}

}  // namespace sensorctl
