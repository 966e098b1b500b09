#include "sensorctl/types.hpp"

#include "sensorctl/errors.hpp"

namespace sensorctl {

ParameterBox::ParameterBox(Vec lo, Vec hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size()) throw ArgumentError("ParameterBox: dimension mismatch");
    if (!all_finite(lower) || !all_finite(upper)) throw ArgumentError("ParameterBox: non-finite bound");
    for (Eigen::Index i = 0; i < lower.size(); ++i)
        if (lower[i] > upper[i]) throw ArgumentError("ParameterBox: lower > upper");
}

bool ParameterBox::contains(const ParameterBox& inner) const {
    if (inner.dim() != dim()) throw ArgumentError("ParameterBox::contains: dimension mismatch");
    for (Eigen::Index i = 0; i < dim(); ++i)
        if (inner.lower[i] < lower[i] || inner.upper[i] > upper[i]) return false;
    return true;
}

bool box_contains(const ParameterBox& box, const Vec& p) {
    if (p.size() != box.dim()) throw ArgumentError("box_contains: dimension mismatch");
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (p[i] < box.lower[i] || p[i] > box.upper[i]) return false;
    return true;
}

GaussianNoiseSpec::GaussianNoiseSpec(Vec m, Mat cov)
    : mean(std::move(m)), covariance(std::move(cov)) {
    if (covariance.rows() != covariance.cols() || covariance.rows() != mean.size())
        throw ArgumentError("GaussianNoiseSpec: shape mismatch");
    const double scale = std::max(1.0, covariance.cwiseAbs().maxCoeff());
    if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ArgumentError("GaussianNoiseSpec: covariance not symmetric");
}

GaussianNoiseSpec GaussianNoiseSpec::isotropic(Eigen::Index k, double variance) {
    return GaussianNoiseSpec(Vec::Zero(k), variance * Mat::Identity(k, k));
}

SensorRequest::SensorRequest(Vec eps, double t, double w)
    : tolerance(std::move(eps)), deadline(t), priority(w) {
    if (tolerance.size() == 0 || (tolerance.array() <= 0.0).any())
        throw ArgumentError("SensorRequest: tolerance must be positive");
    if (!(priority > 0.0)) throw ArgumentError("SensorRequest: priority must be positive");
}

EstimateReport::EstimateReport(Vec est, double conf, long samples)
    : estimate(std::move(est)), confidence(conf), samples_used(samples) {
    if (confidence < 0.0 || confidence > 1.0)
        throw ArgumentError("EstimateReport: confidence outside [0,1]");
}

}  // namespace sensorctl
