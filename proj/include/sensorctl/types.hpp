#ifndef SENSORCTL_TYPES_HPP
#define SENSORCTL_TYPES_HPP

#include <functional>

#include "sensorctl/common.hpp"

namespace sensorctl {

// Closed axis-aligned box in parameter space.
struct ParameterBox {
    Vec lower;
    Vec upper;

    ParameterBox() = default;
    ParameterBox(Vec lo, Vec hi);

    Eigen::Index dim() const { return lower.size(); }
    Vec center() const { return 0.5 * (lower + upper); }
    Vec half_width() const { return 0.5 * (upper - lower); }
    Vec width() const { return upper - lower; }
    bool contains(const ParameterBox& inner) const;
};

// Membership test, closed on both ends.
bool box_contains(const ParameterBox& box, const Vec& p);

// Additive Gaussian noise: mean and symmetric PSD covariance.
struct GaussianNoiseSpec {
    Vec mean;
    Mat covariance;

    GaussianNoiseSpec() = default;
    GaussianNoiseSpec(Vec m, Mat cov);

    static GaussianNoiseSpec isotropic(Eigen::Index k, double variance);
};

// Observation model z = transfer(u, p) + noise. The noise spec may depend on
// both the control and the parameter.
struct MeasurementSystem {
    Eigen::Index param_dim = 0;
    Eigen::Index control_dim = 0;
    Eigen::Index obs_dim = 0;
    std::function<Vec(const Vec& u, const Vec& p)> transfer;
    std::function<Mat(const Vec& u, const Vec& p)> jacobian;  // obs_dim x param_dim
    std::function<GaussianNoiseSpec(const Vec& u, const Vec& p)> noise;
};

struct SensorRequest {
    Vec tolerance;     // per-coordinate half-widths, > 0
    double deadline;   // time units
    double priority;   // > 0

    SensorRequest(Vec eps, double t, double w);
};

struct EstimateReport {
    Vec estimate;
    double confidence = 0.0;  // in [0, 1]
    long samples_used = 0;

    EstimateReport() = default;
    EstimateReport(Vec est, double conf, long samples);
};

}  // namespace sensorctl

#endif
