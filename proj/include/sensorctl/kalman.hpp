#ifndef SENSORCTL_KALMAN_HPP
#define SENSORCTL_KALMAN_HPP

#include "sensorctl/types.hpp"

namespace sensorctl {

// Gaussian belief over a static parameter.
struct GaussianBelief {
    Vec mean;
    Mat covariance;

    GaussianBelief() = default;
    GaussianBelief(Vec m, Mat cov);
};

// First-order expansion of the transfer about an estimate: the pseudo
// measurement is y = z + offset and follows y = M p + v.
struct Linearization {
    Mat M;       // obs_dim x param_dim
    Vec offset;  // -H(u, p_hat) + M p_hat
};

// K = Cov H^T (H Cov H^T + R)^{-1}. Throws NumericalError with a condition
// report when the innovation covariance is numerically singular.
Mat kalman_gain(const GaussianBelief& belief, const Mat& H, const Mat& noise_cov);

// Measurement update for the static-parameter filter. The covariance uses the
// Joseph form and is symmetrized afterwards.
GaussianBelief kalman_update(const GaussianBelief& belief, const Mat& H,
                             const Mat& noise_cov, const Vec& z);

Linearization ekf_linearize(const MeasurementSystem& sys, const Vec& u, const Vec& p_hat);

// Relinearizes at the current mean, then applies kalman_update to the pseudo
// measurement.
GaussianBelief ekf_update(const GaussianBelief& belief, const MeasurementSystem& sys,
                          const Vec& u, const Vec& z);

struct ToleranceRisk {
    double probability = 0.0;
    double stderr_est = 0.0;  // 0 for the exact (diagonal) path
};

// P(|p_i - mean_i| > eps_i for some i) under N(mean, covariance).
// Exact per-coordinate product for diagonal covariance; quasi-Monte Carlo
// (n_points >= 10^4, randomized shifts for the error estimate) otherwise.
ToleranceRisk gaussian_tolerance_risk(const GaussianBelief& belief, const Vec& eps,
                                      int n_points = 16384, std::uint64_t seed = 2027);

}  // namespace sensorctl

#endif
