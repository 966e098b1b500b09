#ifndef SENSORCTL_MEASUREMENT_HPP
#define SENSORCTL_MEASUREMENT_HPP

#include "sensorctl/random.hpp"
#include "sensorctl/types.hpp"

namespace sensorctl {

// Noiseless observation H(u, p).
Vec transfer(const MeasurementSystem& sys, const Vec& u, const Vec& p);

// One simulated draw z = H(u, p) + v, v ~ N(mean, covariance) of noise(u, p).
// Negative covariance eigenvalues beyond tolerance raise ModelError; tiny
// negative ones are clipped to zero before factorization.
Vec observe(const MeasurementSystem& sys, const Vec& u, const Vec& p, Rng& rng);

// Symmetric square root of a PSD matrix with eigenvalue clipping at zero.
Mat psd_sqrt(const Mat& cov);

// Max relative error between the analytic jacobian and central finite
// differences of the transfer at (u, p). Used by model self-checks.
double jacobian_fd_error(const MeasurementSystem& sys, const Vec& u, const Vec& p);

}  // namespace sensorctl

#endif
