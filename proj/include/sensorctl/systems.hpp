#ifndef SENSORCTL_SYSTEMS_HPP
#define SENSORCTL_SYSTEMS_HPP

#include "sensorctl/types.hpp"

namespace sensorctl {

// Scalar z = amplitude * sin(p) + v; the control is ignored.
MeasurementSystem make_sine_system(double amplitude = 10.0, double noise_var = 1.0);

// Linear z = A p + v with constant noise covariance.
MeasurementSystem make_linear_system(const Mat& A, const Mat& noise_cov);

}  // namespace sensorctl

#endif
