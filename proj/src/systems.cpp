#include "sensorctl/systems.hpp"

#include "sensorctl/errors.hpp"

namespace sensorctl {

MeasurementSystem make_sine_system(double amplitude, double noise_var) {
    MeasurementSystem sys;
    sys.param_dim = 1;
    sys.control_dim = 1;
    sys.obs_dim = 1;
    sys.transfer = [amplitude](const Vec&, const Vec& p) {
        Vec z(1);
        z[0] = amplitude * std::sin(p[0]);
        return z;
    };
    sys.jacobian = [amplitude](const Vec&, const Vec& p) {
        Mat J(1, 1);
        J(0, 0) = amplitude * std::cos(p[0]);
        return J;
    };
    sys.noise = [noise_var](const Vec&, const Vec&) {
        return GaussianNoiseSpec::isotropic(1, noise_var);
    };
    return sys;
}

MeasurementSystem make_linear_system(const Mat& A, const Mat& noise_cov) {
    if (noise_cov.rows() != A.rows() || noise_cov.cols() != A.rows())
        throw ArgumentError("make_linear_system: noise covariance shape mismatch");
    MeasurementSystem sys;
    sys.param_dim = A.cols();
    sys.control_dim = 1;
    sys.obs_dim = A.rows();
    sys.transfer = [A](const Vec&, const Vec& p) { return Vec(A * p); };
    sys.jacobian = [A](const Vec&, const Vec&) { return A; };
    sys.noise = [noise_cov](const Vec&, const Vec&) {
        return GaussianNoiseSpec(Vec::Zero(noise_cov.rows()), noise_cov);
    };
    return sys;
}

}  // namespace sensorctl
