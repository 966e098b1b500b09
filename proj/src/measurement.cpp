#include "sensorctl/measurement.hpp"

#include "sensorctl/errors.hpp"

namespace sensorctl {

namespace {
void check_dims(const MeasurementSystem& sys, const Vec& u, const Vec& p) {
    if (u.size() != sys.control_dim) throw ArgumentError("measurement: control dimension mismatch");
    if (p.size() != sys.param_dim) throw ArgumentError("measurement: parameter dimension mismatch");
    if (!all_finite(u) || !all_finite(p)) throw ArgumentError("measurement: non-finite input");
}
}  // namespace

Vec transfer(const MeasurementSystem& sys, const Vec& u, const Vec& p) {
    check_dims(sys, u, p);
    Vec z = sys.transfer(u, p);
    if (z.size() != sys.obs_dim) throw ModelError("transfer: wrong observation dimension");
    return z;
}

Mat psd_sqrt(const Mat& cov) {
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (cov + cov.transpose()));
    Vec lam = es.eigenvalues();
    if (lam.minCoeff() < -1e-12 * scale)
        throw ModelError("psd_sqrt: covariance has a negative eigenvalue");
    for (Eigen::Index i = 0; i < lam.size(); ++i) lam[i] = std::sqrt(std::max(0.0, lam[i]));
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

Vec observe(const MeasurementSystem& sys, const Vec& u, const Vec& p, Rng& rng) {
    Vec z = transfer(sys, u, p);
    const GaussianNoiseSpec spec = sys.noise(u, p);
    if (spec.mean.size() != sys.obs_dim) throw ModelError("observe: noise dimension mismatch");
    const Mat L = psd_sqrt(spec.covariance);
    return z + spec.mean + L * rng.normal_vec(sys.obs_dim);
}

double jacobian_fd_error(const MeasurementSystem& sys, const Vec& u, const Vec& p) {
    const Mat J = sys.jacobian(u, p);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < sys.param_dim; ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(p[j]));
        Vec pp = p, pm = p;
        pp[j] += h;
        pm[j] -= h;
        const Vec d = (sys.transfer(u, pp) - sys.transfer(u, pm)) / (2.0 * h);
        for (Eigen::Index i = 0; i < sys.obs_dim; ++i) {
            const double denom = std::max(1.0, std::abs(d[i]));
            worst = std::max(worst, std::abs(J(i, j) - d[i]) / denom);
        }
    }
    return worst;
}

}  // namespace sensorctl
