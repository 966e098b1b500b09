#include "sensorctl/kalman.hpp"

#include <sstream>

#include "sensorctl/errors.hpp"
#include "sensorctl/measurement.hpp"
#include "sensorctl/random.hpp"

namespace sensorctl {

GaussianBelief::GaussianBelief(Vec m, Mat cov) : mean(std::move(m)), covariance(std::move(cov)) {
    if (covariance.rows() != covariance.cols() || covariance.rows() != mean.size())
        throw ArgumentError("GaussianBelief: shape mismatch");
    const double scale = std::max(1.0, covariance.cwiseAbs().maxCoeff());
    if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ArgumentError("GaussianBelief: covariance not symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(covariance);
    if (es.eigenvalues().minCoeff() < -1e-10 * scale)
        throw ArgumentError("GaussianBelief: covariance not PSD");
}

Mat kalman_gain(const GaussianBelief& belief, const Mat& H, const Mat& noise_cov) {
    if (H.cols() != belief.mean.size() || noise_cov.rows() != H.rows() ||
        noise_cov.cols() != H.rows())
        throw ArgumentError("kalman_gain: shape mismatch");
    const Mat S = H * belief.covariance * H.transpose() + noise_cov;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (S + S.transpose()));
    const double lam_max = es.eigenvalues().cwiseAbs().maxCoeff();
    const double lam_min = es.eigenvalues().minCoeff();
    if (!(lam_min > 0.0) || lam_min <= 1e-14 * lam_max) {
        std::ostringstream os;
        os << "kalman_gain: singular innovation covariance (min eigenvalue " << lam_min
           << ", max " << lam_max << ")";
        throw NumericalError(os.str());
    }
    return belief.covariance * H.transpose() * S.ldlt().solve(Mat::Identity(S.rows(), S.cols()));
}

GaussianBelief kalman_update(const GaussianBelief& belief, const Mat& H, const Mat& noise_cov,
                             const Vec& z) {
    if (z.size() != H.rows()) throw ArgumentError("kalman_update: observation dimension mismatch");
    const Mat K = kalman_gain(belief, H, noise_cov);
    const Vec mean = belief.mean + K * (z - H * belief.mean);
    const Mat I = Mat::Identity(belief.mean.size(), belief.mean.size());
    const Mat A = I - K * H;
    Mat cov = A * belief.covariance * A.transpose() + K * noise_cov * K.transpose();
    cov = 0.5 * (cov + cov.transpose());
    return GaussianBelief(mean, cov);
}

Linearization ekf_linearize(const MeasurementSystem& sys, const Vec& u, const Vec& p_hat) {
    if (!all_finite(p_hat)) throw ArgumentError("ekf_linearize: non-finite estimate");
    Linearization lin;
    lin.M = sys.jacobian(u, p_hat);
    lin.offset = -sys.transfer(u, p_hat) + lin.M * p_hat;
    if (!all_finite(lin.M) || !all_finite(lin.offset))
        throw NumericalError("ekf_linearize: non-finite linearization");
    return lin;
}

GaussianBelief ekf_update(const GaussianBelief& belief, const MeasurementSystem& sys,
                          const Vec& u, const Vec& z) {
    const Linearization lin = ekf_linearize(sys, u, belief.mean);
    const Vec y = z + lin.offset;
    const Mat R = sys.noise(u, belief.mean).covariance;
    return kalman_update(belief, lin.M, R, y);
}

namespace {
// Halton sequence point in (0,1)^d, index starting at 1.
double halton(std::uint64_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}
const int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
}  // namespace

ToleranceRisk gaussian_tolerance_risk(const GaussianBelief& belief, const Vec& eps,
                                      int n_points, std::uint64_t seed) {
    const Eigen::Index s = belief.mean.size();
    if (eps.size() != s || (eps.array() <= 0.0).any())
        throw ArgumentError("gaussian_tolerance_risk: tolerance must be positive");
    const Mat& C = belief.covariance;
    const double scale = std::max(1.0, C.cwiseAbs().maxCoeff());
    bool diagonal = true;
    for (Eigen::Index i = 0; i < s && diagonal; ++i)
        for (Eigen::Index j = 0; j < s; ++j)
            if (i != j && std::abs(C(i, j)) > 1e-14 * scale) { diagonal = false; break; }

    if (diagonal) {
        double inside = 1.0;
        for (Eigen::Index i = 0; i < s; ++i) {
            const double sd = std::sqrt(std::max(0.0, C(i, i)));
            if (sd == 0.0) continue;  // point mass at the mean stays inside
            inside *= 2.0 * normal_cdf(eps[i] / sd) - 1.0;
        }
        return {1.0 - inside, 0.0};
    }

    if (s > 16) throw CapacityError("gaussian_tolerance_risk: dimension too large for QMC");
    const Mat L = psd_sqrt(C);
    const int replicates = 8;
    const int per = std::max(n_points / replicates, 1);
    Rng rng(seed);
    Vec shift(s);
    double sum = 0.0, sumsq = 0.0;
    for (int r = 0; r < replicates; ++r) {
        for (Eigen::Index d = 0; d < s; ++d) shift[d] = rng.uniform();
        long outside = 0;
        for (int i = 1; i <= per; ++i) {
            bool out = false;
            Vec g(s);
            for (Eigen::Index d = 0; d < s; ++d) {
                double v = halton(static_cast<std::uint64_t>(i), kPrimes[d]) + shift[d];
                if (v >= 1.0) v -= 1.0;
                v = std::min(std::max(v, 1e-15), 1.0 - 1e-15);
                g[d] = normal_quantile(v);
            }
            const Vec x = L * g;
            for (Eigen::Index d = 0; d < s; ++d)
                if (std::abs(x[d]) > eps[d]) { out = true; break; }
            outside += out ? 1 : 0;
        }
        const double est = static_cast<double>(outside) / per;
        sum += est;
        sumsq += est * est;
    }
    const double mean = sum / replicates;
    const double var = std::max(0.0, sumsq / replicates - mean * mean);
    return {mean, std::sqrt(var / replicates)};
}

}  // namespace sensorctl
