#ifndef SENSORCTL_COMMON_HPP
#define SENSORCTL_COMMON_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace sensorctl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

constexpr double kPi = 3.14159265358979323846;

inline bool all_finite(const Vec& v) { return v.allFinite(); }
inline bool all_finite(const Mat& m) { return m.allFinite(); }

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
    double w = std::fmod(a + kPi, 2.0 * kPi);
    if (w <= 0.0) w += 2.0 * kPi;
    return w - kPi;
}

// Difference of two angles, wrapped into (-pi, pi].
inline double angle_diff(double a, double b) { return wrap_angle(a - b); }

// log(sum(exp(x))) with max subtraction; -inf for empty input.
double log_sum_exp(const Vec& x);

// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Standard normal quantile (Wichura's AS 241, double precision).
double normal_quantile(double p);

// Gauss-Hermite nodes/weights for integrating f against exp(-x^2).
void gauss_hermite(int n, Vec& nodes, Vec& weights);

// FNV-1a 64-bit hash of a byte string.
std::uint64_t fnv1a64(const std::string& bytes);

// Spearman rank correlation; ties get average ranks.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace sensorctl

#endif
