#ifndef SENSORCTL_MINIMAX_HPP
#define SENSORCTL_MINIMAX_HPP

#include <functional>
#include <utility>
#include <vector>

#include "sensorctl/common.hpp"

namespace sensorctl {

// Scalar estimation game between a filter gain and the worst feasible
// linearization. Atom j carries a feasible interval [g_lo_j, g_hi_j] for the
// noiseless observation value at that atom; the payoff of gain a against a
// choice g is sum_j pi_j ((a g_j - gamma_j)^2 + a^2 noise_var).
struct GameSpec {
    Vec atoms;             // gamma_j
    Vec masses;            // pi_j, sum to 1
    double linearization_point = 0.0;
    Vec g_lo, g_hi;        // per-atom feasible observation bounds
    double noise_var = 1.0;
    double gain_lo = 0.0, gain_hi = 0.0;  // searched gain interval (auto-expanded)
};

// Game for a nonlinear scalar transfer: the feasible value at atom gamma is
// h(p_hat) + m (gamma - p_hat) with the slope m ranging over the extreme
// values of h' on the segment between gamma and p_hat (sampled at 101 points
// including the endpoints, which is exact for monotone derivatives).
GameSpec make_expansion_game(const std::function<double(double)>& h,
                             const std::function<double(double)>& h_prime,
                             const Vec& atoms, const Vec& masses, double p_hat,
                             double noise_var);

// Game for a linear system z = h * p + v with the slope known only to lie in
// [h_lo, h_hi].
GameSpec make_slope_interval_game(double h_lo, double h_hi, const Vec& atoms,
                                  const Vec& masses, double noise_var);

// Two-point symmetric prior at +-sqrt(prior_var), the minimal discrete prior
// with the given second moment.
GameSpec make_two_point_slope_game(double h_lo, double h_hi, double prior_var,
                                   double noise_var);

double payoff(double gain, const Vec& g, const GameSpec& spec);
double payoff(double gain, const std::vector<std::pair<Vec, double>>& mixture,
              const GameSpec& spec);

// Worst feasible g for a fixed gain. The payoff separates across atoms, so
// each coordinate independently takes the endpoint with the larger term (ties
// to the lower endpoint).
std::pair<Vec, double> worst_response(double gain, const GameSpec& spec);

struct SaddleSolution {
    double gain = 0.0;
    std::vector<std::pair<Vec, double>> mixture;  // (g vector, probability)
    double value = 0.0;        // game value = min_a max_g payoff
    bool randomized = false;
    double upper_value = 0.0;  // min over gains of the worst pure response
    double lower_value = 0.0;  // best pure vertex's guaranteed payoff
};

// Solves the discretized game. The upper value comes from a ternary search of
// the convex worst-case payoff; the lower value maximizes min-over-gain over
// the pure vertices of the feasible box. A gap above 1e-6 (relative) means no
// pure saddle exists and the maximizer's optimal strategy mixes two vertices,
// which are then recovered by gain-matching. Vertex enumeration is capped;
// larger games raise CapacityError.
SaddleSolution solve_saddle(const GameSpec& spec);

// Bisection over the randomized flag of the two-point-prior slope game;
// returns the prior variance at the transition, to 1e-3. RangeError when the
// flag does not change sign over the search range.
double randomization_threshold(double h_lo, double h_hi, double noise_var,
                               double var_lo, double var_hi);

struct FilterSweepPoint {
    double prior_var = 0.0;
    bool randomized = false;
    double game_predicted = 0.0;
    double game_observed = 0.0;
    double game_stderr = 0.0;
    double lower_predicted = 0.0;
    double lower_observed = 0.0;
    double lower_stderr = 0.0;
};

// For each prior variance: the game filter's predicted risk (the saddle
// value) and Monte Carlo MSE against the least favorable slope mixture, and
// the same for the filter designed for the lower slope endpoint.
std::vector<FilterSweepPoint> filter_error_sweep(double h_lo, double h_hi,
                                                 double noise_var,
                                                 const std::vector<double>& prior_vars,
                                                 long trials, std::uint64_t seed);

}  // namespace sensorctl

#endif
