#ifndef SENSORCTL_EXPERIMENTS_HPP
#define SENSORCTL_EXPERIMENTS_HPP

#include "sensorctl/config.hpp"
#include "sensorctl/table.hpp"

namespace sensorctl {

// Monte Carlo reproductions of the estimation studies. Each run is fully
// determined by (config, seed): per-trial random streams derive from the seed
// and trial index, so results are independent of evaluation order.

// EKF on a widening prior: covariance-predicted MSE vs observed MSE per bound.
ResultTable run_table1(const HarnessConfig& cfg);

// Grid posterior-mean estimate vs the EKF on the same observation streams.
ResultTable run_table2(const HarnessConfig& cfg);

// Iterative interval-halving estimation: computed posterior error vs observed
// squared error per (iterations, bound).
ResultTable run_table3(const HarnessConfig& cfg);

// Response curves of the dense-grid estimator and the 5-point approximation,
// noise-averaged by quadrature and at the noiseless input.
ResultTable run_fig3(const HarnessConfig& cfg);

// Randomization threshold of the slope-uncertainty game.
ResultTable run_game_threshold(const HarnessConfig& cfg);

// Predicted and observed error of the game filter and the lower-endpoint
// filter across prior variances.
ResultTable run_fig2(const HarnessConfig& cfg);

// Stage-by-stage sensor-control run: chosen view, batch size, elapsed time,
// box and confidence, with a final summary row.
ResultTable run_planner_demo(const HarnessConfig& cfg);

}  // namespace sensorctl

#endif
