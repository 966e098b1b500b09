#ifndef SENSORCTL_CONFIG_HPP
#define SENSORCTL_CONFIG_HPP

#include <string>
#include <vector>

#include "sensorctl/common.hpp"

namespace sensorctl {

// Camera scene for the pose-estimation experiments: the listed features are
// the observed ones, seen from a fixed camera pose.
struct SceneConfig {
    std::vector<double> camera = {5.0, 0.0, kPi};  // x_c, y_c, alpha_c
    std::vector<std::vector<double>> features = {{1.0, 1.0}, {1.0, -1.0}};
    std::vector<double> object_xy = {0.0, 0.0};
    double noise_sigma = 0.12;
    double xy_prior_sigma = 0.0;
};

// Shared by the EKF-vs-truth and EKF-vs-grid comparisons.
struct TableConfig {
    std::string system = "camera";  // "camera" or "sine"
    std::vector<double> bounds = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
    long trials = 2000;
    int observations = 20;
    int grid_points = 5;
    bool relinearize = false;
    std::string truth = "uniform";  // "uniform" over the interval or "atoms" of the grid prior
    double sine_amplitude = 10.0;
    double sine_noise_var = 1.0;
    SceneConfig scene;
};

struct Table3Config {
    std::vector<int> iterations = {3, 5, 7};
    std::vector<double> bounds = {0.1, 0.2, 0.3, 0.4};
    long trials = 2000;
    double quantize_threshold = 0.9;
    double amplitude = 10.0;
    double noise_var = 1.0;
    int grid_points = 5;
    int oracle_grid = 201;
};

struct Fig3Config {
    std::vector<double> variances = {30.0, 3.0, 0.1};
    int sweep_points = 15;
    double amplitude = 10.0;
    int grid_points = 5;
    int oracle_grid = 401;
    int quadrature_nodes = 41;
};

struct GameConfig {
    double h_lo = 4.0;
    double h_hi = 5.0;
    double noise_var = 1.0;
    std::vector<double> prior_vars = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2};
    long trials = 20000;
    double threshold_lo = 0.05;
    double threshold_hi = 2.0;
};

struct PlannerCandidateConfig {
    std::vector<double> pose;          // x_c, y_c, alpha_c
    std::vector<int> features;         // indices into the scene feature list
};

struct PlannerConfig {
    double tau = 0.95;
    double tolerance = 0.05;
    double priority = 1.0;
    double deadline = 1000.0;
    double bound = 0.4;
    double noise_sigma = 0.12;
    std::vector<double> object_xy = {0.0, 0.0};
    std::vector<std::vector<double>> features = {{1.0, 1.0}, {1.0, -1.0}, {0.0, 0.0}};
    std::vector<PlannerCandidateConfig> candidates = {
        {{5.0, 0.0, kPi}, {0, 1}},
        {{0.0, 5.0, -kPi / 2.0}, {2}},
    };
    double sample_time = 1.0;
    double travel_speed = 1.0;  // time = euclidean distance / speed
    long trials = 1;            // stage log reports the first trial
};

struct HarnessConfig {
    std::uint64_t seed = 20240817;
    std::string out_dir = ".";
    TableConfig table1;
    TableConfig table2 = [] {
        TableConfig t;
        t.truth = "atoms";
        t.scene.noise_sigma = 0.45;
        return t;
    }();
    Table3Config table3;
    Fig3Config fig3;
    GameConfig game;
    PlannerConfig planner;

    // Canonical JSON (sorted keys, fixed layout).
    std::string serialize() const;
    // Hash of the canonical form, hex.
    std::string hash() const;
};

// Parses a config document; unknown keys raise ConfigError. Missing keys keep
// their defaults.
HarnessConfig parse_config(const std::string& json_text);
HarnessConfig load_config_file(const std::string& path);

}  // namespace sensorctl

#endif
