#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sensorctl/camera.hpp"
#include "sensorctl/errors.hpp"
#include "sensorctl/experiments.hpp"
#include "sensorctl/kalman.hpp"
#include "sensorctl/measurement.hpp"
#include "sensorctl/minimax.hpp"
#include "sensorctl/planner.hpp"
#include "sensorctl/refine.hpp"
#include "sensorctl/systems.hpp"
#include "sensorctl/version.hpp"

namespace py = pybind11;
using namespace sensorctl;

PYBIND11_MODULE(sensorctl, m) {
    m.doc() = "Estimation procedures for controllable noisy measurement systems";
    m.attr("__version__") = kVersion;

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<ModelError>(m, "ModelError");
    py::register_exception<NumericalError>(m, "NumericalError");
    py::register_exception<PlanningError>(m, "PlanningError");

    py::class_<ParameterBox>(m, "ParameterBox")
        .def(py::init<Vec, Vec>(), py::arg("lower"), py::arg("upper"))
        .def_readonly("lower", &ParameterBox::lower)
        .def_readonly("upper", &ParameterBox::upper)
        .def("center", &ParameterBox::center)
        .def("half_width", &ParameterBox::half_width);
    m.def("box_contains", &box_contains);

    py::class_<GaussianNoiseSpec>(m, "GaussianNoiseSpec")
        .def(py::init<Vec, Mat>(), py::arg("mean"), py::arg("covariance"))
        .def_readonly("mean", &GaussianNoiseSpec::mean)
        .def_readonly("covariance", &GaussianNoiseSpec::covariance);

    py::class_<MeasurementSystem>(m, "MeasurementSystem")
        .def_readonly("param_dim", &MeasurementSystem::param_dim)
        .def_readonly("control_dim", &MeasurementSystem::control_dim)
        .def_readonly("obs_dim", &MeasurementSystem::obs_dim);
    m.def("make_sine_system", &make_sine_system, py::arg("amplitude") = 10.0,
          py::arg("noise_var") = 1.0);
    m.def("make_linear_system", &make_linear_system, py::arg("A"), py::arg("noise_cov"));

    py::class_<Rng>(m, "Rng").def(py::init<std::uint64_t, std::uint64_t>(), py::arg("master_seed"),
                                  py::arg("stream") = 0);
    m.def("transfer", &transfer);
    m.def("observe", &observe);

    py::class_<GaussianBelief>(m, "GaussianBelief")
        .def(py::init<Vec, Mat>(), py::arg("mean"), py::arg("covariance"))
        .def_readonly("mean", &GaussianBelief::mean)
        .def_readonly("covariance", &GaussianBelief::covariance);
    m.def("kalman_gain", &kalman_gain);
    m.def("kalman_update", &kalman_update);
    m.def("ekf_update", &ekf_update);
    py::class_<ToleranceRisk>(m, "ToleranceRisk")
        .def_readonly("probability", &ToleranceRisk::probability)
        .def_readonly("stderr", &ToleranceRisk::stderr_est);
    m.def("gaussian_tolerance_risk", &gaussian_tolerance_risk, py::arg("belief"), py::arg("eps"),
          py::arg("n_points") = 16384, py::arg("seed") = 2027);

    py::class_<GridPrior>(m, "GridPrior")
        .def_readonly("atoms", &GridPrior::atoms)
        .def_property_readonly("masses",
                               [](const GridPrior& g) { return Vec(g.log_masses.array().exp()); })
        .def("argmax_mass", &GridPrior::argmax_mass);
    m.def("uniform_grid", &uniform_grid);
    py::class_<SufficientSummary>(m, "SufficientSummary")
        .def(py::init<>())
        .def("add", &SufficientSummary::add)
        .def("add_batch", &SufficientSummary::add_batch)
        .def("total_count", &SufficientSummary::total_count);
    m.def("log_likelihood", &log_likelihood);
    m.def("posterior", &posterior);
    m.def("posterior_mean", &posterior_mean);
    m.def("posterior_tolerance_risk", &posterior_tolerance_risk);
    m.def("posterior_mse", &posterior_mse);
    m.def("is_quantized", &is_quantized);
    m.def("neighborhood", &neighborhood);

    py::class_<EstimateReport>(m, "EstimateReport")
        .def_readonly("estimate", &EstimateReport::estimate)
        .def_readonly("confidence", &EstimateReport::confidence)
        .def_readonly("samples_used", &EstimateReport::samples_used);
    py::class_<RefinementResult>(m, "RefinementResult")
        .def_readonly("report", &RefinementResult::report)
        .def_readonly("final_box", &RefinementResult::final_box)
        .def_readonly("selected_atom", &RefinementResult::selected_atom)
        .def_readonly("refinements", &RefinementResult::refinements)
        .def_readonly("exhausted", &RefinementResult::exhausted);
    m.def("refine_to_tolerance", &refine_to_tolerance, py::arg("sys"), py::arg("u"),
          py::arg("initial_box"), py::arg("eps"), py::arg("sampler"), py::arg("tau"),
          py::arg("n_max") = 1000000, py::arg("points_per_axis") = 5);

    py::class_<GameSpec>(m, "GameSpec")
        .def_readonly("atoms", &GameSpec::atoms)
        .def_readonly("g_lo", &GameSpec::g_lo)
        .def_readonly("g_hi", &GameSpec::g_hi);
    py::class_<SaddleSolution>(m, "SaddleSolution")
        .def_readonly("gain", &SaddleSolution::gain)
        .def_readonly("value", &SaddleSolution::value)
        .def_readonly("randomized", &SaddleSolution::randomized)
        .def_readonly("mixture", &SaddleSolution::mixture)
        .def_readonly("upper_value", &SaddleSolution::upper_value)
        .def_readonly("lower_value", &SaddleSolution::lower_value);
    m.def("make_two_point_slope_game", &make_two_point_slope_game);
    m.def("make_slope_interval_game", &make_slope_interval_game);
    m.def("solve_saddle", &solve_saddle);
    m.def("randomization_threshold", &randomization_threshold);

    py::class_<LossSpec>(m, "LossSpec").def(py::init<Vec, double>(), py::arg("tolerance"),
                                            py::arg("priority"));
    m.def("tolerance_loss", &tolerance_loss);
    m.def("decision_risk", &decision_risk, py::arg("estimation_risk"), py::arg("spec"),
          py::arg("time_cost"), py::arg("cost_per_time") = 1.0);
    py::class_<StagePlan>(m, "StagePlan")
        .def_readonly("target_confidence", &StagePlan::target_confidence)
        .def_readonly("stage_risks", &StagePlan::stage_risks);
    m.def("allocate_stage_risks", &allocate_stage_risks);
    py::class_<BatchPlan>(m, "BatchPlan")
        .def_readonly("count", &BatchPlan::count)
        .def_readonly("unobservable", &BatchPlan::unobservable);
    m.def("batch_size", &batch_size, py::arg("sys"), py::arg("u"), py::arg("prior"),
          py::arg("p_hat"), py::arg("stage_risk"), py::arg("n_max") = 1000000);

    py::class_<Pose2>(m, "Pose2")
        .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("alpha"))
        .def_readonly("x", &Pose2::x)
        .def_readonly("y", &Pose2::y)
        .def_readonly("alpha", &Pose2::alpha);
    py::class_<FeatureSet>(m, "FeatureSet")
        .def(py::init<std::vector<Eigen::Vector2d>, std::vector<Eigen::Vector2d>>(),
             py::arg("points"), py::arg("normals"))
        .def_static("unit_square", &FeatureSet::unit_square);
    m.def("visible", &visible);
    m.def("visible_indices", &visible_indices);
    m.def("project_features", &project_features);
    m.def("make_camera_system", &make_camera_system);
    m.def("make_camera_alpha_system", &make_camera_alpha_system);

    py::class_<HarnessConfig>(m, "HarnessConfig")
        .def(py::init<>())
        .def_readwrite("seed", &HarnessConfig::seed)
        .def_readwrite("out_dir", &HarnessConfig::out_dir)
        .def("serialize", &HarnessConfig::serialize)
        .def("hash", &HarnessConfig::hash);
    m.def("parse_config", &parse_config);
    py::class_<ResultTable>(m, "ResultTable")
        .def_readonly("name", &ResultTable::name)
        .def_readonly("columns", &ResultTable::columns)
        .def_readonly("rows", &ResultTable::rows)
        .def("to_csv", &ResultTable::to_csv);
    m.def("run_table1", &run_table1);
    m.def("run_table2", &run_table2);
    m.def("run_table3", &run_table3);
    m.def("run_fig2", &run_fig2);
    m.def("run_fig3", &run_fig3);
    m.def("run_game_threshold", &run_game_threshold);
    m.def("run_planner_demo", &run_planner_demo);
}
