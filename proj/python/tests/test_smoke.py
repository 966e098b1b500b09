"""Smoke tests for the sensorctl python module."""

import math

import numpy as np

import sensorctl as sc


def test_measurement_and_kalman():
    sys = sc.make_sine_system(10.0, 1.0)
    assert sys.param_dim == 1 and sys.obs_dim == 1
    z = sc.transfer(sys, np.array([0.0]), np.array([math.pi / 2]))
    assert abs(z[0] - 10.0) < 1e-12

    rng = sc.Rng(7, 0)
    draws = [sc.observe(sys, np.array([0.0]), np.array([0.0]), rng)[0] for _ in range(2000)]
    assert abs(np.mean(draws)) < 0.1

    belief = sc.GaussianBelief(np.array([0.0]), np.array([[1.0]]))
    post = sc.kalman_update(belief, np.array([[1.0]]), np.array([[1.0]]), np.array([2.0]))
    assert abs(post.mean[0] - 1.0) < 1e-12
    assert abs(post.covariance[0][0] - 0.5) < 1e-12

    risk = sc.gaussian_tolerance_risk(belief, np.array([1.959964]))
    assert abs(risk.probability - 0.05) < 1e-4


def test_grid_and_refinement():
    sys = sc.make_sine_system(10.0, 1.0)
    box = sc.ParameterBox(np.array([-0.4]), np.array([0.4]))
    grid = sc.uniform_grid(box, 5)
    assert len(grid.atoms) == 5

    summary = sc.SufficientSummary()
    for _ in range(30):
        summary.add(np.array([0.0]), np.array([10.0 * math.sin(0.2)]))
    post = sc.posterior(grid, sys, summary)
    assert abs(sc.posterior_mean(post)[0] - 0.2) < 0.05
    assert sc.is_quantized(post, 0.9)

    rng = sc.Rng(11, 0)
    truth = np.array([0.13])

    def sampler(n):
        return [sc.observe(sys, np.array([0.0]), truth, rng) for _ in range(n)]

    res = sc.refine_to_tolerance(sys, np.array([0.0]), box, np.array([0.05]), sampler, 0.95)
    assert res.refinements == 3
    assert res.report.confidence > 0.5
    assert sc.box_contains(res.final_box, truth)


def test_minimax_and_planner():
    below = sc.solve_saddle(sc.make_two_point_slope_game(4.0, 5.0, 0.3, 1.0))
    assert not below.randomized
    above = sc.solve_saddle(sc.make_two_point_slope_game(4.0, 5.0, 1.0, 1.0))
    assert above.randomized
    assert len(above.mixture) == 2
    assert abs(above.value - 5.0 / 81.0) < 1e-6

    plan = sc.allocate_stage_risks(0.81, 2)
    assert all(abs(r - 0.1) < 1e-12 for r in plan.stage_risks)

    sys = sc.make_sine_system(10.0, 1.0)
    grid = sc.uniform_grid(sc.ParameterBox(np.array([-0.2]), np.array([0.2])), 5)
    batch = sc.batch_size(sys, np.array([0.0]), grid, np.array([0.0]), 0.05)
    assert not batch.unobservable
    assert batch.count >= 1


def test_experiments_and_config():
    cfg = sc.HarnessConfig()
    assert sc.parse_config(cfg.serialize()).hash() == cfg.hash()

    quick = sc.parse_config('{"table3": {"trials": 20}}')
    table = sc.run_table3(quick)
    assert table.columns[0] == "iterations"
    assert len(table.rows) == 12
    csv = table.to_csv()
    assert csv.startswith("#")
    assert sc.run_table3(quick).to_csv() == csv


if __name__ == "__main__":
    test_measurement_and_kalman()
    test_grid_and_refinement()
    test_minimax_and_planner()
    test_experiments_and_config()
    print("smoke tests passed")
