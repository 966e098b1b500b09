#include "sensorctl/experiments.hpp"

#include <cmath>
#include <limits>

#include "sensorctl/camera.hpp"
#include "sensorctl/errors.hpp"
#include "sensorctl/kalman.hpp"
#include "sensorctl/measurement.hpp"
#include "sensorctl/minimax.hpp"
#include "sensorctl/planner.hpp"
#include "sensorctl/refine.hpp"
#include "sensorctl/systems.hpp"
#include "sensorctl/version.hpp"

namespace sensorctl {

namespace {

struct TableSystem {
    MeasurementSystem sys;
    Vec control;
    Eigen::Index alpha_index = 0;  // coordinate of alpha_o in the parameter vector
    Vec prior_mean;
    Vec fixed_prior_sd;  // per-coordinate prior sd for the non-swept coordinates

    Vec truth(double alpha) const {
        Vec p = prior_mean;
        p[alpha_index] = alpha;
        return p;
    }
    Mat prior_cov(double alpha_var) const {
        Vec sd = fixed_prior_sd;
        sd[alpha_index] = std::sqrt(alpha_var);
        return sd.cwiseProduct(sd).asDiagonal();
    }
};

TableSystem table_system(const TableConfig& cfg) {
    TableSystem ts;
    if (cfg.system == "sine") {
        ts.sys = make_sine_system(cfg.sine_amplitude, cfg.sine_noise_var);
        ts.control = Vec::Zero(1);
        ts.alpha_index = 0;
        ts.prior_mean = Vec::Zero(1);
        ts.fixed_prior_sd = Vec::Zero(1);
        return ts;
    }
    const SceneConfig& sc = cfg.scene;
    std::vector<Eigen::Vector2d> pts;
    std::vector<Eigen::Vector2d> normals;
    std::vector<std::size_t> selection;
    for (std::size_t i = 0; i < sc.features.size(); ++i) {
        pts.emplace_back(sc.features[i][0], sc.features[i][1]);
        normals.emplace_back(1.0, 0.0);  // selection is explicit; normals unused here
        selection.push_back(i);
    }
    const FeatureSet features(pts, normals);
    // Joint pose filter: x_o and y_o are carried with their own priors while
    // their true values stay at the means; only alpha_o's interval is swept.
    ts.sys = make_camera_system(features, selection, sc.noise_sigma);
    ts.control = Vec(3);
    ts.control << sc.camera[0], sc.camera[1], sc.camera[2];
    ts.alpha_index = 2;
    ts.prior_mean = (Vec(3) << sc.object_xy[0], sc.object_xy[1], 0.0).finished();
    ts.fixed_prior_sd = (Vec(3) << sc.xy_prior_sigma, sc.xy_prior_sigma, 0.0).finished();
    return ts;
}

// Draws the swept coordinate: uniform over the interval, or uniform over the
// grid-prior atoms when the discrete prior is taken as the true one. Returns
// the matching prior variance for the filter.
double draw_alpha(const TableConfig& tc, double bound, Rng& rng, double& alpha_var) {
    if (tc.truth == "atoms") {
        const int r = tc.grid_points;
        const int idx = std::min<int>(static_cast<int>(rng.uniform() * r), r - 1);
        double m2 = 0.0;
        for (int i = 0; i < r; ++i) {
            const double a = -bound + 2.0 * bound * i / (r - 1);
            m2 += a * a / r;
        }
        alpha_var = m2;
        return -bound + 2.0 * bound * idx / (r - 1);
    }
    alpha_var = bound * bound / 3.0;
    return (2.0 * rng.uniform() - 1.0) * bound;
}

void stamp(ResultTable& t, const HarnessConfig& cfg) {
    t.metadata["seed"] = std::to_string(cfg.seed);
    t.metadata["config_hash"] = cfg.hash();
    t.metadata["git"] = kGitDescribe;
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stderr_of_mean(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / (static_cast<double>(v.size()) - 1.0) /
                     static_cast<double>(v.size()));
}

// One EKF pass over a pre-drawn observation stream; returns the final belief.
// The nominal variant linearizes once at the prior estimate and runs a plain
// Kalman filter on the frozen pseudo-measurement model; the relinearizing
// variant refits the expansion at the current mean before every update.
GaussianBelief run_ekf(const TableSystem& ts, double alpha_var, const std::vector<Vec>& zs,
                       bool relinearize) {
    GaussianBelief belief(ts.prior_mean, ts.prior_cov(alpha_var));
    if (relinearize) {
        for (const auto& z : zs) belief = ekf_update(belief, ts.sys, ts.control, z);
        return belief;
    }
    const Linearization lin = ekf_linearize(ts.sys, ts.control, ts.prior_mean);
    const Mat R = ts.sys.noise(ts.control, ts.prior_mean).covariance;
    for (const auto& z : zs) belief = kalman_update(belief, lin.M, R, z + lin.offset);
    return belief;
}

}  // namespace

ResultTable run_table1(const HarnessConfig& cfg) {
    const TableConfig& tc = cfg.table1;
    const TableSystem ts = table_system(tc);
    ResultTable out;
    out.name = "table1";
    out.columns = {"bound", "predicted_mse", "observed_mse", "ratio", "pct_error",
                   "observed_stderr", "trials"};
    stamp(out, cfg);
    for (std::size_t bi = 0; bi < tc.bounds.size(); ++bi) {
        const double b = tc.bounds[bi];
        std::vector<double> predicted, observed;
        predicted.reserve(tc.trials);
        observed.reserve(tc.trials);
        for (long t = 0; t < tc.trials; ++t) {
            Rng rng(cfg.seed, bi * static_cast<std::size_t>(tc.trials) + t);
            double alpha_var = 0.0;
            const double alpha = draw_alpha(tc, b, rng, alpha_var);
            const Vec p = ts.truth(alpha);
            std::vector<Vec> zs;
            zs.reserve(tc.observations);
            for (int i = 0; i < tc.observations; ++i) zs.push_back(observe(ts.sys, ts.control, p, rng));
            const GaussianBelief belief = run_ekf(ts, alpha_var, zs, tc.relinearize);
            predicted.push_back(belief.covariance(ts.alpha_index, ts.alpha_index));
            const double err = angle_diff(belief.mean[ts.alpha_index], alpha);
            observed.push_back(err * err);
        }
        const double pm = mean(predicted);
        const double om = mean(observed);
        out.add_row({b, pm, om, pm / om, (pm - om) / om * 100.0, stderr_of_mean(observed),
                     static_cast<double>(tc.trials)});
    }
    return out;
}

ResultTable run_table2(const HarnessConfig& cfg) {
    const TableConfig& tc = cfg.table2;
    const TableSystem ts = table_system(tc);
    ResultTable out;
    out.name = "table2";
    out.columns = {"bound", "bayes_mse", "ekf_mse", "ratio", "bayes_stderr", "ekf_stderr",
                   "trials"};
    stamp(out, cfg);
    for (std::size_t bi = 0; bi < tc.bounds.size(); ++bi) {
        const double b = tc.bounds[bi];
        // Atoms sweep alpha only; the translation coordinates sit at their means.
        Vec lo = ts.prior_mean, hi = ts.prior_mean;
        lo[ts.alpha_index] -= b;
        hi[ts.alpha_index] += b;
        const GridPrior prior = uniform_grid(ParameterBox(lo, hi), tc.grid_points);
        std::vector<double> bayes_err, ekf_err;
        bayes_err.reserve(tc.trials);
        ekf_err.reserve(tc.trials);
        for (long t = 0; t < tc.trials; ++t) {
            Rng rng(cfg.seed, bi * static_cast<std::size_t>(tc.trials) + t);
            double alpha_var = 0.0;
            const double alpha = draw_alpha(tc, b, rng, alpha_var);
            const Vec p = ts.truth(alpha);
            std::vector<Vec> zs;
            zs.reserve(tc.observations);
            for (int i = 0; i < tc.observations; ++i) zs.push_back(observe(ts.sys, ts.control, p, rng));
            // matched streams: both estimators consume the same observations
            const GaussianBelief belief = run_ekf(ts, alpha_var, zs, tc.relinearize);
            const double ee = angle_diff(belief.mean[ts.alpha_index], alpha);
            ekf_err.push_back(ee * ee);
            SufficientSummary summary;
            summary.add_batch(ts.control, zs);
            const GridPrior post = posterior(prior, ts.sys, summary);
            const double be = angle_diff(posterior_mean(post)[ts.alpha_index], alpha);
            bayes_err.push_back(be * be);
        }
        const double bm = mean(bayes_err);
        const double em = mean(ekf_err);
        out.add_row({b, bm, em, bm / em, stderr_of_mean(bayes_err), stderr_of_mean(ekf_err),
                     static_cast<double>(tc.trials)});
    }
    return out;
}

ResultTable run_table3(const HarnessConfig& cfg) {
    const Table3Config& tc = cfg.table3;
    const MeasurementSystem sys = make_sine_system(tc.amplitude, tc.noise_var);
    const Vec u = Vec::Zero(1);
    ResultTable out;
    out.name = "table3";
    out.columns = {"iterations", "bound", "computed_mse", "observed_mse", "pct_diff",
                   "observed_stderr", "trials"};
    stamp(out, cfg);
    std::size_t cell = 0;
    for (int iters : tc.iterations) {
        for (double b : tc.bounds) {
            const ParameterBox box((Vec(1) << -b).finished(), (Vec(1) << b).finished());
            std::vector<double> computed, observed;
            computed.reserve(tc.trials);
            observed.reserve(tc.trials);
            for (long t = 0; t < tc.trials; ++t) {
                Rng rng(cfg.seed, cell * static_cast<std::size_t>(tc.trials) + t);
                Vec p(1);
                p[0] = (2.0 * rng.uniform() - 1.0) * b;
                SufficientSummary summary;
                RefinementState state;
                state.box = box;
                // One sample per iteration; the interval halves whenever the
                // accumulated posterior quantizes on the current grid.
                for (int k = 0; k < iters; ++k) {
                    summary.add(u, observe(sys, u, p, rng));
                    const GridPrior post =
                        posterior(uniform_grid(state.box, tc.grid_points), sys, summary);
                    if (is_quantized(post, tc.quantize_threshold)) {
                        state = refine_step(state, sys, summary, tc.grid_points);
                    } else {
                        state.post = post;
                    }
                }
                const double est = posterior_mean(state.post)[0];
                observed.push_back((est - p[0]) * (est - p[0]));
                const GridPrior dense =
                    posterior(uniform_grid(box, tc.oracle_grid), sys, summary);
                computed.push_back(posterior_mse(dense, posterior_mean(dense))[0]);
            }
            const double cm = mean(computed);
            const double om = mean(observed);
            out.add_row({static_cast<double>(iters), b, cm, om, (cm - om) / om * 100.0,
                         stderr_of_mean(observed), static_cast<double>(tc.trials)});
            ++cell;
        }
    }
    return out;
}

namespace {
// Posterior mean of a scalar sine-observation model over explicit atoms with
// uniform prior, one observation z with variance var.
double scalar_grid_estimate(double z, double amplitude, double var,
                            const std::vector<double>& atoms) {
    double max_l = -std::numeric_limits<double>::infinity();
    std::vector<double> ll(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const double r = z - amplitude * std::sin(atoms[i]);
        ll[i] = -0.5 * r * r / var;
        max_l = std::max(max_l, ll[i]);
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const double w = std::exp(ll[i] - max_l);
        num += w * atoms[i];
        den += w;
    }
    return num / den;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}
}  // namespace

ResultTable run_fig3(const HarnessConfig& cfg) {
    const Fig3Config& fc = cfg.fig3;
    const double half = kPi / 2.0;
    const std::vector<double> sweep = linspace(-half, half, fc.sweep_points);
    const std::vector<double> coarse = linspace(-half, half, fc.grid_points);
    const std::vector<double> dense = linspace(-half, half, fc.oracle_grid);
    Vec nodes, weights;
    gauss_hermite(fc.quadrature_nodes, nodes, weights);

    ResultTable out;
    out.name = "fig3";
    out.columns = {"sigma2", "p", "oracle_avg", "approx_avg", "oracle_resp", "approx_resp"};
    stamp(out, cfg);
    for (double var : fc.variances) {
        const double scale = std::sqrt(2.0 * var);
        for (double p : sweep) {
            const double z0 = fc.amplitude * std::sin(p);
            double oracle_avg = 0.0, approx_avg = 0.0;
            for (int q = 0; q < fc.quadrature_nodes; ++q) {
                const double z = z0 + scale * nodes[q];
                const double w = weights[q] / std::sqrt(kPi);
                oracle_avg += w * scalar_grid_estimate(z, fc.amplitude, var, dense);
                approx_avg += w * scalar_grid_estimate(z, fc.amplitude, var, coarse);
            }
            out.add_row({var, p, oracle_avg, approx_avg,
                         scalar_grid_estimate(z0, fc.amplitude, var, dense),
                         scalar_grid_estimate(z0, fc.amplitude, var, coarse)});
        }
    }
    return out;
}

ResultTable run_game_threshold(const HarnessConfig& cfg) {
    const GameConfig& gc = cfg.game;
    ResultTable out;
    out.name = "game_threshold";
    out.columns = {"h_lo", "h_hi", "noise_var", "threshold"};
    stamp(out, cfg);
    const double th = randomization_threshold(gc.h_lo, gc.h_hi, gc.noise_var, gc.threshold_lo,
                                              gc.threshold_hi);
    out.add_row({gc.h_lo, gc.h_hi, gc.noise_var, th});
    return out;
}

ResultTable run_fig2(const HarnessConfig& cfg) {
    const GameConfig& gc = cfg.game;
    ResultTable out;
    out.name = "fig2";
    out.columns = {"prior_var", "randomized", "game_predicted", "game_observed", "game_stderr",
                   "lower_predicted", "lower_observed", "lower_stderr", "trials"};
    stamp(out, cfg);
    const auto sweep =
        filter_error_sweep(gc.h_lo, gc.h_hi, gc.noise_var, gc.prior_vars, gc.trials, cfg.seed);
    for (const auto& pt : sweep)
        out.add_row({pt.prior_var, pt.randomized ? 1.0 : 0.0, pt.game_predicted,
                     pt.game_observed, pt.game_stderr, pt.lower_predicted, pt.lower_observed,
                     pt.lower_stderr, static_cast<double>(gc.trials)});
    return out;
}

ResultTable run_planner_demo(const HarnessConfig& cfg) {
    const PlannerConfig& pc = cfg.planner;
    std::vector<Eigen::Vector2d> pts;
    std::vector<Eigen::Vector2d> normals;
    for (const auto& f : pc.features) {
        pts.emplace_back(f[0], f[1]);
        normals.emplace_back(1.0, 0.0);
    }
    const FeatureSet features(pts, normals);

    struct View {
        Vec pose;
        MeasurementSystem sys;
    };
    std::vector<View> views;
    for (const auto& c : pc.candidates) {
        View v;
        v.pose = (Vec(3) << c.pose[0], c.pose[1], c.pose[2]).finished();
        std::vector<std::size_t> sel(c.features.begin(), c.features.end());
        v.sys = make_camera_alpha_system(features, sel, pc.object_xy[0], pc.object_xy[1],
                                         pc.noise_sigma);
        views.push_back(std::move(v));
    }

    ResultTable out;
    out.name = "planner_demo";
    out.columns = {"stage",  "view",        "batch",     "elapsed",   "box_lo",
                   "box_hi", "confidence",  "estimate",  "truncated", "samples"};
    stamp(out, cfg);

    const SensorRequest request(Vec::Constant(1, pc.tolerance), pc.deadline, pc.priority);
    Rng rng(cfg.seed, 0);
    Vec truth(1);
    truth[0] = (2.0 * rng.uniform() - 1.0) * pc.bound;
    const ParameterBox box0((Vec(1) << -pc.bound).finished(), (Vec(1) << pc.bound).finished());
    const int planned = planned_refinements(box0, request.tolerance);
    const StagePlan plan = allocate_stage_risks(pc.tau, std::max(planned, 1));

    const TimeModel time{
        [&](const Vec&) { return pc.sample_time; },
        [&](const Vec& a, const Vec& b) {
            return (a.head(2) - b.head(2)).norm() / pc.travel_speed;
        }};

    ParameterBox box = box0;
    double elapsed = 0.0;
    double confidence = 1.0;
    long samples = 0;
    Vec u_now = views.front().pose;
    bool truncated = false;
    Vec estimate = box.center();
    GridPrior post = uniform_grid(box, 5);

    const int total_stages = planned + 1;  // final stage estimates without refining
    for (int k = 0; k < total_stages; ++k) {
        const double risk = plan.stage_risks[std::min<std::size_t>(k, plan.stage_risks.size() - 1)];
        const GridPrior prior = uniform_grid(box, 5);
        // pick the fastest observable view for this stage
        long best = -1;
        long best_batch = 0;
        double best_time = std::numeric_limits<double>::infinity();
        for (std::size_t vi = 0; vi < views.size(); ++vi) {
            const BatchPlan bp = batch_size(views[vi].sys, views[vi].pose, prior, estimate, risk);
            if (bp.unobservable) continue;
            const double t = time.travel_time(u_now, views[vi].pose) +
                             time.sample_time(views[vi].pose) * static_cast<double>(bp.count);
            if (t < best_time) {
                best_time = t;
                best = static_cast<long>(vi);
                best_batch = bp.count;
            }
        }
        if (best < 0) throw PlanningError("planner demo: no observable view");
        if (elapsed + best_time > request.deadline) {
            truncated = true;
            break;
        }
        const View& view = views[static_cast<std::size_t>(best)];
        SufficientSummary summary;
        for (long i = 0; i < best_batch; ++i)
            summary.add(view.pose, observe(view.sys, view.pose, truth, rng));
        samples += best_batch;
        elapsed += best_time;
        u_now = view.pose;

        if (k < planned) {
            RefinementState state;
            state.box = box;
            const RefinementState next = refine_step(state, view.sys, summary, 5);
            double captured = 0.0;
            for (long i = 0; i < next.post.size(); ++i)
                if (box_contains(next.box, next.post.atoms[static_cast<std::size_t>(i)]))
                    captured += next.post.mass(i);
            confidence *= std::min(captured, 1.0);
            post = next.post;
            estimate = posterior_mean(post);
            box = next.box;
        } else {
            post = posterior(prior, view.sys, summary);
            estimate = posterior_mean(post);
        }
        out.add_row({static_cast<double>(k), static_cast<double>(best),
                     static_cast<double>(best_batch), elapsed, box.lower[0], box.upper[0],
                     confidence, estimate[0], 0.0, static_cast<double>(samples)});
    }
    out.add_row({-1.0, -1.0, 0.0, elapsed, box.lower[0], box.upper[0], confidence, estimate[0],
                 truncated ? 1.0 : 0.0, static_cast<double>(samples)});
    return out;
}

}  // namespace sensorctl
