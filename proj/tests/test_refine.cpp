#include <doctest.h>

#include <cmath>

#include "sensorctl/errors.hpp"
#include "sensorctl/measurement.hpp"
#include "sensorctl/random.hpp"
#include "sensorctl/refine.hpp"
#include "sensorctl/systems.hpp"

using namespace sensorctl;

namespace {
Vec v1(double x) {
    Vec v(1);
    v << x;
    return v;
}
ParameterBox box1(double lo, double hi) { return ParameterBox(v1(lo), v1(hi)); }
}  // namespace

TEST_SUITE_BEGIN("refine");

TEST_CASE("neighborhood spans adjacent grid values") {
    const auto g = uniform_grid(box1(-1.0, 1.0), 5);
    const auto mid = neighborhood(g, 2);
    CHECK(mid.lower[0] == doctest::Approx(-0.5));
    CHECK(mid.upper[0] == doctest::Approx(0.5));
    const auto left = neighborhood(g, 0);  // boundary atoms self-neighbor outward
    CHECK(left.lower[0] == doctest::Approx(-1.0));
    CHECK(left.upper[0] == doctest::Approx(-0.5));
}

TEST_CASE("neighborhood applies per coordinate") {
    Vec lo(2), hi(2);
    lo << -1, -1;
    hi << 1, 1;
    const auto g = uniform_grid(ParameterBox(lo, hi), 5);
    // atom (0, 1): axis 0 index 2, axis 1 index 4 (last axis fastest)
    const long idx = 2 * 5 + 4;
    CHECK(g.atoms[idx][0] == doctest::Approx(0.0));
    CHECK(g.atoms[idx][1] == doctest::Approx(1.0));
    const auto nb = neighborhood(g, idx);
    CHECK(nb.lower[0] == doctest::Approx(-0.5));
    CHECK(nb.upper[0] == doctest::Approx(0.5));
    CHECK(nb.lower[1] == doctest::Approx(0.5));
    CHECK(nb.upper[1] == doctest::Approx(1.0));
}

TEST_CASE("refine step halves the box around the concentrated atom") {
    const auto sys = make_sine_system(10.0, 0.01);
    RefinementState state;
    state.box = box1(-1.0, 1.0);
    SufficientSummary sum;
    for (int i = 0; i < 20; ++i) sum.add(v1(0.0), v1(0.0));  // pins the center atom
    const auto next = refine_step(state, sys, sum);
    CHECK(next.box.lower[0] == doctest::Approx(-0.5));
    CHECK(next.box.upper[0] == doctest::Approx(0.5));
    CHECK(next.stage == 1);
}

TEST_CASE("boundary picks still halve the width exactly") {
    const auto sys = make_sine_system(10.0, 0.01);
    RefinementState state;
    state.box = box1(-1.0, 1.0);
    SufficientSummary sum;
    for (int i = 0; i < 20; ++i) sum.add(v1(0.0), v1(10.0 * std::sin(1.0)));
    const auto next = refine_step(state, sys, sum);
    CHECK(next.box.upper[0] - next.box.lower[0] == doctest::Approx(1.0));
    CHECK(next.box.upper[0] == doctest::Approx(1.0));  // anchored at the chosen edge
}

TEST_CASE("k refine steps shrink widths binary-exactly and stay nested") {
    const auto sys = make_sine_system(10.0, 0.0625);
    RefinementState state;
    state.box = box1(-1.0, 1.0);
    double width = 2.0;
    Rng rng(17);
    for (int k = 0; k < 6; ++k) {
        SufficientSummary sum;
        for (int i = 0; i < 30; ++i)
            sum.add(v1(0.0), observe(sys, v1(0.0), v1(0.2), rng));
        const auto prev = state.box;
        state = refine_step(state, sys, sum);
        width /= 2.0;
        CHECK(state.box.upper[0] - state.box.lower[0] == width);  // dyadic, exact
        CHECK(prev.contains(state.box));
    }
}

TEST_CASE("planned refinement counts") {
    CHECK(planned_refinements(box1(-0.8, 0.8), v1(0.05)) == 4);
    CHECK(planned_refinements(box1(-0.4, 0.4), v1(0.05)) == 3);
    CHECK(planned_refinements(box1(-0.4, 0.4), v1(0.4)) == 0);
    CHECK(planned_refinements(box1(-0.4, 0.4), v1(1.0)) == 0);
}

TEST_CASE("iteration cost formula") {
    const CostModel free_samples(1.0, [](long) { return 0.0; });
    CHECK(iteration_cost(1.0, 1.0, free_samples, 99) == doctest::Approx(0.0));
    CHECK(iteration_cost(8.0, 1.0, free_samples, 0) == doctest::Approx(3.0));
    const CostModel mixed(2.0, [](long n) { return 0.1 * n; });
    CHECK(iteration_cost(5.0, 1.0, mixed, 40) == doctest::Approx(10.0));
    CHECK_THROWS_AS(iteration_cost(0.5, 1.0, free_samples, 0), ArgumentError);
}

TEST_CASE("tolerance met upfront returns after a single estimate") {
    const auto sys = make_sine_system(10.0, 1.0);
    Rng rng(3);
    long batches = 0;
    const auto sampler = [&](long n) {
        ++batches;
        std::vector<Vec> zs;
        for (long i = 0; i < n; ++i) zs.push_back(observe(sys, v1(0.0), v1(0.1), rng));
        return zs;
    };
    const auto res =
        refine_to_tolerance(sys, v1(0.0), box1(-0.4, 0.4), v1(0.5), sampler, 0.95);
    CHECK(res.refinements == 0);
    CHECK(batches == 1);
    CHECK(res.report.confidence == doctest::Approx(1.0));
}

TEST_CASE("exhausted sampler yields a flagged partial result") {
    const auto sys = make_sine_system(10.0, 1.0);
    Rng rng(4);
    long budget = 5;
    const auto sampler = [&](long n) {
        std::vector<Vec> zs;
        for (long i = 0; i < std::min(n, budget); ++i)
            zs.push_back(observe(sys, v1(0.0), v1(0.1), rng));
        budget -= static_cast<long>(zs.size());
        return zs;
    };
    const auto res =
        refine_to_tolerance(sys, v1(0.0), box1(-0.4, 0.4), v1(0.01), sampler, 0.95);
    CHECK(res.exhausted);
    CHECK(res.report.samples_used <= 5);
}

TEST_CASE("refinement count and confidence calibration on a small run") {
    const auto sys = make_sine_system(10.0, 1.0);
    const double tau = 0.95;
    long covered = 0;
    double reported = 0.0;
    const long trials = 400;
    for (long t = 0; t < trials; ++t) {
        Rng rng(7100, t);
        const double truth = 0.8 * rng.uniform() - 0.4;
        const auto sampler = [&](long n) {
            std::vector<Vec> zs;
            for (long i = 0; i < n; ++i) zs.push_back(observe(sys, v1(0.0), v1(truth), rng));
            return zs;
        };
        const auto res =
            refine_to_tolerance(sys, v1(0.0), box1(-0.4, 0.4), v1(0.05), sampler, tau);
        CHECK(res.refinements == 3);
        reported += res.report.confidence;
        covered += box_contains(res.final_box, v1(truth)) ? 1 : 0;
    }
    const double coverage = static_cast<double>(covered) / trials;
    CHECK(std::abs(reported / trials - coverage) < 0.08);
    CHECK(coverage > tau - 0.08);
}

TEST_SUITE_END();
