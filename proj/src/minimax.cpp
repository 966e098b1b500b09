#include "sensorctl/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sensorctl/errors.hpp"
#include "sensorctl/random.hpp"

namespace sensorctl {

namespace {

constexpr int kMaxEnumeratedAtoms = 16;
constexpr double kRandomizedTol = 1e-6;

void validate(const GameSpec& spec) {
    const Eigen::Index n = spec.atoms.size();
    if (n == 0 || spec.masses.size() != n || spec.g_lo.size() != n || spec.g_hi.size() != n)
        throw ArgumentError("GameSpec: shape mismatch");
    if (!(spec.noise_var > 0.0)) throw ArgumentError("GameSpec: noise variance must be positive");
    if (std::abs(spec.masses.sum() - 1.0) > 1e-9)
        throw ArgumentError("GameSpec: masses must sum to 1");
    for (Eigen::Index i = 0; i < n; ++i)
        if (spec.g_lo[i] > spec.g_hi[i]) throw ArgumentError("GameSpec: inverted g bounds");
}

// Quadratic coefficients of payoff(a, g) = A a^2 - 2 B a + C.
struct Quad {
    double A = 0.0;
    double B = 0.0;
};

Quad vertex_quad(const Vec& g, const GameSpec& spec) {
    Quad q;
    for (Eigen::Index j = 0; j < spec.atoms.size(); ++j) {
        q.A += spec.masses[j] * g[j] * g[j];
        q.B += spec.masses[j] * g[j] * spec.atoms[j];
    }
    q.A += spec.noise_var;
    return q;
}

double prior_second_moment(const GameSpec& spec) {
    double c = 0.0;
    for (Eigen::Index j = 0; j < spec.atoms.size(); ++j)
        c += spec.masses[j] * spec.atoms[j] * spec.atoms[j];
    return c;
}

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

// min over the gain interval of the quadratic for a fixed g (or mixture).
double min_over_gain(const Quad& q, double c, double lo, double hi) {
    const double a = clamp(q.B / q.A, lo, hi);
    return q.A * a * a - 2.0 * q.B * a + c;
}

double worst_value(double gain, const GameSpec& spec) {
    double v = 0.0;
    for (Eigen::Index j = 0; j < spec.atoms.size(); ++j) {
        const double tl = gain * spec.g_lo[j] - spec.atoms[j];
        const double th = gain * spec.g_hi[j] - spec.atoms[j];
        v += spec.masses[j] * std::max(tl * tl, th * th);
    }
    return v + gain * gain * spec.noise_var;
}

double ternary_min(const std::function<double(double)>& f, double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo) + std::abs(hi));
         ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (f(m1) <= f(m2)) hi = m2; else lo = m1;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

GameSpec make_expansion_game(const std::function<double(double)>& h,
                             const std::function<double(double)>& h_prime,
                             const Vec& atoms, const Vec& masses, double p_hat,
                             double noise_var) {
    GameSpec spec;
    spec.atoms = atoms;
    spec.masses = masses;
    spec.linearization_point = p_hat;
    spec.noise_var = noise_var;
    const double h0 = h(p_hat);
    const Eigen::Index n = atoms.size();
    spec.g_lo.resize(n);
    spec.g_hi.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double a = std::min(atoms[j], p_hat);
        const double b = std::max(atoms[j], p_hat);
        double m_lo = std::numeric_limits<double>::infinity();
        double m_hi = -m_lo;
        for (int i = 0; i <= 100; ++i) {
            const double eta = a + (b - a) * i / 100.0;
            const double m = h_prime(eta);
            m_lo = std::min(m_lo, m);
            m_hi = std::max(m_hi, m);
        }
        const double d = atoms[j] - p_hat;
        const double v1 = h0 + m_lo * d;
        const double v2 = h0 + m_hi * d;
        spec.g_lo[j] = std::min(v1, v2);
        spec.g_hi[j] = std::max(v1, v2);
    }
    validate(spec);
    return spec;
}

GameSpec make_slope_interval_game(double h_lo, double h_hi, const Vec& atoms,
                                  const Vec& masses, double noise_var) {
    if (h_lo > h_hi) throw ArgumentError("make_slope_interval_game: inverted slope interval");
    GameSpec spec;
    spec.atoms = atoms;
    spec.masses = masses;
    spec.linearization_point = 0.0;
    spec.noise_var = noise_var;
    const Eigen::Index n = atoms.size();
    spec.g_lo.resize(n);
    spec.g_hi.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        spec.g_lo[j] = std::min(h_lo * atoms[j], h_hi * atoms[j]);
        spec.g_hi[j] = std::max(h_lo * atoms[j], h_hi * atoms[j]);
    }
    validate(spec);
    return spec;
}

GameSpec make_two_point_slope_game(double h_lo, double h_hi, double prior_var,
                                   double noise_var) {
    if (!(prior_var > 0.0)) throw ArgumentError("make_two_point_slope_game: prior variance <= 0");
    const double s = std::sqrt(prior_var);
    Vec atoms(2), masses(2);
    atoms << -s, s;
    masses << 0.5, 0.5;
    return make_slope_interval_game(h_lo, h_hi, atoms, masses, noise_var);
}

double payoff(double gain, const Vec& g, const GameSpec& spec) {
    if (g.size() != spec.atoms.size()) throw ArgumentError("payoff: g dimension mismatch");
    double v = 0.0;
    for (Eigen::Index j = 0; j < spec.atoms.size(); ++j) {
        const double t = gain * g[j] - spec.atoms[j];
        v += spec.masses[j] * t * t;
    }
    return v + gain * gain * spec.noise_var;
}

double payoff(double gain, const std::vector<std::pair<Vec, double>>& mixture,
              const GameSpec& spec) {
    double v = 0.0;
    for (const auto& [g, w] : mixture) v += w * payoff(gain, g, spec);
    return v;
}

std::pair<Vec, double> worst_response(double gain, const GameSpec& spec) {
    validate(spec);
    const Eigen::Index n = spec.atoms.size();
    Vec g(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double tl = gain * spec.g_lo[j] - spec.atoms[j];
        const double th = gain * spec.g_hi[j] - spec.atoms[j];
        g[j] = tl * tl >= th * th ? spec.g_lo[j] : spec.g_hi[j];
    }
    return {g, payoff(gain, g, spec)};
}

SaddleSolution solve_saddle(const GameSpec& spec) {
    validate(spec);
    const Eigen::Index n = spec.atoms.size();
    const double c = prior_second_moment(spec);

    // Gain interval around the nominal Bayes gain for the box midpoint,
    // expanded until the minimizer is interior.
    double gain_lo = spec.gain_lo, gain_hi = spec.gain_hi;
    if (!(gain_hi > gain_lo)) {
        const Quad mid = vertex_quad(0.5 * (spec.g_lo + spec.g_hi), spec);
        const double a0 = std::abs(mid.B) > 0 ? mid.B / mid.A : 0.0;
        const double r = 10.0 * std::max(std::abs(a0), 0.1);
        gain_lo = -r;
        gain_hi = r;
    }
    auto phi = [&](double a) { return worst_value(a, spec); };
    double a_star = 0.0;
    for (int round = 0; round < 60; ++round) {
        a_star = ternary_min(phi, gain_lo, gain_hi);
        const double width = gain_hi - gain_lo;
        if (a_star - gain_lo > 1e-3 * width && gain_hi - a_star > 1e-3 * width) break;
        gain_lo -= width;
        gain_hi += width;
    }
    const double upper = phi(a_star);

    // Pure lower value: best guaranteed payoff over vertices of the g box.
    std::vector<Eigen::Index> free_axes;
    for (Eigen::Index j = 0; j < n; ++j)
        if (spec.g_hi[j] > spec.g_lo[j]) free_axes.push_back(j);
    if (static_cast<int>(free_axes.size()) > kMaxEnumeratedAtoms)
        throw CapacityError("solve_saddle: too many atoms for vertex enumeration");

    Vec g = spec.g_lo;
    Vec best_g = g;
    double lower = -std::numeric_limits<double>::infinity();
    const std::uint64_t combos = 1ull << free_axes.size();
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
        for (std::size_t b = 0; b < free_axes.size(); ++b)
            g[free_axes[b]] = (mask >> b) & 1 ? spec.g_hi[free_axes[b]] : spec.g_lo[free_axes[b]];
        const double v = min_over_gain(vertex_quad(g, spec), c, gain_lo, gain_hi);
        if (v > lower) {
            lower = v;
            best_g = g;
        }
    }

    SaddleSolution sol;
    sol.gain = a_star;
    sol.value = upper;
    sol.upper_value = upper;
    sol.lower_value = lower;
    sol.randomized = upper - lower > kRandomizedTol * std::max(1.0, std::abs(lower));

    if (!sol.randomized) {
        sol.mixture = {{best_g, 1.0}};
        return sol;
    }

    // Two-point mixture over the worst responses just left and right of the
    // kink at a*, weighted so the mixture's Bayes gain equals a*.
    const double delta = 1e-7 * std::max(1.0, std::abs(a_star));
    const Vec g_minus = worst_response(a_star - delta, spec).first;
    const Vec g_plus = worst_response(a_star + delta, spec).first;
    const Quad qm = vertex_quad(g_minus, spec);
    const Quad qp = vertex_quad(g_plus, spec);
    const double rm = qm.B - a_star * qm.A;  // -payoff slope/2 at a*
    const double rp = qp.B - a_star * qp.A;
    if ((g_minus - g_plus).cwiseAbs().maxCoeff() == 0.0 || rm == rp) {
        sol.mixture = {{g_minus, 1.0}};
        return sol;
    }
    double t = rp / (rp - rm);  // weight on g_minus
    t = clamp(t, 0.0, 1.0);
    sol.mixture = {{g_minus, t}, {g_plus, 1.0 - t}};
    return sol;
}

double randomization_threshold(double h_lo, double h_hi, double noise_var, double var_lo,
                               double var_hi) {
    if (!(var_lo > 0.0 && var_hi > var_lo))
        throw ArgumentError("randomization_threshold: bad search range");
    auto flag = [&](double v) {
        return solve_saddle(make_two_point_slope_game(h_lo, h_hi, v, noise_var)).randomized;
    };
    const bool f_lo = flag(var_lo);
    const bool f_hi = flag(var_hi);
    if (f_lo || !f_hi)
        throw RangeError("randomization_threshold: no transition inside the search range");
    double lo = var_lo, hi = var_hi;
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        if (flag(mid)) hi = mid; else lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<FilterSweepPoint> filter_error_sweep(double h_lo, double h_hi, double noise_var,
                                                 const std::vector<double>& prior_vars,
                                                 long trials, std::uint64_t seed) {
    std::vector<FilterSweepPoint> out;
    out.reserve(prior_vars.size());
    const double sig_v = std::sqrt(noise_var);
    for (std::size_t pi = 0; pi < prior_vars.size(); ++pi) {
        const double var = prior_vars[pi];
        const GameSpec spec = make_two_point_slope_game(h_lo, h_hi, var, noise_var);
        const SaddleSolution sol = solve_saddle(spec);

        FilterSweepPoint pt;
        pt.prior_var = var;
        pt.randomized = sol.randomized;
        pt.game_predicted = sol.value;

        // Filter built for the lower slope endpoint, and its self-predicted risk.
        const double a_lb = var * h_lo / (var * h_lo * h_lo + noise_var);
        Vec g_lb(spec.atoms.size());
        for (Eigen::Index j = 0; j < spec.atoms.size(); ++j) g_lb[j] = h_lo * spec.atoms[j];
        pt.lower_predicted = payoff(a_lb, g_lb, spec);

        // Nature plays the least favorable mixture from the game solution.
        Rng rng(seed, pi + 1);
        double sum_g = 0, sq_g = 0, sum_l = 0, sq_l = 0;
        for (long t = 0; t < trials; ++t) {
            // atom ~ prior
            double u = rng.uniform();
            Eigen::Index atom = 0;
            for (; atom < spec.atoms.size() - 1; ++atom) {
                u -= spec.masses[atom];
                if (u < 0.0) break;
            }
            // vertex ~ mixture
            double w = rng.uniform();
            const Vec* g = &sol.mixture.front().first;
            for (const auto& [gv, pw] : sol.mixture) {
                w -= pw;
                if (w < 0.0) { g = &gv; break; }
            }
            const double z = (*g)[atom] + sig_v * rng.normal();
            const double theta = spec.atoms[atom];
            const double eg = sol.gain * z - theta;
            const double el = a_lb * z - theta;
            sum_g += eg * eg;
            sq_g += eg * eg * eg * eg;
            sum_l += el * el;
            sq_l += el * el * el * el;
        }
        const double nt = static_cast<double>(trials);
        pt.game_observed = sum_g / nt;
        pt.game_stderr = std::sqrt(std::max(0.0, sq_g / nt - pt.game_observed * pt.game_observed) / nt);
        pt.lower_observed = sum_l / nt;
        pt.lower_stderr = std::sqrt(std::max(0.0, sq_l / nt - pt.lower_observed * pt.lower_observed) / nt);
        out.push_back(pt);
    }
    return out;
}

}  // namespace sensorctl
