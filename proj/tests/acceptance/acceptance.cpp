// One PASS/FAIL line per acceptance criterion. Run all, or one with --criterion N.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "CLI11.hpp"
#include "obmstop/errors.hpp"
#include "obmstop/grid_oracle.hpp"
#include "obmstop/mc.hpp"
#include "obmstop/skew.hpp"
#include "obmstop/solver.hpp"
#include "obmstop/value_function.hpp"
#include "obmstop/verification.hpp"

using namespace obmstop;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

void fail(Outcome& o, const std::string& what) {
    if (o.pass) o.detail = what;
    o.pass = false;
}

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double one_sided_c(const ObmParams& p, double r, const Reward& g) {
    const Regime reg = classify_regime(p, Discount(r), g);
    if (reg.thresholds.size() != 1) throw StateError("expected a one-sided regime");
    return reg.thresholds[0];
}

// c(r) changes sign from + to - at the root; bisection in r.
double zero_crossing_rate(const ObmParams& p, const Reward& g, double lo, double hi) {
    for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (one_sided_c(p, mid, g) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Outcome closed_form_thresholds() {
    Outcome o;
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> s1d(0.2, 2.0), ratio(std::sqrt(2.0) * 1.001, 4.0), rmul(1.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double s1 = s1d(rng);
        const double s2 = s1 * ratio(rng);
        const double r = i == 0 ? s2 * s2 : s2 * s2 * rmul(rng);
        const double c = one_sided_c(ObmParams(s1, s2), r, Reward::quadratic_plus());
        worst = std::max(worst, std::abs(c - (2.0 * s1 / std::sqrt(2.0 * r) - 1.0)));
    }
    if (!(worst <= 1e-10)) fail(o, fmt("max error %.3g", worst));
    o.detail = o.pass ? fmt("50 cases, max |c - closed form| = %.3g", worst) : o.detail;
    return o;
}

Outcome zero_crossings() {
    Outcome o;
    struct Case {
        const char* name;
        double s1, s2;
        Reward g;
        double expected, lo, hi;
    };
    const Case cases[] = {
        {"quad, sigma2^2 <= 2 sigma1^2", 1.0, 1.2, Reward::quadratic_plus(), 2.0, 0.5, 5.0},
        {"quad, sigma1 >= sigma2", 2.0, 1.0, Reward::quadratic_plus(), 8.0, 2.0, 20.0},
        {"quad, sigma1 = sigma2", 1.3, 1.3, Reward::quadratic_plus(), 2.0 * 1.69, 1.0, 10.0},
        {"linear", 1.0, 2.0, Reward::linear_plus(), 0.5, 0.05, 3.0},
        {"linear", 1.5, 0.7, Reward::linear_plus(), 1.125, 0.1, 5.0},
    };
    double worst = 0.0;
    for (const auto& c : cases) {
        const ObmParams p(c.s1, c.s2);
        const double r = zero_crossing_rate(p, c.g, c.lo, c.hi);
        const double err = std::abs(r - c.expected);
        worst = std::max(worst, err);
        if (!(err <= 1e-10)) fail(o, fmt("%s (%g, %g): root %.15g, expected %.15g", c.name, c.s1, c.s2, r, c.expected));
        // exactly zero at the critical rate
        if (std::abs(one_sided_c(p, c.expected, c.g)) > 1e-12) fail(o, fmt("%s: c at the critical rate is not 0", c.name));
    }
    if (o.pass) o.detail = fmt("5 cases, max |r - r_crit| = %.3g", worst);
    return o;
}

Outcome bubble_vs_grid() {
    Outcome o;
    const ObmParams p(1.0, 2.0);
    const GridModel gm = build_chain(p, -2.0, 6.0, 8000);
    if (gm.h > 1e-3) fail(o, "grid spacing above 1e-3");
    double worst = 0.0;
    int bubbles = 0;
    for (double r : {2.5, 3.0, 3.5, 3.9}) {
        const Regime reg = classify_regime(p, Discount(r), Reward::quadratic_plus());
        if (reg.tag != RegimeTag::Bubble || !reg.bubble) {
            fail(o, fmt("r = %g: no bubble", r));
            continue;
        }
        const BubbleSolution& b = *reg.bubble;
        if (!(b.c1 < b.c2 && b.c2 <= 0.0 && 0.0 < b.c3)) fail(o, fmt("r = %g: ordering c1 < c2 <= 0 < c3 violated", r));
        if (reg.stopping_region().connected()) fail(o, fmt("r = %g: stopping region connected", r));
        const GridSolution s = solve_stopping(gm, Reward::quadratic_plus(), Discount(r));
        const Region gr = extract_region(s.stop, gm.xs);
        if (gr.size() != 2) {
            fail(o, fmt("r = %g: grid stopping region has %zu components", r, gr.size()));
            continue;
        }
        const double d = std::max({std::abs(gr.components()[0].lo - b.c1), std::abs(gr.components()[0].hi - b.c2),
                                   std::abs(gr.components()[1].lo - b.c3)});
        worst = std::max(worst, d);
        if (!(d <= 2e-3)) fail(o, fmt("r = %g: boundary gap %.3g", r, d));
        ++bubbles;
    }
    if (o.pass) o.detail = fmt("%d rates with a bubble, h = %.3g, max boundary gap %.3g", bubbles, gm.h, worst);
    return o;
}

Outcome critical_rate() {
    Outcome o;
    const ObmParams p(1.0, 2.0);
    SolverTolerances tol;
    tol.r0 = 1e-8;
    const double r0 = find_r0(p, tol);
    if (!(r0 > 2.0 && r0 < 4.0)) fail(o, fmt("r0 = %.12g outside (2, 4)", r0));
    const auto b = solve_bubble(p, Discount(r0), tol);
    if (!b) {
        fail(o, "no bubble at r0");
        return o;
    }
    const double gap = b->c2 - b->c1;
    if (!(gap < 1e-5)) fail(o, fmt("c2 - c1 = %.3g at r0", gap));
    if (!(b->c1 < 0.0 && b->c2 < 0.0)) fail(o, "c1, c2 not negative at r0");
    if (solve_bubble(p, Discount(r0 - 2.0 * tol.r0))) fail(o, "bubble below r0");
    if (o.pass) o.detail = fmt("r0 = %.12g, c1 = %.9g, c2 - c1 = %.3g", r0, b->c1, gap);
    return o;
}

Outcome verification_suite() {
    Outcome o;
    std::vector<ValueFunction> values;
    for (double r : {0.5, 1.0, 1.5, 2.0, 2.1, 2.3, 2.5, 3.0, 3.5, 3.9, 3.99, 4.0, 4.5, 8.0}) {
        values.push_back(assemble(ObmParams(1.0, 2.0), Discount(r), Reward::quadratic_plus()));
    }
    for (double r : {0.1, 0.3, 0.5, 1.0}) values.push_back(assemble(ObmParams(1.0, 2.0), Discount(r), Reward::linear_plus()));
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> sd(0.3, 3.0), rd(0.05, 15.0);
    for (int i = 0; i < 60; ++i) {
        const ObmParams p(sd(rng), sd(rng));
        values.push_back(assemble(p, Discount(rd(rng)), i % 3 ? Reward::quadratic_plus() : Reward::linear_plus()));
    }
    for (double r : {0.05, 0.5, 1.0, 5.0}) {
        const SkewParams beta(0.75);
        values.push_back(assemble(sbm_to_obm(beta), Discount(r), Reward::skew_linear(beta)));
    }
    double worst_fit = 0.0;
    for (const auto& v : values) {
        const VerificationSummary s = verify(v);
        worst_fit = std::max(worst_fit, s.smooth_fit.max_residual);
        if (!s.majorant.passed || !s.excessivity.lower_nondecreasing || !s.excessivity.upper_nonincreasing ||
            !(s.smooth_fit.max_residual < 1e-9) || !s.excessivity.kink_ok) {
            fail(o, "assembled value function failed: " + v.stopping_region().to_string());
        }
    }
    for (double r : {2.5, 3.0, 3.5}) {
        if (verify(zero_fit_function(ObmParams(1.0, 2.0), Discount(r))).excessivity.passed) {
            fail(o, fmt("smooth-fit-at-0 function passes excessivity at r = %g", r));
        }
    }
    if (o.pass) o.detail = fmt("%zu value functions verified, max smooth-fit residual %.3g; F rejected", values.size(), worst_fit);
    return o;
}

Outcome monte_carlo() {
    Outcome o;
    const ObmParams p(1.0, 2.0);
    const Reward g = Reward::quadratic_plus();
    McConfig cfg;
    cfg.n_paths = 100000;
    cfg.dt = 1e-4;
    struct Case {
        double r;
        std::vector<double> xs;
        std::vector<Region> perturbed;
    };
    const double c_pos = solve_quadratic_one_sided(p, Discount(1.5));
    const auto b = solve_bubble(p, Discount(3.0));
    if (!b) {
        fail(o, "no bubble at r = 3");
        return o;
    }
    const Case cases[] = {
        {1.5,
         {-1.5, -0.5, 0.0, 0.5, 1.0},
         {Region::right_ray(c_pos - 0.15), Region::right_ray(c_pos + 0.15)}},
        {3.0,
         {-1.0, -0.5, -0.3, 0.05, 0.15},
         {Region::right_ray(b->c3), Region({Interval::closed(b->c1 - 0.05, b->c2), Interval::closed(b->c3, INFINITY)}),
          Region({Interval::closed(b->c1, b->c2), Interval::closed(b->c3 + 0.1, INFINITY)})}},
        {4.5,
         {-2.0, -1.5, -1.0, -0.7, -0.5},
         {Region::right_ray(-1.0 / 3.0 - 0.1), Region::right_ray(-1.0 / 3.0 + 0.1)}},
    };
    double worst_z = 0.0;
    int estimates = 0;
    for (const auto& c : cases) {
        const ValueFunction v = assemble(p, Discount(c.r), g);
        for (std::size_t i = 0; i < c.xs.size(); ++i) {
            const double x = c.xs[i];
            const McEstimate e = estimate_value(x, v.stopping_region(), p, Discount(c.r), g, cfg);
            ++estimates;
            const double err = std::abs(e.mean - v.value(x));
            worst_z = std::max(worst_z, err / std::max(e.std_error, 1e-300));
            if (!(err <= 3.0 * e.std_error + 5e-3)) {
                fail(o, fmt("r = %g, x = %g: MC %.6g +- %.2g vs V %.6g", c.r, x, e.mean, e.std_error, v.value(x)));
            }
            if (i % 2 == 0) continue;
            for (const Region& reg : c.perturbed) {
                const McEstimate q = estimate_value(x, reg, p, Discount(c.r), g, cfg);
                ++estimates;
                const double se = std::hypot(e.std_error, q.std_error);
                if (q.mean > e.mean + 3.0 * se) {
                    fail(o, fmt("r = %g, x = %g: perturbed %s beats optimal (%.6g > %.6g)", c.r, x,
                                reg.to_string().c_str(), q.mean, e.mean));
                }
            }
        }
    }
    if (o.pass) o.detail = fmt("%d estimates, max |MC - V|/stderr = %.2f", estimates, worst_z);
    return o;
}

double sbm_mass(double x, double beta, double t, double a, double b) {
    if (x < 0.0) return sbm_mass(-x, 1.0 - beta, t, -b, -a);
    const double s = std::sqrt(t);
    auto Phi = [&](double z) { return 0.5 * std::erfc(-z / (s * std::sqrt(2.0))); };
    if (a >= 0.0) return Phi(b - x) - Phi(a - x) + (2.0 * beta - 1.0) * (Phi(b + x) - Phi(a + x));
    return 2.0 * (1.0 - beta) * (Phi(b - x) - Phi(a - x));
}

Outcome skew_sampler() {
    Outcome o;
    struct Case {
        double beta, x, t;
    };
    const std::size_t n = 1000000;
    std::string pvals;
    std::uint64_t seed = 707;
    for (const Case c : {Case{0.75, 0.5, 1.0}, Case{0.5, -1.0, 0.5}, Case{0.9, 0.0, 2.0}}) {
        std::mt19937_64 rng(seed++);
        // 60 equal-width bins over x +- 5 sqrt(t), split at 0, plus two tails
        const double s = std::sqrt(c.t);
        std::vector<double> edges;
        for (int i = -30; i <= 30; ++i) edges.push_back(c.x + s * i / 6.0);
        edges.push_back(0.0);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        std::vector<double> counts(edges.size() + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double y = sbm_step_exact(c.x, c.t, SkewParams(c.beta), rng);
            counts[std::upper_bound(edges.begin(), edges.end(), y) - edges.begin()] += 1.0;
        }
        double stat = 0.0;
        std::size_t bins = 0;
        for (std::size_t k = 0; k < counts.size(); ++k) {
            const double lo = k == 0 ? -INFINITY : edges[k - 1];
            const double hi = k == edges.size() ? INFINITY : edges[k];
            const double e = sbm_mass(c.x, c.beta, c.t, lo, hi) * static_cast<double>(n);
            if (e < 5.0) continue;
            stat += (counts[k] - e) * (counts[k] - e) / e;
            ++bins;
        }
        const double pv =
            boost::math::cdf(boost::math::complement(boost::math::chi_squared(static_cast<double>(bins - 1)), stat));
        pvals += fmt("%s%.3g", pvals.empty() ? "" : ", ", pv);
        if (!(pv > 0.01)) fail(o, fmt("beta %g x %g t %g: chi-square p = %.3g", c.beta, c.x, c.t, pv));
    }
    std::mt19937_64 rng(seed);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i) pos += sbm_step_exact(0.0, 1.0, SkewParams(0.75), rng) > 0.0;
    const double freq = static_cast<double>(pos) / static_cast<double>(n);
    const double z = (freq - 0.75) / std::sqrt(0.75 * 0.25 / static_cast<double>(n));
    if (!(std::abs(z) <= 3.0)) fail(o, fmt("sign frequency %.5f, z = %.2f", freq, z));
    if (o.pass) o.detail = "chi-square p-values " + pvals + fmt("; sign frequency %.5f (z = %.2f)", freq, z);
    return o;
}

Outcome skew_mapping() {
    Outcome o;
    const SkewParams beta(0.75);
    const ObmParams p = sbm_to_obm(beta);
    const Reward g = Reward::skew_linear(beta);
    if (!kink_obstruction(g)) fail(o, "payoff has no convex kink at 0");
    double worst = 0.0;
    int n = 0;
    for (int i = 0; i <= 40; ++i) {
        const double r = std::pow(10.0, -2.0 + 4.0 * i / 40.0);
        const Regime nat = classify_regime(p, Discount(r), g);
        const Region gamma = nat.stopping_region();
        if (gamma.contains(0.0)) fail(o, fmt("r = %g: 0 in the stopping region", r));
        const ValueFunction v = assemble(p, Discount(r), g);
        if (v.derivative(0.0, Side::Left) < v.derivative(0.0, Side::Right) - 1e-10) {
            fail(o, fmt("r = %g: value has a convex kink at 0", r));
        }
        const Region mapped = gamma.map([&](double x) { return sbm_scale_inv(beta, x); });
        const Region native = classify_regime(SkewFundamentalPair(beta, Discount(r)), Reward::linear_plus()).stopping_region();
        const auto a = mapped.boundaries();
        const auto b = native.boundaries();
        if (a.size() != b.size()) {
            fail(o, fmt("r = %g: %zu vs %zu boundaries", r, a.size(), b.size()));
            continue;
        }
        for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
        ++n;
    }
    if (!(worst <= 1e-9)) fail(o, fmt("max boundary discrepancy %.3g", worst));
    if (o.pass) o.detail = fmt("%d rates in [0.01, 100], 0 never stopping, max boundary discrepancy %.3g", n, worst);
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-8)")->check(CLI::Range(1, 8));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all{
        {1, "closed-form thresholds", 1.0, closed_form_thresholds},
        {2, "zero-crossing rates", 5.0, zero_crossings},
        {3, "bubble against grid oracle", 120.0, bubble_vs_grid},
        {4, "critical rate", 300.0, critical_rate},
        {5, "verification suite", 30.0, verification_suite},
        {6, "Monte Carlo consistency", 600.0, monte_carlo},
        {7, "exact skew BM sampler", 120.0, skew_sampler},
        {8, "skew BM region mapping", 30.0, skew_mapping},
    };
    bool all_pass = true;
    for (const auto& c : all) {
        if (only != 0 && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            fail(o, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) fail(o, fmt("took %.2f s, budget %.0f s", secs, c.budget_s));
        std::printf("AC%d %s: %s [%s, %.2f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
