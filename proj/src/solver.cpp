#include "obmstop/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "obmstop/errors.hpp"

namespace obmstop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double bisect_root(const auto& f, double lo, double hi, double tol) {
    auto stop = [tol](double a, double b) { return b - a <= tol; };
    const auto [a, b] = boost::math::tools::bisect(f, lo, hi, stop);
    return 0.5 * (a + b);
}

// Root of the lower representing function on (-inf, 0) where psi'/psi is the
// constant l1: l1 (1 + kappa1 x) = p kappa1.
double left_closed_form(const ObmParams& params, Discount r, int power) {
    return power / params.lambda1(r.value()) - 1.0;
}

double snap_left(double x, double closed) {
    if (x < 0.0 && std::abs(x - closed) < 1e-9) return closed;
    return x;
}

struct BubbleGeometry {
    MonotonePiece left;   // increasing piece ending at 0
    MonotonePiece right;  // last increasing piece
    double c1;
    double threshold;     // lower representing value at right.lo
    double dlo;           // admissible c2 lie in [dlo, 0)
};

class BubbleSystem {
public:
    BubbleSystem(const FundamentalSystem& sys, const Reward& g, const SolverTolerances& tol)
        : sys_(sys), g_(g), tol_(tol), w_(sys.wronskian()) {}

    double lower(double x, Side s = Side::Right) const { return lower_representing(sys_, g_, x, s); }
    double upper(double x, Side s = Side::Right) const { return upper_representing(sys_, g_, x, s); }

    std::optional<BubbleGeometry> geometry() const {
        const auto pieces = monotone_pieces(sys_, g_);
        auto it = std::find_if(pieces.begin(), pieces.end(), [](const MonotonePiece& p) { return p.hi == 0.0; });
        if (it == pieces.end() || !it->increasing || !pieces.back().increasing) return std::nullopt;
        BubbleGeometry geo{*it, pieces.back(), 0.0, 0.0, 0.0};
        if (geo.right.lo < 0.0) return std::nullopt;

        const double i0 = lower(0.0, Side::Left);
        if (!(i0 > 0.0)) return std::nullopt;
        const double lo = geo.left.lo;
        if (!(lower_sign_function(sys_, g_, lo, Side::Right) < 0.0)) return std::nullopt;
        auto k = [&](double x) {
            if (x <= lo) return -1.0;
            if (x >= 0.0) return 1.0;
            return lower_sign_function(sys_, g_, x);
        };
        geo.c1 = bisect_root(k, lo, 0.0, tol_.root);

        geo.threshold = lower(geo.right.lo, Side::Right);
        if (!(geo.threshold < i0)) return std::nullopt;
        if (geo.threshold <= lower(geo.c1)) {
            geo.dlo = geo.c1;
        } else {
            auto f = [&](double x) {
                if (x >= 0.0) return 1.0;
                return lower(x) - geo.threshold;
            };
            geo.dlo = bisect_root(f, geo.c1, 0.0, tol_.root);
        }
        return geo;
    }

    // c3 with lower(c3) = lower(c2) on the last increasing piece.
    double partner(const BubbleGeometry& geo, double c2) const {
        const double target = lower(c2, Side::Left);
        if (target <= geo.threshold) return geo.right.lo;
        double hi = std::max(geo.right.lo, 0.0) + 1.0;
        int guard = 0;
        while (lower(hi) <= target) {
            if (++guard > 200) throw ConvergenceError("bubble: cannot bracket c3", {target}, guard);
            hi = 2.0 * hi + 1.0;
        }
        auto f = [&](double y) {
            if (y <= geo.right.lo) return -1.0;
            return lower(y) - target;
        };
        return bisect_root(f, geo.right.lo, hi, tol_.root);
    }

    double upper_gap(const BubbleGeometry& geo, double c2) const {
        return upper(partner(geo, c2)) - upper(c2, Side::Left);
    }

    void fill(BubbleSolution& s) const {
        const double c1 = s.c1, c2 = s.c2, c3 = s.c3;
        s.k = g_.value(c1) / sys_.psi(c1);
        s.a = upper(c2, Side::Left) / w_;
        s.b = lower(c2, Side::Left) / w_;
        auto v = [&](double x) { return s.a * sys_.psi(x) + s.b * sys_.phi(x); };
        auto dv = [&](double x, Side side) {
            return s.a * sys_.psi_derivative(x, side) + s.b * sys_.phi_derivative(x, side);
        };
        s.residuals = {
            s.k * sys_.psi(c1) - g_.value(c1),
            s.k * sys_.psi_derivative(c1, Side::Left) - g_.derivative(c1, Side::Left),
            v(c2) - g_.value(c2),
            dv(c2, Side::Left) - g_.derivative(c2, Side::Left),
            v(c3) - g_.value(c3),
            dv(c3, Side::Right) - g_.derivative(c3, Side::Right),
        };
    }

    // Damped Newton on (lower(c3) - lower(c2), upper(c3) - upper(c2)).
    std::optional<BubbleSolution> newton(const BubbleGeometry& geo, double c2, double c3) const {
        auto res = [&](double x2, double x3) {
            return std::array<double, 2>{lower(x3) - lower(x2, Side::Left), upper(x3) - upper(x2, Side::Left)};
        };
        auto admissible = [&](double x2, double x3) { return x2 >= geo.dlo && x2 < 0.0 && x3 > geo.right.lo; };
        auto norm = [](const std::array<double, 2>& r) { return std::max(std::abs(r[0]), std::abs(r[1])); };

        auto r = res(c2, c3);
        for (int it = 1; it <= tol_.newton_iterations; ++it) {
            if (norm(r) <= 1e-3 * tol_.residual) {
                BubbleSolution s;
                s.c1 = geo.c1;
                s.c2 = c2;
                s.c3 = c3;
                s.method = "newton";
                s.iterations = it - 1;
                return s;
            }
            const double h2 = 1e-7 * std::max(std::abs(c2), 1e-6);
            const double h3 = 1e-7 * std::max(std::abs(c3), 1e-6);
            const auto r2 = res(c2 - h2, c3);
            const auto r3 = res(c2, c3 + h3);
            const double j00 = (r[0] - r2[0]) / h2, j10 = (r[1] - r2[1]) / h2;
            const double j01 = (r3[0] - r[0]) / h3, j11 = (r3[1] - r[1]) / h3;
            const double det = j00 * j11 - j01 * j10;
            if (!std::isfinite(det) || det == 0.0) return std::nullopt;
            const double d2 = -(j11 * r[0] - j01 * r[1]) / det;
            const double d3 = -(-j10 * r[0] + j00 * r[1]) / det;
            double step = 1.0;
            bool moved = false;
            for (int k = 0; k < 40; ++k, step *= 0.5) {
                const double n2 = c2 + step * d2;
                const double n3 = c3 + step * d3;
                if (!admissible(n2, n3)) continue;
                const auto nr = res(n2, n3);
                if (norm(nr) < norm(r)) {
                    c2 = n2;
                    c3 = n3;
                    r = nr;
                    moved = true;
                    break;
                }
            }
            if (!moved) return std::nullopt;
        }
        return std::nullopt;
    }

    BubbleSolution nested_bisection(const BubbleGeometry& geo) const {
        auto f = [&](double x2) {
            if (x2 <= geo.dlo) return upper_gap(geo, geo.dlo);
            if (x2 >= 0.0) return 1.0;
            return upper_gap(geo, x2);
        };
        BubbleSolution s;
        s.c1 = geo.c1;
        s.c2 = bisect_root(f, geo.dlo, 0.0, tol_.root);
        s.c3 = partner(geo, s.c2);
        s.method = "nested-bisection";
        return s;
    }

    std::optional<BubbleSolution> solve() const {
        const auto geo = geometry();
        if (!geo) return std::nullopt;
        const double at_zero = upper_gap(*geo, 0.0);
        const double at_lo = upper_gap(*geo, geo->dlo);
        if (!(at_zero > 0.0) || at_lo > 0.0) return std::nullopt;

        std::optional<BubbleSolution> sol;
        if (at_lo == 0.0) {
            BubbleSolution s;
            s.c1 = geo->c1;
            s.c2 = geo->dlo;
            s.c3 = partner(*geo, s.c2);
            s.method = "degenerate";
            sol = s;
        } else {
            const double c2 = 0.5 * geo->dlo;
            sol = newton(*geo, c2, partner(*geo, c2));
            if (!sol) sol = nested_bisection(*geo);
        }
        fill(*sol);
        if (!(sol->max_residual() < tol_.residual)) {
            throw ConvergenceError("bubble: smooth-fit residuals above tolerance", sol->residuals, sol->iterations);
        }
        return sol;
    }

private:
    const FundamentalSystem& sys_;
    const Reward& g_;
    SolverTolerances tol_;
    double w_;
};

void require_bubble_params(const ObmParams& params) {
    const double s1 = params.sigma1(), s2 = params.sigma2();
    if (!(s2 * s2 > 2.0 * s1 * s1)) throw DomainError("requires sigma2^2 > 2 sigma1^2");
}

RegimeTag tag_for(double c) {
    if (c < 0.0) return RegimeTag::OneSidedNegativeC;
    if (c > 0.0) return RegimeTag::OneSidedPositiveC;
    return RegimeTag::OneSidedZeroC;
}

}  // namespace

double BubbleSolution::max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, std::abs(r));
    return m;
}

double solve_linear_threshold(const ObmParams& params, Discount r, const SolverTolerances& tol) {
    const double s1sq = params.sigma1() * params.sigma1();
    const double two_r = 2.0 * r.value();
    if (two_r == s1sq) return 0.0;
    if (two_r > s1sq) return left_closed_form(params, r, 1);
    const FundamentalPair fp(params, r);
    const auto roots = lower_crossings(fp, Reward::linear_plus(), tol.root);
    if (roots.empty()) throw ConvergenceError("solve_linear_threshold: no root", {}, 0);
    return roots.back().x;
}

std::vector<double> g_minus_roots(const ObmParams& params, Discount r, const SolverTolerances& tol) {
    const FundamentalPair fp(params, r);
    const double closed = left_closed_form(params, r, 2);
    std::vector<double> out;
    for (const auto& c : lower_crossings(fp, Reward::quadratic_plus(), tol.root)) out.push_back(snap_left(c.x, closed));
    return out;
}

double solve_quadratic_one_sided(const ObmParams& params, Discount r, const SolverTolerances& tol) {
    const Regime regime = classify_regime(params, r, Reward::quadratic_plus(), tol);
    if (regime.tag == RegimeTag::Bubble) throw StateError("solve_quadratic_one_sided: bubble regime");
    return regime.thresholds.front();
}

std::optional<BubbleSolution> solve_bubble(const FundamentalSystem& sys, const Reward& g, const SolverTolerances& tol) {
    return BubbleSystem(sys, g, tol).solve();
}

std::optional<BubbleSolution> solve_bubble(const ObmParams& params, Discount r, const SolverTolerances& tol) {
    require_bubble_params(params);
    const double s1sq = params.sigma1() * params.sigma1();
    const double s2sq = params.sigma2() * params.sigma2();
    if (!(r.value() > 2.0 * s1sq && r.value() < s2sq)) throw DomainError("solve_bubble: requires r in (2 sigma1^2, sigma2^2)");
    const FundamentalPair fp(params, r);
    const Reward g = Reward::quadratic_plus();
    auto sol = solve_bubble(fp, g, tol);
    if (!sol) return sol;
    const double closed = left_closed_form(params, r, 2);
    if (std::abs(sol->c1 - closed) < 1e-9) {
        const double gap = sol->c2 - sol->c1;
        sol->c1 = closed;
        if (gap == 0.0) sol->c2 = closed;
        sol->k = g.value(closed) / fp.psi(closed);
        sol->residuals[0] = sol->k * fp.psi(closed) - g.value(closed);
        sol->residuals[1] = sol->k * fp.psi_derivative(closed) - g.derivative(closed);
    }
    if (!(sol->c1 <= sol->c2 && sol->c2 <= 0.0 && sol->c3 > 0.0 && sol->c1 > -1.0)) return std::nullopt;
    return sol;
}

double find_r0(const ObmParams& params, const SolverTolerances& tol) {
    require_bubble_params(params);
    const double lo0 = 2.0 * params.sigma1() * params.sigma1();
    const double hi0 = params.sigma2() * params.sigma2();
    auto has_bubble = [&](double r) {
        const auto sol = solve_bubble(params, Discount(r), tol);
        return sol.has_value() && sol->c2 > sol->c1;
    };
    double lo = lo0 + 1e-6 * (hi0 - lo0);
    double hi = hi0 - 1e-3 * (hi0 - lo0);
    if (has_bubble(lo)) {
        throw ConvergenceError("find_r0: bubble present at the lower end of the bracket; predicate not monotone",
                               {lo}, 0);
    }
    if (!has_bubble(hi)) {
        throw ConvergenceError("find_r0: no bubble at the upper end of the bracket; predicate not monotone", {hi}, 0);
    }
    int it = 0;
    while (hi - lo > tol.r0) {
        const double mid = 0.5 * (lo + hi);
        (has_bubble(mid) ? hi : lo) = mid;
        ++it;
    }
    return hi;
}

std::string to_string(RegimeTag tag) {
    switch (tag) {
        case RegimeTag::OneSidedNegativeC: return "OneSidedNegativeC";
        case RegimeTag::OneSidedZeroC: return "OneSidedZeroC";
        case RegimeTag::OneSidedPositiveC: return "OneSidedPositiveC";
        case RegimeTag::Bubble: return "Bubble";
    }
    return "Unknown";
}

Region Regime::stopping_region() const {
    if (tag == RegimeTag::Bubble) {
        return Region({Interval::closed(thresholds[0], thresholds[1]),
                       Interval{thresholds[2], kInf, true, false}});
    }
    return Region::right_ray(thresholds.front());
}

Regime classify_regime(const FundamentalSystem& sys, const Reward& reward, const SolverTolerances& tol) {
    if (auto b = solve_bubble(sys, reward, tol)) {
        return {RegimeTag::Bubble, {b->c1, b->c2, b->c3}, b};
    }
    const auto roots = lower_crossings(sys, reward, tol.root);
    if (roots.empty()) throw ConvergenceError("classify_regime: no threshold", {}, 0);
    const double c = roots.back().x;
    return {tag_for(c), {c}, std::nullopt};
}

Regime classify_regime(const ObmParams& params, Discount r, const Reward& reward, const SolverTolerances& tol) {
    const double s1sq = params.sigma1() * params.sigma1();
    const double s2sq = params.sigma2() * params.sigma2();
    const double rv = r.value();

    if (reward.kind() == Reward::Kind::LinearPlus) {
        const double c = solve_linear_threshold(params, r, tol);
        const RegimeTag tag = 2.0 * rv == s1sq ? RegimeTag::OneSidedZeroC
                              : 2.0 * rv > s1sq ? RegimeTag::OneSidedNegativeC
                                                : RegimeTag::OneSidedPositiveC;
        return {tag, {c}, std::nullopt};
    }
    if (reward.kind() != Reward::Kind::QuadraticPlus) {
        return classify_regime(FundamentalPair(params, r), reward, tol);
    }

    const double closed = left_closed_form(params, r, 2);
    if (s2sq > 2.0 * s1sq) {
        if (rv >= s2sq) return {RegimeTag::OneSidedNegativeC, {closed}, std::nullopt};
        if (rv > 2.0 * s1sq) {
            if (auto b = solve_bubble(params, r, tol)) return {RegimeTag::Bubble, {b->c1, b->c2, b->c3}, b};
        }
        // Largest root; at r = 2 sigma1^2 the roots are 0 and a positive one.
        const auto roots = g_minus_roots(params, r, tol);
        const double c = roots.back();
        return {tag_for(c), {c}, std::nullopt};
    }
    if (rv == 2.0 * s1sq) return {RegimeTag::OneSidedZeroC, {0.0}, std::nullopt};
    if (rv > 2.0 * s1sq) return {RegimeTag::OneSidedNegativeC, {closed}, std::nullopt};
    const auto roots = g_minus_roots(params, r, tol);
    const double c = roots.back();
    return {c > 0.0 ? RegimeTag::OneSidedPositiveC : tag_for(c), {c}, std::nullopt};
}

ZeroFitReport zero_fit_candidate(const ObmParams& params, Discount r, double probe) {
    const double s2sq = params.sigma2() * params.sigma2();
    if (!(r.value() < s2sq)) throw DomainError("zero_fit_candidate: requires r < sigma2^2");
    if (!(probe > 0.0) || !std::isfinite(probe)) throw DomainError("zero_fit_candidate: probe must be positive");
    const FundamentalPair fp(params, r);
    ZeroFitReport rep;
    rep.lambda = fp.lambda1_plus();
    rep.a = 0.5 * (1.0 + 2.0 / rep.lambda);
    rep.b = 0.5 * (1.0 - 2.0 / rep.lambda);
    rep.probe = probe;
    rep.drift_at_probe = r.value() * (1.0 + probe) * (1.0 + probe) - s2sq;
    // F = g on x >= 0, so its lower representing function there is g_minus.
    rep.representing_at_zero = g_minus(fp, 0.0);
    rep.representing_at_probe = g_minus(fp, probe);
    rep.decreasing_right_of_zero = rep.drift_at_probe < 0.0 && rep.representing_at_probe < rep.representing_at_zero;
    rep.negative_coefficient = rep.b < 0.0;
    rep.unbounded_below = rep.b < 0.0;
    rep.not_excessive = rep.decreasing_right_of_zero || rep.negative_coefficient;
    return rep;
}

}  // namespace obmstop
