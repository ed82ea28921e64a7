#include "obmstop/verification.hpp"

#include <algorithm>
#include <cmath>

namespace obmstop {

namespace {

std::vector<double> special_points(const ValueFunction& v) {
    std::vector<double> pts = v.stopping_region().boundaries();
    pts.push_back(0.0);
    pts.push_back(v.reward().support_start());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double scale_of(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

std::vector<double> make_check_grid(const ValueFunction& v, std::size_t n, double margin) {
    const auto special = special_points(v);
    const double lo = v.reward().support_start() + 1e-6;
    double top = 0.0;
    for (double b : v.stopping_region().boundaries()) top = std::max(top, b);
    const double hi = top + margin;

    std::vector<double> xs;
    const std::size_t n_uniform = std::max<std::size_t>(n / 2, 2);
    for (std::size_t i = 0; i < n_uniform; ++i) xs.push_back(lo + (hi - lo) * static_cast<double>(i) / (n_uniform - 1));

    const std::size_t per_point = (n - n_uniform) / (2 * special.size());
    for (double p : special) {
        for (std::size_t j = 0; j < per_point; ++j) {
            // offsets from 1e-8 to 1e-1
            const double off = std::pow(10.0, -8.0 + 7.0 * static_cast<double>(j) / std::max<std::size_t>(per_point - 1, 1));
            xs.push_back(p - off);
            xs.push_back(p + off);
        }
    }
    std::erase_if(xs, [&](double x) {
        if (x < lo || x > hi) return true;
        return std::any_of(special.begin(), special.end(), [x](double p) { return std::abs(x - p) < 1e-9; });
    });
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

ExcessivityReport excessivity_check(const ValueFunction& v, const std::vector<double>& grid,
                                    const VerificationTolerances& tol) {
    ExcessivityReport rep;
    if (grid.empty()) return rep;
    std::vector<double> lower(grid.size()), upper(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        lower[i] = v.lower_representing(grid[i]);
        upper[i] = v.upper_representing(grid[i]);
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double drop = lower[i] - lower[i + 1];
        if (drop > rep.worst_lower_drop) {
            rep.worst_lower_drop = drop;
            rep.worst_lower_drop_at = grid[i];
        }
        if (drop > tol.monotone_slack * scale_of(lower[i], lower[i + 1])) rep.lower_nondecreasing = false;
        const double rise = upper[i + 1] - upper[i];
        if (rise > rep.worst_upper_rise) {
            rep.worst_upper_rise = rise;
            rep.worst_upper_rise_at = grid[i];
        }
        if (rise > tol.monotone_slack * scale_of(upper[i], upper[i + 1])) rep.upper_nonincreasing = false;
    }

    const auto bounds = v.stopping_region().boundaries();
    const double first = bounds.empty() ? -std::numeric_limits<double>::infinity() : bounds.front();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const double s = std::max(1.0, std::abs(v.system().psi_derivative(x) * v.value(x)) / v.system().scale_density(x));
        if (x < first && !v.stopping_region().contains(x) && std::abs(lower[i]) > tol.monotone_slack * s) {
            rep.lower_zero_left = false;
        }
        if (upper[i] < -tol.monotone_slack * scale_of(upper[i], 0.0)) rep.upper_nonnegative = false;
    }

    rep.kink_gap = v.derivative(0.0, Side::Left) - v.derivative(0.0, Side::Right);
    rep.kink_ok = rep.kink_gap >= -tol.kink;
    rep.passed = rep.lower_nondecreasing && rep.upper_nonincreasing && rep.lower_zero_left && rep.upper_nonnegative &&
                 rep.kink_ok;
    return rep;
}

MajorantReport majorant_check(const ValueFunction& v, const std::vector<double>& grid,
                              const VerificationTolerances& tol) {
    MajorantReport rep;
    bool first = true;
    for (double x : grid) {
        const double g = v.reward().value(x);
        const double gap = v.value(x) - g;
        if (first || gap < rep.worst_gap) {
            rep.worst_gap = gap;
            rep.worst_at = x;
            first = false;
        }
        if (gap < -tol.majorant * std::max(1.0, g)) rep.passed = false;
    }
    return rep;
}

SmoothFitReport smooth_fit_check(const ValueFunction& v, const VerificationTolerances& tol) {
    SmoothFitReport rep;
    const auto& g = v.reward();
    for (double b : v.stopping_region().boundaries()) {
        // Compare the continuation piece with g from the same side.
        double vr = 0.0, dr = 0.0;
        const Side sides[] = {Side::Left, Side::Right};
        for (Side side : sides) {
            if (const auto* p = v.piece_at(b, side)) {
                const auto& sys = v.system();
                const double val = p->coef_psi * sys.psi(b) + p->coef_phi * sys.phi(b);
                const double der = p->coef_psi * sys.psi_derivative(b, side) + p->coef_phi * sys.phi_derivative(b, side);
                const Side other = side == Side::Left ? Side::Right : Side::Left;
                vr = std::max(vr, std::abs(val - g.value(b)));
                dr = std::max(dr, std::abs(der - g.derivative(b, other)));
            }
        }
        rep.boundaries.push_back(b);
        rep.value_residuals.push_back(vr);
        rep.derivative_residuals.push_back(dr);
        rep.max_residual = std::max({rep.max_residual, vr, dr});
    }
    rep.passed = rep.max_residual < tol.smooth_fit;
    return rep;
}

HarmonicityReport harmonicity_check(const ValueFunction& v, const std::vector<double>& grid,
                                    const VerificationTolerances& tol) {
    HarmonicityReport rep;
    const auto& sys = v.system();
    for (double x : grid) {
        if (std::abs(x) < 1e-6 || !v.piece_at(x)) continue;
        const double lhs = 0.5 * sys.diffusion_coefficient(x) * v.second_derivative(x);
        const double rhs = sys.rate() * v.value(x);
        const double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
        ++rep.points_checked;
        if (rel > rep.worst_relative) {
            rep.worst_relative = rel;
            rep.worst_at = x;
        }
    }
    rep.passed = rep.worst_relative <= tol.harmonic;
    return rep;
}

VerificationSummary verify(const ValueFunction& v, const std::vector<double>& grid, const VerificationTolerances& tol) {
    VerificationSummary s;
    s.grid_points = grid.size();
    s.excessivity = excessivity_check(v, grid, tol);
    s.majorant = majorant_check(v, grid, tol);
    s.smooth_fit = smooth_fit_check(v, tol);
    s.harmonicity = harmonicity_check(v, grid, tol);
    s.passed = s.excessivity.passed && s.majorant.passed && s.smooth_fit.passed && s.harmonicity.passed;
    return s;
}

VerificationSummary verify(const ValueFunction& v, const VerificationTolerances& tol) {
    return verify(v, make_check_grid(v), tol);
}

bool kink_obstruction(const Reward& g) { return g.derivative(0.0, Side::Left) < g.derivative(0.0, Side::Right); }

}  // namespace obmstop
