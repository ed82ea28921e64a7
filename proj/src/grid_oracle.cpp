#include "obmstop/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "obmstop/csv.hpp"
#include "obmstop/errors.hpp"

namespace obmstop {

namespace {

GridModel make_model(const ObmParams& params, long first_cell, long last_cell, long per_unit) {
    GridModel gm;
    gm.params = params;
    gm.first_cell = first_cell;
    gm.cells_per_unit = per_unit;
    gm.h = 1.0 / static_cast<double>(per_unit);
    const std::size_t n = static_cast<std::size_t>(last_cell - first_cell) + 1;
    gm.xs.resize(n);
    gm.dt.resize(n);
    gm.p_up.assign(n, 0.5);
    gm.p_down.assign(n, 0.5);
    const double s1sq = params.sigma1() * params.sigma1();
    const double s2sq = params.sigma2() * params.sigma2();
    const double h2 = gm.h * gm.h;
    for (std::size_t i = 0; i < n; ++i) {
        const long cell = first_cell + static_cast<long>(i);
        const double x = static_cast<double>(cell) / static_cast<double>(per_unit);
        gm.xs[i] = x;
        if (cell == 0) {
            gm.dt[i] = 0.5 * h2 * (1.0 / s1sq + 1.0 / s2sq);
            gm.zero_index = i;
        } else {
            gm.dt[i] = h2 / (x < 0.0 ? s1sq : s2sq);
        }
        if (cell == -per_unit) gm.minus_one_index = i;
    }
    gm.p_up.front() = gm.p_down.front() = 0.0;
    gm.p_up.back() = gm.p_down.back() = 0.0;
    return gm;
}

bool can_coarsen(const GridModel& gm, std::size_t coarsest) {
    const std::size_t cells = gm.size() - 1;
    return gm.cells_per_unit % 2 == 0 && gm.first_cell % 2 == 0 && cells % 2 == 0 && cells / 2 >= coarsest;
}

GridModel coarsen(const GridModel& gm) {
    const long last = gm.first_cell + static_cast<long>(gm.size()) - 1;
    return make_model(gm.params, gm.first_cell / 2, last / 2, gm.cells_per_unit / 2);
}

struct Problem {
    std::vector<double> g;
    std::vector<double> half_discount;  // e^{-r dt}/2
};

Problem make_problem(const GridModel& gm, const Reward& reward, Discount r) {
    Problem p;
    const std::size_t n = gm.size();
    p.g.resize(n);
    p.half_discount.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.g[i] = reward.value(gm.xs[i]);
        p.half_discount[i] = 0.5 * std::exp(-r.value() * gm.dt[i]);
    }
    p.g.front() = 0.0;  // killed
    return p;
}

double continuation(const Problem& p, const std::vector<double>& v, std::size_t i) {
    return p.half_discount[i] * (v[i - 1] + v[i + 1]);
}

double bellman_residual(const Problem& p, const std::vector<double>& v) {
    double res = std::abs(v.front()) + std::abs(v.back() - p.g.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        res = std::max(res, std::abs(v[i] - std::max(p.g[i], continuation(p, v, i))));
    }
    return res;
}

// Solve the linear system of a fixed policy with the Thomas algorithm.
void evaluate_policy(const Problem& p, const std::vector<bool>& stop, std::vector<double>& v) {
    const std::size_t n = p.g.size();
    std::vector<double> c(n, 0.0), d(n, 0.0);
    // row i: -h_i v_{i-1} + v_i - h_i v_{i+1} = rhs_i
    auto lower = [&](std::size_t i) { return (i == 0 || i + 1 == n || stop[i]) ? 0.0 : -p.half_discount[i]; };
    auto rhs = [&](std::size_t i) { return (i == 0) ? 0.0 : (i + 1 == n || stop[i]) ? p.g[i] : 0.0; };
    c[0] = lower(0);
    d[0] = rhs(0);
    for (std::size_t i = 1; i < n; ++i) {
        const double a = lower(i);
        const double denom = 1.0 - a * c[i - 1];
        c[i] = lower(i) / denom;
        d[i] = (rhs(i) - a * d[i - 1]) / denom;
    }
    v.assign(n, 0.0);
    v[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) v[i] = d[i] - c[i] * v[i + 1];
}

GridSolution policy_iteration(const GridModel& gm, const Problem& p, std::vector<bool> stop, const GridOptions& opt) {
    const std::size_t n = gm.size();
    GridSolution sol;
    sol.method = "policy-iteration";
    stop.front() = false;
    stop.back() = true;
    for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
        evaluate_policy(p, stop, sol.values);
        bool changed = false;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double cont = continuation(p, sol.values, i);
            const bool s = p.g[i] > cont || (p.g[i] == cont && stop[i]);
            if (s != stop[i]) {
                stop[i] = s;
                changed = true;
            }
        }
        sol.iterations += 1;
        if (!changed) {
            sol.residual = bellman_residual(p, sol.values);
            return sol;
        }
    }
    throw ConvergenceError("policy iteration did not converge", {bellman_residual(p, sol.values)},
                           static_cast<int>(opt.max_iterations));
}

GridSolution multilevel_policy_iteration(const GridModel& gm, const Reward& reward, Discount r, const GridOptions& opt) {
    const Problem p = make_problem(gm, reward, r);
    std::vector<bool> seed(gm.size());
    std::size_t coarse_iterations = 0;
    if (opt.multilevel && can_coarsen(gm, opt.coarsest)) {
        const GridModel coarse = coarsen(gm);
        const GridSolution cs = multilevel_policy_iteration(coarse, reward, r, opt);
        coarse_iterations = cs.iterations;
        // Coarse flags here are "policy stops", not the reported stop flags.
        const Problem cp = make_problem(coarse, reward, r);
        std::vector<bool> cstop(coarse.size());
        for (std::size_t j = 1; j + 1 < coarse.size(); ++j) cstop[j] = cp.g[j] >= continuation(cp, cs.values, j);
        cstop.back() = true;
        for (std::size_t i = 0; i < gm.size(); ++i) {
            seed[i] = (i % 2 == 0) ? cstop[i / 2] : (cstop[i / 2] && cstop[i / 2 + 1]);
        }
    } else {
        for (std::size_t i = 0; i < gm.size(); ++i) seed[i] = p.g[i] > 0.0;
    }
    GridSolution sol = policy_iteration(gm, p, std::move(seed), opt);
    sol.iterations += coarse_iterations;
    return sol;
}

GridSolution value_iteration(const GridModel& gm, const Problem& p, double omega, const GridOptions& opt) {
    const std::size_t n = gm.size();
    GridSolution sol;
    sol.method = omega == 1.0 ? "value-iteration" : "value-iteration-sor";
    auto& v = sol.values;
    v = p.g;
    for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
        double change = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double target = std::max(p.g[i], continuation(p, v, i));
            const double next = std::max(p.g[i], v[i] + omega * (target - v[i]));
            change = std::max(change, std::abs(next - v[i]));
            v[i] = next;
        }
        sol.iterations = it;
        if (!std::isfinite(change)) break;
        if (change <= opt.tolerance) {
            sol.residual = bellman_residual(p, v);
            return sol;
        }
    }
    throw ConvergenceError("value iteration did not converge", {bellman_residual(p, v)},
                           static_cast<int>(opt.max_iterations));
}

}  // namespace

GridModel build_chain(const ObmParams& params, double xmin, double xmax, std::size_t n) {
    if (!std::isfinite(xmin) || !std::isfinite(xmax)) throw DomainError("build_chain: non-finite bracket");
    if (!(xmin < -1.0 && xmax > 0.0)) throw DomainError("build_chain: requires xmin < -1 < 0 < xmax");
    if (n < 100) throw DomainError("build_chain: requires n >= 100");
    const long per_unit = static_cast<long>(std::ceil(static_cast<double>(n) / (xmax - xmin)));
    const long first = static_cast<long>(std::floor(xmin * static_cast<double>(per_unit) + 1e-9));
    const long last = static_cast<long>(std::ceil(xmax * static_cast<double>(per_unit) - 1e-9));
    return make_model(params, first, last, per_unit);
}

GridSolution solve_stopping(const GridModel& gm, const Reward& reward, Discount r, const GridOptions& opt) {
    if (gm.size() < 3) throw DomainError("solve_stopping: grid too small");
    GridSolution sol;
    if (opt.method == GridMethod::PolicyIteration) {
        sol = multilevel_policy_iteration(gm, reward, r, opt);
    } else {
        const Problem p = make_problem(gm, reward, r);
        try {
            sol = value_iteration(gm, p, opt.omega, opt);
        } catch (const ConvergenceError&) {
            if (opt.omega == 1.0) throw;
            sol = value_iteration(gm, p, 1.0, opt);
        }
    }
    sol.stop.assign(gm.size(), false);
    for (std::size_t i = 0; i < gm.size(); ++i) {
        const double g = i == 0 ? 0.0 : reward.value(gm.xs[i]);
        sol.stop[i] = g > 0.0 && sol.values[i] <= g + opt.tolerance;
    }
    return sol;
}

Region extract_region(const std::vector<bool>& stop, const std::vector<double>& xs) {
    if (stop.size() != xs.size()) throw DomainError("extract_region: size mismatch");
    std::vector<Interval> parts;
    const std::size_t n = xs.size();
    std::size_t i = 0;
    while (i < n) {
        if (!stop[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && stop[j + 1]) ++j;
        const double lo = i == 0 ? xs.front() : 0.5 * (xs[i - 1] + xs[i]);
        const double hi = j + 1 == n ? xs.back() : 0.5 * (xs[j] + xs[j + 1]);
        parts.push_back(Interval::closed(lo, hi));
        i = j + 1;
    }
    return Region(std::move(parts));
}

std::size_t count_runs(const std::vector<bool>& stop) {
    std::size_t runs = 0;
    for (std::size_t i = 0; i < stop.size(); ++i) {
        if (stop[i] && (i == 0 || !stop[i - 1])) ++runs;
    }
    return runs;
}

std::pair<double, double> default_grid_bounds(double c_guess) {
    return {-2.0, std::max(3.0 * c_guess + 3.0, 5.0)};
}

void write_grid_csv(std::ostream& os, const GridModel& gm, const Reward& reward, const GridSolution& sol) {
    write_csv_row(os, {"x", "g", "V", "stop"});
    for (std::size_t i = 0; i < gm.size(); ++i) {
        write_csv_row(os, {format_double(gm.xs[i]), format_double(reward.value(gm.xs[i])), format_double(sol.values[i]),
                           sol.stop[i] ? "1" : "0"});
    }
}

}  // namespace obmstop
