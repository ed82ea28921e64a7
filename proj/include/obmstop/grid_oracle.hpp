#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "obmstop/params.hpp"
#include "obmstop/region.hpp"
#include "obmstop/reward.hpp"

namespace obmstop {

/// Birth-death approximation of OBM on a uniform grid in natural scale:
/// p_up = p_down = 1/2, dt = h^2/sigma(x)^2, and at the interface node
/// dt = h^2 (1/sigma1^2 + 1/sigma2^2)/2. The first node kills (value 0), the
/// last node stops with payoff g.
struct GridModel {
    ObmParams params{1.0, 1.0};
    std::vector<double> xs;
    std::vector<double> dt;
    std::vector<double> p_up;
    std::vector<double> p_down;
    double h = 0.0;
    std::size_t zero_index = 0;
    std::size_t minus_one_index = 0;
    /// xs[i] = (first_cell + i) / cells_per_unit exactly
    long first_cell = 0;
    long cells_per_unit = 0;

    std::size_t size() const noexcept { return xs.size(); }
    double xmin() const { return xs.front(); }
    double xmax() const { return xs.back(); }
};

/// Spacing is 1/m with m = ceil(n / (xmax - xmin)) so that -1 and 0 are nodes;
/// the bracket is widened outward to the nearest node.
GridModel build_chain(const ObmParams& params, double xmin, double xmax, std::size_t n);

enum class GridMethod { PolicyIteration, ValueIteration };

struct GridOptions {
    GridMethod method = GridMethod::PolicyIteration;
    double tolerance = 1e-12;
    double omega = 1.5;            // over-relaxation for value iteration
    std::size_t max_iterations = 2000000;
    bool multilevel = true;        // seed policy iteration from a coarser grid
    std::size_t coarsest = 50;
};

struct GridSolution {
    std::vector<double> values;
    std::vector<bool> stop;
    std::size_t iterations = 0;
    double residual = 0.0;         // sup |V - max(g, continuation)|
    std::string method;
};

/// Fixed point of V = max(g, e^{-r dt} (V_up + V_down)/2).
/// stop flag: g > 0 and V <= g + tolerance.
GridSolution solve_stopping(const GridModel& gm, const Reward& reward, Discount r, const GridOptions& opt = {});

/// Maximal runs of stop flags as closed intervals, boundaries at the midpoints
/// of the gaps to the neighbouring continuation nodes.
Region extract_region(const std::vector<bool>& stop, const std::vector<double>& xs);

/// Number of maximal runs of true flags.
std::size_t count_runs(const std::vector<bool>& stop);

/// Truncation used by default: xmin = -2, xmax = max(3 c_guess + 3, 5).
std::pair<double, double> default_grid_bounds(double c_guess);

void write_grid_csv(std::ostream& os, const GridModel& gm, const Reward& reward, const GridSolution& sol);

}  // namespace obmstop
