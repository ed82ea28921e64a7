#pragma once

#include <vector>

#include "obmstop/fundamental.hpp"
#include "obmstop/reward.hpp"

namespace obmstop {

/// Representing functions of a payoff g with respect to a fundamental system:
///   lower: (psi' g - psi g') / S'     (increasing <=> excessive on the left)
///   upper: (phi g' - phi' g) / S'
/// At a kink the Side argument selects the one-sided derivative.
double lower_representing(const FundamentalSystem& sys, const Reward& g, double x, Side side = Side::Right);
double upper_representing(const FundamentalSystem& sys, const Reward& g, double x, Side side = Side::Right);

/// psi'/psi - g'/g. Same sign as lower_representing on the support of g; -inf at
/// the support edge.
double lower_sign_function(const FundamentalSystem& sys, const Reward& g, double x, Side side = Side::Right);

/// Linear payoff (1+x)^+ on OBM, x > -1.
double h_minus(const FundamentalPair& fp, double x);
double h_plus(const FundamentalPair& fp, double x);
/// Quadratic payoff ((1+x)^+)^2 on OBM, x > -1.
double g_minus(const FundamentalPair& fp, double x);
double g_plus(const FundamentalPair& fp, double x);

/// r g(x) - (a(x)/2) g''(x): the sign of the derivative of lower_representing.
double representing_drift(const FundamentalSystem& sys, const Reward& g, double x, Side side = Side::Right);

/// Open interval on which lower_representing is strictly monotone.
struct MonotonePiece {
    double lo;
    double hi;
    bool increasing;
};

/// Partition of (support_start, +inf) into monotone pieces of the lower
/// representing function. Breakpoints are 0 and the sign changes of
/// representing_drift on each side.
std::vector<MonotonePiece> monotone_pieces(const FundamentalSystem& sys, const Reward& g);

/// Sign change of the lower representing function. `jump` marks a change that
/// happens across the discontinuity at 0 rather than through a zero.
struct Crossing {
    double x;
    bool jump;
};

/// All sign changes on (support_start, +inf), ascending, located to abs_tol.
std::vector<Crossing> lower_crossings(const FundamentalSystem& sys, const Reward& g, double abs_tol = 1e-12);

}  // namespace obmstop
