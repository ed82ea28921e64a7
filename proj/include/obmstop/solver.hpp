#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obmstop/fundamental.hpp"
#include "obmstop/region.hpp"
#include "obmstop/representing.hpp"
#include "obmstop/reward.hpp"

namespace obmstop {

struct SolverTolerances {
    double root = 1e-12;      // absolute, in x
    double residual = 1e-10;  // smooth-fit residuals
    double r0 = 1e-8;         // absolute, in r
    int newton_iterations = 60;
};

/// Unique root of h_minus on (-1, inf). Negative roots use the closed form
/// sigma1/sqrt(2r) - 1.
double solve_linear_threshold(const ObmParams& params, Discount r, const SolverTolerances& tol = {});

/// All roots of g_minus on (-1, inf), ascending.
std::vector<double> g_minus_roots(const ObmParams& params, Discount r, const SolverTolerances& tol = {});

/// Threshold of the one-sided quadratic problem. Throws StateError in the
/// bubble regime.
double solve_quadratic_one_sided(const ObmParams& params, Discount r, const SolverTolerances& tol = {});

/// Disconnected continuation region (-inf, c1) U (c2, c3).
/// V = k psi on (-inf, c1), a psi + b phi on (c2, c3), g elsewhere.
struct BubbleSolution {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double k = 0.0;
    double a = 0.0;
    double b = 0.0;
    /// value and derivative mismatch at c1, c2, c3 (6 entries)
    std::vector<double> residuals;
    std::string method;
    int iterations = 0;

    double max_residual() const;
};

/// Bubble for the quadratic payoff. Requires sigma2^2 > 2 sigma1^2 and
/// r in (2 sigma1^2, sigma2^2); returns nullopt when no bubble exists.
std::optional<BubbleSolution> solve_bubble(const ObmParams& params, Discount r, const SolverTolerances& tol = {});

/// Same system for any fundamental system and payoff. Looks for a bubble
/// whose left end lies on the last increasing piece of the lower representing
/// function left of 0 and whose right end lies on its last increasing piece.
std::optional<BubbleSolution> solve_bubble(const FundamentalSystem& sys, const Reward& g,
                                           const SolverTolerances& tol = {});

/// Smallest r in (2 sigma1^2, sigma2^2) at which the bubble appears.
double find_r0(const ObmParams& params, const SolverTolerances& tol = {});

enum class RegimeTag { OneSidedNegativeC, OneSidedZeroC, OneSidedPositiveC, Bubble };

std::string to_string(RegimeTag tag);

struct Regime {
    RegimeTag tag;
    /// {c} for one-sided regimes, {c1, c2, c3} for a bubble.
    std::vector<double> thresholds;
    std::optional<BubbleSolution> bubble;

    Region stopping_region() const;
    Region continuation_region() const { return stopping_region().complement(); }
};

Regime classify_regime(const ObmParams& params, Discount r, const Reward& reward, const SolverTolerances& tol = {});

/// Generic classification: bubble if solve_bubble succeeds, otherwise the
/// largest crossing of the lower representing function.
Regime classify_regime(const FundamentalSystem& sys, const Reward& reward, const SolverTolerances& tol = {});

/// Candidate that pastes A e^{l x} + B e^{-l x} (l = sqrt(2r)/sigma1) to the
/// quadratic payoff at 0 in value and derivative, i.e. a stopping boundary at 0.
/// It is never the value function.
struct ZeroFitReport {
    double lambda = 0.0;
    double a = 0.0;
    double b = 0.0;
    double probe = 0.0;
    /// r (1+x)^2 - sigma2^2 at the probe: sign of the representing derivative
    double drift_at_probe = 0.0;
    /// lower representing function of the candidate at 0 and at the probe
    double representing_at_zero = 0.0;
    double representing_at_probe = 0.0;
    bool decreasing_right_of_zero = false;
    bool negative_coefficient = false;
    bool unbounded_below = false;
    bool not_excessive = false;
};

ZeroFitReport zero_fit_candidate(const ObmParams& params, Discount r, double probe = 0.01);

}  // namespace obmstop
