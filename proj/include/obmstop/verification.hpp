#pragma once

#include <string>
#include <vector>

#include "obmstop/value_function.hpp"

namespace obmstop {

struct VerificationTolerances {
    double monotone_slack = 1e-10;  // relative to the representing values compared
    double majorant = 1e-12;        // relative to max(1, g)
    double smooth_fit = 1e-9;
    double harmonic = 1e-9;         // relative to max(1, r V)
    double kink = 1e-10;
};

struct ExcessivityReport {
    bool lower_nondecreasing = true;
    double worst_lower_drop = 0.0;
    double worst_lower_drop_at = 0.0;
    bool upper_nonincreasing = true;
    double worst_upper_rise = 0.0;
    double worst_upper_rise_at = 0.0;
    /// lower representing function vanishes left of the first boundary
    bool lower_zero_left = true;
    bool upper_nonnegative = true;
    double kink_gap = 0.0;  // V'(0-) - V'(0+)
    bool kink_ok = true;
    bool passed = true;
};

struct MajorantReport {
    double worst_gap = 0.0;  // min over grid of V - g
    double worst_at = 0.0;
    bool passed = true;
};

struct SmoothFitReport {
    std::vector<double> boundaries;
    std::vector<double> value_residuals;
    std::vector<double> derivative_residuals;
    double max_residual = 0.0;
    bool passed = true;
};

struct HarmonicityReport {
    double worst_relative = 0.0;
    double worst_at = 0.0;
    std::size_t points_checked = 0;
    bool passed = true;
};

struct VerificationSummary {
    ExcessivityReport excessivity;
    MajorantReport majorant;
    SmoothFitReport smooth_fit;
    HarmonicityReport harmonicity;
    std::size_t grid_points = 0;
    bool passed = true;
};

/// Points on [support_start + 1e-6, max boundary + margin], uniform plus
/// geometric refinement towards the boundaries, 0 and the support start. Points
/// within 1e-9 of any of those are dropped.
std::vector<double> make_check_grid(const ValueFunction& v, std::size_t n = 2000, double margin = 3.0);

ExcessivityReport excessivity_check(const ValueFunction& v, const std::vector<double>& grid,
                                    const VerificationTolerances& tol = {});
MajorantReport majorant_check(const ValueFunction& v, const std::vector<double>& grid,
                              const VerificationTolerances& tol = {});
SmoothFitReport smooth_fit_check(const ValueFunction& v, const VerificationTolerances& tol = {});
HarmonicityReport harmonicity_check(const ValueFunction& v, const std::vector<double>& grid,
                                    const VerificationTolerances& tol = {});

VerificationSummary verify(const ValueFunction& v, const VerificationTolerances& tol = {});
VerificationSummary verify(const ValueFunction& v, const std::vector<double>& grid,
                           const VerificationTolerances& tol = {});

/// g'(0-) < g'(0+): a convex kink at 0 that no excessive majorant equal to g
/// at 0 can have, so 0 is never a stopping point.
bool kink_obstruction(const Reward& g);

}  // namespace obmstop
