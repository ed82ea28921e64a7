#pragma once

#include <memory>
#include <vector>

#include "obmstop/fundamental.hpp"
#include "obmstop/region.hpp"
#include "obmstop/reward.hpp"
#include "obmstop/solver.hpp"

namespace obmstop {

/// V = coef_psi psi + coef_phi phi on one continuation component.
struct ContinuationPiece {
    Interval interval;
    double coef_psi = 0.0;
    double coef_phi = 0.0;
};

/// Piecewise value function: g on the stopping region, combinations of the
/// fundamental solutions on each continuation component.
class ValueFunction {
public:
    ValueFunction(std::shared_ptr<const FundamentalSystem> system, Reward reward, Region stopping,
                  std::vector<ContinuationPiece> pieces);

    const FundamentalSystem& system() const noexcept { return *system_; }
    std::shared_ptr<const FundamentalSystem> system_ptr() const noexcept { return system_; }
    const Reward& reward() const noexcept { return reward_; }
    const Region& stopping_region() const noexcept { return stopping_; }
    Region continuation_region() const { return stopping_.complement(); }
    const std::vector<ContinuationPiece>& pieces() const noexcept { return pieces_; }

    double value(double x) const;
    /// One-sided derivative; at a region boundary the side picks the component.
    double derivative(double x, Side side = Side::Right) const;
    double second_derivative(double x, Side side = Side::Right) const;

    /// (psi' V - psi V')/S' and (phi V' - phi' V)/S'.
    double lower_representing(double x, Side side = Side::Right) const;
    double upper_representing(double x, Side side = Side::Right) const;

    /// Piece covering x from the given side, or nullptr on the stopping region.
    const ContinuationPiece* piece_at(double x, Side side = Side::Right) const;

private:
    std::shared_ptr<const FundamentalSystem> system_;
    Reward reward_;
    Region stopping_;
    std::vector<ContinuationPiece> pieces_;
};

/// Value function of the problem with payoff `reward` for OBM(params) at rate r.
ValueFunction assemble(const ObmParams& params, Discount r, const Reward& reward, const SolverTolerances& tol = {});

/// Value function for an already classified regime.
ValueFunction assemble(std::shared_ptr<const FundamentalSystem> system, const Reward& reward, const Regime& regime);

/// Generic: classify, then assemble.
ValueFunction assemble(std::shared_ptr<const FundamentalSystem> system, const Reward& reward,
                       const SolverTolerances& tol = {});

/// psi-extension from an arbitrary threshold c: g(c) psi/psi(c) left of c, g right of it.
ValueFunction threshold_candidate(std::shared_ptr<const FundamentalSystem> system, const Reward& reward, double c);

/// The function pasted smoothly to the quadratic payoff at 0 (see zero_fit_candidate).
ValueFunction zero_fit_function(const ObmParams& params, Discount r);

/// The payoff itself: stop everywhere.
ValueFunction stop_everywhere(std::shared_ptr<const FundamentalSystem> system, const Reward& reward);

}  // namespace obmstop
