#include "obmstop/value_function.hpp"

#include <cmath>
#include <limits>

#include "obmstop/errors.hpp"

namespace obmstop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

ValueFunction::ValueFunction(std::shared_ptr<const FundamentalSystem> system, Reward reward, Region stopping,
                             std::vector<ContinuationPiece> pieces)
    : system_(std::move(system)), reward_(reward), stopping_(std::move(stopping)), pieces_(std::move(pieces)) {
    if (!system_) throw DomainError("ValueFunction: null fundamental system");
}

const ContinuationPiece* ValueFunction::piece_at(double x, Side side) const {
    for (const auto& p : pieces_) {
        if (p.interval.contains(x)) return &p;
        if (side == Side::Left && x == p.interval.hi && p.interval.lo < x) return &p;
        if (side == Side::Right && x == p.interval.lo && p.interval.hi > x) return &p;
    }
    return nullptr;
}

double ValueFunction::value(double x) const {
    for (const auto& p : pieces_) {
        if (p.interval.contains(x)) {
            double v = 0.0;
            if (p.coef_psi != 0.0) v += p.coef_psi * system_->psi(x);
            if (p.coef_phi != 0.0) v += p.coef_phi * system_->phi(x);
            return v;
        }
    }
    return reward_.value(x);
}

double ValueFunction::derivative(double x, Side side) const {
    if (const auto* p = piece_at(x, side)) {
        double d = 0.0;
        if (p->coef_psi != 0.0) d += p->coef_psi * system_->psi_derivative(x, side);
        if (p->coef_phi != 0.0) d += p->coef_phi * system_->phi_derivative(x, side);
        return d;
    }
    return reward_.derivative(x, side);
}

double ValueFunction::second_derivative(double x, Side side) const {
    if (const auto* p = piece_at(x, side)) {
        double d = 0.0;
        if (p->coef_psi != 0.0) d += p->coef_psi * system_->psi_second_derivative(x, side);
        if (p->coef_phi != 0.0) d += p->coef_phi * system_->phi_second_derivative(x, side);
        return d;
    }
    return reward_.second_derivative(x, side);
}

double ValueFunction::lower_representing(double x, Side side) const {
    return (system_->psi_derivative(x, side) * value(x) - system_->psi(x) * derivative(x, side)) /
           system_->scale_density(x, side);
}

double ValueFunction::upper_representing(double x, Side side) const {
    return (system_->phi(x) * derivative(x, side) - system_->phi_derivative(x, side) * value(x)) /
           system_->scale_density(x, side);
}

ValueFunction assemble(std::shared_ptr<const FundamentalSystem> system, const Reward& reward, const Regime& regime) {
    const auto& sys = *system;
    std::vector<ContinuationPiece> pieces;
    if (regime.tag == RegimeTag::Bubble) {
        const auto& b = *regime.bubble;
        pieces.push_back({Interval::open(-kInf, b.c1), b.k, 0.0});
        if (b.c2 < b.c3) pieces.push_back({Interval::open(b.c2, b.c3), b.a, b.b});
    } else {
        const double c = regime.thresholds.front();
        pieces.push_back({Interval::open(-kInf, c), reward.value(c) / sys.psi(c), 0.0});
    }
    return ValueFunction(std::move(system), reward, regime.stopping_region(), std::move(pieces));
}

ValueFunction assemble(const ObmParams& params, Discount r, const Reward& reward, const SolverTolerances& tol) {
    const Regime regime = classify_regime(params, r, reward, tol);
    return assemble(std::make_shared<FundamentalPair>(params, r), reward, regime);
}

ValueFunction assemble(std::shared_ptr<const FundamentalSystem> system, const Reward& reward,
                       const SolverTolerances& tol) {
    const Regime regime = classify_regime(*system, reward, tol);
    return assemble(std::move(system), reward, regime);
}

ValueFunction threshold_candidate(std::shared_ptr<const FundamentalSystem> system, const Reward& reward, double c) {
    if (!std::isfinite(c)) throw DomainError("threshold_candidate: non-finite threshold");
    const double k = reward.value(c) / system->psi(c);
    std::vector<ContinuationPiece> pieces{{Interval::open(-kInf, c), k, 0.0}};
    return ValueFunction(std::move(system), reward, Region::right_ray(c), std::move(pieces));
}

ValueFunction zero_fit_function(const ObmParams& params, Discount r) {
    const ZeroFitReport rep = zero_fit_candidate(params, r);
    auto fp = std::make_shared<FundamentalPair>(params, r);
    // On x < 0: e^{-l x} = (phi - a2 psi)/a1.
    const double cphi = rep.b / fp->a1();
    const double cpsi = rep.a - rep.b * fp->a2() / fp->a1();
    std::vector<ContinuationPiece> pieces{{Interval::open(-kInf, 0.0), cpsi, cphi}};
    return ValueFunction(fp, Reward::quadratic_plus(), Region::right_ray(0.0), std::move(pieces));
}

ValueFunction stop_everywhere(std::shared_ptr<const FundamentalSystem> system, const Reward& reward) {
    return ValueFunction(std::move(system), reward, Region::whole_line(), {});
}

}  // namespace obmstop
