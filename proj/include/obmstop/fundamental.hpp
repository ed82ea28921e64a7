#pragma once

#include <cmath>
#include <concepts>
#include <limits>

#include "obmstop/errors.hpp"
#include "obmstop/params.hpp"

namespace obmstop {

/// Increasing/decreasing fundamental solutions psi, phi of (d/dm)(d/dS) u = r u
/// for a diffusion that is a Brownian motion with constant coefficient on each
/// half-line, possibly with a scale kink at 0.
///
/// Derivatives are ordinary x-derivatives. At x = 0 the Side argument picks the
/// one-sided limit; the Right branch is the default.
class FundamentalSystem {
public:
    virtual ~FundamentalSystem() = default;

    virtual double rate() const noexcept = 0;

    virtual double psi(double x) const = 0;
    virtual double psi_derivative(double x, Side side = Side::Right) const = 0;
    virtual double phi(double x) const = 0;
    virtual double phi_derivative(double x, Side side = Side::Right) const = 0;

    /// psi'/psi, evaluated without forming psi (safe for large |x|).
    virtual double psi_log_derivative(double x, Side side = Side::Right) const = 0;
    /// phi'/phi, evaluated without forming phi.
    virtual double phi_log_derivative(double x, Side side = Side::Right) const = 0;

    /// S'(x), derivative of the scale function.
    virtual double scale_density(double x, Side side = Side::Right) const = 0;
    /// a(x) such that the generator is (a(x)/2) d^2/dx^2 away from 0.
    virtual double diffusion_coefficient(double x, Side side = Side::Right) const = 0;

    /// psi'' = (2r/a) psi away from the interface.
    double psi_second_derivative(double x, Side side = Side::Right) const {
        return 2.0 * rate() / diffusion_coefficient(x, side) * psi(x);
    }
    double phi_second_derivative(double x, Side side = Side::Right) const {
        return 2.0 * rate() / diffusion_coefficient(x, side) * phi(x);
    }

    /// (psi' phi - psi phi') / S', constant in x.
    double wronskian() const {
        return (psi_derivative(0.0) * phi(0.0) - psi(0.0) * phi_derivative(0.0)) / scale_density(0.0);
    }
};

/// Fundamental solutions of the oscillating Brownian motion.
///
///   psi(x) = exp(l1 x)                         x < 0
///          = b1 exp(l2 x) + b2 exp(-l2 x)      x >= 0
///   phi(x) = a1 exp(-l1 x) + a2 exp(l1 x)      x < 0
///          = exp(-l2 x)                        x >= 0
///
/// with l_i = sqrt(2r)/sigma_i. Values above overflow_threshold are reported as
/// +infinity.
class FundamentalPair final : public FundamentalSystem {
public:
    static constexpr double kDefaultOverflowThreshold = 1e300;

    FundamentalPair(ObmParams params, Discount r, double overflow_threshold = kDefaultOverflowThreshold);

    const ObmParams& params() const noexcept { return params_; }
    double rate() const noexcept override { return r_; }

    double a1() const noexcept { return a1_; }
    double a2() const noexcept { return a2_; }
    double b1() const noexcept { return b1_; }
    double b2() const noexcept { return b2_; }
    double lambda1_plus() const noexcept { return l1_; }
    double lambda1_minus() const noexcept { return -l1_; }
    double lambda2_plus() const noexcept { return l2_; }
    double lambda2_minus() const noexcept { return -l2_; }
    double overflow_threshold() const noexcept { return overflow_threshold_; }

    double psi(double x) const override;
    double psi_derivative(double x, Side side = Side::Right) const override;
    double phi(double x) const override;
    double phi_derivative(double x, Side side = Side::Right) const override;
    double psi_log_derivative(double x, Side side = Side::Right) const override;
    double phi_log_derivative(double x, Side side = Side::Right) const override;
    double scale_density(double, Side = Side::Right) const noexcept override { return 1.0; }
    double diffusion_coefficient(double x, Side side = Side::Right) const noexcept override {
        return params_.variance(x, side);
    }

private:
    double capped(double v) const noexcept;

    ObmParams params_;
    double r_;
    double l1_, l2_;
    double a1_, a2_, b1_, b2_;
    double overflow_threshold_;
};

FundamentalPair fundamental_pair(const ObmParams& params, Discount r);

/// Fundamental solutions of skew Brownian motion with index beta, written in the
/// SBM's own coordinate y. Built from the SBM scale and speed only: exponentials
/// exp(+-sqrt(2r) y) on each side, glued so that psi, phi and their scale
/// derivatives are continuous at 0.
class SkewFundamentalPair final : public FundamentalSystem {
public:
    SkewFundamentalPair(SkewParams beta, Discount r);

    double rate() const noexcept override { return r_; }
    double beta() const noexcept { return beta_; }

    double psi(double y) const override;
    double psi_derivative(double y, Side side = Side::Right) const override;
    double phi(double y) const override;
    double phi_derivative(double y, Side side = Side::Right) const override;
    double psi_log_derivative(double y, Side side = Side::Right) const override;
    double phi_log_derivative(double y, Side side = Side::Right) const override;
    double scale_density(double y, Side side = Side::Right) const noexcept override;
    double diffusion_coefficient(double, Side = Side::Right) const noexcept override { return 1.0; }

private:
    double beta_;
    double r_;
    double theta_;
    double psi_pos_plus_, psi_pos_minus_;   // psi on y >= 0
    double phi_neg_minus_, phi_neg_plus_;   // phi on y < 0
};

/// Anything with a pointwise second derivative.
template <typename F>
concept SecondDifferentiable = requires(const F& f, double x) {
    { f.second_derivative(x) } -> std::convertible_to<double>;
};

/// psi_r viewed as a function object.
struct PsiFunction {
    const FundamentalSystem* system;
    double value(double x) const { return system->psi(x); }
    double derivative(double x) const { return system->psi_derivative(x); }
    double second_derivative(double x) const { return system->psi_second_derivative(x); }
};

/// phi_r viewed as a function object.
struct PhiFunction {
    const FundamentalSystem* system;
    double value(double x) const { return system->phi(x); }
    double derivative(double x) const { return system->phi_derivative(x); }
    double second_derivative(double x) const { return system->phi_second_derivative(x); }
};

/// OBM generator (sigma(x)^2/2) f''(x). Undefined at the interface x = 0.
template <SecondDifferentiable F>
double generator_apply(const ObmParams& params, const F& f, double x) {
    if (!std::isfinite(x)) throw DomainError("generator_apply: non-finite x");
    if (x == 0.0) throw DomainError("generator_apply: generator is not defined pointwise at x = 0");
    return 0.5 * params.variance(x) * f.second_derivative(x);
}

}  // namespace obmstop
