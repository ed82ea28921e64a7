#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "obmstop/params.hpp"

namespace obmstop {

/// Payoff g(x) = h(u(x)) with u(x) = 1 + kappa(x) x, kappa = kappa1 on x < 0 and
/// kappa2 on x >= 0, and h(u) = u^+ (linear) or (u^+)^2 (quadratic).
///
/// LinearPlus and QuadraticPlus have kappa1 = kappa2 = 1. The skew variants are
/// the SBM payoffs (1+y)^+ and ((1+y)^+)^2 pulled back to natural scale,
/// g = g_sbm o S^-1, so kappa1 = 2(1-beta), kappa2 = 2 beta and g has a kink at 0.
class Reward {
public:
    enum class Kind { LinearPlus, QuadraticPlus, SkewLinear, SkewQuadratic };

    static Reward linear_plus();
    static Reward quadratic_plus();
    static Reward skew_linear(SkewParams beta);
    static Reward skew_quadratic(SkewParams beta);

    /// Parses "linear", "quad", "linear-skew", "quad-skew". Skew kinds need beta.
    static Reward from_name(std::string_view name, std::optional<SkewParams> beta = std::nullopt);

    Kind kind() const noexcept { return kind_; }
    std::string name() const;
    int power() const noexcept { return power_; }
    double slope(Side side) const noexcept { return side == Side::Left ? kappa1_ : kappa2_; }
    std::optional<double> beta() const noexcept { return beta_; }

    double value(double x) const noexcept;
    double derivative(double x, Side side = Side::Right) const noexcept;
    double second_derivative(double x, Side side = Side::Right) const noexcept;

    /// g'/g on the support, computed without cancellation.
    double log_derivative(double x, Side side = Side::Right) const noexcept;

    /// g = 0 on (-inf, support_start], g > 0 to the right of it.
    double support_start() const noexcept { return -1.0 / kappa1_; }
    bool kinked_at_zero() const noexcept { return kappa1_ != kappa2_; }

private:
    Reward(Kind kind, int power, double kappa1, double kappa2, std::optional<double> beta)
        : kind_(kind), power_(power), kappa1_(kappa1), kappa2_(kappa2), beta_(beta) {}

    double u(double x, Side side) const noexcept;

    Kind kind_;
    int power_;
    double kappa1_;
    double kappa2_;
    std::optional<double> beta_;
};

}  // namespace obmstop
