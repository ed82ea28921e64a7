#include "obmstop/reward.hpp"

#include <limits>

#include "obmstop/errors.hpp"

namespace obmstop {

namespace {

bool left_branch(double x, Side side) { return x < 0.0 || (x == 0.0 && side == Side::Left); }

}  // namespace

Reward Reward::linear_plus() { return Reward(Kind::LinearPlus, 1, 1.0, 1.0, std::nullopt); }
Reward Reward::quadratic_plus() { return Reward(Kind::QuadraticPlus, 2, 1.0, 1.0, std::nullopt); }

Reward Reward::skew_linear(SkewParams beta) {
    const double b = beta.beta();
    return Reward(Kind::SkewLinear, 1, 2.0 * (1.0 - b), 2.0 * b, b);
}

Reward Reward::skew_quadratic(SkewParams beta) {
    const double b = beta.beta();
    return Reward(Kind::SkewQuadratic, 2, 2.0 * (1.0 - b), 2.0 * b, b);
}

Reward Reward::from_name(std::string_view name, std::optional<SkewParams> beta) {
    if (name == "linear") return linear_plus();
    if (name == "quad" || name == "quadratic") return quadratic_plus();
    if (name == "linear-skew" || name == "quad-skew") {
        if (!beta) throw DomainError("reward '" + std::string(name) + "' requires beta");
        return name == "linear-skew" ? skew_linear(*beta) : skew_quadratic(*beta);
    }
    throw DomainError("unknown reward '" + std::string(name) + "'");
}

std::string Reward::name() const {
    switch (kind_) {
        case Kind::LinearPlus: return "linear";
        case Kind::QuadraticPlus: return "quad";
        case Kind::SkewLinear: return "linear-skew";
        case Kind::SkewQuadratic: return "quad-skew";
    }
    return "unknown";
}

double Reward::u(double x, Side side) const noexcept {
    return 1.0 + (left_branch(x, side) ? kappa1_ : kappa2_) * x;
}

double Reward::value(double x) const noexcept {
    const double v = u(x, Side::Right);
    if (v <= 0.0) return 0.0;
    return power_ == 1 ? v : v * v;
}

double Reward::derivative(double x, Side side) const noexcept {
    const double v = u(x, side);
    // At the support edge the right derivative of the linear payoff is kappa1.
    if (v < 0.0 || (v == 0.0 && (side == Side::Left || power_ == 2))) return 0.0;
    const double k = left_branch(x, side) ? kappa1_ : kappa2_;
    return power_ == 1 ? k : 2.0 * k * v;
}

double Reward::second_derivative(double x, Side side) const noexcept {
    if (power_ == 1) return 0.0;
    const double v = u(x, side);
    if (v < 0.0 || (v == 0.0 && side == Side::Left)) return 0.0;
    const double k = left_branch(x, side) ? kappa1_ : kappa2_;
    return 2.0 * k * k;
}

double Reward::log_derivative(double x, Side side) const noexcept {
    const double v = u(x, side);
    if (v <= 0.0) return std::numeric_limits<double>::infinity();
    const double k = left_branch(x, side) ? kappa1_ : kappa2_;
    return power_ * k / v;
}

}  // namespace obmstop
