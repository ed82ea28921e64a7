#include "obmstop/params.hpp"

#include <cmath>
#include <string>

#include "obmstop/errors.hpp"

namespace obmstop {

namespace {

void require_positive_finite(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw DomainError(std::string(name) + " must be finite and > 0, got " + std::to_string(v));
    }
}

}  // namespace

ObmParams::ObmParams(double sigma1, double sigma2) : sigma1_(sigma1), sigma2_(sigma2) {
    require_positive_finite(sigma1, "sigma1");
    require_positive_finite(sigma2, "sigma2");
}

double ObmParams::sigma(double x, Side side) const noexcept {
    if (x < 0.0) return sigma1_;
    if (x > 0.0) return sigma2_;
    return side == Side::Left ? sigma1_ : sigma2_;
}

double ObmParams::lambda1(double r) const { return std::sqrt(2.0 * r) / sigma1_; }
double ObmParams::lambda2(double r) const { return std::sqrt(2.0 * r) / sigma2_; }

Discount::Discount(double r) : r_(r) { require_positive_finite(r, "discount rate r"); }

SkewParams::SkewParams(double beta) : beta_(beta) {
    if (!std::isfinite(beta) || beta <= 0.0 || beta >= 1.0) {
        throw DomainError("skewness beta must lie in (0, 1), got " + std::to_string(beta));
    }
}

}  // namespace obmstop
