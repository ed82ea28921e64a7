#include "obmstop/fundamental.hpp"

#include <cmath>
#include <limits>

namespace obmstop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool left_branch(double x, Side side) { return x < 0.0 || (x == 0.0 && side == Side::Left); }

}  // namespace

FundamentalPair::FundamentalPair(ObmParams params, Discount r, double overflow_threshold)
    : params_(params),
      r_(r.value()),
      l1_(params.lambda1(r.value())),
      l2_(params.lambda2(r.value())),
      a1_(0.5 * (1.0 + params.sigma1() / params.sigma2())),
      a2_(0.5 * (1.0 - params.sigma1() / params.sigma2())),
      b1_(0.5 * (1.0 + params.sigma2() / params.sigma1())),
      b2_(0.5 * (1.0 - params.sigma2() / params.sigma1())),
      overflow_threshold_(overflow_threshold) {
    if (!(overflow_threshold > 0.0)) throw DomainError("overflow threshold must be positive");
}

FundamentalPair fundamental_pair(const ObmParams& params, Discount r) { return FundamentalPair(params, r); }

double FundamentalPair::capped(double v) const noexcept {
    return std::abs(v) > overflow_threshold_ ? std::copysign(kInf, v) : v;
}

double FundamentalPair::psi(double x) const {
    if (x < 0.0) return std::exp(l1_ * x);
    return capped(b1_ * std::exp(l2_ * x) + b2_ * std::exp(-l2_ * x));
}

double FundamentalPair::psi_derivative(double x, Side side) const {
    if (left_branch(x, side)) return l1_ * std::exp(l1_ * x);
    return capped(l2_ * (b1_ * std::exp(l2_ * x) - b2_ * std::exp(-l2_ * x)));
}

double FundamentalPair::phi(double x) const {
    if (x < 0.0) return capped(a1_ * std::exp(-l1_ * x) + a2_ * std::exp(l1_ * x));
    return std::exp(-l2_ * x);
}

double FundamentalPair::phi_derivative(double x, Side side) const {
    if (left_branch(x, side)) return capped(l1_ * (-a1_ * std::exp(-l1_ * x) + a2_ * std::exp(l1_ * x)));
    return -l2_ * std::exp(-l2_ * x);
}

double FundamentalPair::psi_log_derivative(double x, Side side) const {
    if (left_branch(x, side)) return l1_;
    const double e = std::exp(-2.0 * l2_ * x);
    return l2_ * (b1_ - b2_ * e) / (b1_ + b2_ * e);
}

double FundamentalPair::phi_log_derivative(double x, Side side) const {
    if (!left_branch(x, side)) return -l2_;
    const double e = std::exp(2.0 * l1_ * x);
    return l1_ * (-a1_ + a2_ * e) / (a1_ + a2_ * e);
}

// SBM in its own coordinate: a = 1 on both sides, S'(y) = 1/(2(1-beta)) for
// y < 0 and 1/(2 beta) for y >= 0. Continuity of psi and of dpsi/dS at 0 gives
// psi = exp(theta y) (y<0), (1/(2b)) e^{theta y} + ((2b-1)/(2b)) e^{-theta y} (y>=0),
// and symmetrically for phi.
SkewFundamentalPair::SkewFundamentalPair(SkewParams beta, Discount r)
    : beta_(beta.beta()),
      r_(r.value()),
      theta_(std::sqrt(2.0 * r.value())),
      psi_pos_plus_(1.0 / (2.0 * beta.beta())),
      psi_pos_minus_((2.0 * beta.beta() - 1.0) / (2.0 * beta.beta())),
      phi_neg_minus_(1.0 / (2.0 * (1.0 - beta.beta()))),
      phi_neg_plus_((1.0 - 2.0 * beta.beta()) / (2.0 * (1.0 - beta.beta()))) {}

double SkewFundamentalPair::psi(double y) const {
    if (y < 0.0) return std::exp(theta_ * y);
    return psi_pos_plus_ * std::exp(theta_ * y) + psi_pos_minus_ * std::exp(-theta_ * y);
}

double SkewFundamentalPair::psi_derivative(double y, Side side) const {
    if (left_branch(y, side)) return theta_ * std::exp(theta_ * y);
    return theta_ * (psi_pos_plus_ * std::exp(theta_ * y) - psi_pos_minus_ * std::exp(-theta_ * y));
}

double SkewFundamentalPair::phi(double y) const {
    if (y < 0.0) return phi_neg_minus_ * std::exp(-theta_ * y) + phi_neg_plus_ * std::exp(theta_ * y);
    return std::exp(-theta_ * y);
}

double SkewFundamentalPair::phi_derivative(double y, Side side) const {
    if (left_branch(y, side)) {
        return theta_ * (-phi_neg_minus_ * std::exp(-theta_ * y) + phi_neg_plus_ * std::exp(theta_ * y));
    }
    return -theta_ * std::exp(-theta_ * y);
}

double SkewFundamentalPair::psi_log_derivative(double y, Side side) const {
    if (left_branch(y, side)) return theta_;
    const double e = std::exp(-2.0 * theta_ * y);
    return theta_ * (psi_pos_plus_ - psi_pos_minus_ * e) / (psi_pos_plus_ + psi_pos_minus_ * e);
}

double SkewFundamentalPair::phi_log_derivative(double y, Side side) const {
    if (!left_branch(y, side)) return -theta_;
    const double e = std::exp(2.0 * theta_ * y);
    return theta_ * (-phi_neg_minus_ + phi_neg_plus_ * e) / (phi_neg_minus_ + phi_neg_plus_ * e);
}

double SkewFundamentalPair::scale_density(double y, Side side) const noexcept {
    return left_branch(y, side) ? 1.0 / (2.0 * (1.0 - beta_)) : 1.0 / (2.0 * beta_);
}

}  // namespace obmstop
