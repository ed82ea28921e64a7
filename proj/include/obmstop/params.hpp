#pragma once

namespace obmstop {

/// Which one-sided limit to take at a point where a function is not smooth.
enum class Side { Left, Right };

/// Volatility pair of the oscillating Brownian motion:
/// sigma1 on x < 0, sigma2 on x >= 0.
class ObmParams {
public:
    ObmParams(double sigma1, double sigma2);

    double sigma1() const noexcept { return sigma1_; }
    double sigma2() const noexcept { return sigma2_; }

    /// sigma(x) with the x >= 0 convention at the interface.
    double sigma(double x, Side side = Side::Right) const noexcept;
    double variance(double x, Side side = Side::Right) const noexcept {
        const double s = sigma(x, side);
        return s * s;
    }

    /// lambda_1^+ = sqrt(2r)/sigma1 and lambda_2^+ = sqrt(2r)/sigma2.
    double lambda1(double r) const;
    double lambda2(double r) const;

    friend bool operator==(const ObmParams&, const ObmParams&) = default;

private:
    double sigma1_;
    double sigma2_;
};

/// Strictly positive discount rate.
class Discount {
public:
    explicit Discount(double r);
    double value() const noexcept { return r_; }
    friend bool operator==(const Discount&, const Discount&) = default;

private:
    double r_;
};

/// Skewness index beta in (0, 1) of a skew Brownian motion.
class SkewParams {
public:
    explicit SkewParams(double beta);
    double beta() const noexcept { return beta_; }
    friend bool operator==(const SkewParams&, const SkewParams&) = default;

private:
    double beta_;
};

}  // namespace obmstop
