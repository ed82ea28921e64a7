#include "obmstop/skew.hpp"

namespace obmstop {

double sbm_scale(SkewParams beta, double x) noexcept {
    const double b = beta.beta();
    return x < 0.0 ? x / (2.0 * (1.0 - b)) : x / (2.0 * b);
}

double sbm_scale_inv(SkewParams beta, double y) noexcept {
    const double b = beta.beta();
    return y < 0.0 ? 2.0 * (1.0 - b) * y : 2.0 * b * y;
}

double sbm_speed_density(SkewParams beta, double x) noexcept {
    const double b = beta.beta();
    return x < 0.0 ? 4.0 * (1.0 - b) : 4.0 * b;
}

ObmParams sbm_to_obm(SkewParams beta) {
    const double b = beta.beta();
    return ObmParams(1.0 / (2.0 * (1.0 - b)), 1.0 / (2.0 * b));
}

SkewEmbedding obm_to_sbm(const ObmParams& params) {
    const double s1 = params.sigma1();
    const double s2 = params.sigma2();
    return SkewEmbedding{SkewParams(s1 / (s1 + s2)), 2.0 * s1 * s2 / (s1 + s2)};
}

}  // namespace obmstop
