#pragma once

#include "obmstop/params.hpp"

namespace obmstop {

/// Scale function of skew BM: x/(2(1-beta)) for x < 0, x/(2 beta) for x >= 0.
double sbm_scale(SkewParams beta, double x) noexcept;
double sbm_scale_inv(SkewParams beta, double y) noexcept;

/// Speed density of skew BM: 4(1-beta) on x < 0, 4 beta on x > 0.
double sbm_speed_density(SkewParams beta, double x) noexcept;

/// S(SBM) is an OBM with sigma1 = 1/(2(1-beta)), sigma2 = 1/(2 beta).
ObmParams sbm_to_obm(SkewParams beta);

/// For any OBM(sigma1, sigma2): beta = sigma1/(sigma1+sigma2) and
/// factor = 2 sigma1 sigma2/(sigma1+sigma2), so that factor * S(SBM_beta) is
/// that OBM in law.
struct SkewEmbedding {
    SkewParams beta;
    double factor;
};

SkewEmbedding obm_to_sbm(const ObmParams& params);

}  // namespace obmstop
