#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <random>

#include <boost/math/special_functions/erf.hpp>

#include "obmstop/params.hpp"
#include "obmstop/region.hpp"
#include "obmstop/reward.hpp"
#include "obmstop/skew.hpp"

namespace obmstop {

enum class Sampler { ExactSbm, Euler };

struct McConfig {
    std::size_t n_paths = 100000;
    double horizon = 0.0;  // 0 means 50/r
    double dt = 1e-4;
    std::uint64_t seed = 20240601;
    Sampler sampler = Sampler::ExactSbm;
    /// Far from the region boundary take steps of size (d/(6 sigma_max))^2,
    /// capped at max_step; within 6 sigma_max sqrt(dt) of it, use dt.
    bool adaptive = true;
    double max_step = 1.0;
    std::size_t threads = 0;  // 0: hardware concurrency
    std::size_t batch_size = 1024;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
    double censored_fraction = 0.0;
    /// expected overshoot of a discretely monitored boundary, 0.5826 sigma_max sqrt(dt)
    double overshoot_scale = 0.0;
    std::uint64_t steps = 0;
};

/// Standard normal conditioned on exceeding a >= 0.
template <class Rng>
double normal_tail(double a, Rng& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    if (a < 5.0) {
        // inverse cdf through erfc; 1 - u keeps the argument in (0, 1]
        const double u = 1.0 - unif(rng);
        return std::sqrt(2.0) * boost::math::erfc_inv(u * boost::math::erfc(a / std::sqrt(2.0)));
    }
    const double alpha = 0.5 * (a + std::sqrt(a * a + 4.0));
    for (;;) {
        const double z = a - std::log(1.0 - unif(rng)) / alpha;
        const double d = z - alpha;
        if (unif(rng) <= std::exp(-0.5 * d * d)) return z;
    }
}

/// One exact draw of skew BM at time t from x.
template <class Rng>
double sbm_step_exact(double x, double t, SkewParams beta, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double st = std::sqrt(t);
    const double y = x + st * normal(rng);
    if ((x > 0.0 && y > 0.0) || (x < 0.0 && y < 0.0)) {
        // no visit to 0 with probability 1 - exp(-2xy/t)
        if (unif(rng) >= std::exp(-2.0 * x * y / t)) return y;
    }
    const double ax = std::abs(x);
    const double m = st * normal_tail(ax / st, rng) - ax;
    return unif(rng) < beta.beta() ? m : -m;
}

/// Exact OBM step through lambda * S(SBM_beta).
template <class Rng>
double obm_step(double x, double t, const ObmParams& params, Rng& rng) {
    const SkewEmbedding e = obm_to_sbm(params);
    const double y = sbm_scale_inv(e.beta, x / e.factor);
    return e.factor * sbm_scale(e.beta, sbm_step_exact(y, t, e.beta, rng));
}

template <class Rng>
double euler_step(double x, double t, const ObmParams& params, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    return x + params.sigma(x) * std::sqrt(t) * normal(rng);
}

/// E[e^{-r tau} g(X_tau)] with tau the first step landing in region (or the
/// horizon). Deterministic for a given seed regardless of the thread count.
McEstimate estimate_value(double x0, const Region& region, const ObmParams& params, Discount r, const Reward& reward,
                          const McConfig& cfg);

/// Writes (path_id, t, x) rows for the first n paths of the estimator.
void dump_paths(std::ostream& os, double x0, const Region& region, const ObmParams& params, Discount r,
                const McConfig& cfg, std::size_t n);

}  // namespace obmstop
