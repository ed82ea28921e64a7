#include "doctest.h"

#include <cmath>
#include <random>

#include "obmstop/grid_oracle.hpp"
#include "obmstop/skew.hpp"
#include "obmstop/value_function.hpp"
#include "obmstop/verification.hpp"

using namespace obmstop;

TEST_CASE("assembled value functions: closed forms") {
    SUBCASE("standard BM, quadratic payoff, r = 2") {
        const ValueFunction v = assemble(ObmParams(1.0, 1.0), Discount(2.0), Reward::quadratic_plus());
        CHECK(v.stopping_region() == Region::right_ray(0.0));
        CHECK(v.value(-1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
        CHECK(v.value(-0.3) == doctest::Approx(std::exp(-0.6)).epsilon(1e-14));
        CHECK(v.value(0.5) == 2.25);
    }
    SUBCASE("sigma = (1, 2), r = 4.5") {
        const auto fp = fundamental_pair(ObmParams(1.0, 2.0), Discount(4.5));
        const ValueFunction v = assemble(ObmParams(1.0, 2.0), Discount(4.5), Reward::quadratic_plus());
        for (double x : {-3.0, -1.0, -0.5, -0.34}) {
            CHECK(v.value(x) == doctest::Approx(fp.psi(x) * (4.0 / 9.0) / fp.psi(-1.0 / 3.0)).epsilon(1e-13));
        }
    }
    SUBCASE("linear payoff, sigma = (1, 2), r = 0.5") {
        const auto fp = fundamental_pair(ObmParams(1.0, 2.0), Discount(0.5));
        const ValueFunction v = assemble(ObmParams(1.0, 2.0), Discount(0.5), Reward::linear_plus());
        CHECK(v.stopping_region() == Region::right_ray(0.0));
        for (double x : {-2.0, -0.5, -0.01}) CHECK(v.value(x) == doctest::Approx(fp.psi(x)).epsilon(1e-14));
    }
}

TEST_CASE("verification of assembled value functions") {
    struct Case {
        double s1, s2, r;
        Reward g;
    };
    const Case cases[] = {
        {1.0, 2.0, 1.5, Reward::quadratic_plus()}, {1.0, 2.0, 2.0, Reward::quadratic_plus()},
        {1.0, 2.0, 2.1, Reward::quadratic_plus()}, {1.0, 2.0, 3.0, Reward::quadratic_plus()},
        {1.0, 2.0, 3.99, Reward::quadratic_plus()}, {1.0, 2.0, 4.5, Reward::quadratic_plus()},
        {1.0, 1.2, 2.0, Reward::quadratic_plus()}, {2.0, 1.0, 8.0, Reward::quadratic_plus()},
        {1.0, 2.0, 0.2, Reward::linear_plus()},    {1.0, 2.0, 0.5, Reward::linear_plus()},
        {2.0, 2.0 / 3.0, 1.0, Reward::skew_linear(SkewParams(0.75))},
        {2.0, 2.0 / 3.0, 0.2, Reward::skew_linear(SkewParams(0.75))},
        {2.0, 2.0 / 3.0, 3.0, Reward::skew_quadratic(SkewParams(0.75))},
    };
    for (const auto& c : cases) {
        CAPTURE(c.s1);
        CAPTURE(c.s2);
        CAPTURE(c.r);
        CAPTURE(c.g.name());
        const ValueFunction v = assemble(ObmParams(c.s1, c.s2), Discount(c.r), c.g);
        const VerificationSummary s = verify(v);
        CHECK(s.excessivity.passed);
        CHECK(s.majorant.passed);
        CHECK(s.smooth_fit.passed);
        CHECK(s.smooth_fit.max_residual < 1e-9);
        CHECK(s.harmonicity.passed);
        CHECK(s.excessivity.kink_gap >= -1e-10);
        CHECK(s.passed);
    }
}

TEST_CASE("verification over random parameters") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> sd(0.3, 3.0), rd(0.05, 15.0);
    for (int t = 0; t < 60; ++t) {
        const ObmParams p(sd(rng), sd(rng));
        const Discount r(rd(rng));
        const Reward g = t % 2 ? Reward::linear_plus() : Reward::quadratic_plus();
        CAPTURE(p.sigma1());
        CAPTURE(p.sigma2());
        CAPTURE(r.value());
        CAPTURE(g.name());
        CHECK(verify(assemble(p, r, g)).passed);
    }
}

TEST_CASE("verification rejects non-optimal candidates") {
    const ObmParams p(1.0, 2.0);
    SUBCASE("function pasted smoothly at 0") {
        for (double r : {2.5, 3.0, 3.5}) {
            CAPTURE(r);
            const VerificationSummary s = verify(zero_fit_function(p, Discount(r)));
            CHECK_FALSE(s.excessivity.passed);
            CHECK_FALSE(s.excessivity.lower_nondecreasing);
            CHECK(s.excessivity.worst_lower_drop_at >= 0.0);
        }
    }
    SUBCASE("payoff itself, standard BM, r = 1") {
        auto fp = std::make_shared<FundamentalPair>(ObmParams(1.0, 1.0), Discount(1.0));
        const VerificationSummary s = verify(stop_everywhere(fp, Reward::quadratic_plus()));
        CHECK(s.majorant.passed);
        CHECK_FALSE(s.excessivity.passed);
    }
    SUBCASE("threshold moved right by 0.1") {
        auto fp = std::make_shared<FundamentalPair>(p, Discount(4.5));
        const double c = -1.0 / 3.0;
        const MajorantReport m =
            majorant_check(threshold_candidate(fp, Reward::quadratic_plus(), c + 0.1),
                           make_check_grid(threshold_candidate(fp, Reward::quadratic_plus(), c + 0.1)));
        CHECK_FALSE(m.passed);
        CHECK(m.worst_at > c);
        CHECK(m.worst_at < c + 0.1);
    }
    SUBCASE("bubble near sigma2^2 passes") {
        const VerificationSummary s = verify(assemble(p, Discount(3.95), Reward::quadratic_plus()));
        CHECK(s.majorant.passed);
        CHECK(s.passed);
    }
}

TEST_CASE("check grid") {
    const ValueFunction v = assemble(ObmParams(1.0, 2.0), Discount(3.0), Reward::quadratic_plus());
    const auto grid = make_check_grid(v);
    CHECK(grid.size() > 1500);
    CHECK(grid.size() <= 2000);
    CHECK(grid.front() >= -1.0 + 1e-6);
    CHECK(std::is_sorted(grid.begin(), grid.end()));
    for (double b : {-1.0, 0.0, v.stopping_region().boundaries()[0], v.stopping_region().boundaries()[2]}) {
        const auto it = std::lower_bound(grid.begin(), grid.end(), b);
        if (it != grid.end()) CHECK(std::abs(*it - b) >= 1e-9);
        if (it != grid.begin()) CHECK(std::abs(*(it - 1) - b) >= 1e-9);
    }
}

TEST_CASE("agreement with the grid oracle value") {
    struct Case {
        double s1, s2, r;
    };
    for (const Case c : {Case{1.0, 2.0, 4.5}, Case{1.0, 2.0, 3.0}, Case{1.0, 2.0, 1.5}, Case{1.0, 1.2, 2.0}}) {
        CAPTURE(c.r);
        const ObmParams p(c.s1, c.s2);
        const ValueFunction v = assemble(p, Discount(c.r), Reward::quadratic_plus());
        const GridModel gm = build_chain(p, -8.0, 6.0, 14000);
        const GridSolution sol = solve_stopping(gm, Reward::quadratic_plus(), Discount(c.r));
        const double h = gm.h;
        double worst = 0.0;
        const std::size_t start = gm.minus_one_index;
        const std::size_t stride = (gm.size() - start) / 200;
        for (std::size_t i = start; i < gm.size(); i += stride) {
            worst = std::max(worst, std::abs(v.value(gm.xs[i]) - sol.values[i]) / std::max(1.0, sol.values[i]));
        }
        CHECK(worst < 5.0 * h * h);
    }
}

TEST_CASE("value function pieces and one-sided derivatives") {
    const ValueFunction v = assemble(ObmParams(1.0, 2.0), Discount(3.0), Reward::quadratic_plus());
    REQUIRE(v.pieces().size() == 2);
    const auto b = v.stopping_region().boundaries();
    for (double x : b) {
        CHECK(v.derivative(x, Side::Left) == doctest::Approx(v.derivative(x, Side::Right)).epsilon(1e-9));
    }
    CHECK(v.derivative(0.0, Side::Left) == doctest::Approx(v.derivative(0.0, Side::Right)).epsilon(1e-12));
    CHECK(v.continuation_region().size() == 2);
}

TEST_CASE("skew payoff: 0 is never a stopping point") {
    const SkewParams beta(0.75);
    CHECK(kink_obstruction(Reward::skew_linear(beta)));
    CHECK_FALSE(kink_obstruction(Reward::quadratic_plus()));
    for (double r = 0.01; r <= 100.0; r *= 1.6) {
        const ValueFunction v = assemble(sbm_to_obm(beta), Discount(r), Reward::skew_linear(beta));
        CAPTURE(r);
        CHECK_FALSE(v.stopping_region().contains(0.0));
        CHECK(v.derivative(0.0, Side::Left) >= v.derivative(0.0, Side::Right) - 1e-10);
    }
}
