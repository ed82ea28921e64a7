#include "doctest.h"

#include <cmath>
#include <sstream>

#include "obmstop/errors.hpp"
#include "obmstop/grid_oracle.hpp"
#include "obmstop/solver.hpp"

using namespace obmstop;

TEST_CASE("chain construction") {
    const ObmParams p(1.0, 2.0);
    CHECK_THROWS_AS(build_chain(p, -0.5, 3.0, 1000), DomainError);
    CHECK_THROWS_AS(build_chain(p, -2.0, -0.1, 1000), DomainError);
    CHECK_THROWS_AS(build_chain(p, -2.0, 3.0, 10), DomainError);

    const GridModel gm = build_chain(p, -2.0, 6.0, 8000);
    CHECK(gm.h == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(gm.xs[gm.zero_index] == 0.0);
    CHECK(gm.xs[gm.minus_one_index] == -1.0);
    CHECK(gm.xmin() <= -2.0);
    CHECK(gm.xmax() >= 6.0);
    const double h2 = gm.h * gm.h;
    CHECK(gm.dt[gm.zero_index - 5] == doctest::Approx(h2).epsilon(1e-12));
    CHECK(gm.dt[gm.zero_index + 5] == doctest::Approx(h2 / 4.0).epsilon(1e-12));
    CHECK(gm.dt[gm.zero_index] == doctest::Approx(h2 * 1.25 / 2.0).epsilon(1e-12));
    for (std::size_t i = 1; i + 1 < gm.size(); ++i) {
        CHECK(gm.p_up[i] + gm.p_down[i] == doctest::Approx(1.0));
    }

    // awkward bracket widened to the nearest nodes
    const GridModel odd = build_chain(p, -2.3, 4.7, 333);
    CHECK(odd.xs[odd.zero_index] == 0.0);
    CHECK(odd.xs[odd.minus_one_index] == -1.0);
    CHECK(odd.xmin() <= -2.3);
    CHECK(odd.xmax() >= 4.7);
}

TEST_CASE("grid boundaries against closed forms") {
    SUBCASE("standard BM, r = 2") {
        const GridModel gm = build_chain(ObmParams(1.0, 1.0), -2.0, 6.0, 8000);
        const GridSolution s = solve_stopping(gm, Reward::quadratic_plus(), Discount(2.0));
        const Region reg = extract_region(s.stop, gm.xs);
        REQUIRE(reg.size() == 1);
        CHECK(std::abs(reg.components()[0].lo) <= 2.0 * gm.h);
    }
    SUBCASE("sigma = (1, 2), r = 4.5") {
        const GridModel gm = build_chain(ObmParams(1.0, 2.0), -2.0, 6.0, 8000);
        const GridSolution s = solve_stopping(gm, Reward::quadratic_plus(), Discount(4.5));
        const Region reg = extract_region(s.stop, gm.xs);
        REQUIRE(reg.size() == 1);
        CHECK(std::abs(reg.components()[0].lo + 1.0 / 3.0) <= 2.0 * gm.h);
        CHECK(s.residual < 1e-10);
    }
    SUBCASE("bubble at r = 3.95") {
        const GridModel gm = build_chain(ObmParams(1.0, 2.0), -2.0, 6.0, 8000);
        const GridSolution s = solve_stopping(gm, Reward::quadratic_plus(), Discount(3.95));
        CHECK(count_runs(s.stop) == 2);
        const auto b = solve_bubble(ObmParams(1.0, 2.0), Discount(3.95));
        REQUIRE(b);
        const Region reg = extract_region(s.stop, gm.xs);
        REQUIRE(reg.size() == 2);
        CHECK(std::abs(reg.components()[0].lo - b->c1) <= 2e-3);
        CHECK(std::abs(reg.components()[0].hi - b->c2) <= 2e-3);
        CHECK(std::abs(reg.components()[1].lo - b->c3) <= 2e-3);
    }
}

TEST_CASE("region extraction") {
    const std::vector<double> xs{0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
    const std::vector<bool> stop{false, true, true, false, false, true, true};
    CHECK(count_runs(stop) == 2);
    const Region r = extract_region(stop, xs);
    REQUIRE(r.size() == 2);
    CHECK(r.components()[0].lo == 0.5);
    CHECK(r.components()[0].hi == 2.5);
    CHECK(r.components()[1].lo == 4.5);
    CHECK(r.components()[1].hi == 6.0);
    CHECK(count_runs({false, false}) == 0);
    CHECK(extract_region({false, false}, {0.0, 1.0}).empty());
    CHECK(count_runs({true, false, true, false, true}) == 3);
}

TEST_CASE("boundary converges as the grid is refined") {
    const double exact = solve_quadratic_one_sided(ObmParams(1.0, 2.0), Discount(1.5));
    double prev = INFINITY;
    for (std::size_t n : {1000u, 2000u, 4000u, 8000u}) {
        const GridModel gm = build_chain(ObmParams(1.0, 2.0), -2.0, 6.0, n);
        const GridSolution s = solve_stopping(gm, Reward::quadratic_plus(), Discount(1.5));
        const double err = std::abs(extract_region(s.stop, gm.xs).components()[0].lo - exact);
        CAPTURE(n);
        CHECK(err <= 2.0 * gm.h);
        CHECK(err <= prev + 1e-12);
        prev = std::max(err, gm.h);
    }
}

TEST_CASE("value iteration and policy iteration agree") {
    const ObmParams p(1.0, 2.0);
    const GridModel gm = build_chain(p, -2.0, 4.0, 300);
    GridOptions vi;
    vi.method = GridMethod::ValueIteration;
    vi.tolerance = 1e-13;
    GridOptions pi;
    pi.multilevel = false;
    for (double r : {1.5, 3.0, 4.5}) {
        const GridSolution a = solve_stopping(gm, Reward::quadratic_plus(), Discount(r), vi);
        const GridSolution b = solve_stopping(gm, Reward::quadratic_plus(), Discount(r), pi);
        const GridSolution c = solve_stopping(gm, Reward::quadratic_plus(), Discount(r));
        CAPTURE(r);
        double diff = 0.0, diff_ml = 0.0;
        for (std::size_t i = 0; i < gm.size(); ++i) {
            diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
            diff_ml = std::max(diff_ml, std::abs(b.values[i] - c.values[i]));
        }
        CHECK(diff < 1e-9);
        CHECK(diff_ml < 1e-12);
        CHECK(a.stop == b.stop);
        CHECK(b.stop == c.stop);
    }
}

TEST_CASE("grid value is a majorant and monotone in r") {
    const GridModel gm = build_chain(ObmParams(1.0, 2.0), -2.0, 5.0, 2000);
    const Reward g = Reward::quadratic_plus();
    const GridSolution lo = solve_stopping(gm, g, Discount(2.0));
    const GridSolution hi = solve_stopping(gm, g, Discount(3.0));
    for (std::size_t i = 0; i < gm.size(); ++i) {
        CHECK(lo.values[i] >= g.value(gm.xs[i]) - 1e-14);
        CHECK(lo.values[i] >= hi.values[i] - 1e-12);
    }
    CHECK(lo.values.front() == 0.0);
    CHECK(lo.stop.back());
}

TEST_CASE("grid csv") {
    const GridModel gm = build_chain(ObmParams(1.0, 2.0), -2.0, 3.0, 100);
    const GridSolution s = solve_stopping(gm, Reward::quadratic_plus(), Discount(4.5));
    std::ostringstream os;
    write_grid_csv(os, gm, Reward::quadratic_plus(), s);
    const std::string text = os.str();
    CHECK(text.rfind("x,", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == gm.size() + 1);
}

TEST_CASE("default bounds") {
    CHECK(default_grid_bounds(0.0) == std::pair<double, double>(-2.0, 5.0));
    CHECK(default_grid_bounds(1.0) == std::pair<double, double>(-2.0, 6.0));
}
