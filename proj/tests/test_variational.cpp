#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "graphlim/cutnorm.hpp"
#include "graphlim/errors.hpp"
#include "graphlim/functionals.hpp"
#include "graphlim/variational.hpp"

using namespace graphlim;

TEST_CASE("closed-form entropy at e = 1/2: endpoints") {
    auto top = entropy_closed_half(0.125);
    CHECK(top.s == doctest::Approx(std::log(2) / 2).epsilon(1e-15));
    CHECK(top.maximizer.p11 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(top.maximizer.p12 == doctest::Approx(0.5).epsilon(1e-15));

    auto bottom = entropy_closed_half(0.0);
    CHECK(bottom.s == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(bottom.maximizer.p11 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(bottom.maximizer.p12 == doctest::Approx(1.0).epsilon(1e-15));

    auto mid = entropy_closed_half(0.0212);
    CHECK(mid.maximizer.p12 - 0.5 == doctest::Approx(0.46996529093313355).epsilon(1e-13));
    CHECK(mid.s == doctest::Approx(0.06743139981485673).epsilon(1e-13));

    CHECK_THROWS_AS(entropy_closed_half(-0.01), DomainError);
    CHECK_THROWS_AS(entropy_closed_half(0.2), DomainError);
}

TEST_CASE("closed-form entropy is strictly increasing in t") {
    double prev = -1;
    for (int j = 0; j <= 200; ++j) {
        const double t = 0.125 * j / 200;
        const double s = entropy_closed_half(t).s;
        if (j > 0) CHECK(s > prev);
        prev = s;
    }
}

TEST_CASE("numeric entropy at zero triangle density recovers the bipartite kernel") {
    for (double e : {0.1, 0.2, 0.3, 0.4, 0.5}) {
        auto p = entropy_numeric(e, 0.0);
        CHECK(p.s == doctest::Approx(-rate_function(2 * e) / 2).epsilon(1e-9));
        auto target = two_block_graphon(0.5, 0.0, 2 * e, 0.0);
        CHECK(cut_distance_upper(p.maximizer.to_graphon(), target) < 1e-6);
        CHECK(p.conjectural == (e != 0.5));
    }
}

TEST_CASE("numeric entropy matches the closed form on the e = 1/2 segment") {
    for (double t : {0.01, 0.05, 0.1, 0.12}) {
        auto num = entropy_numeric(0.5, t);
        auto ref = entropy_closed_half(t);
        CHECK(num.s == doctest::Approx(ref.s).epsilon(1e-6));
    }
}

TEST_CASE("numeric entropy on the independent-edge curve is the constant kernel") {
    for (double e : {0.1, 0.2, 0.3, 0.4, 0.5}) {
        auto p = entropy_numeric(e, e * e * e);
        CHECK(p.s == doctest::Approx(-rate_function(e)).epsilon(1e-12));
        CHECK(p.maximizer.p11 == doctest::Approx(e).epsilon(1e-10));
        CHECK(p.maximizer.p12 == doctest::Approx(e).epsilon(1e-10));
        CHECK(p.maximizer.p22 == doctest::Approx(e).epsilon(1e-10));
    }
}

TEST_CASE("numeric entropy never exceeds the unconstrained bound") {
    const double e = 0.35;
    for (double frac : {0.0, 0.2, 0.5, 0.8, 1.0}) {
        const double t = frac * e * e * e;
        auto p = entropy_numeric(e, t);
        CHECK(p.s <= -rate_function(e) + 1e-9);
    }
}

TEST_CASE("numeric entropy maximizer reproduces the requested densities") {
    for (double e : {0.25, 0.4, 0.5}) {
        for (double frac : {0.15, 0.6, 0.95}) {
            const double t = frac * e * e * e;
            auto p = entropy_numeric(e, t);
            auto g = p.maximizer.to_graphon();
            CHECK(edge_density(g) == doctest::Approx(e).epsilon(1e-8));
            CHECK(triangle_density(g) == doctest::Approx(t).epsilon(1e-8));
        }
    }
}

TEST_CASE("numeric entropy region errors") {
    CHECK_THROWS_AS(entropy_numeric(0.3, 0.2), RegionError);   // above e^(3/2)
    CHECK_THROWS_AS(entropy_numeric(0.3, -1e-6), RegionError); // below zero
    CHECK_NOTHROW(entropy_numeric(0.3, -5e-10));               // inside the 1e-9 slack
    CHECK_THROWS_AS(entropy_numeric(0.6, 0.1), DomainError);   // e above 1/2
    CHECK_THROWS_AS(entropy_numeric(0.0, 0.0), DomainError);
}

TEST_CASE("numeric entropy above the independent-edge curve stays feasible") {
    // Attractive-side value, exercised by beta2 > 0 scans.
    const double e = 0.4;
    const double t = 0.8 * std::pow(e, 1.5);
    auto p = entropy_numeric(e, t);
    auto g = p.maximizer.to_graphon();
    CHECK(edge_density(g) == doctest::Approx(e).epsilon(1e-8));
    CHECK(triangle_density(g) == doctest::Approx(t).epsilon(1e-8));
    CHECK(p.s <= -rate_function(e) + 1e-9);
}

TEST_CASE("region bounds") {
    auto [lo, hi] = region_bounds(0.25);
    CHECK(lo == 0.0);
    CHECK(hi == doctest::Approx(0.125).epsilon(1e-15));

    auto [lo2, hi2] = region_bounds(0.5);
    CHECK(lo2 == 0.0);
    CHECK(hi2 == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-15));

    // Complete tripartite anchor: e = 2/3 forces t at least 2/9.
    auto [lo3, hi3] = region_bounds(2.0 / 3.0);
    CHECK(lo3 == doctest::Approx(2.0 / 9.0).epsilon(2e-3));
    CHECK(lo3 >= 2.0 / 9.0 - 1e-6);
    CHECK(hi3 == doctest::Approx(std::pow(2.0 / 3.0, 1.5)).epsilon(1e-15));

    CHECK_THROWS_AS(region_bounds(-0.1), DomainError);
    CHECK_THROWS_AS(region_bounds(1.1), DomainError);
}

TEST_CASE("entropy drop ratio at e = 1/2") {
    std::vector<double> grid;
    for (int j = 0; j < 100; ++j) grid.push_back(0.125 * j / 100);
    const double c = min_drop_ratio(0.5, grid);
    CHECK(c > 0.1);

    // Near the right endpoint the ratio approaches 1 (quadratic entropy
    // deficit against the 2/3-power of the triangle deficit).
    std::vector<double> near{0.125 - 1e-6};
    const double r = min_drop_ratio(0.5, near);
    CHECK(r == doctest::Approx(1.0).epsilon(0.05));

    std::vector<double> bad{0.125};
    CHECK_THROWS_AS(min_drop_ratio(0.5, bad), RegionError);
}

TEST_CASE("entropy drop ratio survives a coarse numeric scan at e = 0.3") {
    std::vector<double> grid{0.0, 0.005, 0.010, 0.015, 0.020, 0.025};
    const double c = min_drop_ratio(0.3, grid);
    CHECK(c > 0.0);
}
