#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "graphlim/errors.hpp"
#include "graphlim/functionals.hpp"
#include "graphlim/phase.hpp"
#include "graphlim/variational.hpp"

using namespace graphlim;

namespace {

std::vector<double> descending_grid(double from, double to, int steps) {
    std::vector<double> g;
    for (int i = 0; i <= steps; ++i) g.push_back(from + (to - from) * i / steps);
    return g;
}

PhaseOptions coarse() {
    PhaseOptions o;
    o.t_grid = 192;
    return o;
}

}  // namespace

TEST_CASE("free energy at e = 1/2: pinned values") {
    FreeEnergySolver solver(0.5);

    auto p0 = solver.psi(0.0);
    CHECK(p0.psi == doctest::Approx(std::log(2) / 2).epsilon(1e-12));
    CHECK(p0.t_star == 0.125);
    CHECK(p0.maximizer.p11 == doctest::Approx(0.5).epsilon(1e-12));

    auto p1 = solver.psi(-1.0);
    CHECK(p1.psi == doctest::Approx(std::log(2) / 2 - 0.125).epsilon(1e-12));
    CHECK(p1.t_star == 0.125);
    CHECK(p1.eps_star == 0.0);

    auto pinf = solver.psi(-1e6);
    CHECK(pinf.t_star == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(pinf.psi >= 0.0);
    CHECK(pinf.psi <= 1e-6);
}

TEST_CASE("free energy limit toward minus infinity matches the bipartite entropy") {
    auto p = psi_constrained(0.3, -1e4, coarse());
    CHECK(p.psi == doctest::Approx(-rate_function(0.6) / 2).epsilon(1e-3));
    CHECK(p.t_star <= 1e-6);

    auto p5 = psi_constrained(0.5, -1e4);
    CHECK(std::fabs(p5.psi) <= 1e-3);
}

TEST_CASE("critical point at e = 1/2") {
    auto cp = critical_point(0.5);
    CHECK(cp.beta2_c >= -2.75);
    CHECK(cp.beta2_c <= -2.65);
    CHECK(cp.eps_c >= 0.46);
    CHECK(cp.eps_c <= 0.48);
    CHECK(cp.beta2_c == doctest::Approx(-2.688339144134).epsilon(1e-7));
    CHECK(cp.t_c == doctest::Approx(0.018483621232).epsilon(1e-5));
    CHECK(cp.t_c >= 0.0);
    CHECK(cp.t_c < 0.125);
    CHECK(cp.eps_c == doctest::Approx(std::cbrt(0.125 - cp.t_c)).epsilon(1e-12));
}

TEST_CASE("scan at e = 1/2 shows the first-order jump") {
    FreeEnergySolver solver(0.5);
    auto cp = solver.critical(1e-10);
    auto grid = descending_grid(0.0, -5.0, 100);  // step 0.05
    auto scan = solver.scan(grid);
    REQUIRE(scan.size() == grid.size());

    for (const auto& p : scan) {
        if (p.beta2 > cp.beta2_c + 0.05) CHECK(p.t_star == 0.125);
        if (p.beta2 < cp.beta2_c - 0.05) {
            CHECK(p.t_star < 0.03);
            CHECK(p.t_star <= cp.t_c + 1e-9);
        }
        // psi = beta2 t* + s(t*) by construction; re-check against the
        // closed-form entropy.
        CHECK(p.psi == doctest::Approx(p.beta2 * p.t_star +
                                       entropy_closed_half(p.t_star).s)
                           .epsilon(1e-9));
    }

    auto jump = detect_jump(scan);
    CHECK(jump.max_jump >= 0.09);
    CHECK(jump.first_order);
    CHECK(jump.beta2_before >= -3.0);
    CHECK(jump.beta2_after <= -2.5);

    // Convexity of psi in beta2: second differences on the descending grid.
    for (size_t i = 2; i < scan.size(); ++i) {
        const double second =
            scan[i].psi - 2 * scan[i - 1].psi + scan[i - 2].psi;
        CHECK(second >= -1e-8);
    }

    // Envelope identity away from the jump: finite-difference slope of psi
    // equals the maximizing triangle density.
    FreeEnergySolver s2(0.5);
    for (double b2 : {-1.0, -4.0}) {
        const double delta = 1e-4;
        const double slope =
            (s2.psi(b2 + delta).psi - s2.psi(b2 - delta).psi) / (2 * delta);
        CHECK(slope == doctest::Approx(s2.psi(b2).t_star).epsilon(1e-3));
    }
}

TEST_CASE("tie is recorded at the transition point") {
    FreeEnergySolver solver(0.5);
    auto cp = solver.critical(1e-12);
    auto p = solver.psi(cp.beta2_c);
    CHECK(p.tie);
}

TEST_CASE("beta2 = 0 maximizer sits on the independent-edge curve") {
    for (double e : {0.2, 0.35}) {
        auto p = psi_constrained(e, 0.0, coarse());
        CHECK(p.t_star == e * e * e);
        CHECK(p.psi == doctest::Approx(-rate_function(e)).epsilon(1e-9));
        CHECK(p.maximizer.p12 == doctest::Approx(e).epsilon(1e-9));
    }
}

TEST_CASE("attractive-side scan point is served without structure claims") {
    auto p = psi_constrained(0.5, 0.5, coarse());
    CHECK(p.t_star >= 0.125 - 1e-9);
    CHECK(p.psi >= std::log(2) / 2 - 1e-9);
}

TEST_CASE("numeric critical point away from e = 1/2") {
    auto cp = critical_point(0.4, 1e-8, coarse());
    CHECK(cp.beta2_c < 0.0);
    CHECK(cp.t_c > 0.0);
    CHECK(cp.t_c < 0.4 * 0.4 * 0.4);
}

TEST_CASE("critical curve records per-point results") {
    std::vector<double> grid{0.5};
    auto curve = critical_curve(grid);
    REQUIRE(curve.size() == 1);
    REQUIRE(curve[0].point.has_value());
    auto direct = critical_point(0.5);
    CHECK(curve[0].point->beta2_c == doctest::Approx(direct.beta2_c).epsilon(1e-12));

    std::vector<double> bad{0.5, 0.9};  // 0.9 is outside the supported range
    auto curve2 = critical_curve(bad);
    REQUIRE(curve2.size() == 2);
    CHECK(curve2[0].point.has_value());
    CHECK(!curve2[1].point.has_value());
    CHECK(!curve2[1].error.empty());
}

TEST_CASE("scan grid must be descending") {
    FreeEnergySolver solver(0.5);
    std::vector<double> bad{-1.0, 0.0};
    CHECK_THROWS_AS(solver.scan(bad), DomainError);
}

TEST_CASE("free energy rejects unsupported e") {
    CHECK_THROWS_AS(FreeEnergySolver(0.75), DomainError);
    CHECK_THROWS_AS(FreeEnergySolver(0.0), DomainError);
}
