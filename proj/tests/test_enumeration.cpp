#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "graphlim/cutnorm.hpp"
#include "graphlim/enumeration.hpp"
#include "graphlim/errors.hpp"
#include "graphlim/functionals.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/parallel.hpp"
#include "graphlim/phase.hpp"

using namespace graphlim;

namespace {

EnumSpec spec(int n, double b1, double b2) {
    EnumSpec s;
    s.n = n;
    s.beta1 = b1;
    s.beta2 = b2;
    return s;
}

EnumSpec cond_spec(int n, double b1, double b2, double e, double alpha) {
    EnumSpec s = spec(n, b1, b2);
    s.e_target = e;
    s.alpha = alpha;
    return s;
}

}  // namespace

TEST_CASE("small-n normalization constants") {
    auto r = exact_psi(spec(3, 0, 0));
    CHECK(r.psi == doctest::Approx(std::log(8.0) / 9).epsilon(1e-14));
    CHECK(r.graph_count == 8);
    CHECK(r.total_graphs == 8);
    CHECK(r.psi == doctest::Approx(r.log_partition / 9).epsilon(1e-15));

    // Independent edges: the partition function factorizes.
    auto r10 = exact_psi(spec(3, 1, 0));
    CHECK(r10.psi == doctest::Approx(std::log1p(std::exp(2.0)) / 3).epsilon(1e-13));

    // Only the triangle carries weight exp(2 beta2 / ... ) at n = 3.
    auto r01 = exact_psi(spec(3, 0, 1));
    CHECK(r01.psi == doctest::Approx(std::log(7.0 + std::exp(2.0)) / 9).epsilon(1e-13));
}

TEST_CASE("independent-edge closed form across n and beta1") {
    for (int n = 3; n <= 6; ++n) {
        for (double b1 : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
            auto r = exact_psi(spec(n, b1, 0));
            const double m = n * (n - 1) / 2.0;
            const double expected = m / (n * n) * std::log1p(std::exp(2 * b1));
            CHECK(r.psi == doctest::Approx(expected).epsilon(1e-13));
        }
    }
    auto r7 = exact_psi(spec(7, -1, 0));
    CHECK(r7.psi ==
          doctest::Approx(21.0 / 49 * std::log1p(std::exp(-2.0))).epsilon(1e-13));
}

TEST_CASE("conditional shell counts and values") {
    auto r1 = exact_conditional_psi(cond_spec(4, 0, 0, 0.5, 0.1));
    CHECK(r1.graph_count == 15);  // exactly the 4-edge graphs
    CHECK(r1.psi == doctest::Approx(std::log(15.0) / 16).epsilon(1e-14));

    auto r2 = exact_conditional_psi(cond_spec(4, 0, 0, 0.5, 0.2));
    CHECK(r2.graph_count == 41);  // E in {3,4,5}
    CHECK(r2.psi == doctest::Approx(std::log(41.0) / 16).epsilon(1e-14));

    CHECK_THROWS_AS(exact_conditional_psi(cond_spec(3, 0, 0, 0.5, 0.01)),
                    EmptyShellError);
}

TEST_CASE("shell boundary graphs are excluded") {
    // At n = 5 the density 2E/25 hits |e - 1/2| = 0.1 exactly at E = 5;
    // the strict inequality keeps only E in {6, 7}.
    auto r = exact_conditional_psi(cond_spec(5, 0, 0, 0.5, 0.1));
    CHECK(r.graph_count == 330);
}

TEST_CASE("conditional psi grows with alpha toward the unconditional value") {
    const double b1 = 0.3, b2 = -0.7;
    double prev = -1e300;
    for (double alpha : {0.05, 0.1, 0.2, 0.4, 0.7, 1.0}) {
        auto r = exact_conditional_psi(cond_spec(5, b1, b2, 0.5, alpha));
        CHECK(r.psi >= prev - 1e-12);
        prev = r.psi;
    }
    auto full = exact_psi(spec(5, b1, b2));
    auto wide = exact_conditional_psi(cond_spec(5, b1, b2, 0.5, 1.0));
    CHECK(wide.graph_count == full.graph_count);
    CHECK(wide.psi == full.psi);
    CHECK(prev <= full.psi + 1e-12);
}

TEST_CASE("finite-n conditional values approach the strip variational value") {
    // Gap to the alpha-strip supremum is non-increasing over n = 4..7.
    const double e = 0.5, alpha = 0.1, b2 = -1.0;
    PhaseOptions coarse;
    coarse.t_grid = 128;
    double target = -1e300;
    for (int i = 0; i <= 20; ++i) {
        const double ee = (e - alpha) + 2 * alpha * i / 20;
        if (ee > 0.5 + 1e-12) break;  // psi is decreasing through e' = 1/2 here
        target = std::max(target, psi_constrained(ee, b2, coarse).psi);
    }
    double prev_gap = 1e300;
    for (int n = 4; n <= 7; ++n) {
        auto r = exact_conditional_psi(cond_spec(n, 0, b2, e, alpha));
        const double gap = std::fabs(r.psi - target);
        CHECK(gap <= prev_gap + 1e-12);
        prev_gap = gap;
    }
}

TEST_CASE("concentration statistics under the conditional measure") {
    auto ref = constant_graphon(0.5);

    // Cut distance between [0,1]-valued kernels never reaches 1.
    auto c1 = conditional_concentration(cond_spec(4, 0, 0, 0.5, 0.1), ref, 1.0);
    CHECK(c1.mass_far == 0.0);
    CHECK(c1.mean_t == doctest::Approx(0.075).epsilon(1e-13));

    // Repulsion lowers the conditional triangle mean.
    auto c2 = conditional_concentration(cond_spec(4, 0, -5, 0.5, 0.1), ref, 1.0);
    CHECK(c2.mean_t < c1.mean_t);
}

TEST_CASE("far mass trend over n at eta = 0.3") {
    auto ref = constant_graphon(0.5);
    double prev = 1e300;
    for (int n = 5; n <= 7; ++n) {
        auto c = conditional_concentration(cond_spec(n, 0, 0, 0.5, 0.1), ref, 0.3);
        CHECK(c.mass_far <= prev + 1e-12);
        prev = c.mass_far;
    }
}

TEST_CASE("far mass trend over n at eta = 0.1") {
    auto ref = constant_graphon(0.5);
    double prev = 1e300;
    for (int n = 4; n <= 6; ++n) {
        auto c = conditional_concentration(cond_spec(n, 0, 0, 0.5, 0.1), ref, 0.1);
        CHECK(c.mass_far <= prev + 1e-12);
        prev = c.mass_far;
    }
}

TEST_CASE("concentration distances agree with cut_distance_upper") {
    // Shell containing exactly the three one-edge graphs at n = 3; all sit
    // at the same distance from the flat reference by symmetry.
    auto ref = constant_graphon(0.5);
    auto g = make_graph(3, {{0, 1}});
    const double d = cut_distance_upper(graph_to_graphon(g), ref);
    auto below = conditional_concentration(cond_spec(3, 0, 0, 2.0 / 9, 0.1), ref,
                                           d - 1e-9);
    CHECK(below.mass_far == 1.0);
    auto above = conditional_concentration(cond_spec(3, 0, 0, 2.0 / 9, 0.1), ref,
                                           d + 1e-9);
    CHECK(above.mass_far == 0.0);
}

TEST_CASE("enumeration validation") {
    CHECK_THROWS_AS(exact_psi(spec(9, 0, 0)), SizeError);
    CHECK_THROWS_AS(exact_psi(spec(1, 0, 0)), DomainError);
    EnumSpec bad = spec(4, 0, 0);
    bad.alpha = 0.1;  // alpha without e_target
    CHECK_THROWS_AS(exact_conditional_psi(bad), DomainError);
    CHECK_THROWS_AS(
        conditional_concentration(cond_spec(8, 0, 0, 0.5, 0.1), constant_graphon(0.5), 0.1),
        SizeError);
    CHECK_THROWS_AS(
        conditional_concentration(cond_spec(4, 0, 0, 0.5, 0.1), constant_graphon(0.5), 0.0),
        DomainError);
}

TEST_CASE("deterministic across thread counts") {
    const auto r2 = exact_psi(spec(6, 0.4, -0.9));
    set_max_threads(1);
    const auto r1 = exact_psi(spec(6, 0.4, -0.9));
    set_max_threads(0);
    CHECK(r1.psi == r2.psi);
    CHECK(r1.log_partition == r2.log_partition);
}
