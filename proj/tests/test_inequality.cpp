#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bml/inequality.hpp"

using namespace bml;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("bernstein constants are shell-stable") {
    GridSpec g(2, 64, 2.0 * pi);  // homogeneous range {1, 2, 3}
    InequalityReport rep = verify_bernstein(g, 1, 3, 1, 4.0, 2.0, 4, 7);
    CHECK(rep.pass);
    CHECK(rep.stability <= 4.0);
    CHECK(rep.extras["linf_spread"] <= 4.0);
    for (int j = 1; j <= 3; ++j) {
        CHECK(rep.level_constants.at(j) > 0.0);
        CHECK(rep.extras["lower_" + std::to_string(j)] > 0.0);
    }
    CHECK_THROWS_AS(verify_bernstein(g, 0, 3, 1, 4.0, 2.0, 2, 7), InvalidFamily);
    CHECK_THROWS_AS(verify_bernstein(g, 1, 2, 0, 4.0, 2.0, 2, 7),
                    InvalidParameter);
}

TEST_CASE("transport commutator estimate holds under dilation") {
    GridSpec g(2, 64, 2.0 * pi);
    SpaceParams sp;
    sp.n = 2;
    sp.p = 2.0;
    sp.q = 4.0 / 3.0;
    sp.r = 1.0;
    sp.s = 1.0;
    InequalityReport rep = verify_commutator_uv(g, sp, 3, 17);
    CHECK(rep.pass);
    CHECK(std::isfinite(rep.fitted_constant));
    CHECK(rep.stability <= 4.0);
    sp.s = 4.0;  // outside 0 < s <= n/p + 1
    CHECK_THROWS_AS(verify_commutator_uv(g, sp, 2, 17), InvalidParameter);
}

TEST_CASE("multiplication commutator estimate is horizon-stable") {
    GridSpec g(2, 32, 2.0 * pi);
    SpaceParams sp;
    sp.n = 2;
    sp.p = 2.0;
    sp.q = 4.0 / 3.0;
    sp.r = 1.0;
    sp.s = 0.5;  // inside 0 < s < n/p
    InequalityReport rep = verify_commutator_pi(g, sp, 2, 29);
    CHECK(rep.pass);
    CHECK(rep.stability <= 4.0);
    sp.s = 1.5;
    CHECK_THROWS_AS(verify_commutator_pi(g, sp, 2, 29), InvalidParameter);
}

TEST_CASE("localized heat decay rate sits in the ring window") {
    GridSpec g(2, 64, 2.0 * pi);
    InequalityReport rep = verify_heat_localized(g, 1, 3, 4.0, 2.0, 3, 41);
    CHECK(rep.pass);
    for (int j = 1; j <= 3; ++j) {
        double c = rep.extras["c_" + std::to_string(j)];
        CHECK(c >= 0.5);
        CHECK(c <= 7.2);
    }
    CHECK(rep.extras["c_spread"] <= 2.0);
    CHECK(rep.stability <= 2.0);
}

TEST_CASE("time-integrated heat bounds hold and vanish with the horizon") {
    GridSpec g(2, 32, 2.0 * pi);
    SpaceParams sp;
    sp.n = 2;
    sp.p = 2.0;
    sp.q = 4.0 / 3.0;
    sp.r = 1.0;
    sp.s = 1.0;
    InequalityReport rep = verify_heat_chemin(g, sp, 1.0, 2, 53);
    CHECK(rep.pass);
    CHECK(rep.extras["t_vanishing_monotone"] == 1.0);
    CHECK(rep.extras["sup_constant"] <= 1.0 + 1e-10);  // heat flow contracts blocks
    CHECK(std::isfinite(rep.extras["beta_constant"]));
    CHECK_THROWS_AS(verify_heat_chemin(g, sp, 0.5, 1, 53), InvalidParameter);
}

TEST_CASE("solver-coupled estimates stay in a bounded band") {
    GridSpec g(2, 32, 2.0 * pi);
    SpaceParams sp;
    sp.n = 2;
    sp.p = 2.0;
    sp.q = 4.0 / 3.0;
    sp.r = 1.0;
    sp.s = 1.0;
    InequalityReport rep = verify_transport_stokes_linns(g, sp, 3, 61);
    CHECK(rep.pass);
    CHECK(rep.extras["frozen_ratio"] <= 1.0 + 1e-6);
    CHECK(rep.extras["stokes_constant"] >= 1.0);  // sup term alone saturates at t=0
    CHECK(rep.stability <= 8.0);
}

TEST_CASE("product estimates are dilation-stable") {
    GridSpec g(2, 64, 2.0 * pi);
    SpaceParams sp;
    sp.n = 2;
    sp.p = 2.0;
    sp.q = 4.0 / 3.0;
    sp.r = 1.0;
    sp.s = 1.0;
    InequalityReport rep = verify_product_estimates(g, sp, 2, 71);
    CHECK(rep.pass);
    CHECK(std::isfinite(rep.fitted_constant));
    CHECK(rep.stability <= 4.0);
}
