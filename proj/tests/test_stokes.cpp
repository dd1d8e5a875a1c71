#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bml/stokes.hpp"
#include "oracles.hpp"

using namespace bml;

namespace {

const double pi = std::numbers::pi;

SpectralField smooth_random(const GridSpec& g, int comps, std::uint64_t seed,
                            bool solenoidal = false, double k0 = 2.5) {
    PhysicalField w(g, comps);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double& v : w.values) v = dist(rng);
    SpectralField s = fft_forward(w);
    for (int c = 0; c < comps; ++c) {
        cplx* dst = s.comp(c);
        for_each_mode(g, [&](std::size_t i, const int* k) {
            double k2 = 0.0;
            for (int d = 0; d < g.n; ++d) k2 += double(k[d]) * k[d];
            dst[i] *= std::exp(-k2 / (k0 * k0));
            if (k2 == 0.0) dst[i] = 0.0;
        });
    }
    if (solenoidal) s = leray_project(s);
    return s;
}

double field_diff(const SpectralField& a, const SpectralField& b) {
    SpectralField d = a;
    d -= b;
    return spectral_l2(d);
}

// time-periodic forcing built from two frozen spatial profiles
std::vector<SpectralField> forcing(const GridSpec& g, double dt, int steps,
                                   std::uint64_t seed) {
    SpectralField g1 = smooth_random(g, g.n, seed);
    SpectralField g2 = smooth_random(g, g.n, seed + 1);
    std::vector<SpectralField> f;
    for (int s = 0; s <= steps; ++s) {
        double t = s * dt;
        SpectralField ft = g1;
        ft *= std::cos(3.0 * t);
        SpectralField f2 = g2;
        f2 *= std::sin(t);
        ft += f2;
        f.push_back(std::move(ft));
    }
    return f;
}

}  // namespace

TEST_CASE("unforced solve matches the exact heat flow") {
    GridSpec g(2, 32, 2.0 * pi);
    SpectralField u0 = smooth_random(g, 2, 3, true);
    StokesSolution sol = solve_stokes(u0, {}, 0.05, 10);
    for (int s = 0; s <= 10; ++s) {
        SpectralField exact = heat_evolve(u0, 0.05 * s);
        CHECK(field_diff(sol.u_series[std::size_t(s)], exact) <
              1e-12 * (1.0 + spectral_l2(exact)));
    }
}

TEST_CASE("projection plus pressure gradient recovers the forcing") {
    GridSpec g(3, 16, 2.0 * pi);
    SpectralField f = smooth_random(g, 3, 9);
    SpectralField sum = leray_project(f);
    sum += pressure_from_forcing(f);
    CHECK(field_diff(sum, f) < 1e-12 * (1.0 + spectral_l2(f)));
    CHECK(divergence_linf(leray_project(f)) < 1e-12 * (1.0 + spectral_l2(f)));
}

TEST_CASE("forced solve is second order in time") {
    GridSpec g(2, 32, 2.0 * pi);
    SpectralField u0 = smooth_random(g, 2, 5, true);
    const double T = 0.5;
    auto run = [&](int steps) {
        double dt = T / steps;
        return solve_stokes(u0, forcing(g, dt, steps, 70), dt, steps);
    };
    StokesSolution ref = run(640);
    double e1 = field_diff(run(20).u_series.back(), ref.u_series.back());
    double e2 = field_diff(run(40).u_series.back(), ref.u_series.back());
    double order = std::log2(e1 / e2);
    CHECK(order > 1.7);
    CHECK(order < 2.3);
    // solution remains divergence-free throughout
    StokesSolution sol = run(40);
    for (const SpectralField& u : sol.u_series)
        CHECK(divergence_linf(u) < 1e-11 * (1.0 + spectral_l2(u)));
}

TEST_CASE("linearized system with a = 0, v = 0 degenerates to stokes") {
    GridSpec g(2, 32, 2.0 * pi);
    SpectralField u0 = smooth_random(g, 2, 13, true);
    const double dt = 0.02;
    const int steps = 10;
    std::vector<PhysicalField> a(steps + 1, PhysicalField(g, 1));
    std::vector<SpectralField> v(steps + 1, SpectralField(g, 2));
    StokesSolution sol = solve_linearized_ns(u0, a, v, dt);
    for (int s = 0; s <= steps; ++s) {
        SpectralField exact = heat_evolve(u0, dt * s);
        CHECK(field_diff(sol.u_series[std::size_t(s)], exact) <
              1e-10 * (1.0 + spectral_l2(exact)));
    }
}

TEST_CASE("inner contraction ratio grows with the density perturbation") {
    GridSpec g(2, 32, 2.0 * pi);
    SpectralField u0 = smooth_random(g, 2, 17, true);
    const double dt = 0.02;
    const int steps = 5;
    SpectralField v0 = smooth_random(g, 2, 18, true);
    v0 *= 0.5;
    std::vector<SpectralField> v(steps + 1, v0);
    PhysicalField shape = fft_inverse(smooth_random(g, 1, 19));
    double smax = linf_norm(shape);

    std::vector<double> amps = {0.01, 0.05, 0.1, 0.2};
    std::vector<double> worst;
    for (double amp : amps) {
        PhysicalField a = shape;
        for (double& x : a.values) x *= amp / smax;
        std::vector<PhysicalField> as(steps + 1, a);
        StokesSolution sol = solve_linearized_ns(u0, as, v, dt);
        double m = 0.0;
        for (double r : sol.contraction_ratios) m = std::max(m, r);
        worst.push_back(m);
    }
    for (std::size_t i = 0; i + 1 < worst.size(); ++i) CHECK(worst[i] <= worst[i + 1]);
    CHECK(worst[1] < 1.0);

    // near-unit density contrast defeats the sweep
    PhysicalField big = shape;
    for (double& x : big.values) x *= 0.9 / smax;
    std::vector<PhysicalField> bs(steps + 1, big);
    CHECK_THROWS_AS(solve_linearized_ns(u0, bs, v, dt), ContractionFailure);
    // and beyond the admissible window it is rejected up front
    for (double& x : big.values) x *= 1.2;
    std::vector<PhysicalField> rs(steps + 1, big);
    CHECK_THROWS_AS(solve_linearized_ns(u0, rs, v, dt), InvalidParameter);
}

TEST_CASE("stokes guards") {
    GridSpec g(2, 32, 2.0 * pi);
    SpectralField u0 = smooth_random(g, 2, 23, true);
    CHECK_THROWS_AS(solve_stokes(u0, {}, -0.1, 5), InvalidParameter);
    CHECK_THROWS_AS(solve_stokes(u0, std::vector<SpectralField>(3, u0), 0.1, 5),
                    ShapeError);
    SpectralField bad = smooth_random(g, 2, 24, false);
    CHECK_THROWS_AS(solve_stokes(bad, {}, 0.1, 5), InvalidField);
}
