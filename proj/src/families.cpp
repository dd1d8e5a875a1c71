#include "bml/families.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace bml {

namespace {

// deterministic standard normals: mt19937_64 bits + explicit Box-Muller
struct Gauss {
    std::mt19937_64 rng;
    bool have = false;
    double spare = 0.0;

    explicit Gauss(std::uint64_t seed) : rng(seed) {}

    double uniform() {
        // 53-bit mantissa in (0,1]
        return (double(rng() >> 11) + 1.0) / 9007199254740993.0;
    }
    double operator()() {
        if (have) {
            have = false;
            return spare;
        }
        double u1 = uniform(), u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare = r * std::sin(a);
        have = true;
        return r * std::cos(a);
    }
};

SpectralField rescale_sup(SpectralField s, double amplitude) {
    double m = linf_norm(fft_inverse(s));
    if (m > 0.0 && amplitude > 0.0) s *= amplitude / m;
    return s;
}

SpectralField white_shaped(const GridSpec& g, std::uint64_t seed, int comps,
                           double k0) {
    PhysicalField w(g, comps);
    Gauss gauss(seed);
    for (double& v : w.values) v = gauss();
    SpectralField s = fft_forward(w);
    for (int c = 0; c < comps; ++c) {
        cplx* dst = s.comp(c);
        for_each_mode(g, [&](std::size_t i, const int* k) {
            double k2 = 0.0;
            bool band = true;
            for (int d = 0; d < g.n; ++d) {
                k2 += double(k[d]) * k[d];
                if (std::abs(k[d]) > g.N / 3) band = false;
            }
            dst[i] *= band ? std::exp(-k2 / (k0 * k0)) : 0.0;
            if (k2 == 0.0) dst[i] = 0.0;
        });
    }
    return s;
}

}  // namespace

SpectralField FieldFamily::random_bandlimited(int comps, double k0,
                                              double amplitude) const {
    if (comps < 1 || !(k0 > 0.0)) throw InvalidFamily("random_bandlimited: bad shape");
    return rescale_sup(white_shaped(grid, seed, comps, k0), amplitude);
}

SpectralField FieldFamily::random_solenoidal(int comps, double k0,
                                             double amplitude) const {
    if (comps != grid.n) throw InvalidFamily("random_solenoidal: needs n components");
    return rescale_sup(leray_project(white_shaped(grid, seed, comps, k0)), amplitude);
}

SpectralField FieldFamily::single_shell(const DyadicPartition& part, int j, int comps,
                                        double amplitude) const {
    if (!part.in_range(j, LpMode::inhomogeneous) &&
        !part.in_range(j, LpMode::homogeneous))
        throw InvalidFamily("single_shell: shell outside the partition");
    SpectralField s = white_shaped(grid, seed, comps, double(grid.N));
    const std::vector<double>& m =
        j == -1 ? part.psi_mult() : part.phi_mult(j);
    for (int c = 0; c < comps; ++c) {
        cplx* dst = s.comp(c);
        for (std::size_t i = 0; i < s.grid.total(); ++i) dst[i] *= m[i];
        dst[0] = cplx(0.0, 0.0);
    }
    return rescale_sup(std::move(s), amplitude);
}

SpectralField FieldFamily::dilate(const SpectralField& u) {
    const GridSpec& g = u.grid;
    SpectralField out(g, u.components);
    bool lost = false;
    for (int c = 0; c < u.components; ++c) {
        const cplx* src = u.comp(c);
        cplx* dst = out.comp(c);
        for_each_mode(g, [&](std::size_t i, const int* k) {
            if (src[i] == cplx(0.0, 0.0)) return;
            int kk[3];
            for (int d = 0; d < g.n; ++d) {
                kk[d] = 2 * k[d];
                if (kk[d] < -g.N / 2 || kk[d] >= g.N / 2) lost = true;
            }
            if (lost) return;
            std::size_t flat = 0;
            for (int d = 0; d < g.n; ++d) {
                int idx = kk[d] >= 0 ? kk[d] : kk[d] + g.N;
                flat = flat * std::size_t(g.N) + std::size_t(idx);
            }
            dst[flat] = src[i];
        });
    }
    if (lost) throw InvalidFamily("dilate: doubled spectrum leaves the lattice");
    return out;
}

}  // namespace bml
