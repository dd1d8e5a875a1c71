#include "bml/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace bml {

void SpaceParams::validate() const {
    if (n != 2 && n != 3) throw InvalidParameter("SpaceParams: n must be 2 or 3");
    if (!(q >= 1.0 && q <= p)) throw InvalidParameter("SpaceParams: need 1 <= q <= p");
    if (!(p < inf)) throw InvalidParameter("SpaceParams: p must be finite");
    if (!(r >= 1.0)) throw InvalidParameter("SpaceParams: r must be >= 1");
    if (!std::isfinite(s)) throw InvalidParameter("SpaceParams: s must be finite");
}

namespace {

std::vector<double> dyadic_radii(const GridSpec& g) {
    std::vector<double> radii;
    for (double R = g.spacing(); R <= g.L / 2.0 + 1e-12; R *= 2.0) radii.push_back(R);
    return radii;
}

// Unnormalized DFT of the periodic closed-ball indicator, cached per grid and
// radius index. Real by symmetry.
const std::vector<double>& ball_spectrum(const GridSpec& g, int radius_index) {
    static std::map<std::tuple<int, int, double, int>, std::vector<double>> cache;
    auto key = std::make_tuple(g.n, g.N, g.L, radius_index);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const double R = g.spacing() * std::pow(2.0, radius_index);
    const double R2 = R * R * (1.0 + 1e-12);
    PhysicalField ind(g, 1);
    double* v = ind.comp(0);
    const double h = g.spacing();
    const int N = g.N;
    auto dist = [&](int i) {
        double d = std::abs(i) * h;
        return std::min(d, g.L - d);
    };
    if (g.n == 2) {
        std::size_t flat = 0;
        for (int i0 = 0; i0 < N; ++i0) {
            double d0 = dist(i0);
            for (int i1 = 0; i1 < N; ++i1, ++flat)
                v[flat] = (d0 * d0 + dist(i1) * dist(i1) <= R2) ? 1.0 : 0.0;
        }
    } else {
        std::size_t flat = 0;
        for (int i0 = 0; i0 < N; ++i0) {
            double d0 = dist(i0) * dist(i0);
            for (int i1 = 0; i1 < N; ++i1) {
                double d01 = d0 + dist(i1) * dist(i1);
                for (int i2 = 0; i2 < N; ++i2, ++flat)
                    v[flat] = (d01 + dist(i2) * dist(i2) <= R2) ? 1.0 : 0.0;
            }
        }
    }
    SpectralField s = fft_forward(ind);
    std::vector<double> spec(g.total());
    const double M = double(g.total());
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] = s.coeffs[i].real() * M;
    return cache.emplace(std::move(key), std::move(spec)).first->second;
}

}  // namespace

double morrey_norm(const PhysicalField& u, double p, double q,
                   const MorreyConfig& cfg) {
    const GridSpec& g = u.grid;
    if (!(q >= 1.0 && q <= p && p < inf))
        throw InvalidParameter("morrey_norm: need 1 <= q <= p < inf");
    const std::size_t tot = g.total();
    const double voxel = std::pow(g.spacing(), g.n);
    const double alpha = g.n / p - g.n / q;  // <= 0

    PhysicalField wq(g, 1);
    double total_mass = 0.0;
    for (std::size_t i = 0; i < tot; ++i) {
        double m2 = 0.0;
        for (int c = 0; c < u.components; ++c) {
            double v = u.comp(c)[i];
            m2 += v * v;
        }
        double w = std::pow(m2, q / 2.0);
        wq.comp(0)[i] = w;
        total_mass += w;
    }
    total_mass *= voxel;

    // whole-domain entry (for p = q this is the plain L^q norm)
    double best = std::pow(g.L / 2.0, alpha) * std::pow(total_mass, 1.0 / q);

    SpectralField wqs = fft_forward(wq);
    const std::vector<double> radii = dyadic_radii(g);
    const std::size_t stride = std::size_t(std::max(1, cfg.center_stride));
    for (int ri = 0; ri < int(radii.size()); ++ri) {
        const std::vector<double>& ball = ball_spectrum(g, ri);
        SpectralField conv(g, 1);
        for (std::size_t i = 0; i < tot; ++i) conv.coeffs[i] = wqs.coeffs[i] * ball[i];
        PhysicalField sums = fft_inverse(conv);
        double m = 0.0;
        for (std::size_t i = 0; i < tot; i += stride)
            m = std::max(m, sums.comp(0)[i]);
        m = std::max(m, 0.0) * voxel;
        best = std::max(best, std::pow(radii[std::size_t(ri)], alpha) *
                                  std::pow(m, 1.0 / q));
    }
    return best;
}

namespace {

double lr_sum(const std::vector<double>& vals, double r) {
    if (r == inf) {
        double m = 0.0;
        for (double v : vals) m = std::max(m, v);
        return m;
    }
    double s = 0.0;
    for (double v : vals) s += std::pow(v, r);
    return std::pow(s, 1.0 / r);
}

void check_zero_mean(const PhysicalField& u) {
    double mean = 0.0, m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    for (int c = 0; c < u.components; ++c) {
        double s = 0.0;
        const double* p = u.comp(c);
        for (std::size_t i = 0; i < u.grid.total(); ++i) s += p[i];
        mean = std::max(mean, std::abs(s) / double(u.grid.total()));
    }
    if (mean > 1e-6 * (m + 1e-300))
        throw InvalidField("homogeneous norm of a field with nonzero mean");
}

}  // namespace

NormResult besov_morrey_norm(const PhysicalField& u, const SpaceParams& sp,
                             const DyadicPartition& part, const MorreyConfig& cfg) {
    sp.validate();
    if (sp.n != u.grid.n) throw ShapeError("besov_morrey_norm: dimension mismatch");
    if (sp.mode == LpMode::homogeneous) check_zero_mean(u);
    SpectralField spec = fft_forward(u);
    std::vector<int> range = part.range(sp.mode);
    std::vector<double> terms;
    for (int j : range) {
        PhysicalField blk = fft_inverse(project_block(part, spec, j, sp.mode));
        terms.push_back(std::pow(2.0, sp.s * j) * morrey_norm(blk, sp.p, sp.q, cfg));
    }
    NormResult out;
    out.value = lr_sum(terms, sp.r);
    out.j_lo = range.front();
    out.j_hi = range.back();
    return out;
}

std::vector<std::vector<double>> block_morrey_series(
    const std::vector<PhysicalField>& series, const DyadicPartition& part,
    LpMode mode, double p, double q, const MorreyConfig& cfg) {
    std::vector<std::vector<double>> out;
    out.reserve(series.size());
    std::vector<int> range = part.range(mode);
    for (const PhysicalField& u : series) {
        SpectralField spec = fft_forward(u);
        std::vector<double> row;
        row.reserve(range.size());
        for (int j : range) {
            PhysicalField blk = fft_inverse(project_block(part, spec, j, mode));
            row.push_back(morrey_norm(blk, p, q, cfg));
        }
        out.push_back(std::move(row));
    }
    return out;
}

NormResult chemin_lerner_from_blocks(const std::vector<std::vector<double>>& blocks,
                                     const std::vector<double>& times, double beta,
                                     const SpaceParams& sp,
                                     const DyadicPartition& part) {
    sp.validate();
    if (blocks.size() != times.size() || blocks.empty())
        throw ShapeError("chemin_lerner: series/time length mismatch");
    if (!(beta >= 1.0)) throw InvalidParameter("chemin_lerner: beta must be >= 1");
    std::vector<int> range = part.range(sp.mode);
    if (blocks.front().size() != range.size())
        throw ShapeError("chemin_lerner: block table width mismatch");
    std::vector<double> terms;
    for (std::size_t b = 0; b < range.size(); ++b) {
        double t_int;
        if (beta == inf) {
            t_int = 0.0;
            for (const auto& row : blocks) t_int = std::max(t_int, row[b]);
        } else {
            double acc = 0.0;
            for (std::size_t t = 0; t + 1 < blocks.size(); ++t) {
                double dt = times[t + 1] - times[t];
                if (dt < 0.0) throw InvalidParameter("chemin_lerner: times not sorted");
                acc += 0.5 * dt * (std::pow(blocks[t][b], beta) +
                                   std::pow(blocks[t + 1][b], beta));
            }
            t_int = std::pow(acc, 1.0 / beta);
        }
        terms.push_back(std::pow(2.0, sp.s * range[b]) * t_int);
    }
    NormResult out;
    out.value = lr_sum(terms, sp.r);
    out.j_lo = range.front();
    out.j_hi = range.back();
    return out;
}

NormResult chemin_lerner_norm(const std::vector<PhysicalField>& series,
                              const std::vector<double>& times, double beta,
                              const SpaceParams& sp, const DyadicPartition& part,
                              const MorreyConfig& cfg) {
    if (sp.mode == LpMode::homogeneous)
        for (const PhysicalField& u : series) check_zero_mean(u);
    auto blocks = block_morrey_series(series, part, sp.mode, sp.p, sp.q, cfg);
    return chemin_lerner_from_blocks(blocks, times, beta, sp, part);
}

}  // namespace bml
