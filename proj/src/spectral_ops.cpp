#include "bml/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

namespace bml {

SpectralField differential_op(const SpectralField& u, DiffKind kind, int axis) {
    const GridSpec& g = u.grid;
    const double fs = g.freq_step();
    switch (kind) {
        case DiffKind::partial: {
            if (axis < 0 || axis >= g.n) throw InvalidParameter("partial: axis out of range");
            SpectralField out(g, u.components);
            for (int c = 0; c < u.components; ++c) {
                const cplx* src = u.comp(c);
                cplx* dst = out.comp(c);
                for_each_mode(g, [&](std::size_t i, const int* k) {
                    dst[i] = cplx(0.0, fs * k[axis]) * src[i];
                });
            }
            return out;
        }
        case DiffKind::gradient: {
            if (u.components != 1) throw ShapeError("gradient expects a scalar field");
            SpectralField out(g, g.n);
            const cplx* src = u.comp(0);
            for (int d = 0; d < g.n; ++d) {
                cplx* dst = out.comp(d);
                for_each_mode(g, [&](std::size_t i, const int* k) {
                    dst[i] = cplx(0.0, fs * k[d]) * src[i];
                });
            }
            return out;
        }
        case DiffKind::divergence: {
            if (u.components != g.n) throw ShapeError("divergence expects a vector field");
            SpectralField out(g, 1);
            cplx* dst = out.comp(0);
            for (int d = 0; d < g.n; ++d) {
                const cplx* src = u.comp(d);
                for_each_mode(g, [&](std::size_t i, const int* k) {
                    dst[i] += cplx(0.0, fs * k[d]) * src[i];
                });
            }
            return out;
        }
        case DiffKind::laplacian: {
            SpectralField out(g, u.components);
            for (int c = 0; c < u.components; ++c) {
                const cplx* src = u.comp(c);
                cplx* dst = out.comp(c);
                for_each_mode(g, [&](std::size_t i, const int* k) {
                    double k2 = 0.0;
                    for (int d = 0; d < g.n; ++d) k2 += double(k[d]) * k[d];
                    dst[i] = -(fs * fs * k2) * src[i];
                });
            }
            return out;
        }
    }
    throw InvalidParameter("differential_op: unknown kind");
}

SpectralField leray_project(const SpectralField& u) {
    const GridSpec& g = u.grid;
    if (u.components != g.n) throw ShapeError("leray_project expects a vector field");
    SpectralField out(g, g.n);
    for_each_mode(g, [&](std::size_t i, const int* k) {
        double k2 = 0.0;
        for (int d = 0; d < g.n; ++d) k2 += double(k[d]) * k[d];
        if (k2 == 0.0) {
            for (int d = 0; d < g.n; ++d) out.comp(d)[i] = u.comp(d)[i];
            return;
        }
        cplx kdotu(0.0, 0.0);
        for (int d = 0; d < g.n; ++d) kdotu += double(k[d]) * u.comp(d)[i];
        for (int d = 0; d < g.n; ++d)
            out.comp(d)[i] = u.comp(d)[i] - (double(k[d]) / k2) * kdotu;
    });
    return out;
}

SpectralField heat_evolve(const SpectralField& u, double t) {
    if (t < 0.0) throw InvalidParameter("heat_evolve: t must be nonnegative");
    const GridSpec& g = u.grid;
    const double fs2 = g.freq_step() * g.freq_step();
    SpectralField out(g, u.components);
    for (int c = 0; c < u.components; ++c) {
        const cplx* src = u.comp(c);
        cplx* dst = out.comp(c);
        for_each_mode(g, [&](std::size_t i, const int* k) {
            double k2 = 0.0;
            for (int d = 0; d < g.n; ++d) k2 += double(k[d]) * k[d];
            dst[i] = src[i] * std::exp(-t * fs2 * k2);
        });
    }
    return out;
}

void dealias(SpectralField& u) {
    const GridSpec& g = u.grid;
    const int kmax = g.N / 3;
    for (int c = 0; c < u.components; ++c) {
        cplx* dst = u.comp(c);
        for_each_mode(g, [&](std::size_t i, const int* k) {
            for (int d = 0; d < g.n; ++d)
                if (std::abs(k[d]) > kmax) {
                    dst[i] = cplx(0.0, 0.0);
                    return;
                }
        });
    }
}

namespace {

// Pointwise product of selected components in physical space, then forward
// transform and 2/3 truncation.
SpectralField product_1c(const SpectralField& a, int ca, const SpectralField& b, int cb) {
    PhysicalField pa = fft_inverse(a);
    PhysicalField pb = fft_inverse(b);
    PhysicalField prod(a.grid, 1);
    const std::size_t tot = a.grid.total();
    const double* x = pa.comp(ca);
    const double* y = pb.comp(cb);
    double* z = prod.comp(0);
    for (std::size_t i = 0; i < tot; ++i) z[i] = x[i] * y[i];
    SpectralField out = fft_forward(prod);
    dealias(out);
    return out;
}

}  // namespace

SpectralField multiply(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid == b.grid)) throw ShapeError("multiply: grid mismatch");
    if (a.components != 1 || b.components != 1)
        throw ShapeError("multiply expects scalar fields");
    return product_1c(a, 0, b, 0);
}

SpectralField advect(const SpectralField& v, const SpectralField& u) {
    const GridSpec& g = u.grid;
    if (!(g == v.grid)) throw ShapeError("advect: grid mismatch");
    if (v.components != g.n) throw ShapeError("advect: v must be a vector field");
    PhysicalField pv = fft_inverse(v);
    SpectralField out(g, u.components);
    const std::size_t tot = g.total();
    for (int c = 0; c < u.components; ++c) {
        PhysicalField acc(g, 1);
        double* z = acc.comp(0);
        SpectralField uc(g, 1);
        std::copy(u.comp(c), u.comp(c) + tot, uc.comp(0));
        for (int d = 0; d < g.n; ++d) {
            PhysicalField du = fft_inverse(differential_op(uc, DiffKind::partial, d));
            const double* vd = pv.comp(d);
            const double* dud = du.comp(0);
            for (std::size_t i = 0; i < tot; ++i) z[i] += vd[i] * dud[i];
        }
        SpectralField sc = fft_forward(acc);
        dealias(sc);
        std::copy(sc.comp(0), sc.comp(0) + tot, out.comp(c));
    }
    return out;
}

SpectralField scalar_times(const SpectralField& a, const SpectralField& g) {
    if (!(a.grid == g.grid)) throw ShapeError("scalar_times: grid mismatch");
    if (a.components != 1) throw ShapeError("scalar_times: a must be scalar");
    PhysicalField pa = fft_inverse(a);
    PhysicalField pg = fft_inverse(g);
    PhysicalField prod(g.grid, g.components);
    const std::size_t tot = g.grid.total();
    const double* x = pa.comp(0);
    for (int c = 0; c < g.components; ++c) {
        const double* y = pg.comp(c);
        double* z = prod.comp(c);
        for (std::size_t i = 0; i < tot; ++i) z[i] = x[i] * y[i];
    }
    SpectralField out = fft_forward(prod);
    dealias(out);
    return out;
}

double spectral_l2(const SpectralField& u) {
    double s = 0.0;
    for (const auto& c : u.coeffs) s += std::norm(c);
    return std::sqrt(s);
}

double physical_l2(const PhysicalField& u) {
    double s = 0.0;
    for (double v : u.values) s += v * v;
    return std::sqrt(s / double(u.grid.total()));
}

double linf_norm(const PhysicalField& u) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
}

double divergence_linf(const SpectralField& v) {
    SpectralField d = differential_op(v, DiffKind::divergence);
    double m = 0.0;
    for (const auto& c : d.coeffs) m = std::max(m, std::abs(c));
    return m;
}

double grad_linf(const SpectralField& u) {
    const GridSpec& g = u.grid;
    const std::size_t tot = g.total();
    std::vector<double> mag2(tot, 0.0);
    for (int c = 0; c < u.components; ++c) {
        SpectralField uc(g, 1);
        std::copy(u.comp(c), u.comp(c) + tot, uc.comp(0));
        for (int d = 0; d < g.n; ++d) {
            PhysicalField du = fft_inverse(differential_op(uc, DiffKind::partial, d));
            const double* p = du.comp(0);
            for (std::size_t i = 0; i < tot; ++i) mag2[i] += p[i] * p[i];
        }
    }
    double m = 0.0;
    for (double v : mag2) m = std::max(m, v);
    return std::sqrt(m);
}

void require_solenoidal(const SpectralField& v, double tol, const char* who) {
    double scale = spectral_l2(v);
    if (scale == 0.0) return;
    if (divergence_linf(v) > tol * scale)
        throw InvalidField(std::string(who) + ": velocity is not divergence-free");
}

}  // namespace bml
