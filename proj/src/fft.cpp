#include "bml/fft.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "bml/errors.hpp"

namespace bml {

namespace {

// Twiddle factors e^{-2 pi i j / n}, j = 0..n/2-1, cached per length.
const std::vector<cplx>& twiddles(int n) {
    static std::map<int, std::vector<cplx>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cplx> w(n / 2);
    for (int j = 0; j < n / 2; ++j) {
        double ang = -2.0 * std::numbers::pi * j / n;
        w[j] = cplx(std::cos(ang), std::sin(ang));
    }
    return cache.emplace(n, std::move(w)).first->second;
}

}  // namespace

void fft_1d(cplx* a, int n, int sign) {
    if (n <= 1) return;
    // bit reversal
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const auto& w = twiddles(n);
    for (int len = 2; len <= n; len <<= 1) {
        int step = n / len;
        for (int i = 0; i < n; i += len) {
            for (int j = 0; j < len / 2; ++j) {
                cplx tw = w[std::size_t(j) * step];
                if (sign > 0) tw = std::conj(tw);
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * tw;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

void fft_nd(cplx* data, int n, int N, int sign) {
    std::vector<cplx> line(N);
    if (n == 2) {
        // axis 1 (contiguous)
        for (int r = 0; r < N; ++r) fft_1d(data + std::size_t(r) * N, N, sign);
        // axis 0
        for (int c = 0; c < N; ++c) {
            for (int r = 0; r < N; ++r) line[r] = data[std::size_t(r) * N + c];
            fft_1d(line.data(), N, sign);
            for (int r = 0; r < N; ++r) data[std::size_t(r) * N + c] = line[r];
        }
    } else if (n == 3) {
        const std::size_t NN = std::size_t(N) * N;
        for (std::size_t p = 0; p < NN; ++p) fft_1d(data + p * N, N, sign);
        for (int i0 = 0; i0 < N; ++i0) {
            cplx* slab = data + std::size_t(i0) * NN;
            for (int i2 = 0; i2 < N; ++i2) {
                for (int i1 = 0; i1 < N; ++i1) line[i1] = slab[std::size_t(i1) * N + i2];
                fft_1d(line.data(), N, sign);
                for (int i1 = 0; i1 < N; ++i1) slab[std::size_t(i1) * N + i2] = line[i1];
            }
        }
        for (int i1 = 0; i1 < N; ++i1) {
            for (int i2 = 0; i2 < N; ++i2) {
                for (int i0 = 0; i0 < N; ++i0)
                    line[i0] = data[std::size_t(i0) * NN + std::size_t(i1) * N + i2];
                fft_1d(line.data(), N, sign);
                for (int i0 = 0; i0 < N; ++i0)
                    data[std::size_t(i0) * NN + std::size_t(i1) * N + i2] = line[i0];
            }
        }
    } else {
        throw ShapeError("fft_nd: dimension must be 2 or 3");
    }
}

SpectralField fft_forward(const PhysicalField& u) {
    u.check_finite();
    SpectralField out(u.grid, u.components);
    const std::size_t tot = u.grid.total();
    const double inv = 1.0 / double(tot);
    std::vector<cplx> buf(tot);
    for (int c = 0; c < u.components; ++c) {
        const double* src = u.comp(c);
        for (std::size_t i = 0; i < tot; ++i) buf[i] = cplx(src[i], 0.0);
        fft_nd(buf.data(), u.grid.n, u.grid.N, -1);
        cplx* dst = out.comp(c);
        for (std::size_t i = 0; i < tot; ++i) dst[i] = buf[i] * inv;
    }
    return out;
}

PhysicalField fft_inverse(const SpectralField& u) {
    PhysicalField out(u.grid, u.components);
    const std::size_t tot = u.grid.total();
    std::vector<cplx> buf(tot);
    for (int c = 0; c < u.components; ++c) {
        const cplx* src = u.comp(c);
        std::copy(src, src + tot, buf.begin());
        fft_nd(buf.data(), u.grid.n, u.grid.N, +1);
        double* dst = out.comp(c);
        for (std::size_t i = 0; i < tot; ++i) dst[i] = buf[i].real();
    }
    return out;
}

}  // namespace bml
