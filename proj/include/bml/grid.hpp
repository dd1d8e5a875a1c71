#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "bml/errors.hpp"

namespace bml {

using cplx = std::complex<double>;

// Periodic grid [0,L)^n with N points per axis, N a power of two.
struct GridSpec {
    int n = 3;           // spatial dimension, 2 or 3
    int N = 32;          // points per axis
    double L = 6.283185307179586476925286766559;  // period

    GridSpec() = default;
    GridSpec(int n_, int N_, double L_);

    std::size_t total() const;       // N^n
    double spacing() const { return L / N; }
    double freq_step() const;        // 2*pi/L, lattice step in frequency
    double nyquist() const;          // pi*N/L, largest representable |xi| per axis

    // Integer wavenumber of axis index i (0..N-1 -> -N/2..N/2-1 wrapped).
    int wavenumber(int i) const { return i < N / 2 ? i : i - N; }

    bool operator==(const GridSpec& o) const {
        return n == o.n && N == o.N && L == o.L;
    }
};

// Real samples on the grid, row-major; component-major storage
// (values[c*total + flat_index]).
struct PhysicalField {
    GridSpec grid;
    int components = 1;
    std::vector<double> values;

    PhysicalField() = default;
    PhysicalField(const GridSpec& g, int comps);

    double* comp(int c) { return values.data() + std::size_t(c) * grid.total(); }
    const double* comp(int c) const {
        return values.data() + std::size_t(c) * grid.total();
    }
    void check_finite() const;  // throws InvalidField
};

// Complex Fourier coefficients, full spectrum, same layout as PhysicalField.
// Convention: u(x) = sum_k c_k exp(i xi_k . x), xi_k = (2*pi/L) k.
struct SpectralField {
    GridSpec grid;
    int components = 1;
    std::vector<cplx> coeffs;

    SpectralField() = default;
    SpectralField(const GridSpec& g, int comps);

    cplx* comp(int c) { return coeffs.data() + std::size_t(c) * grid.total(); }
    const cplx* comp(int c) const {
        return coeffs.data() + std::size_t(c) * grid.total();
    }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);

    cplx mean(int c = 0) const { return comp(c)[0]; }
};

// Iteration over the frequency lattice: calls f(flat, k[0..n-1]) for every
// lattice site, k the integer wavenumbers.
template <typename F>
void for_each_mode(const GridSpec& g, F&& f) {
    const int N = g.N;
    int k[3] = {0, 0, 0};
    if (g.n == 2) {
        std::size_t flat = 0;
        for (int i0 = 0; i0 < N; ++i0) {
            k[0] = g.wavenumber(i0);
            for (int i1 = 0; i1 < N; ++i1, ++flat) {
                k[1] = g.wavenumber(i1);
                f(flat, k);
            }
        }
    } else {
        std::size_t flat = 0;
        for (int i0 = 0; i0 < N; ++i0) {
            k[0] = g.wavenumber(i0);
            for (int i1 = 0; i1 < N; ++i1) {
                k[1] = g.wavenumber(i1);
                for (int i2 = 0; i2 < N; ++i2, ++flat) {
                    k[2] = g.wavenumber(i2);
                    f(flat, k);
                }
            }
        }
    }
}

}  // namespace bml
