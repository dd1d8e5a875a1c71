#pragma once

#include "bml/grid.hpp"

namespace bml {

// In-place radix-2 complex FFT, length must be a power of two.
// sign = -1: forward (e^{-i...}), sign = +1: inverse (no normalization).
void fft_1d(cplx* data, int n, int sign);

// Multi-dimensional transforms over all components.
// Forward: c_k = (1/N^n) sum_x u(x) e^{-i xi_k.x}  (so c_0 is the mean).
SpectralField fft_forward(const PhysicalField& u);
// Inverse: u(x) = sum_k c_k e^{i xi_k.x}; imaginary residue discarded.
PhysicalField fft_inverse(const SpectralField& u);

// Complex-to-complex n-d transform on a flat array of size N^n (helper used
// by fft_forward/fft_inverse and by the interpolation machinery).
void fft_nd(cplx* data, int n, int N, int sign);

}  // namespace bml
