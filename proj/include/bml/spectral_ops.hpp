#pragma once

#include "bml/fft.hpp"
#include "bml/grid.hpp"

namespace bml {

enum class DiffKind { gradient, divergence, laplacian, partial };

// Exact Fourier-multiplier derivatives: i xi, i xi . , -|xi|^2, i xi_axis.
// gradient of a scalar yields n components; divergence of a vector yields 1.
SpectralField differential_op(const SpectralField& u, DiffKind kind, int axis = 0);

// Orthogonal projection onto divergence-free fields, I - xi xi^T/|xi|^2.
// The xi = 0 mode is passed through unchanged.
SpectralField leray_project(const SpectralField& u);

// Exact heat semigroup e^{t Laplacian}: multiplier e^{-t|xi|^2}.
SpectralField heat_evolve(const SpectralField& u, double t);

// 2/3-rule truncation: zeroes every mode with |k_d| > N/3 on some axis.
void dealias(SpectralField& u);

// Dealiased pointwise product of two scalar spectral fields.
SpectralField multiply(const SpectralField& a, const SpectralField& b);

// Dealiased advection term v . grad u (v vector, u scalar or vector with
// matching dimension; result has u's component count).
SpectralField advect(const SpectralField& v, const SpectralField& u);

// Dealiased product of scalar a with every component of g.
SpectralField scalar_times(const SpectralField& a, const SpectralField& g);

// Diagnostics.
double spectral_l2(const SpectralField& u);          // sqrt(sum |c_k|^2) over comps
double physical_l2(const PhysicalField& u);          // sqrt(mean |u|^2) over comps
double linf_norm(const PhysicalField& u);            // max |u| over grid and comps
double divergence_linf(const SpectralField& v);      // max_k |xi . v_k| (vector)
double grad_linf(const SpectralField& u);            // max over grid of |grad u| (euclidean)

// Relative divergence defect |xi.v|_max / max(1e-300, l2(v)); throws
// InvalidField when above tol.
void require_solenoidal(const SpectralField& v, double tol, const char* who);

}  // namespace bml
