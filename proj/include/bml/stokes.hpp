#pragma once

#include "bml/spectral_ops.hpp"

namespace bml {

// Velocity/pressure-gradient trajectories on a uniform time grid.
struct StokesSolution {
    std::vector<double> times;
    std::vector<SpectralField> u_series;
    std::vector<SpectralField> grad_pi_series;
    std::vector<int> inner_sweeps;            // fixed-point sweeps per step
    std::vector<double> contraction_ratios;   // last observed ratio per step
};

// grad pi = grad lap^{-1} div f (zero mode dropped); the complement of the
// divergence-free projection of f.
SpectralField pressure_from_forcing(const SpectralField& f);

// Heat flow with projected forcing, one mode at a time with the exact
// integrating factor and piecewise-linear forcing in time (second order).
// f_series may be empty (unforced) or match u0's grid with steps+1 entries.
StokesSolution solve_stokes(const SpectralField& u0,
                            const std::vector<SpectralField>& f_series, double dt,
                            int steps);

struct LinearizedOptions {
    double a_max = 0.95;      // admissible sup of the density perturbation
    double inner_tol = 1e-11; // relative update size declaring convergence
    int inner_max = 60;       // sweep budget per step
};

// Perturbed system: the variable-density terms and the drift are treated as
// forcing and resolved by an inner fixed point at every time level:
//   F = a (lap u - grad pi) - v . grad u,   grad pi = grad lap^{-1} div F,
//   u(t+dt) from the integrating-factor step with P F.
// a_series (scalar) and v_series (vector, solenoidal) live on the same time
// grid as the solution. Throws ContractionFailure when the sweep diverges.
StokesSolution solve_linearized_ns(const SpectralField& u0,
                                   const std::vector<PhysicalField>& a_series,
                                   const std::vector<SpectralField>& v_series,
                                   double dt, const LinearizedOptions& opts = {});

}  // namespace bml
