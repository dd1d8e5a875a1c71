#pragma once

#include "bml/interp.hpp"
#include "bml/spectral_ops.hpp"

namespace bml {

struct FlowOptions {
    double cfl = 1.0;           // max displacement per step in grid spacings
    int half_width = 8;         // interpolation accuracy for characteristics
    int field_half_width = 12;  // interpolation accuracy for transported data
    bool track_forward = true;  // also integrate the forward map
    double div_tol = 1e-8;      // relative divergence defect allowed in u
};

// Volume-preserving flow of a divergence-free velocity, stored as periodic
// displacement fields: forward[t](y) = X(y,t) - y, inverse[t](x) = X^{-1}(x,t) - x.
struct FlowMap {
    GridSpec grid;
    std::vector<double> times;
    std::vector<PhysicalField> forward;
    std::vector<PhysicalField> inverse;
    std::vector<double> gamma;  // exp of the accumulated Lipschitz integral

    // max_y |X^{-1}(X(y,t_i)) - y| (needs both maps)
    double composition_defect(std::size_t i, int half_width = 12) const;
    // max_y |det DX(y,t_i) - 1| via spectral differentiation of the forward map
    double jacobian_defect(std::size_t i) const;
};

// Integrate characteristics of the velocity series sampled at uniform step dt
// (series[i] at time i*dt) with a 4th-order scheme; the inverse map is built
// incrementally from one-step departure points.
FlowMap integrate_flow(const std::vector<SpectralField>& u_series, double dt,
                       const FlowOptions& opts = {});

// a0 composed with the forward map at times[i]: a(x) = a0(X(x, t_i)).
PhysicalField compose(const PhysicalField& a0, const FlowMap& X, std::size_t i,
                      int half_width = 12);

// Transport solution a(t) = a0 o X^{-1}(t), sampled on the grid at every step.
struct TransportSolution {
    std::vector<double> times;
    std::vector<PhysicalField> a_series;
    FlowMap flow;
};
TransportSolution solve_transport(const PhysicalField& a0,
                                  const std::vector<SpectralField>& u_series,
                                  double dt, const FlowOptions& opts = {});

}  // namespace bml
