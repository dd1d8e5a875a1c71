#pragma once

#include <map>
#include <string>
#include <utility>

#include "bml/families.hpp"
#include "bml/norms.hpp"

namespace bml {

// Outcome of measuring both sides of an estimate over a field family.
// fitted_constant is the worst lhs/rhs ratio; level_constants hold per-level
// (shell, dilation, or scenario) fits whose spread defines stability.
struct InequalityReport {
    std::string id;
    std::vector<std::pair<double, double>> samples;  // (lhs, rhs)
    double fitted_constant = 0.0;
    std::map<int, double> level_constants;
    double stability = 0.0;       // max/min over level_constants
    double stability_limit = 0.0;
    bool pass = false;
    std::map<std::string, double> extras;

    void finish(double limit);  // derive fitted_constant/stability/pass
};

// Derivative scaling on dyadic shells (order k) plus the sup-norm embedding
// |u|_inf <= C 2^{j n/p} |u|_M; constants must be j-stable.
InequalityReport verify_bernstein(const GridSpec& grid, int j_lo, int j_hi, int k,
                                  double p, double q, int count, std::uint64_t seed,
                                  double stability_limit = 4.0);

// Transport commutator bound: l^r of 2^{sj}|[Delta_j, v.grad]u|_M against
// |u|_{N^s}(|v|_{N^{n/p+1}} + |grad v|_inf); dilation-stable constant.
InequalityReport verify_commutator_uv(const GridSpec& grid, const SpaceParams& sp,
                                      int count, std::uint64_t seed,
                                      double stability_limit = 4.0);

// Multiplication commutator bound with the L1-in-time quadrature; stability
// across doubling the time horizon.
InequalityReport verify_commutator_pi(const GridSpec& grid, const SpaceParams& sp,
                                      int count, std::uint64_t seed,
                                      double stability_limit = 4.0);

// Localized heat decay: fit |Delta_j e^{t lap} u|_M ~ C e^{-c t 4^j} per shell;
// c must land in the ring-radius window and (C, c) must be j-stable.
InequalityReport verify_heat_localized(const GridSpec& grid, int j_lo, int j_hi,
                                       double p, double q, int count,
                                       std::uint64_t seed,
                                       double stability_limit = 2.0);

// Heat flow in the time-integrated scale: sup-in-time bound, the
// beta-weighted bound with the fitted rate, and vanishing as T -> 0.
InequalityReport verify_heat_chemin(const GridSpec& grid, const SpaceParams& sp,
                                    double beta, int count, std::uint64_t seed);

// Solver-coupled estimates measured on actual runs: frozen-density transport,
// unforced heat flow, and the small-contrast linearized system.
InequalityReport verify_transport_stokes_linns(const GridSpec& grid,
                                               const SpaceParams& sp, int seeds,
                                               std::uint64_t seed,
                                               double stability_limit = 8.0);

// Product estimates a lap u, a grad pi, v.grad u at the scheme's indices.
InequalityReport verify_product_estimates(const GridSpec& grid,
                                          const SpaceParams& sp, int count,
                                          std::uint64_t seed,
                                          double stability_limit = 4.0);

}  // namespace bml
