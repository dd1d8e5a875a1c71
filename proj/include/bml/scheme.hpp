#pragma once

#include "bml/flow.hpp"
#include "bml/norms.hpp"
#include "bml/stokes.hpp"

namespace bml {

enum class SchemeMode { local, global };
enum class SchemeInit { by_mode, zero, heat };

struct SchemeConfig {
    SpaceParams sp;  // homogeneous scale for the velocity (r is the velocity sum)
    double T = 0.25;
    double dt = 2.5e-3;
    int m_max = 10;
    double eps = 0.25;            // weaker-index gap for the contraction norms
    double smallness_c = 0.25;    // density gate
    double smallness_c_prime = 0.1;  // velocity gate (global mode)
    double cauchy_tol = 0.75;     // delta-ratio threshold (3 consecutive stop)
    SchemeMode mode = SchemeMode::local;
    SchemeInit init = SchemeInit::by_mode;  // override the mode's u^0 choice
    LinearizedOptions lin;
    FlowOptions flow;
    MorreyConfig morrey;
    int norm_stride = 10;  // time subsampling for norm quadrature

    // admitted exponent window of the wellposedness theorem
    void validate() const;
    double lambda() const { return 2.0 * (sp.n / sp.q - sp.n / sp.p); }
    double theta() const { return (sp.s + 1.0 - sp.n / sp.p) / 2.0; }
};

struct GateVerdict {
    bool pass = false;
    double a_norm = 0.0;  // measured density gate norm
    double u_norm = 0.0;  // measured velocity norm (checked in global mode)
    double c = 0.0;
    double c_prime = 0.0;
};

struct IterationState {
    int m = 0;
    std::vector<double> times;
    std::vector<PhysicalField> a_series;        // empty at m = 0
    std::vector<SpectralField> u_series;
    std::vector<SpectralField> grad_pi_series;  // empty at m = 0
    double F_norm = 0.0;
    double gamma = 1.0;
    double linf_a = 0.0;
};

GateVerdict check_smallness(const PhysicalField& a0, const SpectralField& u0,
                            const SchemeConfig& cfg, const DyadicPartition& part);

IterationState init_iterates(const PhysicalField& a0, const SpectralField& u0,
                             const SchemeConfig& cfg, const DyadicPartition& part);

IterationState advance_iterate(const IterationState& state, const PhysicalField& a0,
                               const SpectralField& u0, const SchemeConfig& cfg,
                               const DyadicPartition& part);

// Distance between two iterates in the weaker-index contraction norm.
double iterate_distance(const IterationState& x, const IterationState& y,
                        const SchemeConfig& cfg, const DyadicPartition& part);

struct ConvergenceReport {
    std::vector<double> F_norms;     // per iterate m = 1..
    std::vector<double> gammas;
    std::vector<double> deltas;      // weaker-norm gaps, m = 2..
    std::vector<double> linf_a;
    std::vector<double> dt_a_norms;  // discrete time-derivative diagnostics
    std::vector<double> dt_u_norms;
    double rho = 0.0;  // geometric fit ratio of deltas
    double r2 = 0.0;
    bool converged = false;
    int iterations = 0;
    GateVerdict gate;
    int j_lo = 0, j_hi = 0;
    IterationState final_state;
};

ConvergenceReport run_scheme(const PhysicalField& a0, const SpectralField& u0,
                             const SchemeConfig& cfg);

}  // namespace bml
