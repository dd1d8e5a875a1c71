#include "bml/scheme.hpp"

#include <cmath>

#include "bml/fft.hpp"
#include "bml/fit.hpp"

namespace bml {

namespace {

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

// strided sample indices including both endpoints
std::vector<std::size_t> stride_indices(std::size_t count, int stride) {
    std::vector<std::size_t> idx;
    const std::size_t st = std::size_t(std::max(1, stride));
    for (std::size_t i = 0; i < count; i += st) idx.push_back(i);
    if (idx.back() != count - 1) idx.push_back(count - 1);
    return idx;
}

std::vector<double> pick(const std::vector<double>& times,
                         const std::vector<std::size_t>& idx) {
    std::vector<double> out;
    for (std::size_t i : idx) out.push_back(times[i]);
    return out;
}

std::vector<PhysicalField> to_physical(const std::vector<SpectralField>& series,
                                       const std::vector<std::size_t>& idx) {
    std::vector<PhysicalField> out;
    for (std::size_t i : idx) out.push_back(fft_inverse(series[i]));
    return out;
}

std::vector<PhysicalField> pick_fields(const std::vector<PhysicalField>& series,
                                       const std::vector<std::size_t>& idx) {
    std::vector<PhysicalField> out;
    for (std::size_t i : idx) out.push_back(series[i]);
    return out;
}

// composite norm of a velocity/pressure trajectory:
//   sup-in-time blocks at s, L1-in-time blocks at s+2, L1 pressure blocks at s
double composite_f_norm(const std::vector<PhysicalField>& u,
                        const std::vector<PhysicalField>& gpi,
                        const std::vector<double>& times, const SchemeConfig& cfg,
                        const DyadicPartition& part) {
    SpaceParams sp = cfg.sp;
    sp.mode = LpMode::homogeneous;
    auto ub = block_morrey_series(u, part, sp.mode, sp.p, sp.q, cfg.morrey);
    double val = chemin_lerner_from_blocks(ub, times, inf, sp, part).value;
    SpaceParams sp2 = sp;
    sp2.s = sp.s + 2.0;
    val += chemin_lerner_from_blocks(ub, times, 1.0, sp2, part).value;
    auto pb = block_morrey_series(gpi, part, sp.mode, sp.p, sp.q, cfg.morrey);
    val += chemin_lerner_from_blocks(pb, times, 1.0, sp, part).value;
    return val;
}

std::vector<PhysicalField> series_difference(const std::vector<PhysicalField>& a,
                                             const std::vector<PhysicalField>& b) {
    std::vector<PhysicalField> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        PhysicalField d = a[i];
        for (std::size_t t = 0; t < d.values.size(); ++t)
            d.values[t] -= b[i].values[t];
        out.push_back(std::move(d));
    }
    return out;
}

// L2-in-time norm of the discrete time derivative at index n/p - 1
double time_derivative_norm(const std::vector<PhysicalField>& series,
                            const std::vector<double>& times,
                            const SchemeConfig& cfg, const DyadicPartition& part) {
    if (series.size() < 2) return 0.0;
    std::vector<PhysicalField> diff;
    std::vector<double> mid;
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        PhysicalField d = series[i + 1];
        const double dt = times[i + 1] - times[i];
        for (std::size_t t = 0; t < d.values.size(); ++t)
            d.values[t] = (d.values[t] - series[i].values[t]) / dt;
        diff.push_back(std::move(d));
        mid.push_back(0.5 * (times[i] + times[i + 1]));
    }
    if (diff.size() == 1) {
        diff.push_back(diff.front());
        mid.push_back(mid.front() + 1e-6);
    }
    SpaceParams sp = cfg.sp;
    sp.mode = LpMode::homogeneous;
    sp.s = cfg.sp.n / cfg.sp.p - 1.0;
    sp.r = 1.0;
    auto blocks = block_morrey_series(diff, part, sp.mode, sp.p, sp.q, cfg.morrey);
    return chemin_lerner_from_blocks(blocks, mid, 2.0, sp, part).value;
}

}  // namespace

void SchemeConfig::validate() const {
    sp.validate();
    if (sp.mode != LpMode::homogeneous)
        throw ConfigError("scheme: velocity scale must be homogeneous");
    const double np = sp.n / sp.p;
    const bool critical = near(sp.s, np - 1.0) && np > 1.0;
    const bool subcritical = sp.s > np - 1.0 && (sp.s < np || near(sp.s, np)) && np >= 1.0;
    if (mode == SchemeMode::global) {
        if (!critical)
            throw ConfigError("scheme: global mode needs s = n/p - 1 with n/p > 1");
    } else if (!critical && !subcritical) {
        throw ConfigError("scheme: s outside the admitted window");
    }
    if (!(T > 0.0) || !(dt > 0.0) || dt > T)
        throw ConfigError("scheme: bad time horizon");
    if (m_max < 1) throw ConfigError("scheme: m_max must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("scheme: eps must be in (0,1)");
    if (!(smallness_c > 0.0) || !(smallness_c_prime > 0.0))
        throw ConfigError("scheme: gate thresholds must be positive");
    if (!(cauchy_tol > 0.0 && cauchy_tol < 1.0))
        throw ConfigError("scheme: cauchy_tol must be in (0,1)");
}

GateVerdict check_smallness(const PhysicalField& a0, const SpectralField& u0,
                            const SchemeConfig& cfg, const DyadicPartition& part) {
    GateVerdict v;
    v.c = cfg.smallness_c;
    v.c_prime = cfg.smallness_c_prime;
    SpaceParams gate = cfg.sp;
    gate.mode = LpMode::homogeneous;
    gate.s = cfg.sp.n / cfg.sp.p;
    gate.r = inf;
    v.a_norm = besov_morrey_norm(a0, gate, part, cfg.morrey).value + linf_norm(a0);
    SpaceParams vel = cfg.sp;
    vel.mode = LpMode::homogeneous;
    v.u_norm = besov_morrey_norm(fft_inverse(u0), vel, part, cfg.morrey).value;
    v.pass = v.a_norm <= cfg.smallness_c &&
             (cfg.mode != SchemeMode::global || v.u_norm <= cfg.smallness_c_prime);
    return v;
}

IterationState init_iterates(const PhysicalField& a0, const SpectralField& u0,
                             const SchemeConfig& cfg, const DyadicPartition& part) {
    cfg.validate();
    require_solenoidal(u0, 1e-8, "init_iterates");
    GateVerdict gate = check_smallness(a0, u0, cfg, part);
    if (!gate.pass)
        throw SmallnessGateFailed("scheme gate: measured |a0| = " +
                                  std::to_string(gate.a_norm) + " (c = " +
                                  std::to_string(gate.c) + "), |u0| = " +
                                  std::to_string(gate.u_norm) + " (c' = " +
                                  std::to_string(gate.c_prime) + ")");

    IterationState st;
    st.m = 0;
    const int steps = int(std::round(cfg.T / cfg.dt));
    for (int i = 0; i <= steps; ++i) st.times.push_back(i * cfg.dt);

    SchemeInit init = cfg.init;
    if (init == SchemeInit::by_mode)
        init = cfg.mode == SchemeMode::global ? SchemeInit::zero : SchemeInit::heat;
    if (init == SchemeInit::zero) {
        st.u_series.assign(st.times.size(), SpectralField(u0.grid, u0.grid.n));
    } else {
        SpectralField trunc = low_pass(part, u0, 1, LpMode::homogeneous);
        for (double t : st.times) st.u_series.push_back(heat_evolve(trunc, t));
    }
    return st;
}

IterationState advance_iterate(const IterationState& state, const PhysicalField& a0,
                               const SpectralField& u0, const SchemeConfig& cfg,
                               const DyadicPartition& part) {
    const int m_new = state.m + 1;
    SpectralField a0_trunc =
        low_pass(part, fft_forward(a0), m_new, LpMode::homogeneous);
    SpectralField u0_trunc = low_pass(part, u0, m_new, LpMode::homogeneous);

    FlowOptions fo = cfg.flow;
    fo.track_forward = false;
    TransportSolution tr =
        solve_transport(fft_inverse(a0_trunc), state.u_series, cfg.dt, fo);

    StokesSolution ns =
        solve_linearized_ns(u0_trunc, tr.a_series, state.u_series, cfg.dt, cfg.lin);

    IterationState next;
    next.m = m_new;
    next.times = state.times;
    next.a_series = std::move(tr.a_series);
    next.u_series = std::move(ns.u_series);
    next.grad_pi_series = std::move(ns.grad_pi_series);
    next.gamma = tr.flow.gamma.back();
    for (const PhysicalField& a : next.a_series)
        next.linf_a = std::max(next.linf_a, linf_norm(a));

    auto idx = stride_indices(next.times.size(), cfg.norm_stride);
    next.F_norm = composite_f_norm(to_physical(next.u_series, idx),
                                   to_physical(next.grad_pi_series, idx),
                                   pick(next.times, idx), cfg, part);
    return next;
}

double iterate_distance(const IterationState& x, const IterationState& y,
                        const SchemeConfig& cfg, const DyadicPartition& part) {
    if (x.times.size() != y.times.size())
        throw ShapeError("iterate_distance: mismatched time grids");
    auto idx = stride_indices(x.times.size(), cfg.norm_stride);
    const std::vector<double> times = pick(x.times, idx);

    SpaceParams weak = cfg.sp;
    weak.mode = LpMode::homogeneous;
    weak.s = cfg.sp.s - cfg.eps;
    weak.r = 1.0;

    auto du = series_difference(to_physical(x.u_series, idx),
                                to_physical(y.u_series, idx));
    auto ub = block_morrey_series(du, part, weak.mode, weak.p, weak.q, cfg.morrey);
    double val = chemin_lerner_from_blocks(ub, times, inf, weak, part).value;
    SpaceParams weak2 = weak;
    weak2.s = weak.s + 2.0;
    val += chemin_lerner_from_blocks(ub, times, 1.0, weak2, part).value;

    if (!x.grad_pi_series.empty() && !y.grad_pi_series.empty()) {
        auto dp = series_difference(to_physical(x.grad_pi_series, idx),
                                    to_physical(y.grad_pi_series, idx));
        auto pb = block_morrey_series(dp, part, weak.mode, weak.p, weak.q, cfg.morrey);
        val += chemin_lerner_from_blocks(pb, times, 1.0, weak, part).value;
    }
    if (!x.a_series.empty() && !y.a_series.empty()) {
        SpaceParams aweak = cfg.sp;
        aweak.mode = LpMode::homogeneous;
        aweak.s = cfg.sp.n / cfg.sp.p - cfg.eps;
        aweak.r = inf;
        auto da = series_difference(pick_fields(x.a_series, idx),
                                    pick_fields(y.a_series, idx));
        auto ab = block_morrey_series(da, part, aweak.mode, aweak.p, aweak.q,
                                      cfg.morrey);
        val += chemin_lerner_from_blocks(ab, times, inf, aweak, part).value;
    }
    return val;
}

ConvergenceReport run_scheme(const PhysicalField& a0, const SpectralField& u0,
                             const SchemeConfig& cfg) {
    const DyadicPartition part = build_partition(a0.grid);
    ConvergenceReport rep;
    rep.j_lo = part.j_min;
    rep.j_hi = part.j_max;
    rep.gate = check_smallness(a0, u0, cfg, part);

    IterationState state = init_iterates(a0, u0, cfg, part);
    IterationState prev;
    bool have_prev = false;
    int settled = 0, rising = 0;
    auto idx = stride_indices(state.times.size(), cfg.norm_stride);

    for (int m = 1; m <= cfg.m_max; ++m) {
        IterationState next = advance_iterate(state, a0, u0, cfg, part);
        rep.F_norms.push_back(next.F_norm);
        rep.gammas.push_back(next.gamma);
        rep.linf_a.push_back(next.linf_a);
        rep.dt_a_norms.push_back(time_derivative_norm(
            pick_fields(next.a_series, idx), pick(next.times, idx), cfg, part));
        rep.dt_u_norms.push_back(time_derivative_norm(
            to_physical(next.u_series, idx), pick(next.times, idx), cfg, part));
        rep.iterations = m;

        if (have_prev) {
            double delta = iterate_distance(next, state, cfg, part);
            if (!rep.deltas.empty() && rep.deltas.back() > 0.0) {
                double ratio = delta / rep.deltas.back();
                settled = ratio <= cfg.cauchy_tol ? settled + 1 : 0;
                rising = ratio >= 1.0 ? rising + 1 : 0;
                if (rising >= 3)
                    throw NoContraction("scheme: delta norms fail to contract");
            }
            rep.deltas.push_back(delta);
            if (delta == 0.0 || settled >= 3) {
                rep.converged = true;
                rep.final_state = std::move(next);
                break;
            }
        }
        prev = std::move(state);
        state = std::move(next);
        have_prev = true;
        if (m == cfg.m_max) rep.final_state = state;
    }

    if (rep.deltas.size() >= 2) {
        try {
            LinearFit f = fit_geometric(rep.deltas);
            rep.rho = f.slope;
            rep.r2 = f.r2;
        } catch (const InvalidParameter&) {
            rep.rho = 0.0;
            rep.r2 = 1.0;
        }
    }
    return rep;
}

}  // namespace bml
