#include "bml/stokes.hpp"

#include <cmath>

#include "bml/fft.hpp"

namespace bml {

namespace {

// phi1(z) = (e^z - 1)/z, phi2(z) = (e^z - 1 - z)/z^2, series near zero.
void phi12(double z, double& p1, double& p2) {
    if (std::abs(z) > 0.5) {
        double em = std::expm1(z);
        p1 = em / z;
        p2 = (em - z) / (z * z);
        return;
    }
    p1 = 0.0;
    p2 = 0.0;
    double term = 1.0;  // z^m / m!
    for (int m = 0; m < 20; ++m) {
        p1 += term / double(m + 1);
        p2 += term / double(m + 1) / double(m + 2);
        term *= z / double(m + 1);
        if (std::abs(term) < 1e-18) break;
    }
}

struct StepWeights {
    std::vector<double> decay;  // e^{-|xi|^2 dt}
    std::vector<double> w0;     // dt (phi1 - phi2)
    std::vector<double> w1;     // dt phi2
};

StepWeights make_weights(const GridSpec& g, double dt) {
    StepWeights w;
    const std::size_t tot = g.total();
    w.decay.resize(tot);
    w.w0.resize(tot);
    w.w1.resize(tot);
    const double fs2 = g.freq_step() * g.freq_step();
    for_each_mode(g, [&](std::size_t i, const int* k) {
        double k2 = 0.0;
        for (int d = 0; d < g.n; ++d) k2 += double(k[d]) * k[d];
        double z = -fs2 * k2 * dt;
        double p1, p2;
        phi12(z, p1, p2);
        w.decay[i] = std::exp(z);
        w.w0[i] = dt * (p1 - p2);
        w.w1[i] = dt * p2;
    });
    return w;
}

void zero_mean(SpectralField& f) {
    for (int c = 0; c < f.components; ++c) f.comp(c)[0] = cplx(0.0, 0.0);
}

}  // namespace

SpectralField pressure_from_forcing(const SpectralField& f) {
    const GridSpec& g = f.grid;
    if (f.components != g.n) throw ShapeError("pressure_from_forcing: vector expected");
    SpectralField out(g, g.n);
    for_each_mode(g, [&](std::size_t i, const int* k) {
        double k2 = 0.0;
        for (int d = 0; d < g.n; ++d) k2 += double(k[d]) * k[d];
        if (k2 == 0.0) return;
        cplx kdotf(0.0, 0.0);
        for (int d = 0; d < g.n; ++d) kdotf += double(k[d]) * f.comp(d)[i];
        for (int d = 0; d < g.n; ++d)
            out.comp(d)[i] = (double(k[d]) / k2) * kdotf;
    });
    return out;
}

StokesSolution solve_stokes(const SpectralField& u0,
                            const std::vector<SpectralField>& f_series, double dt,
                            int steps) {
    const GridSpec& g = u0.grid;
    if (u0.components != g.n) throw ShapeError("solve_stokes: u0 must be a vector");
    if (!(dt > 0.0) || steps < 1) throw InvalidParameter("solve_stokes: bad time grid");
    if (!f_series.empty() && int(f_series.size()) != steps + 1)
        throw ShapeError("solve_stokes: forcing series must have steps+1 entries");
    require_solenoidal(u0, 1e-8, "solve_stokes");

    const StepWeights w = make_weights(g, dt);
    const std::size_t tot = g.total();
    const bool forced = !f_series.empty();

    StokesSolution sol;
    sol.u_series.push_back(u0);
    std::vector<SpectralField> pf;  // projected zero-mean forcing
    if (forced) {
        for (const SpectralField& f : f_series) {
            SpectralField p = leray_project(f);
            zero_mean(p);
            pf.push_back(std::move(p));
            sol.grad_pi_series.push_back(pressure_from_forcing(f_series[pf.size() - 1]));
        }
    }
    for (int s = 0; s < steps; ++s) {
        const SpectralField& un = sol.u_series.back();
        SpectralField next(g, g.n);
        for (int c = 0; c < g.n; ++c) {
            const cplx* u = un.comp(c);
            cplx* dst = next.comp(c);
            for (std::size_t i = 0; i < tot; ++i) dst[i] = w.decay[i] * u[i];
            if (forced) {
                const cplx* f0 = pf[std::size_t(s)].comp(c);
                const cplx* f1 = pf[std::size_t(s) + 1].comp(c);
                for (std::size_t i = 0; i < tot; ++i)
                    dst[i] += w.w0[i] * f0[i] + w.w1[i] * f1[i];
            }
        }
        sol.u_series.push_back(std::move(next));
    }
    for (int s = 0; s <= steps; ++s) sol.times.push_back(s * dt);
    return sol;
}

StokesSolution solve_linearized_ns(const SpectralField& u0,
                                   const std::vector<PhysicalField>& a_series,
                                   const std::vector<SpectralField>& v_series,
                                   double dt, const LinearizedOptions& opts) {
    const GridSpec& g = u0.grid;
    if (u0.components != g.n) throw ShapeError("solve_linearized_ns: u0 must be a vector");
    if (a_series.size() != v_series.size() || a_series.size() < 2)
        throw ShapeError("solve_linearized_ns: series must share a time grid");
    if (!(dt > 0.0)) throw InvalidParameter("solve_linearized_ns: dt must be positive");
    require_solenoidal(u0, 1e-8, "solve_linearized_ns");
    for (const SpectralField& v : v_series)
        require_solenoidal(v, 1e-8, "solve_linearized_ns");
    std::vector<SpectralField> a_spec;
    for (const PhysicalField& a : a_series) {
        if (a.components != 1)
            throw ShapeError("solve_linearized_ns: a must be scalar");
        if (linf_norm(a) > opts.a_max)
            throw InvalidParameter("solve_linearized_ns: density perturbation exceeds a_max");
        a_spec.push_back(fft_forward(a));
    }

    const int steps = int(a_series.size()) - 1;
    const StepWeights w = make_weights(g, dt);
    const std::size_t tot = g.total();

    // forcing update at a fixed time level, given the velocity there
    auto forcing_of = [&](const SpectralField& u, const SpectralField& F, int level) {
        SpectralField rhs = differential_op(u, DiffKind::laplacian);
        rhs -= pressure_from_forcing(F);
        SpectralField out = scalar_times(a_spec[std::size_t(level)], rhs);
        out -= advect(v_series[std::size_t(level)], u);
        zero_mean(out);
        return out;
    };

    // fixed point at one level: u depends linearly on F through `apply`
    auto fixed_point = [&](auto&& velocity_of, int level, SpectralField F,
                           int& sweeps_out, double& ratio_out) {
        double prev_delta = -1.0;
        int rising = 0;
        double ratio = 0.0;
        for (int it = 0; it < opts.inner_max; ++it) {
            SpectralField u = velocity_of(F);
            SpectralField Fn = forcing_of(u, F, level);
            SpectralField diff = Fn;
            diff -= F;
            double delta = spectral_l2(diff);
            double scale = spectral_l2(Fn) + 1e-300;
            F = std::move(Fn);
            if (delta <= opts.inner_tol * scale) {
                sweeps_out = it + 1;
                ratio_out = ratio;
                return F;
            }
            if (prev_delta > 0.0) {
                ratio = delta / prev_delta;
                rising = ratio >= 1.0 ? rising + 1 : 0;
                if (rising >= 3)
                    throw ContractionFailure(
                        "solve_linearized_ns: inner fixed point diverges");
            }
            prev_delta = delta;
        }
        throw ContractionFailure("solve_linearized_ns: inner sweep budget exhausted");
    };

    StokesSolution sol;
    sol.u_series.push_back(u0);

    int sweeps = 0;
    double ratio = 0.0;
    SpectralField F_prev =
        fixed_point([&](const SpectralField&) { return u0; }, 0, SpectralField(g, g.n),
                    sweeps, ratio);
    sol.grad_pi_series.push_back(pressure_from_forcing(F_prev));
    sol.inner_sweeps.push_back(sweeps);
    sol.contraction_ratios.push_back(ratio);

    for (int s = 0; s < steps; ++s) {
        // e^{dt lap} u_n + dt w0 P F_n, fixed within the sweep
        SpectralField base(g, g.n);
        SpectralField pfn = leray_project(F_prev);
        zero_mean(pfn);
        for (int c = 0; c < g.n; ++c) {
            const cplx* u = sol.u_series.back().comp(c);
            const cplx* f0 = pfn.comp(c);
            cplx* dst = base.comp(c);
            for (std::size_t i = 0; i < tot; ++i)
                dst[i] = w.decay[i] * u[i] + w.w0[i] * f0[i];
        }
        auto velocity_of = [&](const SpectralField& F) {
            SpectralField pf1 = leray_project(F);
            zero_mean(pf1);
            SpectralField u = base;
            for (int c = 0; c < g.n; ++c) {
                const cplx* f1 = pf1.comp(c);
                cplx* dst = u.comp(c);
                for (std::size_t i = 0; i < tot; ++i) dst[i] += w.w1[i] * f1[i];
            }
            return u;
        };
        SpectralField F = fixed_point(velocity_of, s + 1, F_prev, sweeps, ratio);
        sol.u_series.push_back(velocity_of(F));
        sol.grad_pi_series.push_back(pressure_from_forcing(F));
        sol.inner_sweeps.push_back(sweeps);
        sol.contraction_ratios.push_back(ratio);
        F_prev = std::move(F);
    }
    for (int s = 0; s <= steps; ++s) sol.times.push_back(s * dt);
    return sol;
}

}  // namespace bml
