#include "bml/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bml/fit.hpp"
#include "bml/flow.hpp"
#include "bml/stokes.hpp"

namespace bml {

namespace {

// l^r over homogeneous blocks of 2^{sj}|Delta_j u|_M; works on any field
// (means never enter the ring blocks).
double hnorm(const DyadicPartition& part, const SpectralField& u, double s,
             double r, double p, double q) {
    std::vector<double> terms;
    for (int j = part.j_min; j <= part.j_max; ++j) {
        PhysicalField blk =
            fft_inverse(project_block(part, u, j, LpMode::homogeneous));
        terms.push_back(std::pow(2.0, s * j) * morrey_norm(blk, p, q));
    }
    if (r == inf) {
        double m = 0.0;
        for (double v : terms) m = std::max(m, v);
        return m;
    }
    double acc = 0.0;
    for (double v : terms) acc += std::pow(v, r);
    return std::pow(acc, 1.0 / r);
}

double spread(const std::map<int, double>& levels) {
    double lo = inf, hi = 0.0;
    for (const auto& [k, v] : levels) {
        if (!(v > 0.0)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return lo == inf ? 0.0 : hi / lo;
}

void truncate_band(SpectralField& u, int kmax) {
    for (int c = 0; c < u.components; ++c) {
        cplx* dst = u.comp(c);
        for_each_mode(u.grid, [&](std::size_t i, const int* k) {
            for (int d = 0; d < u.grid.n; ++d)
                if (std::abs(k[d]) > kmax) {
                    dst[i] = cplx(0.0, 0.0);
                    return;
                }
        });
    }
}

// trapezoid of per-time values
double trapz(const std::vector<double>& t, const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        acc += 0.5 * (t[i + 1] - t[i]) * (y[i] + y[i + 1]);
    return acc;
}

}  // namespace

void InequalityReport::finish(double limit) {
    stability_limit = limit;
    fitted_constant = 0.0;
    bool any = false;
    for (const auto& [lhs, rhs] : samples) {
        if (!(rhs > 0.0)) continue;  // absorbing zero rows excluded
        fitted_constant = std::max(fitted_constant, lhs / rhs);
        any = true;
    }
    stability = spread(level_constants);
    pass = any && std::isfinite(fitted_constant) &&
           (level_constants.empty() || stability <= limit);
}

InequalityReport verify_bernstein(const GridSpec& grid, int j_lo, int j_hi, int k,
                                  double p, double q, int count, std::uint64_t seed,
                                  double stability_limit) {
    if (k < 1 || count < 1) throw InvalidParameter("verify_bernstein: bad family");
    DyadicPartition part = build_partition(grid);
    InequalityReport rep;
    rep.id = "bernstein";
    std::map<int, double> low_band;
    for (int j = j_lo; j <= j_hi; ++j) {
        if (!part.in_range(j, LpMode::homogeneous))
            throw InvalidFamily("verify_bernstein: shell outside the partition");
        double cj_hi = 0.0, cj_lo = inf, cj_inf = 0.0;
        for (int i = 0; i < count; ++i) {
            FieldFamily fam{grid, seed + std::uint64_t(j) * 1000 + std::uint64_t(i)};
            SpectralField u = fam.single_shell(part, j, 1, 1.0);
            double base = morrey_norm(fft_inverse(u), p, q);
            if (!(base > 0.0)) continue;
            // max |d^alpha u|_M over multi-indices of order k (axis powers)
            double worst = 0.0;
            std::vector<int> alpha(std::size_t(grid.n), 0);
            auto rec = [&](auto&& self, int axis, int left) -> void {
                if (axis == grid.n - 1) {
                    alpha[std::size_t(axis)] = left;
                    SpectralField d = u;
                    for (int ax = 0; ax < grid.n; ++ax)
                        for (int rep_i = 0; rep_i < alpha[std::size_t(ax)]; ++rep_i)
                            d = differential_op(d, DiffKind::partial, ax);
                    worst = std::max(worst, morrey_norm(fft_inverse(d), p, q));
                    return;
                }
                for (int take = 0; take <= left; ++take) {
                    alpha[std::size_t(axis)] = take;
                    self(self, axis + 1, left - take);
                }
            };
            rec(rec, 0, k);
            const double scale = std::pow(2.0, double(j) * k) * base;
            rep.samples.push_back({worst, scale});
            cj_hi = std::max(cj_hi, worst / scale);
            cj_lo = std::min(cj_lo, worst / scale);
            double li = linf_norm(fft_inverse(u));
            cj_inf = std::max(
                cj_inf, li / (std::pow(2.0, double(j) * grid.n / p) * base));
        }
        low_band[j] = cj_lo == inf ? 0.0 : cj_lo;
        rep.extras["linf_C_" + std::to_string(j)] = cj_inf;
        rep.level_constants[j] = cj_hi;
        rep.extras["lower_" + std::to_string(j)] = low_band[j];
    }
    rep.finish(stability_limit);
    // the sup-embedding constant must be j-stable too, and the lower band
    // bounded away from zero (two-sided scaling)
    std::map<int, double> infc;
    for (int j = j_lo; j <= j_hi; ++j)
        infc[j] = rep.extras["linf_C_" + std::to_string(j)];
    rep.extras["linf_spread"] = spread(infc);
    rep.extras["lower_spread"] = spread(low_band);
    if (rep.extras["linf_spread"] > stability_limit) rep.pass = false;
    for (const auto& [j, v] : low_band)
        if (!(v > 0.0)) rep.pass = false;
    return rep;
}

InequalityReport verify_commutator_uv(const GridSpec& grid, const SpaceParams& sp,
                                      int count, std::uint64_t seed,
                                      double stability_limit) {
    sp.validate();
    const double np = grid.n / sp.p;
    if (!((sp.s > 0.0 && sp.s < np + 1.0) ||
          (std::abs(sp.s - (np + 1.0)) < 1e-12 && sp.r == 1.0)))
        throw InvalidParameter("verify_commutator_uv: s outside the admissible window");
    DyadicPartition part = build_partition(grid);
    InequalityReport rep;
    rep.id = "commutator_uv";
    for (int level = 0; level < 2; ++level) {
        double cl = 0.0;
        for (int i = 0; i < count; ++i) {
            FieldFamily fam{grid, seed + std::uint64_t(i)};
            SpectralField u = fam.random_bandlimited(1, 3.0, 1.0);
            FieldFamily fam2{grid, seed + 100 + std::uint64_t(i)};
            SpectralField v = fam2.random_solenoidal(grid.n, 3.0, 1.0);
            truncate_band(u, grid.N / 4 - 1);
            truncate_band(v, grid.N / 4 - 1);
            v = leray_project(v);
            for (int l = 0; l < level; ++l) u = FieldFamily::dilate(u);
            std::vector<double> terms;
            for (int j = part.j_min; j <= part.j_max; ++j) {
                SpectralField c = commutator_transport(part, v, u, j,
                                                      LpMode::homogeneous);
                terms.push_back(std::pow(2.0, sp.s * j) *
                                morrey_norm(fft_inverse(c), sp.p, sp.q));
            }
            double lhs = 0.0;
            if (sp.r == inf)
                for (double t : terms) lhs = std::max(lhs, t);
            else {
                for (double t : terms) lhs += std::pow(t, sp.r);
                lhs = std::pow(lhs, 1.0 / sp.r);
            }
            double rhs = hnorm(part, u, sp.s, sp.r, sp.p, sp.q) *
                         (hnorm(part, v, np + 1.0, inf, sp.p, sp.q) + grad_linf(v));
            rep.samples.push_back({lhs, rhs});
            if (rhs > 0.0) cl = std::max(cl, lhs / rhs);
        }
        rep.level_constants[level] = cl;
    }
    rep.finish(stability_limit);
    return rep;
}

InequalityReport verify_commutator_pi(const GridSpec& grid, const SpaceParams& sp,
                                      int count, std::uint64_t seed,
                                      double stability_limit) {
    sp.validate();
    const double np = grid.n / sp.p;
    if (!((sp.s > 0.0 && sp.s < np) ||
          (std::abs(sp.s - np) < 1e-12 && sp.r == 1.0)))
        throw InvalidParameter("verify_commutator_pi: s outside the admissible window");
    DyadicPartition part = build_partition(grid);
    InequalityReport rep;
    rep.id = "commutator_pi";
    const double T0 = 0.4;
    for (int level = 0; level < 2; ++level) {
        const double T = T0 * std::pow(2.0, level);
        std::vector<double> times;
        for (int t = 0; t <= 4; ++t) times.push_back(T * t / 4.0);
        double cl = 0.0;
        for (int i = 0; i < count; ++i) {
            FieldFamily fam{grid, seed + std::uint64_t(i)};
            SpectralField a0 = fam.random_bandlimited(1, 3.0, 0.5);
            FieldFamily fam2{grid, seed + 200 + std::uint64_t(i)};
            SpectralField phi = fam2.random_bandlimited(1, 3.0, 1.0);
            SpectralField gp0 = differential_op(phi, DiffKind::gradient);
            // modulated series: a breathes, the pressure gradient decays
            std::vector<SpectralField> a_t, gp_t;
            for (double t : times) {
                SpectralField a = a0;
                a *= 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * t / T);
                a_t.push_back(std::move(a));
                SpectralField gp = gp0;
                gp *= std::exp(-t / T0);
                gp_t.push_back(std::move(gp));
            }
            std::vector<double> terms;
            for (int j = part.j_min; j <= part.j_max; ++j) {
                std::vector<double> y;
                for (std::size_t t = 0; t < times.size(); ++t) {
                    SpectralField c = commutator_multiply(part, a_t[t], gp_t[t], j,
                                                          LpMode::homogeneous);
                    y.push_back(morrey_norm(fft_inverse(c), sp.p, sp.q));
                }
                terms.push_back(std::pow(2.0, sp.s * j) * trapz(times, y));
            }
            double lhs = 0.0;
            if (sp.r == inf)
                for (double t : terms) lhs = std::max(lhs, t);
            else {
                for (double t : terms) lhs += std::pow(t, sp.r);
                lhs = std::pow(lhs, 1.0 / sp.r);
            }
            double a_factor = 0.0, p_int = 0.0;
            std::vector<double> pnorm;
            for (std::size_t t = 0; t < times.size(); ++t) {
                a_factor = std::max(
                    a_factor, hnorm(part, a_t[t], np, inf, sp.p, sp.q) +
                                  linf_norm(fft_inverse(a_t[t])));
                pnorm.push_back(hnorm(part, gp_t[t], sp.s, sp.r, sp.p, sp.q));
            }
            p_int = trapz(times, pnorm);
            double rhs = a_factor * p_int;
            rep.samples.push_back({lhs, rhs});
            if (rhs > 0.0) cl = std::max(cl, lhs / rhs);
        }
        rep.level_constants[level] = cl;
    }
    rep.finish(stability_limit);
    return rep;
}

InequalityReport verify_heat_localized(const GridSpec& grid, int j_lo, int j_hi,
                                       double p, double q, int count,
                                       std::uint64_t seed, double stability_limit) {
    DyadicPartition part = build_partition(grid);
    InequalityReport rep;
    rep.id = "heat_localized";
    std::map<int, double> c_fit;
    for (int j = j_lo; j <= j_hi; ++j) {
        if (!part.in_range(j, LpMode::homogeneous))
            throw InvalidFamily("verify_heat_localized: shell outside the partition");
        // shell j carries |xi| ~ 2^j, so the heat decay rate scales like 4^j
        const double rate_scale = std::pow(4.0, j);
        std::vector<double> ts, logy;
        for (int i = 0; i < count; ++i) {
            FieldFamily fam{grid, seed + std::uint64_t(j) * 100 + std::uint64_t(i)};
            SpectralField u = fam.single_shell(part, j, 1, 1.0);
            double base = morrey_norm(fft_inverse(u), p, q);
            if (!(base > 0.0)) continue;
            for (int t = 0; t <= 7; ++t) {
                double tt = double(t) / 7.0 / rate_scale;
                SpectralField h = project_block(part, heat_evolve(u, tt), j,
                                                LpMode::homogeneous);
                double y = morrey_norm(fft_inverse(h), p, q) / base;
                ts.push_back(tt * rate_scale);  // nondimensional time
                logy.push_back(std::log(std::max(y, 1e-300)));
                rep.samples.push_back({y * base, base});
            }
        }
        LinearFit f = fit_line(ts, logy);
        c_fit[j] = -f.slope;  // decay rate in units of 2^{2j}
        rep.level_constants[j] = std::exp(f.intercept);
        rep.extras["c_" + std::to_string(j)] = c_fit[j];
    }
    rep.finish(stability_limit);
    double c_lo = inf, c_hi = 0.0;
    for (const auto& [j, c] : c_fit) {
        c_lo = std::min(c_lo, c);
        c_hi = std::max(c_hi, c);
        if (!(c >= 0.5 && c <= 7.2)) rep.pass = false;
    }
    rep.extras["c_spread"] = c_lo > 0.0 ? c_hi / c_lo : 0.0;
    if (rep.extras["c_spread"] > stability_limit) rep.pass = false;
    return rep;
}

InequalityReport verify_heat_chemin(const GridSpec& grid, const SpaceParams& sp,
                                    double beta, int count, std::uint64_t seed) {
    sp.validate();
    if (!(beta >= 1.0 && beta < inf))
        throw InvalidParameter("verify_heat_chemin: beta must be finite");
    DyadicPartition part = build_partition(grid);
    InequalityReport rep;
    rep.id = "heat_chemin";
    const double c_rate = 0.5625;  // inner ring radius squared
    const double T = 0.5;
    double c35 = 0.0, c36 = 0.0;
    bool monotone = true;
    for (int i = 0; i < count; ++i) {
        FieldFamily fam{grid, seed + std::uint64_t(i)};
        SpectralField u0 = fam.random_bandlimited(1, 3.0, 1.0);
        double base = hnorm(part, u0, sp.s, sp.r, sp.p, sp.q);
        if (!(base > 0.0)) continue;

        auto lhs_beta = [&](double horizon) {
            std::vector<double> times;
            for (int t = 0; t <= 6; ++t) times.push_back(horizon * t / 6.0);
            std::vector<double> terms;
            for (int j = part.j_min; j <= part.j_max; ++j) {
                std::vector<double> y;
                for (double t : times) {
                    SpectralField h = project_block(part, heat_evolve(u0, t), j,
                                                    LpMode::homogeneous);
                    y.push_back(std::pow(morrey_norm(fft_inverse(h), sp.p, sp.q),
                                         beta));
                }
                terms.push_back(std::pow(2.0, sp.s * j) *
                                std::pow(trapz(times, y), 1.0 / beta));
            }
            double lhs = 0.0;
            if (sp.r == inf)
                for (double t : terms) lhs = std::max(lhs, t);
            else {
                for (double t : terms) lhs += std::pow(t, sp.r);
                lhs = std::pow(lhs, 1.0 / sp.r);
            }
            return lhs;
        };

        // (sup-in-time) bound
        double sup_lhs = 0.0;
        for (int t = 0; t <= 6; ++t) {
            double tt = T * t / 6.0;
            sup_lhs = std::max(
                sup_lhs, hnorm(part, heat_evolve(u0, tt), sp.s, sp.r, sp.p, sp.q));
        }
        rep.samples.push_back({sup_lhs, base});
        c35 = std::max(c35, sup_lhs / base);

        // beta-weighted bound with the explicit per-shell weight
        double rhs = 0.0;
        {
            std::vector<double> terms;
            for (int j = part.j_min; j <= part.j_max; ++j) {
                PhysicalField blk =
                    fft_inverse(project_block(part, u0, j, LpMode::homogeneous));
                double rate = c_rate * std::pow(4.0, j) * beta;
                double wt = std::pow((1.0 - std::exp(-rate * T)) / rate, 1.0 / beta);
                terms.push_back(std::pow(2.0, sp.s * j) *
                                morrey_norm(blk, sp.p, sp.q) * wt);
            }
            if (sp.r == inf)
                for (double t : terms) rhs = std::max(rhs, t);
            else {
                for (double t : terms) rhs += std::pow(t, sp.r);
                rhs = std::pow(rhs, 1.0 / sp.r);
            }
        }
        double lb = lhs_beta(T);
        rep.samples.push_back({lb, rhs});
        if (rhs > 0.0) c36 = std::max(c36, lb / rhs);

        // vanishing horizon: strictly decreasing under T-halving
        double prevv = lb;
        for (int hlv = 1; hlv <= 5; ++hlv) {
            double v = lhs_beta(T / std::pow(2.0, hlv));
            if (!(v < prevv)) monotone = false;
            prevv = v;
        }
    }
    rep.level_constants[0] = c35;
    rep.level_constants[1] = c36;
    rep.extras["sup_constant"] = c35;
    rep.extras["beta_constant"] = c36;
    rep.extras["t_vanishing_monotone"] = monotone ? 1.0 : 0.0;
    rep.finish(1e9);
    rep.pass = rep.pass && monotone;
    return rep;
}

InequalityReport verify_transport_stokes_linns(const GridSpec& grid,
                                               const SpaceParams& sp, int seeds,
                                               std::uint64_t seed,
                                               double stability_limit) {
    sp.validate();
    DyadicPartition part = build_partition(grid);
    InequalityReport rep;
    rep.id = "transport_stokes_linns";
    const double np = grid.n / sp.p;
    const double dt = 0.01;
    const int steps = 20;

    // frozen density: zero velocity transport cannot grow the norm
    {
        FieldFamily fam{grid, seed};
        PhysicalField a0 = fft_inverse(fam.random_bandlimited(1, 3.0, 0.1));
        std::vector<SpectralField> zero(std::size_t(steps) + 1,
                                        SpectralField(grid, grid.n));
        FlowOptions fo;
        fo.track_forward = false;
        TransportSolution tr = solve_transport(a0, zero, dt, fo);
        double worst = 0.0;
        double base = hnorm(part, fft_forward(a0), np, inf, sp.p, sp.q);
        for (const PhysicalField& a : tr.a_series)
            worst = std::max(worst,
                             hnorm(part, fft_forward(a), np, inf, sp.p, sp.q));
        rep.extras["frozen_ratio"] = worst / base;
        rep.samples.push_back({worst, base});
    }

    auto traj_norm = [&](const StokesSolution& sol) {
        double supv = 0.0;
        std::vector<double> yu, yp;
        for (std::size_t t = 0; t < sol.u_series.size(); ++t) {
            supv = std::max(supv, hnorm(part, sol.u_series[t], sp.s, sp.r, sp.p,
                                        sp.q));
            yu.push_back(hnorm(part, sol.u_series[t], sp.s + 2.0, sp.r, sp.p, sp.q));
            yp.push_back(
                sol.grad_pi_series.empty()
                    ? 0.0
                    : hnorm(part, sol.grad_pi_series[t], sp.s, sp.r, sp.p, sp.q));
        }
        return supv + trapz(sol.times, yu) + trapz(sol.times, yp);
    };

    // unforced heat flow: trajectory norm against the initial norm
    {
        double chi = 0.0;
        for (int i = 0; i < seeds; ++i) {
            FieldFamily fam{grid, seed + 10 + std::uint64_t(i)};
            SpectralField u0 = fam.random_solenoidal(grid.n, 3.0, 0.1);
            StokesSolution sol = solve_stokes(u0, {}, dt, steps);
            double rhs = hnorm(part, u0, sp.s, sp.r, sp.p, sp.q);
            double lhs = traj_norm(sol);
            rep.samples.push_back({lhs, rhs});
            if (rhs > 0.0) chi = std::max(chi, lhs / rhs);
        }
        rep.extras["stokes_constant"] = chi;
    }

    // small-contrast linearized runs: per-seed constants must stay in a band
    for (int i = 0; i < seeds; ++i) {
        FieldFamily fam{grid, seed + 50 + std::uint64_t(i)};
        SpectralField u0 = fam.random_solenoidal(grid.n, 3.0, 0.1);
        FieldFamily fam2{grid, seed + 60 + std::uint64_t(i)};
        PhysicalField a = fft_inverse(fam2.random_bandlimited(1, 3.0, 0.05));
        FieldFamily fam3{grid, seed + 70 + std::uint64_t(i)};
        SpectralField v = fam3.random_solenoidal(grid.n, 3.0, 0.1);
        std::vector<PhysicalField> as(std::size_t(steps) + 1, a);
        std::vector<SpectralField> vs(std::size_t(steps) + 1, v);
        StokesSolution sol = solve_linearized_ns(u0, as, vs, dt);
        double lhs = traj_norm(sol);
        double growth =
            std::exp(dt * steps * hnorm(part, v, np + 1.0, inf, sp.p, sp.q));
        double rhs = hnorm(part, u0, sp.s, sp.r, sp.p, sp.q) * growth;
        rep.samples.push_back({lhs, rhs});
        rep.level_constants[i] = rhs > 0.0 ? lhs / rhs : 0.0;
    }
    rep.finish(stability_limit);
    if (rep.extras["frozen_ratio"] > 1.0 + 1e-6) rep.pass = false;
    return rep;
}

InequalityReport verify_product_estimates(const GridSpec& grid,
                                          const SpaceParams& sp, int count,
                                          std::uint64_t seed,
                                          double stability_limit) {
    sp.validate();
    DyadicPartition part = build_partition(grid);
    InequalityReport rep;
    rep.id = "product_estimates";
    const double np = grid.n / sp.p;
    for (int level = 0; level < 2; ++level) {
        double cl = 0.0;
        for (int i = 0; i < count; ++i) {
            FieldFamily fa{grid, seed + std::uint64_t(i)};
            SpectralField a = fa.random_bandlimited(1, 3.0, 0.2);
            FieldFamily fu{grid, seed + 300 + std::uint64_t(i)};
            SpectralField u = fu.random_solenoidal(grid.n, 3.0, 1.0);
            FieldFamily fv{grid, seed + 400 + std::uint64_t(i)};
            SpectralField v = fv.random_solenoidal(grid.n, 3.0, 1.0);
            FieldFamily fp{grid, seed + 500 + std::uint64_t(i)};
            SpectralField gpi = differential_op(
                fp.random_bandlimited(1, 3.0, 1.0), DiffKind::gradient);
            truncate_band(u, grid.N / 4 - 1);
            u = leray_project(u);
            for (int l = 0; l < level; ++l) u = FieldFamily::dilate(u);

            const double a_factor =
                linf_norm(fft_inverse(a)) + hnorm(part, a, np, inf, sp.p, sp.q);

            // density times dissipation
            SpectralField alap =
                scalar_times(a, differential_op(u, DiffKind::laplacian));
            double lhs1 = hnorm(part, alap, sp.s, sp.r, sp.p, sp.q);
            double rhs1 =
                a_factor * hnorm(part, u, sp.s + 2.0, sp.r, sp.p, sp.q);
            rep.samples.push_back({lhs1, rhs1});
            if (rhs1 > 0.0) cl = std::max(cl, lhs1 / rhs1);

            // density times pressure gradient
            SpectralField apres = scalar_times(a, gpi);
            double lhs2 = hnorm(part, apres, sp.s, sp.r, sp.p, sp.q);
            double rhs2 = a_factor * hnorm(part, gpi, sp.s, sp.r, sp.p, sp.q);
            rep.samples.push_back({lhs2, rhs2});

            // drift term
            SpectralField vdu = advect(v, u);
            double lhs3 = hnorm(part, vdu, sp.s, sp.r, sp.p, sp.q);
            double rhs3 = hnorm(part, u, sp.s + 1.0, sp.r, sp.p, sp.q) *
                          (hnorm(part, v, np, inf, sp.p, sp.q) + grad_linf(v));
            rep.samples.push_back({lhs3, rhs3});
        }
        rep.level_constants[level] = cl;
    }
    rep.finish(stability_limit);
    return rep;
}

}  // namespace bml
