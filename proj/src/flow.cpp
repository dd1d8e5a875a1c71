#include "bml/flow.hpp"

#include <cmath>

#include "bml/fft.hpp"

namespace bml {

namespace {

// physical coordinates of every grid point, component-major like the fields
std::vector<double> grid_coords(const GridSpec& g) {
    const double h = g.spacing();
    const std::size_t tot = g.total();
    std::vector<double> xs(std::size_t(g.n) * tot);
    std::size_t flat = 0;
    if (g.n == 2) {
        for (int i = 0; i < g.N; ++i)
            for (int j = 0; j < g.N; ++j, ++flat) {
                xs[flat] = i * h;
                xs[tot + flat] = j * h;
            }
    } else {
        for (int i = 0; i < g.N; ++i)
            for (int j = 0; j < g.N; ++j)
                for (int k = 0; k < g.N; ++k, ++flat) {
                    xs[flat] = i * h;
                    xs[tot + flat] = j * h;
                    xs[2 * tot + flat] = k * h;
                }
    }
    return xs;
}

struct Rk4Stepper {
    const TrigInterpolator* u0;
    const TrigInterpolator* umid;
    const TrigInterpolator* u1;
    double dt;
    int n;

    // one forward step of the characteristic through p
    void forward(double* p) const {
        double k1[3], k2[3], k3[3], k4[3], q[3];
        u0->eval(p, k1);
        for (int d = 0; d < n; ++d) q[d] = p[d] + 0.5 * dt * k1[d];
        umid->eval(q, k2);
        for (int d = 0; d < n; ++d) q[d] = p[d] + 0.5 * dt * k2[d];
        umid->eval(q, k3);
        for (int d = 0; d < n; ++d) q[d] = p[d] + dt * k3[d];
        u1->eval(q, k4);
        for (int d = 0; d < n; ++d)
            p[d] += dt / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
    }

    // departure point: integrate backwards from p at the end of the step
    void backward(double* p) const {
        double k1[3], k2[3], k3[3], k4[3], q[3];
        u1->eval(p, k1);
        for (int d = 0; d < n; ++d) q[d] = p[d] - 0.5 * dt * k1[d];
        umid->eval(q, k2);
        for (int d = 0; d < n; ++d) q[d] = p[d] - 0.5 * dt * k2[d];
        umid->eval(q, k3);
        for (int d = 0; d < n; ++d) q[d] = p[d] - dt * k3[d];
        u0->eval(q, k4);
        for (int d = 0; d < n; ++d)
            p[d] -= dt / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
    }
};

SpectralField average(const SpectralField& a, const SpectralField& b) {
    SpectralField m = a;
    m += b;
    m *= 0.5;
    return m;
}

}  // namespace

FlowMap integrate_flow(const std::vector<SpectralField>& u_series, double dt,
                       const FlowOptions& opts) {
    if (u_series.empty()) throw ShapeError("integrate_flow: empty velocity series");
    if (!(dt > 0.0)) throw InvalidParameter("integrate_flow: dt must be positive");
    const GridSpec& g = u_series.front().grid;
    const std::size_t tot = g.total();
    const int n = g.n;

    double max_speed = 0.0;
    std::vector<double> lip(u_series.size());
    for (std::size_t i = 0; i < u_series.size(); ++i) {
        const SpectralField& u = u_series[i];
        if (!(u.grid == g) || u.components != n)
            throw ShapeError("integrate_flow: inconsistent velocity series");
        require_solenoidal(u, opts.div_tol, "integrate_flow");
        max_speed = std::max(max_speed, linf_norm(fft_inverse(u)));
        lip[i] = grad_linf(u);
    }
    if (max_speed * dt > opts.cfl * g.spacing())
        throw StepTooLarge("integrate_flow: displacement per step exceeds cfl limit");

    FlowMap X;
    X.grid = g;
    X.times = {0.0};
    X.inverse.emplace_back(g, n);
    if (opts.track_forward) X.forward.emplace_back(g, n);
    X.gamma = {1.0};

    std::vector<TrigInterpolator> u_interp(u_series.size());
    for (std::size_t i = 0; i < u_series.size(); ++i)
        u_interp[i] = TrigInterpolator(u_series[i], opts.half_width);

    const std::vector<double> xs = grid_coords(g);
    double lip_acc = 0.0;
    const std::size_t steps = u_series.size() - 1;
    for (std::size_t s = 0; s < steps; ++s) {
        TrigInterpolator umid(average(u_series[s], u_series[s + 1]), opts.half_width);
        Rk4Stepper rk{&u_interp[s], &umid, &u_interp[s + 1], dt, n};

        // inverse map: pull the previous displacement back from the departure point
        const PhysicalField& prev = X.inverse.back();
        TrigInterpolator dprev(fft_forward(prev), opts.field_half_width);
        PhysicalField dinv(g, n);
        double p[3], dval[3];
        for (std::size_t i = 0; i < tot; ++i) {
            for (int d = 0; d < n; ++d) p[d] = xs[std::size_t(d) * tot + i];
            double x0[3];
            for (int d = 0; d < n; ++d) x0[d] = p[d];
            rk.backward(p);
            dprev.eval(p, dval);
            for (int d = 0; d < n; ++d)
                dinv.comp(d)[i] = (p[d] - x0[d]) + dval[d];
        }
        X.inverse.push_back(std::move(dinv));

        if (opts.track_forward) {
            const PhysicalField& fprev = X.forward.back();
            PhysicalField dfwd(g, n);
            for (std::size_t i = 0; i < tot; ++i) {
                for (int d = 0; d < n; ++d)
                    p[d] = xs[std::size_t(d) * tot + i] + fprev.comp(d)[i];
                rk.forward(p);
                for (int d = 0; d < n; ++d)
                    dfwd.comp(d)[i] = p[d] - xs[std::size_t(d) * tot + i];
            }
            X.forward.push_back(std::move(dfwd));
        }

        lip_acc += 0.5 * dt * (lip[s] + lip[s + 1]);
        X.gamma.push_back(std::exp(lip_acc));
        X.times.push_back(double(s + 1) * dt);
    }
    return X;
}

double FlowMap::composition_defect(std::size_t i, int half_width) const {
    if (i >= times.size() || forward.empty())
        throw IndexError("composition_defect: index out of range or no forward map");
    const std::size_t tot = grid.total();
    const int n = grid.n;
    const std::vector<double> xs = grid_coords(grid);
    TrigInterpolator dinv(fft_forward(inverse[i]), half_width);
    double worst = 0.0;
    double p[3], dval[3];
    for (std::size_t t = 0; t < tot; ++t) {
        for (int d = 0; d < n; ++d)
            p[d] = xs[std::size_t(d) * tot + t] + forward[i].comp(d)[t];
        dinv.eval(p, dval);
        double e2 = 0.0;
        for (int d = 0; d < n; ++d) {
            double e = p[d] + dval[d] - xs[std::size_t(d) * tot + t];
            e -= grid.L * std::round(e / grid.L);
            e2 += e * e;
        }
        worst = std::max(worst, e2);
    }
    return std::sqrt(worst);
}

double FlowMap::jacobian_defect(std::size_t i) const {
    if (i >= times.size() || forward.empty())
        throw IndexError("jacobian_defect: index out of range or no forward map");
    const int n = grid.n;
    const std::size_t tot = grid.total();
    SpectralField disp = fft_forward(forward[i]);
    // rows of the displacement jacobian, physical space
    std::vector<PhysicalField> rows;
    for (int c = 0; c < n; ++c) {
        SpectralField comp_c(grid, 1);
        std::copy(disp.comp(c), disp.comp(c) + tot, comp_c.comp(0));
        rows.push_back(fft_inverse(differential_op(comp_c, DiffKind::gradient)));
    }
    double worst = 0.0;
    for (std::size_t t = 0; t < tot; ++t) {
        double J[3][3] = {{0}};
        for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d)
                J[c][d] = (c == d ? 1.0 : 0.0) + rows[std::size_t(c)].comp(d)[t];
        double det;
        if (n == 2)
            det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        else
            det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                  J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                  J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
        worst = std::max(worst, std::abs(det - 1.0));
    }
    return worst;
}

PhysicalField compose(const PhysicalField& a0, const FlowMap& X, std::size_t i,
                      int half_width) {
    if (i >= X.times.size() || X.forward.empty())
        throw IndexError("compose: index out of range or no forward map");
    if (!(a0.grid == X.grid)) throw ShapeError("compose: grid mismatch");
    const std::size_t tot = X.grid.total();
    const int n = X.grid.n;
    const std::vector<double> xs = grid_coords(X.grid);
    TrigInterpolator ai(fft_forward(a0), half_width);
    PhysicalField out(X.grid, a0.components);
    std::vector<double> vals(std::size_t(a0.components));
    double p[3];
    for (std::size_t t = 0; t < tot; ++t) {
        for (int d = 0; d < n; ++d)
            p[d] = xs[std::size_t(d) * tot + t] + X.forward[i].comp(d)[t];
        ai.eval(p, vals.data());
        for (int c = 0; c < a0.components; ++c) out.comp(c)[t] = vals[c];
    }
    return out;
}

TransportSolution solve_transport(const PhysicalField& a0,
                                  const std::vector<SpectralField>& u_series,
                                  double dt, const FlowOptions& opts) {
    if (!(a0.grid == u_series.front().grid))
        throw ShapeError("solve_transport: grid mismatch");
    TransportSolution sol;
    sol.flow = integrate_flow(u_series, dt, opts);
    sol.times = sol.flow.times;
    const GridSpec& g = a0.grid;
    const std::size_t tot = g.total();
    const int n = g.n;
    const std::vector<double> xs = grid_coords(g);
    TrigInterpolator ai(fft_forward(a0), opts.field_half_width);
    std::vector<double> vals(std::size_t(a0.components));
    double p[3];
    sol.a_series.push_back(a0);
    for (std::size_t i = 1; i < sol.times.size(); ++i) {
        PhysicalField a(g, a0.components);
        const PhysicalField& dinv = sol.flow.inverse[i];
        for (std::size_t t = 0; t < tot; ++t) {
            for (int d = 0; d < n; ++d)
                p[d] = xs[std::size_t(d) * tot + t] + dinv.comp(d)[t];
            ai.eval(p, vals.data());
            for (int c = 0; c < a0.components; ++c) a.comp(c)[t] = vals[c];
        }
        sol.a_series.push_back(std::move(a));
    }
    return sol;
}

}  // namespace bml
