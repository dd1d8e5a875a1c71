#include "bml/lp.hpp"

#include <algorithm>
#include <cmath>

namespace bml {

namespace {

// Smooth transition h(x)/(h(x)+h(1-x)) with h(x) = exp(-1/x) on x>0:
// 0 for x<=0, 1 for x>=1, C^infinity in between.
double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double a = std::exp(-1.0 / x);
    double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

std::vector<double> radial_mult(const GridSpec& g, double scale,
                                double (*profile)(double)) {
    const double fs = g.freq_step();
    std::vector<double> m(g.total());
    for_each_mode(g, [&](std::size_t i, const int* k) {
        double k2 = 0.0;
        for (int d = 0; d < g.n; ++d) k2 += double(k[d]) * k[d];
        m[i] = profile(scale * fs * std::sqrt(k2));
    });
    return m;
}

SpectralField apply_mult(const SpectralField& u, const std::vector<double>& m) {
    SpectralField out(u.grid, u.components);
    const std::size_t tot = u.grid.total();
    for (int c = 0; c < u.components; ++c) {
        const cplx* src = u.comp(c);
        cplx* dst = out.comp(c);
        for (std::size_t i = 0; i < tot; ++i) dst[i] = src[i] * m[i];
    }
    return out;
}

}  // namespace

double DyadicPartition::psi_profile(double t) {
    return 1.0 - smooth_step((std::abs(t) - 0.75) / (4.0 / 3.0 - 0.75));
}

double DyadicPartition::phi_profile(double t) {
    return psi_profile(t / 2.0) - psi_profile(t);
}

const std::vector<double>& DyadicPartition::phi_mult(int j) const {
    auto it = phi_cache_.find(j);
    if (it != phi_cache_.end()) return it->second;
    std::vector<double> m = radial_mult(grid, std::pow(2.0, -j), &phi_profile);
    return phi_cache_.emplace(j, std::move(m)).first->second;
}

const std::vector<double>& DyadicPartition::psi_mult() const {
    if (psi_cache_.empty()) psi_cache_ = radial_mult(grid, 1.0, &psi_profile);
    return psi_cache_;
}

std::vector<double> DyadicPartition::low_pass_mult(int j, LpMode mode) const {
    std::vector<double> m = radial_mult(grid, std::pow(2.0, -j), &psi_profile);
    if (mode == LpMode::homogeneous) m[0] = 0.0;
    return m;
}

std::vector<int> DyadicPartition::range(LpMode mode) const {
    std::vector<int> r;
    int lo = mode == LpMode::homogeneous ? j_min : -1;
    for (int j = lo; j <= j_max; ++j) r.push_back(j);
    return r;
}

bool DyadicPartition::in_range(int j, LpMode mode) const {
    if (mode == LpMode::homogeneous) return j >= j_min && j <= j_max;
    return j == -1 || (j >= 0 && j <= j_max);
}

DyadicPartition build_partition(const GridSpec& grid) {
    DyadicPartition p;
    p.grid = grid;
    // Largest shell with outer radius (8/3) 2^j inside the Nyquist ball, and
    // smallest shell whose inner radius (3/4) 2^j clears the frequency step.
    const double ny = grid.nyquist();
    const double fs = grid.freq_step();
    int jmax = int(std::floor(std::log2(ny * 3.0 / 8.0)));
    while ((8.0 / 3.0) * std::pow(2.0, jmax + 1) <= ny) ++jmax;
    while (jmax >= -60 && (8.0 / 3.0) * std::pow(2.0, jmax) > ny) --jmax;
    int jmin = int(std::ceil(std::log2(fs * 4.0 / 3.0)));
    while ((3.0 / 4.0) * std::pow(2.0, jmin) < fs) ++jmin;
    while (jmin > -60 && (3.0 / 4.0) * std::pow(2.0, jmin - 1) >= fs) --jmin;
    p.j_min = jmin;
    p.j_max = jmax;
    // Need the ball block plus at least two rings, and a nonempty homogeneous
    // range, to have three resolved dyadic scales.
    if (jmax < 1 || jmin > jmax)
        throw GridTooCoarse("build_partition: grid resolves fewer than 3 dyadic blocks");
    return p;
}

SpectralField project_block(const DyadicPartition& p, const SpectralField& u, int j,
                            LpMode mode) {
    if (!(p.grid == u.grid)) throw ShapeError("project_block: grid mismatch");
    if (!p.in_range(j, mode)) throw IndexError("project_block: block index out of range");
    if (j == -1) return apply_mult(u, p.psi_mult());
    return apply_mult(u, p.phi_mult(j));
}

SpectralField low_pass(const DyadicPartition& p, const SpectralField& u, int j,
                       LpMode mode) {
    if (!(p.grid == u.grid)) throw ShapeError("low_pass: grid mismatch");
    return apply_mult(u, p.low_pass_mult(j, mode));
}

SpectralField DyadicDecomposition::reconstruct() const {
    if (blocks.empty()) throw InvalidField("reconstruct: empty decomposition");
    SpectralField out = blocks.begin()->second;
    for (auto it = std::next(blocks.begin()); it != blocks.end(); ++it)
        out += it->second;
    return out;
}

DyadicDecomposition decompose(const DyadicPartition& p, const SpectralField& u,
                              LpMode mode) {
    DyadicDecomposition d;
    d.mode = mode;
    for (int j : p.range(mode)) d.blocks.emplace(j, project_block(p, u, j, mode));
    return d;
}

namespace {

// Blocks of a field held in both spectral and physical form, with physical
// partial sums low[k] = sum of blocks with index <= k available on demand.
struct BlockTable {
    std::vector<int> idx;
    std::vector<PhysicalField> phys;
    GridSpec grid;
    int components = 0;

    BlockTable(const DyadicPartition& p, const SpectralField& u, LpMode mode) {
        grid = u.grid;
        components = u.components;
        for (int j : p.range(mode)) {
            idx.push_back(j);
            phys.push_back(fft_inverse(project_block(p, u, j, mode)));
        }
    }

    int pos(int j) const {
        for (std::size_t i = 0; i < idx.size(); ++i)
            if (idx[i] == j) return int(i);
        return -1;
    }

    const PhysicalField* block(int j) const {
        int i = pos(j);
        return i < 0 ? nullptr : &phys[std::size_t(i)];
    }

    // sum of blocks with index <= j (physical)
    PhysicalField low(int j) const {
        PhysicalField acc(grid, components);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] > j) continue;
            for (std::size_t t = 0; t < acc.values.size(); ++t)
                acc.values[t] += phys[i].values[t];
        }
        return acc;
    }
};

void pointwise_mac(PhysicalField& acc, const PhysicalField& a, const PhysicalField& b,
                   double sign = 1.0) {
    for (std::size_t i = 0; i < acc.values.size(); ++i)
        acc.values[i] += sign * a.values[i] * b.values[i];
}

SpectralField to_spectral_dealiased(const PhysicalField& f) {
    SpectralField s = fft_forward(f);
    dealias(s);
    return s;
}

}  // namespace

BonySplit bony_split(const DyadicPartition& p, const SpectralField& u,
                     const SpectralField& v, LpMode mode) {
    if (!(u.grid == v.grid)) throw ShapeError("bony_split: grid mismatch");
    if (u.components != 1 || v.components != 1)
        throw ShapeError("bony_split expects scalar fields");
    BlockTable bu(p, u, mode), bv(p, v, mode);
    const GridSpec& g = u.grid;
    PhysicalField tuv(g, 1), tvu(g, 1), rem(g, 1);
    for (std::size_t i = 0; i < bu.idx.size(); ++i) {
        int k = bu.idx[i];
        PhysicalField su = bu.low(k - 2);
        PhysicalField sv = bv.low(k - 2);
        pointwise_mac(tuv, su, bv.phys[i]);
        pointwise_mac(tvu, sv, bu.phys[i]);
        for (int l = k - 1; l <= k + 1; ++l) {
            const PhysicalField* bl = bu.block(l);
            if (bl) pointwise_mac(rem, *bl, bv.phys[i]);
        }
    }
    BonySplit out;
    out.T_uv = to_spectral_dealiased(tuv);
    out.T_vu = to_spectral_dealiased(tvu);
    out.remainder = to_spectral_dealiased(rem);
    return out;
}

namespace {

// Paraproduct T_a g = sum_k S_{k-1} a . Delta_k g, blockwise, componentwise in
// g; a scalar. Products are accumulated physically and dealiased once.
SpectralField paraproduct(const BlockTable& ba, const BlockTable& bg) {
    PhysicalField acc(bg.grid, bg.components);
    for (std::size_t i = 0; i < bg.idx.size(); ++i) {
        PhysicalField sa = ba.low(bg.idx[i] - 2);
        const double* a = sa.comp(0);
        for (int c = 0; c < bg.components; ++c) {
            const double* gc = bg.phys[i].comp(c);
            double* z = acc.comp(c);
            const std::size_t tot = bg.grid.total();
            for (std::size_t t = 0; t < tot; ++t) z[t] += a[t] * gc[t];
        }
    }
    return to_spectral_dealiased(acc);
}

// R(a, g) = sum_k Delta_k a . S_{k+2} g (high-low plus diagonal part).
SpectralField r_remainder(const BlockTable& ba, const BlockTable& bg) {
    PhysicalField acc(bg.grid, bg.components);
    for (std::size_t i = 0; i < ba.idx.size(); ++i) {
        PhysicalField sg = bg.low(ba.idx[i] + 1);
        const double* a = ba.phys[i].comp(0);
        for (int c = 0; c < bg.components; ++c) {
            const double* gc = sg.comp(c);
            double* z = acc.comp(c);
            const std::size_t tot = bg.grid.total();
            for (std::size_t t = 0; t < tot; ++t) z[t] += a[t] * gc[t];
        }
    }
    return to_spectral_dealiased(acc);
}

SpectralField component(const SpectralField& u, int c) {
    SpectralField out(u.grid, 1);
    std::copy(u.comp(c), u.comp(c) + u.grid.total(), out.comp(0));
    return out;
}

}  // namespace

SpectralField commutator_transport(const DyadicPartition& p, const SpectralField& v,
                                   const SpectralField& u, int j, LpMode mode,
                                   std::vector<SpectralField>* pieces) {
    const GridSpec& g = u.grid;
    if (!(g == v.grid)) throw ShapeError("commutator_transport: grid mismatch");
    if (v.components != g.n) throw ShapeError("commutator_transport: v must be a vector");
    if (u.components != 1) throw ShapeError("commutator_transport: u must be scalar");
    if (!p.in_range(j, mode)) throw IndexError("commutator_transport: j out of range");
    require_solenoidal(v, 1e-8, "commutator_transport");

    SpectralField dju = project_block(p, u, j, mode);
    SpectralField direct = project_block(p, advect(v, u), j, mode);
    direct -= advect(v, dju);
    if (!pieces) return direct;

    // Proof decomposition: with grad u = (d_1 u, ..., d_n u),
    //   [Delta_j, v.grad]u = div Delta_j R(u, v) + Delta_j T_{grad u} v
    //                        - R(v, Delta_j grad u) - [T_v, Delta_j] grad u
    // where every sum runs over the resolved block range.
    BlockTable bu(p, u, mode);
    std::vector<BlockTable> bv, bdu, bdju;
    SpectralField gradu = differential_op(u, DiffKind::gradient);
    SpectralField gradju = differential_op(dju, DiffKind::gradient);
    for (int d = 0; d < g.n; ++d) {
        bv.emplace_back(p, component(v, d), mode);
        bdu.emplace_back(p, component(gradu, d), mode);
        bdju.emplace_back(p, component(gradju, d), mode);
    }

    // R1 = div Delta_j R(u, v): diagonal pairing Delta_k u Delta_l v_d, |k-l|<=1.
    PhysicalField r_uv(g, g.n);
    for (std::size_t i = 0; i < bu.idx.size(); ++i) {
        int k = bu.idx[i];
        for (int d = 0; d < g.n; ++d) {
            for (int l = k - 1; l <= k + 1; ++l) {
                const PhysicalField* blv = bv[d].block(l);
                if (!blv) continue;
                const double* a = bu.phys[i].comp(0);
                const double* b = blv->comp(0);
                double* z = r_uv.comp(d);
                const std::size_t tot = g.total();
                for (std::size_t t = 0; t < tot; ++t) z[t] += a[t] * b[t];
            }
        }
    }
    SpectralField r1 = differential_op(
        project_block(p, to_spectral_dealiased(r_uv), j, mode), DiffKind::divergence);

    // R2 = Delta_j T_{grad u} v = Delta_j sum_d T_{d_d u} v_d.
    SpectralField t_gradu_v(g, 1);
    for (int d = 0; d < g.n; ++d) t_gradu_v += paraproduct(bdu[d], bv[d]);
    SpectralField r2 = project_block(p, t_gradu_v, j, mode);

    // R3 = -R(v, Delta_j grad u) = -sum_d sum_k Delta_k v_d S_{k+2} Delta_j d_d u.
    SpectralField r3(g, 1);
    for (int d = 0; d < g.n; ++d) r3 += r_remainder(bv[d], bdju[d]);
    r3 *= -1.0;

    // R4 = -[T_v, Delta_j] grad u = -sum_d (T_{v_d} Delta_j d_d u - Delta_j T_{v_d} d_d u).
    SpectralField r4(g, 1);
    for (int d = 0; d < g.n; ++d) {
        r4 += paraproduct(bv[d], bdju[d]);
        r4 -= project_block(p, paraproduct(bv[d], bdu[d]), j, mode);
    }
    r4 *= -1.0;

    pieces->clear();
    pieces->push_back(std::move(r1));
    pieces->push_back(std::move(r2));
    pieces->push_back(std::move(r3));
    pieces->push_back(std::move(r4));
    return direct;
}

SpectralField commutator_multiply(const DyadicPartition& p, const SpectralField& a,
                                  const SpectralField& g, int j, LpMode mode,
                                  std::vector<SpectralField>* pieces) {
    if (!(a.grid == g.grid)) throw ShapeError("commutator_multiply: grid mismatch");
    if (a.components != 1) throw ShapeError("commutator_multiply: a must be scalar");
    if (!p.in_range(j, mode)) throw IndexError("commutator_multiply: j out of range");

    SpectralField djg = project_block(p, g, j, mode);
    SpectralField direct = project_block(p, scalar_times(a, g), j, mode);
    direct -= scalar_times(a, djg);
    if (!pieces) return direct;

    // [Delta_j, a]g = [Delta_j, T_a]g + Delta_j R(a, g) - R(a, Delta_j g).
    BlockTable ba(p, a, mode), bg(p, g, mode), bdjg(p, djg, mode);
    SpectralField a1 = project_block(p, paraproduct(ba, bg), j, mode);
    a1 -= paraproduct(ba, bdjg);
    SpectralField a2 = project_block(p, r_remainder(ba, bg), j, mode);
    SpectralField a3 = r_remainder(ba, bdjg);
    a3 *= -1.0;

    pieces->clear();
    pieces->push_back(std::move(a1));
    pieces->push_back(std::move(a2));
    pieces->push_back(std::move(a3));
    return direct;
}

}  // namespace bml
