#include "bml/interp.hpp"

#include <cmath>
#include <numbers>

#include "bml/fft.hpp"

namespace bml {

TrigInterpolator::TrigInterpolator(const SpectralField& u, int half_width)
    : grid_(u.grid), comps_(u.components), msp_(half_width) {
    if (msp_ < 2 || msp_ > 16)
        throw InvalidParameter("TrigInterpolator: half_width must be in [2,16]");
    const int N = grid_.N;
    mr_ = 2 * N;
    // Width balancing the gaussian truncation error against the fine-grid
    // aliasing error; both come out at roughly exp(-2.36 half_width).
    tau_ = std::numbers::pi * msp_ / (3.0 * double(N) * N);
    prefac_ = std::pow(std::sqrt(std::numbers::pi / tau_) / mr_, grid_.n);

    // Amplify coefficients by exp(|k|^2 tau) and place on the fine lattice.
    const std::size_t fine_tot = std::size_t(std::pow(double(mr_), grid_.n) + 0.5);
    std::vector<cplx> buf(fine_tot);
    fine_.assign(std::size_t(comps_) * fine_tot, 0.0);
    auto wrap = [&](int k) { return k >= 0 ? k : k + mr_; };
    for (int c = 0; c < comps_; ++c) {
        std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
        const cplx* src = u.comp(c);
        if (grid_.n == 2) {
            for_each_mode(grid_, [&](std::size_t i, const int* k) {
                double k2 = double(k[0]) * k[0] + double(k[1]) * k[1];
                buf[std::size_t(wrap(k[0])) * mr_ + wrap(k[1])] =
                    src[i] * std::exp(k2 * tau_);
            });
        } else {
            const std::size_t mm = std::size_t(mr_) * mr_;
            for_each_mode(grid_, [&](std::size_t i, const int* k) {
                double k2 = double(k[0]) * k[0] + double(k[1]) * k[1] +
                            double(k[2]) * k[2];
                buf[std::size_t(wrap(k[0])) * mm + std::size_t(wrap(k[1])) * mr_ +
                    wrap(k[2])] = src[i] * std::exp(k2 * tau_);
            });
        }
        fft_nd(buf.data(), grid_.n, mr_, +1);
        double* dst = fine_.data() + std::size_t(c) * fine_tot;
        for (std::size_t i = 0; i < fine_tot; ++i) dst[i] = buf[i].real();
    }
}

void TrigInterpolator::eval(const double* x, double* out) const {
    const int n = grid_.n;
    const double two_pi = 2.0 * std::numbers::pi;
    const double hf = two_pi / mr_;
    const int w = 2 * msp_;  // taps per axis
    // per-axis tap weights and wrapped fine indices
    double wt[3][32];
    int idx[3][32];
    for (int d = 0; d < n; ++d) {
        double theta = x[d] * two_pi / grid_.L;
        theta -= two_pi * std::floor(theta / two_pi);
        int m0 = int(std::floor(theta / hf));
        for (int t = 0; t < w; ++t) {
            int m = m0 - msp_ + 1 + t;
            double dtheta = theta - m * hf;
            wt[d][t] = std::exp(-dtheta * dtheta / (4.0 * tau_));
            idx[d][t] = ((m % mr_) + mr_) % mr_;
        }
    }
    const std::size_t fine_tot =
        std::size_t(std::pow(double(mr_), n) + 0.5);
    for (int c = 0; c < comps_; ++c) {
        const double* f = fine_.data() + std::size_t(c) * fine_tot;
        double acc = 0.0;
        if (n == 2) {
            for (int a = 0; a < w; ++a) {
                const double* row = f + std::size_t(idx[0][a]) * mr_;
                double s = 0.0;
                for (int b = 0; b < w; ++b) s += wt[1][b] * row[idx[1][b]];
                acc += wt[0][a] * s;
            }
        } else {
            const std::size_t mm = std::size_t(mr_) * mr_;
            for (int a = 0; a < w; ++a) {
                const double* slab = f + std::size_t(idx[0][a]) * mm;
                double sa = 0.0;
                for (int b = 0; b < w; ++b) {
                    const double* row = slab + std::size_t(idx[1][b]) * mr_;
                    double s = 0.0;
                    for (int e = 0; e < w; ++e) s += wt[2][e] * row[idx[2][e]];
                    sa += wt[1][b] * s;
                }
                acc += wt[0][a] * sa;
            }
        }
        out[c] = prefac_ * acc;
    }
}

}  // namespace bml
