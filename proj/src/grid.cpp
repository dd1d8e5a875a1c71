#include "bml/grid.hpp"

#include <cmath>
#include <numbers>

namespace bml {

namespace {
bool power_of_two(int N) { return N > 0 && (N & (N - 1)) == 0; }
}

GridSpec::GridSpec(int n_, int N_, double L_) : n(n_), N(N_), L(L_) {
    if (n != 2 && n != 3) throw InvalidParameter("GridSpec: n must be 2 or 3");
    if (!power_of_two(N)) throw InvalidParameter("GridSpec: N must be a power of two");
    if (!(L > 0.0)) throw InvalidParameter("GridSpec: L must be positive");
}

std::size_t GridSpec::total() const {
    std::size_t t = 1;
    for (int d = 0; d < n; ++d) t *= std::size_t(N);
    return t;
}

double GridSpec::freq_step() const { return 2.0 * std::numbers::pi / L; }
double GridSpec::nyquist() const { return std::numbers::pi * N / L; }

PhysicalField::PhysicalField(const GridSpec& g, int comps)
    : grid(g), components(comps), values(g.total() * std::size_t(comps), 0.0) {}

void PhysicalField::check_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidField("non-finite sample in field");
}

SpectralField::SpectralField(const GridSpec& g, int comps)
    : grid(g), components(comps), coeffs(g.total() * std::size_t(comps), cplx(0.0, 0.0)) {}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    if (!(grid == o.grid) || components != o.components)
        throw ShapeError("field shape mismatch in +=");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    if (!(grid == o.grid) || components != o.components)
        throw ShapeError("field shape mismatch in -=");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : coeffs) c *= s;
    return *this;
}

}  // namespace bml
