#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bml/spectral_ops.hpp"

namespace bml {

enum class LpMode { homogeneous, inhomogeneous };

// Dyadic partition of unity on the frequency lattice.
// phi is supported in the ring {3/4 <= |xi| <= 8/3}, psi in the ball
// {|xi| <= 4/3}, and psi(xi) + sum_{j>=0} phi(2^-j xi) = 1 telescopes
// exactly by construction.
class DyadicPartition {
  public:
    GridSpec grid;
    int j_min = 0;  // smallest shell whose inner radius clears the lattice step
    int j_max = 0;  // largest shell fully inside the Nyquist ball

    static double psi_profile(double t);  // radial, 1 on [0,3/4], 0 on [4/3,inf)
    static double phi_profile(double t);  // psi(t/2) - psi(t)

    // Cached lattice multipliers.
    const std::vector<double>& phi_mult(int j) const;  // phi(2^-j xi)
    const std::vector<double>& psi_mult() const;       // psi(xi), inhomogeneous ball block
    // S_j multiplier psi(2^-j xi); in homogeneous mode the mean is excluded.
    std::vector<double> low_pass_mult(int j, LpMode mode) const;

    std::vector<int> range(LpMode mode) const;  // homogeneous: [j_min..j_max]; inhomogeneous: {-1}+[0..j_max]
    bool in_range(int j, LpMode mode) const;

    mutable std::map<int, std::vector<double>> phi_cache_;
    mutable std::vector<double> psi_cache_;
};

DyadicPartition build_partition(const GridSpec& grid);

// Frequency projections.
SpectralField project_block(const DyadicPartition& p, const SpectralField& u, int j,
                            LpMode mode);
SpectralField low_pass(const DyadicPartition& p, const SpectralField& u, int j,
                       LpMode mode);

// Full decomposition u = sum_j Delta_j u over the partition range.
struct DyadicDecomposition {
    LpMode mode;
    std::map<int, SpectralField> blocks;
    SpectralField reconstruct() const;
};
DyadicDecomposition decompose(const DyadicPartition& p, const SpectralField& u,
                              LpMode mode);

// Bony splitting of the (dealiased) product uv into the two paraproducts and
// the diagonal remainder. T_u v sums S_{k-1}u Delta_k v over the range; the
// remainder pairs blocks at distance <= 1.
struct BonySplit {
    SpectralField T_uv;       // low(u) x high(v)
    SpectralField T_vu;       // low(v) x high(u)
    SpectralField remainder;  // diagonal interactions
};
BonySplit bony_split(const DyadicPartition& p, const SpectralField& u,
                     const SpectralField& v, LpMode mode);

// [Delta_j, v.grad]u for divergence-free v. If pieces is non-null it receives
// the four terms of the proof decomposition (div Delta_j R(u,v),
// Delta_j T_{grad u} v, -R(v, Delta_j grad u), -[T_v, Delta_j] grad u) whose
// sum reproduces the commutator.
SpectralField commutator_transport(const DyadicPartition& p, const SpectralField& v,
                                   const SpectralField& u, int j, LpMode mode,
                                   std::vector<SpectralField>* pieces = nullptr);

// [Delta_j, a]g for scalar a (g may be a vector, acts componentwise). Pieces:
// ([Delta_j, T_a]g, Delta_j R(a,g), -R(a, Delta_j g)).
SpectralField commutator_multiply(const DyadicPartition& p, const SpectralField& a,
                                  const SpectralField& g, int j, LpMode mode,
                                  std::vector<SpectralField>* pieces = nullptr);

}  // namespace bml
