#pragma once

#include <limits>
#include <vector>

#include "bml/lp.hpp"

namespace bml {

constexpr double inf = std::numeric_limits<double>::infinity();

// Parameters of the scale N^s_{p,q,r} (s regularity, Morrey pair p >= q,
// summability r, plus the decomposition flavour).
struct SpaceParams {
    int n = 3;
    double p = 3.0;
    double q = 2.0;
    double r = 1.0;
    double s = 1.0;
    LpMode mode = LpMode::homogeneous;

    void validate() const;
};

// Discretization of the ball supremum: dyadic radii {h 2^k} up to L/2 plus a
// whole-domain entry, centers on every stride-th grid point.
struct MorreyConfig {
    int center_stride = 1;
};

// sup over centers and radii of R^{n/p - n/q} (integral over the ball of
// |u|^q)^{1/q}; |u| is the pointwise euclidean magnitude over components.
double morrey_norm(const PhysicalField& u, double p, double q,
                   const MorreyConfig& cfg = {});

struct NormResult {
    double value = 0.0;
    int j_lo = 0;  // truncation range actually used
    int j_hi = 0;
};

// l^r over blocks of 2^{sj} ||Delta_j u||_M. Homogeneous mode requires
// (numerically) zero-mean input and reports the inner block range.
NormResult besov_morrey_norm(const PhysicalField& u, const SpaceParams& sp,
                             const DyadicPartition& part,
                             const MorreyConfig& cfg = {});

// Per-block Morrey norms of a time series: row t, column = block position in
// part.range(mode). The building block for every time-integrated norm.
std::vector<std::vector<double>> block_morrey_series(
    const std::vector<PhysicalField>& series, const DyadicPartition& part,
    LpMode mode, double p, double q, const MorreyConfig& cfg = {});

// Time-integrated norm with the block-wise time quadrature taken before the
// l^r sum: per block, the L^beta norm in time (trapezoid; beta = inf -> max)
// of ||Delta_j u(t)||_M, then l^r of 2^{sj} times that.
NormResult chemin_lerner_norm(const std::vector<PhysicalField>& series,
                              const std::vector<double>& times, double beta,
                              const SpaceParams& sp, const DyadicPartition& part,
                              const MorreyConfig& cfg = {});

// Same quadrature applied to a precomputed block table.
NormResult chemin_lerner_from_blocks(const std::vector<std::vector<double>>& blocks,
                                     const std::vector<double>& times, double beta,
                                     const SpaceParams& sp,
                                     const DyadicPartition& part);

}  // namespace bml
