#pragma once

#include "bml/lp.hpp"

namespace bml {

// Deterministic field generators. All randomness flows through a fixed-width
// counter generator plus a hand-rolled gaussian transform so that outputs are
// reproducible across platforms for a given seed.
struct FieldFamily {
    GridSpec grid;
    std::uint64_t seed = 1;

    // Smooth zero-mean field: gaussian white coefficients shaped by
    // exp(-|k|^2/k0^2), truncated at the dealiasing band. amplitude scales the
    // sup norm to the requested value (when nonzero).
    SpectralField random_bandlimited(int comps, double k0, double amplitude) const;

    // Same, then Leray-projected (still exactly rescaled in sup norm).
    SpectralField random_solenoidal(int comps, double k0, double amplitude) const;

    // Field supported on dyadic shell j of the partition.
    SpectralField single_shell(const DyadicPartition& part, int j, int comps,
                               double amplitude) const;

    // Index-doubling dilation: c'_{2k} = c_k. Throws InvalidFamily when the
    // doubled support leaves the lattice.
    static SpectralField dilate(const SpectralField& u);
};

}  // namespace bml
