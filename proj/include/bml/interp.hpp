#pragma once

#include "bml/grid.hpp"

namespace bml {

// Evaluates a band-limited field at arbitrary points: Gaussian-gridding
// spreading against a 2x-oversampled fine grid (type-2 nonuniform transform).
// half_width controls accuracy: 6 gives ~1e-6, 12 gives ~1e-12.
class TrigInterpolator {
  public:
    TrigInterpolator() = default;
    TrigInterpolator(const SpectralField& u, int half_width = 12);

    // Evaluate all components at physical point x (length n, any real values;
    // coordinates wrap periodically). out has length components().
    void eval(const double* x, double* out) const;

    int components() const { return comps_; }
    const GridSpec& grid() const { return grid_; }
    bool empty() const { return fine_.empty(); }

  private:
    GridSpec grid_;
    int comps_ = 0;
    int msp_ = 0;      // spreading half-width
    int mr_ = 0;       // fine grid points per axis
    double tau_ = 0.0; // gaussian width in scaled coordinates
    double prefac_ = 0.0;
    std::vector<double> fine_;  // comps x mr^n, row-major
};

}  // namespace bml
