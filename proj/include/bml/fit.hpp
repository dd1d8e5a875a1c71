#pragma once

#include <cmath>
#include <vector>

#include "bml/errors.hpp"

namespace bml {

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r2 = 0.0;
};

// Ordinary least squares y = intercept + slope x.
inline LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw InvalidParameter("fit_line: need at least two matched samples");
    const double n = double(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    const double cxy = sxy - sx * sy / n;
    if (vx <= 0.0) throw InvalidParameter("fit_line: degenerate abscissae");
    LinearFit f;
    f.slope = cxy / vx;
    f.intercept = (sy - f.slope * sx) / n;
    f.r2 = vy > 0.0 ? cxy * cxy / (vx * vy) : 1.0;
    return f;
}

// Geometric decay fit of a positive sequence: log y_m = log C + m log rho.
inline LinearFit fit_geometric(const std::vector<double>& y) {
    std::vector<double> xs, ls;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) continue;
        xs.push_back(double(i));
        ls.push_back(std::log(y[i]));
    }
    LinearFit f = fit_line(xs, ls);
    f.slope = std::exp(f.slope);  // report the ratio itself
    f.intercept = std::exp(f.intercept);
    return f;
}

}  // namespace bml
