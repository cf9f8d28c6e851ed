#pragma once

// Central finite differences of the objective, used to cross-check the
// analytic gradient and the directional work-rate sums.

#include <torricelli/torricelli.hpp>

#include <algorithm>
#include <cmath>

namespace testfd {

using torricelli::Configuration;
using torricelli::Point;
using torricelli::Vec;

// Directional derivative of the objective at x along unit direction u.
inline double directional_central(const Configuration& config, const Point& x,
                                  const Vec& u, double h) {
  const double fp = torricelli::objective(config, x + h * u);
  const double fm = torricelli::objective(config, x - h * u);
  return (fp - fm) / (2.0 * h);
}

inline Vec gradient_central(const Configuration& config, const Point& x,
                            double h) {
  Vec g = Vec::zero(x.dim());
  for (int c = 0; c < x.dim(); ++c) {
    Vec e = Vec::zero(x.dim());
    e[c] = 1.0;
    g[c] = directional_central(config, x, e, h);
  }
  return g;
}

// Relative error with an absolute floor, so near-zero derivatives do not
// blow the ratio up on rounding noise alone.
inline double rel_err(double a, double b, double floor_scale) {
  const double denom =
      std::max({std::abs(a), std::abs(b), floor_scale});
  return std::abs(a - b) / denom;
}

}  // namespace testfd
