#include "torricelli/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "torricelli/errors.hpp"
#include "torricelli/rng.hpp"

namespace torricelli {

namespace {

struct AxisBox {
  Vec lo, hi;  // per-axis bounds

  explicit AxisBox(int dim) : lo(Vec::zero(dim)), hi(Vec::zero(dim)) {}
};

}  // namespace

OracleResult grid_refine_minimize(const Configuration& config, int levels,
                                  int per_level) {
  if (levels < 1)
    throw Error(ErrorCode::InvalidArgument, "need at least one grid level");
  if (per_level < 8)
    throw Error(ErrorCode::InvalidArgument,
                "need at least eight grid points per axis");
  if (config.active().empty())
    throw Error(ErrorCode::NoActiveAnchor, "all weights are zero");

  const int d = config.dimension();
  std::uint64_t cells_per_level = 1;
  for (int c = 0; c < d; ++c)
    cells_per_level *= static_cast<std::uint64_t>(per_level);
  if (static_cast<std::uint64_t>(levels) * cells_per_level > kOracleCellBudget)
    throw Error(ErrorCode::BudgetExceeded,
                "requested grid exceeds the evaluation budget");

  // Anchors always compete, so an absorbed minimum is found exactly and the
  // incumbent can never be worse than the best anchor.
  OracleResult result(config.points()[config.active()[0]].position);
  result.min_value = objective(config, result.argmin);
  result.cells_evaluated = 1;
  for (std::size_t idx = 1; idx < config.active().size(); ++idx) {
    const Point& candidate = config.points()[config.active()[idx]].position;
    const double value = objective(config, candidate);
    ++result.cells_evaluated;
    if (value < result.min_value) {
      result.min_value = value;
      result.argmin = candidate;
    }
  }

  // A barely-unabsorbed anchor hides the minimizer in a valley too narrow
  // for any coarse lattice: it leaves the anchor along the resultant of the
  // unit pulls toward the other anchors, so a logarithmic one-dimensional
  // sweep along that ray seeds the refinement with a competitive incumbent.
  const double diam = config.diameter();
  if (diam > 0.0) {
    for (std::size_t i : config.active()) {
      const Point& here = config.points()[i].position;
      Vec toward = Vec::zero(d);
      for (std::size_t j : config.active()) {
        if (j == i) continue;
        const Vec diff = config.points()[j].position - here;
        const double len = diff.norm();
        if (len < kCoincidenceDistance) continue;
        toward += (config.points()[j].weight / len) * diff;
      }
      const double strength = toward.norm();
      if (strength <= config.points()[i].weight) continue;
      const Vec ray = toward / strength;
      for (int k = 0; k < 128; ++k) {
        const double exponent = -8.0 + (8.0 - 0.3) * k / 127.0;
        const Point p = here + diam * std::pow(10.0, exponent) * ray;
        const double value = objective(config, p);
        ++result.cells_evaluated;
        if (value < result.min_value) {
          result.min_value = value;
          result.argmin = p;
        }
      }
    }
  }

  AxisBox box(d);
  for (int c = 0; c < d; ++c) {
    double lo = config.points()[config.active()[0]].position[c];
    double hi = lo;
    for (std::size_t i : config.active()) {
      lo = std::min(lo, config.points()[i].position[c]);
      hi = std::max(hi, config.points()[i].position[c]);
    }
    const double pad = 0.1 * config.diameter();
    box.lo[c] = lo - pad;
    box.hi[c] = hi + pad;
  }

  double cell = 0.0;
  for (int level = 1; level <= levels; ++level) {
    if (level > 1) {
      // Re-grid a box three previous cells wide around the incumbent.
      for (int c = 0; c < d; ++c) {
        box.lo[c] = result.argmin[c] - 1.5 * cell;
        box.hi[c] = result.argmin[c] + 1.5 * cell;
      }
    }
    Vec cell_size = Vec::zero(d);
    for (int c = 0; c < d; ++c)
      cell_size[c] = (box.hi[c] - box.lo[c]) / per_level;

    // Cell-centered lattice, scanned in row-major order; strict improvement
    // keeps the lowest-index argmin on ties.
    std::vector<int> index(static_cast<std::size_t>(d), 0);
    for (;;) {
      Point p = Vec::zero(d);
      for (int c = 0; c < d; ++c)
        p[c] = box.lo[c] + (index[static_cast<std::size_t>(c)] + 0.5) *
                               cell_size[c];
      const double value = objective(config, p);
      ++result.cells_evaluated;
      if (value < result.min_value) {
        result.min_value = value;
        result.argmin = p;
      }
      int c = d - 1;
      while (c >= 0 && ++index[static_cast<std::size_t>(c)] == per_level)
        index[static_cast<std::size_t>(c--)] = 0;
      if (c < 0) break;
    }
    cell = 0.0;
    for (int c = 0; c < d; ++c) cell = std::max(cell, cell_size[c]);
  }
  result.resolution = cell;
  return result;
}

SphereOracleResult spherical_grid_minimize(const SphereConfiguration& config,
                                           double resolution_degrees) {
  if (!(resolution_degrees > 0.0))
    throw Error(ErrorCode::InvalidArgument, "resolution must be positive");
  if (!config.in_open_hemisphere())
    throw Error(ErrorCode::NotInHemisphere,
                "active anchors do not fit in an open hemisphere");
  if (config.active().empty())
    throw Error(ErrorCode::NoActiveAnchor, "all weights are zero");

  const double res_rad = resolution_degrees * std::numbers::pi / 180.0;
  const int colat_steps = static_cast<int>(std::floor(90.0 / resolution_degrees));
  const int lon_steps = static_cast<int>(std::floor(360.0 / resolution_degrees));
  const std::uint64_t coarse_cells =
      1 + static_cast<std::uint64_t>(colat_steps) *
              static_cast<std::uint64_t>(lon_steps);
  if (coarse_cells + 33ull * 33ull > kOracleCellBudget)
    throw Error(ErrorCode::BudgetExceeded,
                "requested grid exceeds the evaluation budget");

  // Frame with the hemisphere witness as pole.
  const Vec pole = *config.hemisphere_witness();
  int least = 0;
  for (int c = 1; c < 3; ++c)
    if (std::abs(pole[c]) < std::abs(pole[least])) least = c;
  Vec h = Vec::zero(3);
  h[least] = 1.0;
  const Vec t1_raw = h - dot(h, pole) * pole;
  const Vec t1 = t1_raw / t1_raw.norm();
  const Vec t2 = cross3(pole, t1);

  SphereOracleResult result(
      config.points()[config.active()[0]].position);
  result.min_value = geodesic_objective(config, result.argmin);
  result.cells_evaluated = 1;
  auto consider = [&](const SpherePoint& p) {
    const double value = geodesic_objective(config, p);
    ++result.cells_evaluated;
    if (value < result.min_value) {
      result.min_value = value;
      result.argmin = p;
    }
  };
  for (std::size_t idx = 1; idx < config.active().size(); ++idx)
    consider(config.points()[config.active()[idx]].position);

  consider(SpherePoint::normalized(pole));
  for (int k = 1; k <= colat_steps; ++k) {
    const double colat = k * res_rad;
    for (int j = 0; j < lon_steps; ++j) {
      const double lon = j * res_rad;
      const Vec p = std::cos(colat) * pole +
                    std::sin(colat) * (std::cos(lon) * t1 + std::sin(lon) * t2);
      consider(SpherePoint::normalized(p));
    }
  }

  // One local pass at a sixteenth of the step around the incumbent.
  const double fine = res_rad / 16.0;
  const SpherePoint center = result.argmin;
  const Vec c_coords = center.coords();
  least = 0;
  for (int c = 1; c < 3; ++c)
    if (std::abs(c_coords[c]) < std::abs(c_coords[least])) least = c;
  h = Vec::zero(3);
  h[least] = 1.0;
  const Vec e1_raw = h - dot(h, c_coords) * c_coords;
  const Vec e1 = e1_raw / e1_raw.norm();
  const Vec e2 = cross3(c_coords, e1);
  for (int a = -16; a <= 16; ++a)
    for (int b = -16; b <= 16; ++b) {
      if (a == 0 && b == 0) continue;  // incumbent already counted
      const Vec offset = (a * fine) * e1 + (b * fine) * e2;
      if (offset.norm() >= std::numbers::pi) continue;
      consider(exp_map(center, TangentVector(center, offset)));
    }
  result.resolution = fine;
  return result;
}

Configuration random_configuration(std::uint64_t seed, int m, int d,
                                   double weight_low, double weight_high) {
  if (m < 1)
    throw Error(ErrorCode::InvalidArgument, "need at least one anchor");
  if (d != 2 && d != 3)
    throw Error(ErrorCode::InvalidArgument, "dimension must be 2 or 3");
  if (!(weight_low > 0.0) || !(weight_low <= weight_high))
    throw Error(ErrorCode::InvalidArgument,
                "weight range must satisfy 0 < low <= high");

  SplitMix64 rng(seed);
  std::vector<Point> positions(static_cast<std::size_t>(m), Vec::zero(d));
  for (;;) {
    for (auto& p : positions)
      for (int c = 0; c < d; ++c) p[c] = rng.next_in(-1.0, 1.0);
    double min_dist = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a + 1 < positions.size(); ++a)
      for (std::size_t b = a + 1; b < positions.size(); ++b)
        min_dist = std::min(min_dist, distance(positions[a], positions[b]));
    if (positions.size() < 2 || min_dist >= 1e-3) break;
  }
  std::vector<WeightedPoint> points;
  points.reserve(positions.size());
  for (const auto& p : positions)
    points.emplace_back(p, rng.next_in(weight_low, weight_high));
  return Configuration(std::move(points), d);
}

}  // namespace torricelli
