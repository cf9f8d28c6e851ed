#pragma once

#include <cstdint>
#include <cstddef>

#include "torricelli/geometry.hpp"
#include "torricelli/sphere.hpp"

namespace torricelli {

// Hard ceiling on total cell evaluations for one oracle call.
inline constexpr std::uint64_t kOracleCellBudget = 100000000;

struct OracleResult {
  Point argmin;
  double min_value = 0.0;
  double resolution = 0.0;  // last grid cell size
  std::uint64_t cells_evaluated = 0;

  explicit OracleResult(Point x) : argmin(x) {}
};

struct SphereOracleResult {
  SpherePoint argmin;
  double min_value = 0.0;
  double resolution = 0.0;  // final angular step, radians
  std::uint64_t cells_evaluated = 0;

  explicit SphereOracleResult(SpherePoint x) : argmin(x) {}
};

// Brute-force minimization by nested grid refinement, sharing nothing with
// the solver beyond the objective itself. Level 1 covers the anchors'
// bounding box padded by 10% of the diameter with per_level points per axis;
// each later level re-grids a box three previous cells wide around the
// incumbent. Anchor positions compete as candidates at every level, so
// absorbed minima are found exactly. The incumbent can only improve.
// NoActiveAnchor when every weight is zero; BudgetExceeded when the
// requested grid would pass kOracleCellBudget evaluations.
OracleResult grid_refine_minimize(const Configuration& config, int levels = 6,
                                  int per_level = 16);

// Same idea on the sphere: a latitude-longitude grid of the hemisphere
// around the configuration's witness direction at `resolution_degrees`,
// followed by one local refinement pass at a sixteenth of that step.
// Anchors compete as candidates. NotInHemisphere without a witness.
SphereOracleResult spherical_grid_minimize(const SphereConfiguration& config,
                                           double resolution_degrees);

// Deterministic pseudo-random test configuration: anchor coordinates
// uniform in [-1,1]^d, redrawn wholesale until all pairwise distances reach
// 1e-3, then weights uniform in [weight_low, weight_high]. Identical seeds
// give bit-identical output.
Configuration random_configuration(std::uint64_t seed, int m, int d,
                                   double weight_low, double weight_high);

}  // namespace torricelli
