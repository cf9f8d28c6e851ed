#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "torricelli/geometry.hpp"

namespace torricelli {

// Non-fatal conditions noted while solving.
enum class Warning {
  CollinearInput,    // active anchors lie on one line
  MergedDuplicates,  // coincident anchors were collapsed before solving
  BoundaryTie,       // more than one anchor passed the absorption test
};

const char* to_string(Warning w);

struct SolverOptions {
  double residual_tolerance = 1e-9;  // stop when |residual| <= tol * sum(b)
  int max_iterations = 10000;
  // Snap radius for the vertex test along the iteration path; defaults to
  // 1e-12 * diameter when unset.
  std::optional<double> vertex_snap_distance;
  // Start point override; defaults to the weighted centroid of the anchors.
  std::optional<Point> initial_point;
};

enum class SolveCase {
  Floating,  // minimizer away from every anchor, residual ~ 0
  Absorbed,  // minimizer at an anchor that dominates its peers
};

struct SolverOutcome {
  Point minimizer;
  SolveCase kind = SolveCase::Floating;
  // Index into the *input* configuration of the absorbing anchor;
  // meaningful only when kind == Absorbed.
  std::size_t absorbed_index = 0;
  double residual_norm = 0.0;
  double objective_value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<Warning> warnings;
};

// Pull exerted on active anchor i by the other active anchors:
// | sum_{j != i} b_j u(A_j -> A_i) |. The anchor absorbs the minimizer
// exactly when this does not exceed its own weight b_i.
// InactiveAnchor when i has zero weight, IndexOutOfRange when i is out of
// bounds, CoincidentPoints when another active anchor coincides with A_i.
double vertex_pull(const Configuration& config, std::size_t i);

// Absorption test for anchor i: vertex_pull(i) <= weight of i.
bool classify_vertex(const Configuration& config, std::size_t i);

// One fixed-point update x -> (sum b_i A_i / d_i) / (sum b_i / d_i) over the
// active set. AtAnchor when x sits on an active anchor.
Point weiszfeld_step(const Configuration& config, const Point& x);

// Minimize the weighted sum of distances to the anchors. Handles absorbed
// cases exactly (via the vertex test) and floating cases iteratively,
// snapping to an anchor and re-testing whenever the path passes within the
// snap radius. NoActiveAnchor when every weight is zero.
SolverOutcome solve(const Configuration& config,
                    const SolverOptions& options = {});

}  // namespace torricelli
