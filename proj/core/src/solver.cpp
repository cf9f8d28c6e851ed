#include "torricelli/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "torricelli/balance.hpp"
#include "torricelli/errors.hpp"

namespace torricelli {

const char* to_string(Warning w) {
  switch (w) {
    case Warning::CollinearInput: return "CollinearInput";
    case Warning::MergedDuplicates: return "MergedDuplicates";
    case Warning::BoundaryTie: return "BoundaryTie";
  }
  return "Unknown";
}

namespace {

void check_options(const SolverOptions& options) {
  if (!(options.residual_tolerance > 0.0))
    throw Error(ErrorCode::InvalidArgument,
                "residual tolerance must be positive");
  if (options.max_iterations <= 0)
    throw Error(ErrorCode::InvalidArgument, "max iterations must be positive");
  if (options.vertex_snap_distance && !(*options.vertex_snap_distance > 0.0))
    throw Error(ErrorCode::InvalidArgument,
                "vertex snap distance must be positive");
}

// Resultant of the unit pulls toward anchor i from every other active
// anchor. Shared by vertex_pull and the snap-displace step.
Vec pull_vector(const Configuration& config, std::size_t i) {
  const Point& here = config.points()[i].position;
  Vec total = Vec::zero(config.dimension());
  for (std::size_t j : config.active()) {
    if (j == i) continue;
    const Point& other = config.points()[j].position;
    const Vec diff = here - other;
    const double len = diff.norm();
    if (len < kCoincidenceDistance)
      throw Error(ErrorCode::CoincidentPoints,
                  "anchors " + std::to_string(i) + " and " + std::to_string(j) +
                      " coincide; merge duplicates first",
                  static_cast<std::ptrdiff_t>(j));
    total += (config.points()[j].weight / len) * diff;
  }
  return total;
}

// Index of the nearest active anchor within `radius` of x, if any.
std::optional<std::size_t> near_anchor(const Configuration& config,
                                       const Point& x, double radius) {
  std::optional<std::size_t> best;
  double best_dist = radius;
  for (std::size_t i : config.active()) {
    const double d = distance(x, config.points()[i].position);
    if (d <= best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

double vertex_pull(const Configuration& config, std::size_t i) {
  if (i >= config.size())
    throw Error(ErrorCode::IndexOutOfRange,
                "anchor index " + std::to_string(i) + " out of range",
                static_cast<std::ptrdiff_t>(i));
  if (!(config.points()[i].weight > 0.0))
    throw Error(ErrorCode::InactiveAnchor,
                "anchor " + std::to_string(i) + " has zero weight",
                static_cast<std::ptrdiff_t>(i));
  return pull_vector(config, i).norm();
}

bool classify_vertex(const Configuration& config, std::size_t i) {
  return vertex_pull(config, i) <= config.points()[i].weight;
}

Point weiszfeld_step(const Configuration& config, const Point& x) {
  if (config.active().empty())
    throw Error(ErrorCode::NoActiveAnchor, "all weights are zero");
  Vec numerator = Vec::zero(config.dimension());
  double denominator = 0.0;
  for (std::size_t i : config.active()) {
    const WeightedPoint& a = config.points()[i];
    const double len = distance(x, a.position);
    if (len < kCoincidenceDistance)
      throw Error(ErrorCode::AtAnchor,
                  "fixed-point map is undefined at anchor " + std::to_string(i),
                  static_cast<std::ptrdiff_t>(i));
    numerator += (a.weight / len) * a.position;
    denominator += a.weight / len;
  }
  return numerator / denominator;
}

SolverOutcome solve(const Configuration& config, const SolverOptions& options) {
  check_options(options);
  if (config.active().empty())
    throw Error(ErrorCode::NoActiveAnchor, "all weights are zero");

  std::vector<Warning> warnings;
  std::vector<std::size_t> original_index;
  Configuration merged = config.merge_duplicates(&original_index);
  if (merged.size() != config.size())
    warnings.push_back(Warning::MergedDuplicates);
  if (merged.collinear() && merged.active().size() >= 2)
    warnings.push_back(Warning::CollinearInput);

  const double weight_sum = merged.weight_sum();
  const double residual_cap = options.residual_tolerance * weight_sum;

  SolverOutcome out;
  out.warnings = warnings;

  // Absorption sweep settles every at-anchor candidate exactly.
  std::vector<std::size_t> absorbing;
  for (std::size_t i : merged.active())
    if (classify_vertex(merged, i)) absorbing.push_back(i);
  if (!absorbing.empty()) {
    std::size_t chosen = absorbing[0];
    if (absorbing.size() > 1) {
      out.warnings.push_back(Warning::BoundaryTie);
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i : absorbing) {
        const double value = objective(merged, merged.points()[i].position);
        if (value < best) {
          best = value;
          chosen = i;
        }
      }
    }
    out.minimizer = merged.points()[chosen].position;
    out.kind = SolveCase::Absorbed;
    out.absorbed_index = original_index[chosen];
    out.residual_norm = 0.0;
    out.objective_value = objective(config, out.minimizer);
    out.iterations = 0;
    out.converged = true;
    return out;
  }

  // Floating case: fixed-point iteration from the weighted centroid.
  const double snap = options.vertex_snap_distance
                          ? *options.vertex_snap_distance
                          : 1e-12 * merged.diameter();
  Point x = Vec::zero(merged.dimension());
  if (options.initial_point) {
    if (options.initial_point->dim() != merged.dimension())
      throw Error(ErrorCode::InvalidArgument,
                  "initial point does not match the configuration dimension");
    x = *options.initial_point;
  } else {
    for (std::size_t i : merged.active())
      x += merged.points()[i].weight * merged.points()[i].position;
    x /= weight_sum;
  }

  int iterations = 0;
  double residual_norm = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (;;) {
    if (auto hit = near_anchor(merged, x, snap)) {
      // Not absorbed (the sweep above ruled it out), so step off the anchor
      // opposite the resultant of the remaining pulls.
      const Vec pull = pull_vector(merged, *hit);
      x = merged.points()[*hit].position - (snap / pull.norm()) * pull;
    }
    residual_norm = balancing_residual(merged, x).norm();
    if (residual_norm <= residual_cap) {
      converged = true;
      break;
    }
    if (iterations >= options.max_iterations) break;
    x = weiszfeld_step(merged, x);
    ++iterations;
  }

  out.minimizer = x;
  out.kind = SolveCase::Floating;
  out.residual_norm = residual_norm;
  out.objective_value = objective(config, x);
  out.iterations = iterations;
  out.converged = converged;
  return out;
}

}  // namespace torricelli
