#include "torricelli/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "torricelli/errors.hpp"
#include "torricelli/geometry.hpp"
#include "torricelli/rng.hpp"

namespace torricelli {

SpherePoint::SpherePoint(const Vec& v) : c_(v) {
  if (v.dim() != 3)
    throw Error(ErrorCode::InvalidArgument, "sphere points are 3D");
  if (!v.finite())
    throw Error(ErrorCode::InvalidArgument,
                "sphere point coordinates must be finite");
  if (std::abs(v.norm() - 1.0) > kUnitNormSlack)
    throw Error(ErrorCode::InvalidArgument,
                "sphere point norm deviates from 1 by more than 1e-12");
}

SpherePoint SpherePoint::normalized(const Vec& v) {
  if (v.dim() != 3)
    throw Error(ErrorCode::InvalidArgument, "sphere points are 3D");
  if (!v.finite())
    throw Error(ErrorCode::InvalidArgument,
                "sphere point coordinates must be finite");
  const double len = v.norm();
  if (len < kCoincidenceDistance)
    throw Error(ErrorCode::InvalidArgument,
                "cannot project the zero vector onto the sphere");
  return SpherePoint(v / len);
}

TangentVector::TangentVector(SpherePoint base_point, Vec v)
    : base(base_point), vec(v) {
  if (v.dim() != 3)
    throw Error(ErrorCode::InvalidArgument, "tangent vectors are 3D");
  if (std::abs(dot(base.coords(), vec)) > kTangencySlack)
    throw Error(ErrorCode::InvalidArgument,
                "vector is not tangent to the sphere at its base point");
}

SphereWeightedPoint::SphereWeightedPoint(SpherePoint p, double w)
    : position(p), weight(w) {
  if (!std::isfinite(w) || w < 0.0)
    throw Error(ErrorCode::InvalidArgument,
                "weight must be finite and nonnegative, got " +
                    std::to_string(w));
}

namespace {

bool witnesses_all(const Vec& n,
                   const std::vector<SphereWeightedPoint>& points,
                   const std::vector<std::size_t>& active) {
  for (std::size_t i : active)
    if (!(dot(n, points[i].position.coords()) > 0.0)) return false;
  return true;
}

}  // namespace

SphereConfiguration::SphereConfiguration(
    std::vector<SphereWeightedPoint> points)
    : points_(std::move(points)) {
  if (points_.empty())
    throw Error(ErrorCode::InvalidArgument,
                "configuration needs at least one anchor");
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i].weight > 0.0) {
      active_.push_back(i);
      weight_sum_ += points_[i].weight;
    }

  if (active_.empty()) {
    witness_ = Vec(0.0, 0.0, 1.0);  // vacuously a hemisphere
    return;
  }
  Vec centroid = Vec::zero(3);
  for (std::size_t i : active_)
    centroid += points_[i].weight * points_[i].position.coords();
  if (centroid.norm() > 0.0 &&
      witnesses_all(centroid / centroid.norm(), points_, active_)) {
    witness_ = centroid / centroid.norm();
    return;
  }
  SplitMix64 rng(0x68656D69u);  // fixed seed: witness search is deterministic
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Vec v(rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0),
                rng.next_in(-1.0, 1.0));
    const double len = v.norm();
    if (len < 1e-6) continue;
    if (witnesses_all(v / len, points_, active_)) {
      witness_ = v / len;
      return;
    }
  }
}

const SphereWeightedPoint& SphereConfiguration::at(std::size_t i) const {
  if (i >= points_.size())
    throw Error(ErrorCode::IndexOutOfRange,
                "anchor index " + std::to_string(i) + " out of range",
                static_cast<std::ptrdiff_t>(i));
  return points_[i];
}

double geodesic_distance(const SpherePoint& a, const SpherePoint& b) {
  return std::acos(std::clamp(dot(a.coords(), b.coords()), -1.0, 1.0));
}

SpherePoint exp_map(const SpherePoint& base, const TangentVector& v) {
  if (!(v.base == base))
    throw Error(ErrorCode::BaseMismatch,
                "tangent vector is anchored at a different base point");
  const double theta = v.vec.norm();
  if (theta >= std::numbers::pi)
    throw Error(ErrorCode::BeyondInjectivityRadius,
                "arc length " + std::to_string(theta) +
                    " reaches the antipode");
  if (theta < 1e-12) return base;
  const Vec moved =
      std::cos(theta) * base.coords() + (std::sin(theta) / theta) * v.vec;
  return SpherePoint::normalized(moved);
}

TangentVector log_map(const SpherePoint& base, const SpherePoint& target) {
  const double straight = dot(base.coords(), target.coords());
  if (straight <= -1.0 + 1e-12)
    throw Error(ErrorCode::AntipodalPoints,
                "no unique shortest arc between antipodal points");
  const Vec perp = target.coords() - straight * base.coords();
  const double s = perp.norm();
  if (s < kCoincidenceDistance) return TangentVector(base, Vec::zero(3));
  const double theta = std::atan2(s, straight);
  Vec vec = (theta / s) * perp;
  vec -= dot(vec, base.coords()) * base.coords();  // tangency cleanup
  return TangentVector(base, vec);
}

double geodesic_objective(const SphereConfiguration& config,
                          const SpherePoint& x) {
  double total = 0.0;
  for (std::size_t i : config.active())
    total += config.points()[i].weight *
             geodesic_distance(x, config.points()[i].position);
  return total;
}

TangentVector geodesic_balancing_residual(const SphereConfiguration& config,
                                          const SpherePoint& x) {
  Vec total = Vec::zero(3);
  for (std::size_t i : config.active()) {
    const TangentVector arm = log_map(x, config.points()[i].position);
    const double theta = arm.norm();
    if (theta < kSphereAnchorDistance)
      throw Error(ErrorCode::AtAnchor,
                  "probe point coincides with anchor " + std::to_string(i),
                  static_cast<std::ptrdiff_t>(i));
    total += (config.points()[i].weight / theta) * arm.vec;
  }
  total -= dot(total, x.coords()) * x.coords();
  return TangentVector(x, total);
}

double sphere_vertex_pull(const SphereConfiguration& config, std::size_t i) {
  const SphereWeightedPoint& home = config.at(i);
  if (!(home.weight > 0.0))
    throw Error(ErrorCode::InactiveAnchor,
                "anchor " + std::to_string(i) + " has zero weight",
                static_cast<std::ptrdiff_t>(i));
  Vec total = Vec::zero(3);
  for (std::size_t j : config.active()) {
    if (j == i) continue;
    const TangentVector arm = log_map(home.position, config.points()[j].position);
    const double theta = arm.norm();
    if (theta < kSphereAnchorDistance)
      throw Error(ErrorCode::CoincidentPoints,
                  "anchors " + std::to_string(i) + " and " + std::to_string(j) +
                      " coincide; merge duplicates first",
                  static_cast<std::ptrdiff_t>(j));
    total += (config.points()[j].weight / theta) * arm.vec;
  }
  return total.norm();
}

bool classify_sphere_vertex(const SphereConfiguration& config, std::size_t i) {
  return sphere_vertex_pull(config, i) <= config.points()[i].weight;
}

SphereConfiguration merge_sphere_duplicates(
    const SphereConfiguration& config, std::vector<std::size_t>* first_seen) {
  std::vector<SphereWeightedPoint> merged;
  std::vector<std::size_t> seen;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const SphereWeightedPoint& p = config.points()[i];
    bool is_new = true;
    for (std::size_t m = 0; m < merged.size(); ++m)
      if (distance(merged[m].position.coords(), p.position.coords()) <
          kSphereAnchorDistance) {
        merged[m].weight += p.weight;
        is_new = false;
        break;
      }
    if (is_new) {
      merged.push_back(p);
      seen.push_back(i);
    }
  }
  if (first_seen) *first_seen = std::move(seen);
  return SphereConfiguration(std::move(merged));
}

namespace {

// Resultant of the unit pulls away from anchor i toward its peers; nonzero
// whenever the absorption sweep has ruled anchor i out.
Vec departure_direction(const SphereConfiguration& config, std::size_t i) {
  Vec total = Vec::zero(3);
  for (std::size_t j : config.active()) {
    if (j == i) continue;
    const TangentVector arm =
        log_map(config.points()[i].position, config.points()[j].position);
    total += (config.points()[j].weight / arm.norm()) * arm.vec;
  }
  return total;
}

}  // namespace

SphereSolverOutcome solve_on_sphere(const SphereConfiguration& config,
                                    const SolverOptions& options) {
  if (!(options.residual_tolerance > 0.0))
    throw Error(ErrorCode::InvalidArgument,
                "residual tolerance must be positive");
  if (options.max_iterations <= 0)
    throw Error(ErrorCode::InvalidArgument, "max iterations must be positive");
  if (!config.in_open_hemisphere())
    throw Error(ErrorCode::NotInHemisphere,
                "active anchors do not fit in an open hemisphere");
  if (config.active().empty())
    throw Error(ErrorCode::NoActiveAnchor, "all weights are zero");

  std::vector<std::size_t> original_index;
  SphereConfiguration merged = merge_sphere_duplicates(config, &original_index);
  std::vector<Warning> warnings;
  if (merged.size() != config.size())
    warnings.push_back(Warning::MergedDuplicates);

  const double weight_sum = merged.weight_sum();
  const double residual_cap = options.residual_tolerance * weight_sum;

  // Absorption sweep.
  std::vector<std::size_t> absorbing;
  for (std::size_t i : merged.active())
    if (classify_sphere_vertex(merged, i)) absorbing.push_back(i);
  if (!absorbing.empty()) {
    std::size_t chosen = absorbing[0];
    if (absorbing.size() > 1) {
      warnings.push_back(Warning::BoundaryTie);
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i : absorbing) {
        const double value =
            geodesic_objective(merged, merged.points()[i].position);
        if (value < best) {
          best = value;
          chosen = i;
        }
      }
    }
    SphereSolverOutcome out(merged.points()[chosen].position);
    out.kind = SolveCase::Absorbed;
    out.absorbed_index = original_index[chosen];
    out.residual_norm = 0.0;
    out.objective_value = geodesic_objective(config, out.minimizer);
    out.iterations = 0;
    out.converged = true;
    out.warnings = std::move(warnings);
    return out;
  }

  // Floating case: descend along the residual from the projected centroid,
  // which the hemisphere witness guarantees is well-defined.
  SpherePoint x = [&] {
    if (options.initial_point) return SpherePoint::normalized(*options.initial_point);
    Vec centroid = Vec::zero(3);
    for (std::size_t i : merged.active())
      centroid += merged.points()[i].weight * merged.points()[i].position.coords();
    return SpherePoint::normalized(centroid);
  }();

  const double near_radius =
      std::max(options.vertex_snap_distance.value_or(kSphereAnchorDistance),
               kSphereAnchorDistance);
  auto nearest_anchor = [&](const SpherePoint& p) {
    std::optional<std::size_t> best;
    double best_dist = near_radius;
    for (std::size_t i : merged.active()) {
      const double d = geodesic_distance(p, merged.points()[i].position);
      if (d <= best_dist) {
        best_dist = d;
        best = i;
      }
    }
    return best;
  };

  // Damped fixed-point iteration: the residual divided by the sum of
  // weight-over-arc-length coefficients is a full reweighting step, which
  // contracts near the minimizer without needing the objective to resolve
  // the decrease (that falls under one ulp of f well before the residual
  // reaches its cap).  The objective check only guards against overshoot
  // far from the minimizer, with an ulp-sized slack so rounding noise
  // cannot veto the contraction.
  double value = geodesic_objective(merged, x);
  double residual_norm = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  for (;;) {
    if (auto hit = nearest_anchor(x)) {
      const Vec away = departure_direction(merged, *hit);
      const TangentVector nudge(merged.points()[*hit].position,
                                (10.0 * near_radius / away.norm()) * away);
      x = exp_map(merged.points()[*hit].position, nudge);
      value = geodesic_objective(merged, x);
    }
    const TangentVector residual = geodesic_balancing_residual(merged, x);
    residual_norm = residual.norm();
    if (residual_norm <= residual_cap) {
      converged = true;
      break;
    }
    if (iterations >= options.max_iterations) break;
    double coefficient_sum = 0.0;
    double noise_scale = 0.0;  // conditioning of the arc-length evaluations
    for (std::size_t i : merged.active()) {
      const double theta = geodesic_distance(x, merged.points()[i].position);
      coefficient_sum += merged.points()[i].weight / theta;
      noise_scale +=
          merged.points()[i].weight * std::max(1.0, 1.0 / std::sin(theta));
    }
    const Vec full_step = residual.vec / coefficient_sum;
    const double slack =
        8.0 * std::numeric_limits<double>::epsilon() * noise_scale;
    bool moved = false;
    for (double damping = 1.0; damping > 1e-12; damping *= 0.5) {
      const Vec w = damping * full_step;
      if (!(w.norm() < std::numbers::pi)) continue;
      // Below the series threshold of exp_map the chord is exact to within
      // O(|w|^3); without it the final contraction steps would be no-ops.
      const SpherePoint candidate =
          w.norm() < 1e-12 ? SpherePoint::normalized(x.coords() + w)
                           : exp_map(x, TangentVector(x, w));
      if (candidate.coords() == x.coords()) break;  // below position resolution
      const double candidate_value = geodesic_objective(merged, candidate);
      if (candidate_value <= value + slack) {
        x = candidate;
        value = candidate_value;
        moved = true;
        break;
      }
    }
    ++iterations;
    if (!moved) break;  // no trial arc both resolvable and acceptable
  }

  SphereSolverOutcome out(x);
  out.kind = SolveCase::Floating;
  out.residual_norm = residual_norm;
  out.objective_value = geodesic_objective(config, x);
  out.iterations = iterations;
  out.converged = converged;
  out.warnings = std::move(warnings);
  return out;
}

}  // namespace torricelli
