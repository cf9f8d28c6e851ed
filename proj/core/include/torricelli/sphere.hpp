#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "torricelli/solver.hpp"
#include "torricelli/vec.hpp"

namespace torricelli {

// Allowed deviation of a tangent vector from the tangent plane.
inline constexpr double kTangencySlack = 1e-10;

// Geodesic distance below which a point counts as sitting on an anchor.
inline constexpr double kSphereAnchorDistance = 1e-12;

// Point on the unit sphere, validated (or renormalized) at construction.
class SpherePoint {
 public:
  // InvalidArgument unless | |v| - 1 | <= 1e-12.
  explicit SpherePoint(const Vec& v);

  // Rescales any nonzero 3-vector onto the sphere; InvalidArgument on zero
  // or non-finite input.
  static SpherePoint normalized(const Vec& v);

  const Vec& coords() const noexcept { return c_; }
  double operator[](int i) const noexcept { return c_[i]; }

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
    return a.c_ == b.c_;
  }

 private:
  Vec c_;
};

// Vector in the tangent plane at `base`.
struct TangentVector {
  SpherePoint base;
  Vec vec;

  // InvalidArgument when vec is not 3D or not orthogonal to base within
  // kTangencySlack.
  TangentVector(SpherePoint base_point, Vec v);

  double norm() const noexcept { return vec.norm(); }
};

struct SphereWeightedPoint {
  SpherePoint position;
  double weight;

  SphereWeightedPoint(SpherePoint p, double w);
};

// Anchor list on the sphere. The open-hemisphere flag (all active anchors
// strictly on one side of some plane through the center) is decided at
// construction by witness search: the normalized weighted centroid first,
// then 64 seeded random directions.
class SphereConfiguration {
 public:
  explicit SphereConfiguration(std::vector<SphereWeightedPoint> points);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<SphereWeightedPoint>& points() const noexcept {
    return points_;
  }
  const SphereWeightedPoint& at(std::size_t i) const;  // IndexOutOfRange

  const std::vector<std::size_t>& active() const noexcept { return active_; }
  double weight_sum() const noexcept { return weight_sum_; }

  bool in_open_hemisphere() const noexcept { return witness_.has_value(); }
  // Unit direction n with n . A_i > 0 for every active anchor, when one was
  // found.
  const std::optional<Vec>& hemisphere_witness() const noexcept {
    return witness_;
  }

 private:
  std::vector<SphereWeightedPoint> points_;
  std::vector<std::size_t> active_;
  double weight_sum_ = 0.0;
  std::optional<Vec> witness_;
};

// Arc length between two sphere points, in [0, pi].
double geodesic_distance(const SpherePoint& a, const SpherePoint& b);

// Follow the great circle from base in direction v for arc length |v|.
// BaseMismatch when v is anchored elsewhere; BeyondInjectivityRadius when
// |v| >= pi. |v| below 1e-12 returns base unchanged.
SpherePoint exp_map(const SpherePoint& base, const TangentVector& v);

// Inverse of exp_map: the tangent vector at base pointing along the shortest
// arc to target, with norm equal to the geodesic distance.
// AntipodalPoints when base . target <= -1 + 1e-12.
TangentVector log_map(const SpherePoint& base, const SpherePoint& target);

// Weighted sum of geodesic distances from x to the active anchors.
double geodesic_objective(const SphereConfiguration& config,
                          const SpherePoint& x);

// Sum of b_i times the unit tangent at x toward each active anchor; vanishes
// at a floating geodesic minimizer. AtAnchor when x is within
// kSphereAnchorDistance of an active anchor; AntipodalPoints propagates.
TangentVector geodesic_balancing_residual(const SphereConfiguration& config,
                                          const SpherePoint& x);

// Collapses coincident anchors (within kSphereAnchorDistance) into one,
// summing their weights. `first_seen` receives, for each merged anchor, the
// first matching index in the input.
SphereConfiguration merge_sphere_duplicates(
    const SphereConfiguration& config,
    std::vector<std::size_t>* first_seen = nullptr);

// Geodesic analogue of the Euclidean vertex pull: the norm of
// sum_{j != i} b_j times the unit tangent at A_i toward A_j.
double sphere_vertex_pull(const SphereConfiguration& config, std::size_t i);

// Absorption test on the sphere: sphere_vertex_pull(i) <= weight of i.
bool classify_sphere_vertex(const SphereConfiguration& config, std::size_t i);

struct SphereSolverOutcome {
  SpherePoint minimizer;
  SolveCase kind = SolveCase::Floating;
  std::size_t absorbed_index = 0;  // index into the input configuration
  double residual_norm = 0.0;
  double objective_value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<Warning> warnings;

  explicit SphereSolverOutcome(SpherePoint x) : minimizer(x) {}
};

// Minimize the weighted sum of geodesic distances over the sphere.
// Requires the open-hemisphere flag (NotInHemisphere otherwise); absorbed
// cases are settled exactly by the vertex test, floating cases by gradient
// steps x <- exp_map(x, (step / sum b) * residual) with the step halved
// whenever the objective fails to decrease. NoActiveAnchor when every
// weight is zero. Honors residual_tolerance, max_iterations and
// initial_point (a 3-vector, normalized onto the sphere) from options.
SphereSolverOutcome solve_on_sphere(const SphereConfiguration& config,
                                    const SolverOptions& options = {});

}  // namespace torricelli
