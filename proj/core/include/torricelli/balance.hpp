#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "torricelli/geometry.hpp"

namespace torricelli {

// Default tolerance for the verification checks (relative to sum of weights).
inline constexpr double kDefaultVerifyTolerance = 1e-8;

// Frame rays closer to parallel than this (by |sin|) cannot span a frame.
inline constexpr double kFrameParallelSlack = 1e-10;

// Largest admissible probe displacement, as a fraction of the diameter.
inline constexpr double kMaxProbeFraction = 1e-3;

// Direction in a right-handed orthonormal frame (e1, e2, e3): elevation out
// of the e1-e2 plane in [-pi/2, pi/2], azimuth within that plane from e1,
// in (-pi, pi].
struct SphericalFrameAngles {
  double elevation = 0.0;
  double azimuth = 0.0;

  // Unit coordinates in the frame:
  // (cos(elevation) cos(azimuth), cos(elevation) sin(azimuth), sin(elevation)).
  std::array<double, 3> reconstruct() const;
};

// Work-rate sums for one probe direction u_j at the test point.
struct DirectionalBalance {
  std::size_t anchor = 0;  // anchor defining the probe direction
  // Work rate along u_j: sum over active i of b_i cos(angle from u_j to u_i).
  double cos_sum = 0.0;
  // 2D: signed-sine sum, the work rate along the quarter-turn of u_j.
  // 3D: magnitude of the residual component orthogonal to u_j.
  double sin_sum = 0.0;
  // Residual coordinates in the probe frame: (cos_sum, sin_sum) in 2D,
  // (s1, s2, s3) in the frame at u_j in 3D. These are what `passed` checks.
  std::vector<double> component_sums;
};

struct BalanceReport {
  int dimension = 0;
  Vec residual;  // sum of b_i u(x -> A_i)
  double residual_norm = 0.0;
  double weight_sum = 0.0;
  double tolerance = kDefaultVerifyTolerance;
  // residual_norm and every component sum within tolerance * weight_sum.
  bool passed = false;
  std::vector<DirectionalBalance> per_direction;
};

// Sum of b_i times the unit vector from x to each active anchor; the exact
// negation of the objective's gradient at smooth points, vanishing at a
// floating minimizer. AtAnchor when x sits on an active anchor.
Vec balancing_residual(const Configuration& config, const Point& x);

// Signed projection u(x,A_i) . u(x,A_j), i.e. the cosine of the angle at x
// between anchors i and j, negative when the rays open past a right angle.
// 2D only. AtAnchor when x coincides with anchor i or j.
double signed_coefficient_2d(const Configuration& config, const Point& x,
                             std::size_t i, std::size_t j);

// Work-rate sums over the active set for the probe direction toward anchor
// j (2D). cos_sum_2d equals residual . u(x,A_j); sin_sum_2d uses the signed
// sine (counterclockwise positive) and equals residual . rot90(u(x,A_j)).
double cos_sum_2d(const Configuration& config, const Point& x, std::size_t j);
double sin_sum_2d(const Configuration& config, const Point& x, std::size_t j);

// Angles of every active anchor's unit direction, in active-set order, in
// the orthonormal frame with e1 = u(x,A_j) and e2 chosen in span{u_j, u_k}
// so that u_k has a nonnegative second coordinate. 3D only.
// DegenerateFrame when u_j and u_k are parallel within kFrameParallelSlack.
std::vector<SphericalFrameAngles> spherical_frame_3d(const Configuration& config,
                                                     const Point& x,
                                                     std::size_t j,
                                                     std::size_t k);

// The three weighted sums (s1, s2, s3) of the frame coordinates over the
// active set; equals the balancing residual expressed in the (j, k) frame.
std::array<double, 3> component_sums_3d(const Configuration& config,
                                        const Point& x, std::size_t j,
                                        std::size_t k);

// First-order work released by moving x a distance delta toward anchor j:
// delta * cos_sum_2d in 2D, delta * s1 in 3D. Positive when the objective
// decreases in that direction. DeltaTooLarge when delta exceeds
// kMaxProbeFraction * diameter.
double virtual_work(const Configuration& config, const Point& x,
                    std::size_t j, double delta);

// Full first-order certificate at a smooth point x: the residual, its norm
// against tolerance * sum(b), and per-direction component sums for every
// active anchor's probe direction. AtAnchor when x sits on an active anchor
// (candidates at anchors are settled by the vertex test, not by this
// certificate).
BalanceReport verify(const Configuration& config, const Point& x,
                     double tolerance = kDefaultVerifyTolerance);

}  // namespace torricelli
