#pragma once

#include <cstddef>
#include <vector>

#include "torricelli/vec.hpp"

namespace torricelli {

// Two points closer than this are treated as one and the same location.
inline constexpr double kCoincidenceDistance = 1e-300;

// Allowed drift of a unit vector's norm from 1.
inline constexpr double kUnitNormSlack = 1e-12;

inline bool coincident(const Point& a, const Point& b) {
  return distance(a, b) < kCoincidenceDistance;
}

// Direction with unit Euclidean norm, validated at construction.
class UnitVector {
 public:
  explicit UnitVector(const Vec& v);

  const Vec& vec() const noexcept { return v_; }
  double operator[](int i) const noexcept { return v_[i]; }
  int dim() const noexcept { return v_.dim(); }

 private:
  Vec v_;
};

// Fixed anchor with a nonnegative weight. Zero weight is allowed; such
// anchors are kept but take no part in any sum.
struct WeightedPoint {
  Point position;
  double weight = 0.0;

  WeightedPoint(Point p, double w);
};

// Ordered anchor list in a fixed dimension. Immutable after construction;
// the derived metadata (active set, weight sum, diameter, degeneracy flags)
// is computed once.
class Configuration {
 public:
  Configuration(std::vector<WeightedPoint> points, int dimension);

  int dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<WeightedPoint>& points() const noexcept { return points_; }
  const WeightedPoint& at(std::size_t i) const;  // IndexOutOfRange

  // Indices of anchors with weight > 0, in input order.
  const std::vector<std::size_t>& active() const noexcept { return active_; }
  // Total weight over the active set.
  double weight_sum() const noexcept { return weight_sum_; }
  // Largest pairwise distance between active anchors (0 when fewer than two).
  double diameter() const noexcept { return diameter_; }
  // True iff all anchor positions (active or not) are pairwise distinct.
  bool distinct_positions() const noexcept { return distinct_positions_; }
  // True iff the active anchors all lie on one line (vacuously true for
  // fewer than three).
  bool collinear() const noexcept { return collinear_; }

  // Collapses exactly coincident anchors into one, summing their weights.
  // `original_index`, when given, receives for each merged anchor the first
  // matching index in this configuration.
  Configuration merge_duplicates(
      std::vector<std::size_t>* original_index = nullptr) const;

 private:
  std::vector<WeightedPoint> points_;
  int dimension_;
  std::vector<std::size_t> active_;
  double weight_sum_ = 0.0;
  double diameter_ = 0.0;
  bool distinct_positions_ = true;
  bool collinear_ = true;
};

// Unit vector from `from` toward `to`. CoincidentPoints when the two are
// closer than kCoincidenceDistance.
UnitVector unit_vector(const Point& from, const Point& to);

// Weighted sum of distances from x to the active anchors. Defined
// everywhere, including at anchors.
double objective(const Configuration& config, const Point& x);

// Unsigned angle at vertex x between the rays x->a and x->b, in [0, pi].
// The cosine is clamped to [-1, 1] before arccos.
double angle(const Point& x, const Point& a, const Point& b);

// Gradient of the objective at a smooth point: sum of b_i (x-A_i)/|x-A_i|
// over the active set. AtAnchor(i) when x coincides with an active anchor.
Vec gradient(const Configuration& config, const Point& x);

}  // namespace torricelli
