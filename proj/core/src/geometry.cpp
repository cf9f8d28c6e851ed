#include "torricelli/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "torricelli/errors.hpp"

namespace torricelli {

UnitVector::UnitVector(const Vec& v) : v_(v) {
  if (v.dim() != 2 && v.dim() != 3)
    throw Error(ErrorCode::InvalidArgument, "unit vector must be 2D or 3D");
  if (std::abs(v.norm() - 1.0) > kUnitNormSlack)
    throw Error(ErrorCode::InvalidArgument,
                "unit vector norm deviates from 1 by more than 1e-12");
}

WeightedPoint::WeightedPoint(Point p, double w) : position(p), weight(w) {
  if (p.dim() != 2 && p.dim() != 3)
    throw Error(ErrorCode::InvalidArgument, "anchor must be 2D or 3D");
  if (!p.finite())
    throw Error(ErrorCode::InvalidArgument, "anchor coordinates must be finite");
  if (!std::isfinite(w) || w < 0.0)
    throw Error(ErrorCode::InvalidArgument,
                "weight must be finite and nonnegative, got " +
                    std::to_string(w));
}

namespace {

// All points within `indices` on one line (vacuous below three points).
bool all_collinear(const std::vector<WeightedPoint>& pts,
                   const std::vector<std::size_t>& indices) {
  if (indices.size() < 3) return true;
  const Point& origin = pts[indices[0]].position;
  // First point that actually leaves the origin sets the line direction.
  Vec dir = Vec::zero(origin.dim());
  std::size_t start = 1;
  for (; start < indices.size(); ++start) {
    dir = pts[indices[start]].position - origin;
    if (dir.norm() > 0.0) break;
  }
  if (start == indices.size()) return true;  // all coincident
  const double dn = dir.norm();
  for (std::size_t s = start + 1; s < indices.size(); ++s) {
    const Vec off = pts[indices[s]].position - origin;
    const double deviation = origin.dim() == 2
                                 ? std::abs(cross2(dir, off))
                                 : cross3(dir, off).norm();
    if (deviation > 1e-12 * dn * off.norm()) return false;
  }
  return true;
}

}  // namespace

Configuration::Configuration(std::vector<WeightedPoint> points, int dimension)
    : points_(std::move(points)), dimension_(dimension) {
  if (dimension != 2 && dimension != 3)
    throw Error(ErrorCode::InvalidArgument,
                "dimension must be 2 or 3, got " + std::to_string(dimension));
  if (points_.empty())
    throw Error(ErrorCode::InvalidArgument,
                "configuration needs at least one anchor");
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i].position.dim() != dimension)
      throw Error(ErrorCode::InvalidArgument,
                  "anchor " + std::to_string(i) +
                      " does not match the configuration dimension",
                  static_cast<std::ptrdiff_t>(i));

  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i].weight > 0.0) {
      active_.push_back(i);
      weight_sum_ += points_[i].weight;
    }

  for (std::size_t a = 0; a < points_.size(); ++a)
    for (std::size_t b = a + 1; b < points_.size(); ++b)
      if (coincident(points_[a].position, points_[b].position))
        distinct_positions_ = false;

  for (std::size_t ai = 0; ai < active_.size(); ++ai)
    for (std::size_t bi = ai + 1; bi < active_.size(); ++bi)
      diameter_ = std::max(diameter_, distance(points_[active_[ai]].position,
                                               points_[active_[bi]].position));

  collinear_ = all_collinear(points_, active_);
}

const WeightedPoint& Configuration::at(std::size_t i) const {
  if (i >= points_.size())
    throw Error(ErrorCode::IndexOutOfRange,
                "anchor index " + std::to_string(i) + " out of range",
                static_cast<std::ptrdiff_t>(i));
  return points_[i];
}

Configuration Configuration::merge_duplicates(
    std::vector<std::size_t>* original_index) const {
  std::vector<WeightedPoint> merged;
  std::vector<std::size_t> first_seen;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    bool is_new = true;
    for (std::size_t m = 0; m < merged.size(); ++m)
      if (coincident(merged[m].position, points_[i].position)) {
        merged[m].weight += points_[i].weight;
        is_new = false;
        break;
      }
    if (is_new) {
      merged.push_back(points_[i]);
      first_seen.push_back(i);
    }
  }
  if (original_index) *original_index = std::move(first_seen);
  return Configuration(std::move(merged), dimension_);
}

UnitVector unit_vector(const Point& from, const Point& to) {
  const Vec diff = to - from;
  const double len = diff.norm();
  if (len < kCoincidenceDistance)
    throw Error(ErrorCode::CoincidentPoints,
                "cannot take a direction between coincident points");
  return UnitVector(diff / len);
}

double objective(const Configuration& config, const Point& x) {
  if (x.dim() != config.dimension())
    throw Error(ErrorCode::InvalidArgument,
                "query point does not match the configuration dimension");
  double total = 0.0;
  for (std::size_t i : config.active())
    total += config.points()[i].weight * distance(x, config.points()[i].position);
  return total;
}

double angle(const Point& x, const Point& a, const Point& b) {
  const UnitVector ua = unit_vector(x, a);
  const UnitVector ub = unit_vector(x, b);
  const double c = std::clamp(dot(ua.vec(), ub.vec()), -1.0, 1.0);
  return std::acos(c);
}

Vec gradient(const Configuration& config, const Point& x) {
  if (x.dim() != config.dimension())
    throw Error(ErrorCode::InvalidArgument,
                "query point does not match the configuration dimension");
  Vec g = Vec::zero(config.dimension());
  for (std::size_t i : config.active()) {
    const Vec diff = x - config.points()[i].position;
    const double len = diff.norm();
    if (len < kCoincidenceDistance)
      throw Error(ErrorCode::AtAnchor,
                  "objective is not differentiable at anchor " +
                      std::to_string(i),
                  static_cast<std::ptrdiff_t>(i));
    g += (config.points()[i].weight / len) * diff;
  }
  return g;
}

}  // namespace torricelli
