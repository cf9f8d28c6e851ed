#include "torricelli/balance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "torricelli/errors.hpp"

namespace torricelli {

std::array<double, 3> SphericalFrameAngles::reconstruct() const {
  const double ce = std::cos(elevation);
  return {ce * std::cos(azimuth), ce * std::sin(azimuth), std::sin(elevation)};
}

namespace {

// Unit direction from x toward anchor i; AtAnchor instead of the generic
// coincidence error so callers can tell which anchor was hit.
Vec direction_to(const Configuration& config, const Point& x, std::size_t i) {
  const Vec diff = config.at(i).position - x;
  const double len = diff.norm();
  if (len < kCoincidenceDistance)
    throw Error(ErrorCode::AtAnchor,
                "probe point coincides with anchor " + std::to_string(i),
                static_cast<std::ptrdiff_t>(i));
  return diff / len;
}

void require_dimension(const Configuration& config, const Point& x, int d,
                       const char* what) {
  if (config.dimension() != d)
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " requires a " + std::to_string(d) +
                    "D configuration");
  if (x.dim() != config.dimension())
    throw Error(ErrorCode::InvalidArgument,
                "probe point does not match the configuration dimension");
}

struct Frame3 {
  Vec e1, e2, e3;
};

// Orthonormal frame spanned by the directions toward anchors j and k:
// e1 along u_j, e2 the part of u_k orthogonal to it.
Frame3 frame_at(const Configuration& config, const Point& x, std::size_t j,
                std::size_t k) {
  const Vec u_j = direction_to(config, x, j);
  const Vec u_k = direction_to(config, x, k);
  const Vec perp = u_k - dot(u_k, u_j) * u_j;
  const double s = perp.norm();  // |sin| of the angle between the rays
  if (s < kFrameParallelSlack)
    throw Error(ErrorCode::DegenerateFrame,
                "anchors " + std::to_string(j) + " and " + std::to_string(k) +
                    " subtend parallel rays at the probe point");
  const Vec e2 = perp / s;
  return {u_j, e2, cross3(u_j, e2)};
}

SphericalFrameAngles angles_in(const Frame3& frame, const Vec& u) {
  SphericalFrameAngles a;
  a.elevation = std::asin(std::clamp(dot(u, frame.e3), -1.0, 1.0));
  a.azimuth = std::atan2(dot(u, frame.e2), dot(u, frame.e1));
  if (a.azimuth <= -std::numbers::pi) a.azimuth = std::numbers::pi;
  return a;
}

// Smallest active k != j spanning a valid frame with j, if any.
std::optional<std::size_t> frame_partner(const Configuration& config,
                                         const Point& x, std::size_t j) {
  const Vec u_j = direction_to(config, x, j);
  for (std::size_t k : config.active()) {
    if (k == j) continue;
    const Vec u_k = direction_to(config, x, k);
    if ((u_k - dot(u_k, u_j) * u_j).norm() >= kFrameParallelSlack) return k;
  }
  return std::nullopt;
}

// Deterministic orthonormal completion of u for configurations whose rays
// are all parallel to u (no anchor can serve as frame partner).
Frame3 fallback_frame(const Vec& u) {
  int least = 0;
  for (int c = 1; c < 3; ++c)
    if (std::abs(u[c]) < std::abs(u[least])) least = c;
  Vec h = Vec::zero(3);
  h[least] = 1.0;
  const Vec perp = h - dot(h, u) * u;
  const Vec e2 = perp / perp.norm();
  return {u, e2, cross3(u, e2)};
}

std::array<double, 3> sums_in_frame(const Configuration& config,
                                    const Point& x, const Frame3& frame) {
  std::array<double, 3> s{0.0, 0.0, 0.0};
  for (std::size_t i : config.active()) {
    const SphericalFrameAngles a = angles_in(frame, direction_to(config, x, i));
    const std::array<double, 3> c = a.reconstruct();
    const double b = config.points()[i].weight;
    s[0] += b * c[0];
    s[1] += b * c[1];
    s[2] += b * c[2];
  }
  return s;
}

}  // namespace

Vec balancing_residual(const Configuration& config, const Point& x) {
  if (x.dim() != config.dimension())
    throw Error(ErrorCode::InvalidArgument,
                "probe point does not match the configuration dimension");
  Vec total = Vec::zero(config.dimension());
  for (std::size_t i : config.active()) {
    const Vec diff = config.points()[i].position - x;
    const double len = diff.norm();
    if (len < kCoincidenceDistance)
      throw Error(ErrorCode::AtAnchor,
                  "probe point coincides with anchor " + std::to_string(i),
                  static_cast<std::ptrdiff_t>(i));
    total += (config.points()[i].weight / len) * diff;
  }
  return total;
}

double signed_coefficient_2d(const Configuration& config, const Point& x,
                             std::size_t i, std::size_t j) {
  require_dimension(config, x, 2, "signed coefficient");
  return std::clamp(dot(direction_to(config, x, i), direction_to(config, x, j)),
                    -1.0, 1.0);
}

double cos_sum_2d(const Configuration& config, const Point& x, std::size_t j) {
  require_dimension(config, x, 2, "cosine sum");
  double total = 0.0;
  for (std::size_t i : config.active())
    total += config.points()[i].weight * signed_coefficient_2d(config, x, i, j);
  return total;
}

double sin_sum_2d(const Configuration& config, const Point& x, std::size_t j) {
  require_dimension(config, x, 2, "sine sum");
  const Vec u_j = direction_to(config, x, j);
  double total = 0.0;
  for (std::size_t i : config.active())
    total += config.points()[i].weight *
             cross2(u_j, direction_to(config, x, i));
  return total;
}

std::vector<SphericalFrameAngles> spherical_frame_3d(const Configuration& config,
                                                     const Point& x,
                                                     std::size_t j,
                                                     std::size_t k) {
  require_dimension(config, x, 3, "spherical frame");
  const Frame3 frame = frame_at(config, x, j, k);
  std::vector<SphericalFrameAngles> out;
  out.reserve(config.active().size());
  for (std::size_t i : config.active())
    out.push_back(angles_in(frame, direction_to(config, x, i)));
  return out;
}

std::array<double, 3> component_sums_3d(const Configuration& config,
                                        const Point& x, std::size_t j,
                                        std::size_t k) {
  require_dimension(config, x, 3, "component sums");
  return sums_in_frame(config, x, frame_at(config, x, j, k));
}

double virtual_work(const Configuration& config, const Point& x,
                    std::size_t j, double delta) {
  if (!(delta > 0.0))
    throw Error(ErrorCode::InvalidArgument, "probe distance must be positive");
  // A lone anchor has no length scale, so the cap is waived there.
  const double cap = kMaxProbeFraction * config.diameter();
  if (cap > 0.0 && delta > cap)
    throw Error(ErrorCode::DeltaTooLarge,
                "probe distance exceeds 1e-3 of the configuration diameter");
  if (config.dimension() == 2) return delta * cos_sum_2d(config, x, j);
  const auto partner = frame_partner(config, x, j);
  const Frame3 frame = partner ? frame_at(config, x, j, *partner)
                               : fallback_frame(direction_to(config, x, j));
  return delta * sums_in_frame(config, x, frame)[0];
}

BalanceReport verify(const Configuration& config, const Point& x,
                     double tolerance) {
  if (!(tolerance > 0.0))
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  BalanceReport report;
  report.dimension = config.dimension();
  report.residual = balancing_residual(config, x);
  report.residual_norm = report.residual.norm();
  report.weight_sum = config.weight_sum();
  report.tolerance = tolerance;

  const double cap = tolerance * report.weight_sum;
  bool within = report.residual_norm <= cap;

  for (std::size_t j : config.active()) {
    DirectionalBalance entry;
    entry.anchor = j;
    if (config.dimension() == 2) {
      entry.cos_sum = cos_sum_2d(config, x, j);
      entry.sin_sum = sin_sum_2d(config, x, j);
      entry.component_sums = {entry.cos_sum, entry.sin_sum};
    } else {
      const auto partner = frame_partner(config, x, j);
      const Frame3 frame = partner ? frame_at(config, x, j, *partner)
                                   : fallback_frame(direction_to(config, x, j));
      const std::array<double, 3> s = sums_in_frame(config, x, frame);
      entry.cos_sum = s[0];
      entry.sin_sum = std::hypot(s[1], s[2]);
      entry.component_sums = {s[0], s[1], s[2]};
    }
    for (double component : entry.component_sums)
      within = within && std::abs(component) <= cap;
    report.per_direction.push_back(std::move(entry));
  }
  report.passed = within;
  return report;
}

}  // namespace torricelli
