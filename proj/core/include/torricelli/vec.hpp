#pragma once

#include <array>
#include <cmath>
#include <string>

#include "torricelli/errors.hpp"

namespace torricelli {

// Cartesian vector with runtime dimension 2 or 3. Fixed capacity, no
// allocation; all arithmetic is componentwise and keeps the dimension.
class Vec {
 public:
  Vec() = default;  // dimension 0; only useful as a container placeholder
  Vec(double x, double y) : c_{x, y, 0.0}, dim_(2) {}
  Vec(double x, double y, double z) : c_{x, y, z}, dim_(3) {}

  static Vec zero(int dim) {
    if (dim == 2) return Vec(0.0, 0.0);
    if (dim == 3) return Vec(0.0, 0.0, 0.0);
    throw Error(ErrorCode::InvalidArgument,
                "dimension must be 2 or 3, got " + std::to_string(dim));
  }

  int dim() const noexcept { return dim_; }
  double operator[](int i) const noexcept { return c_[i]; }
  double& operator[](int i) noexcept { return c_[i]; }

  Vec& operator+=(const Vec& o) {
    check_dim(o);
    for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    check_dim(o);
    for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(double s) noexcept {
    for (int i = 0; i < dim_; ++i) c_[i] *= s;
    return *this;
  }
  Vec& operator/=(double s) noexcept { return *this *= 1.0 / s; }

  double dot(const Vec& o) const {
    check_dim(o);
    double acc = 0.0;
    for (int i = 0; i < dim_; ++i) acc += c_[i] * o.c_[i];
    return acc;
  }
  double norm_squared() const noexcept {
    double acc = 0.0;
    for (int i = 0; i < dim_; ++i) acc += c_[i] * c_[i];
    return acc;
  }
  double norm() const noexcept { return std::sqrt(norm_squared()); }

  bool finite() const noexcept {
    for (int i = 0; i < dim_; ++i)
      if (!std::isfinite(c_[i])) return false;
    return true;
  }

  // Exact componentwise equality (same dimension required).
  friend bool operator==(const Vec& a, const Vec& b) {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }
  friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }

 private:
  void check_dim(const Vec& o) const {
    if (dim_ != o.dim_)
      throw Error(ErrorCode::InvalidArgument, "vector dimension mismatch");
  }

  std::array<double, 3> c_{0.0, 0.0, 0.0};
  int dim_ = 0;
};

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator-(Vec a) { return a *= -1.0; }
inline Vec operator*(double s, Vec v) { return v *= s; }
inline Vec operator*(Vec v, double s) { return v *= s; }
inline Vec operator/(Vec v, double s) { return v /= s; }

inline double dot(const Vec& a, const Vec& b) { return a.dot(b); }

inline double distance(const Vec& a, const Vec& b) { return (b - a).norm(); }

// z-component of the cross product of two 2D vectors; the signed sine of the
// angle from a to b when both are unit, counterclockwise positive.
inline double cross2(const Vec& a, const Vec& b) {
  if (a.dim() != 2 || b.dim() != 2)
    throw Error(ErrorCode::InvalidArgument, "cross2 requires 2D vectors");
  return a[0] * b[1] - a[1] * b[0];
}

inline Vec cross3(const Vec& a, const Vec& b) {
  if (a.dim() != 3 || b.dim() != 3)
    throw Error(ErrorCode::InvalidArgument, "cross3 requires 3D vectors");
  return Vec(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
             a[0] * b[1] - a[1] * b[0]);
}

// Counterclockwise quarter turn in the plane.
inline Vec rot90(const Vec& a) {
  if (a.dim() != 2)
    throw Error(ErrorCode::InvalidArgument, "rot90 requires a 2D vector");
  return Vec(-a[1], a[0]);
}

using Point = Vec;

}  // namespace torricelli
