#include <torricelli/torricelli.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "support/checks.hpp"
#include "support/generators.hpp"

using namespace torricelli;
using testchk::expect_error;

namespace {

const double kPi = 3.141592653589793238462643383279502884;

SpherePoint pole() { return SpherePoint(Vec(0.0, 0.0, 1.0)); }

// Random unit vector from cube draws.
SpherePoint random_sphere_point(SplitMix64& rng) {
  for (;;) {
    Vec v(testgen::uniform(rng, -1.0, 1.0), testgen::uniform(rng, -1.0, 1.0),
          testgen::uniform(rng, -1.0, 1.0));
    if (v.norm() > 1e-2) return SpherePoint::normalized(v);
  }
}

TangentVector random_tangent(SplitMix64& rng, const SpherePoint& base,
                             double max_len) {
  for (;;) {
    Vec v(testgen::uniform(rng, -1.0, 1.0), testgen::uniform(rng, -1.0, 1.0),
          testgen::uniform(rng, -1.0, 1.0));
    Vec t = v - dot(v, base.coords()) * base.coords();
    const double n = t.norm();
    if (n < 1e-2) continue;
    return TangentVector(base, (testgen::uniform(rng, 0.0, max_len) / n) * t);
  }
}

}  // namespace

TEST_CASE("sphere point and tangent validation") {
  expect_error(ErrorCode::InvalidArgument,
               [] { SpherePoint p(Vec(0.0, 0.0, 2.0)); });
  expect_error(ErrorCode::InvalidArgument,
               [] { SpherePoint p(Vec(1.0, 0.0)); });
  expect_error(ErrorCode::InvalidArgument,
               [] { (void)SpherePoint::normalized(Vec(0.0, 0.0, 0.0)); });
  CHECK(SpherePoint::normalized(Vec(0.0, 0.0, 5.0)) == pole());

  expect_error(ErrorCode::InvalidArgument, [] {
    TangentVector t(SpherePoint(Vec(0.0, 0.0, 1.0)), Vec(0.0, 0.1, 0.5));
  });
  TangentVector ok(pole(), Vec(0.3, -0.2, 0.0));
  CHECK(ok.norm() == doctest::Approx(std::hypot(0.3, 0.2)).epsilon(1e-15));
}

TEST_CASE("geodesic_distance") {
  SpherePoint x(Vec(1.0, 0.0, 0.0));
  SpherePoint y(Vec(0.0, 1.0, 0.0));
  CHECK(geodesic_distance(x, y) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(geodesic_distance(x, x) == 0.0);
  SpherePoint anti(Vec(-1.0, 0.0, 0.0));
  CHECK(geodesic_distance(x, anti) == doctest::Approx(kPi).epsilon(1e-15));
}

TEST_CASE("exp_map") {
  SUBCASE("quarter turn lands on the equator") {
    SpherePoint out = exp_map(pole(), TangentVector(pole(), Vec(kPi / 2, 0.0, 0.0)));
    CHECK((out.coords() - Vec(1.0, 0.0, 0.0)).norm() <= 1e-12);
  }
  SUBCASE("zero vector stays put") {
    CHECK(exp_map(pole(), TangentVector(pole(), Vec(0.0, 0.0, 0.0))) == pole());
  }
  SUBCASE("eighth turn") {
    SpherePoint out = exp_map(pole(), TangentVector(pole(), Vec(kPi / 4, 0.0, 0.0)));
    const double s = std::sqrt(0.5);
    CHECK((out.coords() - Vec(s, 0.0, s)).norm() <= 1e-14);
  }
  SUBCASE("injectivity radius enforced") {
    expect_error(ErrorCode::BeyondInjectivityRadius, [] {
      (void)exp_map(pole(), TangentVector(pole(), Vec(kPi, 0.0, 0.0)));
    });
  }
  SUBCASE("foreign tangent rejected") {
    SpherePoint eq(Vec(1.0, 0.0, 0.0));
    TangentVector t(eq, Vec(0.0, 0.5, 0.0));
    expect_error(ErrorCode::BaseMismatch, [&] { (void)exp_map(pole(), t); });
  }
}

TEST_CASE("log_map") {
  SUBCASE("inverts the quarter turn") {
    TangentVector t = log_map(pole(), SpherePoint(Vec(1.0, 0.0, 0.0)));
    CHECK((t.vec - Vec(kPi / 2, 0.0, 0.0)).norm() <= 1e-12);
  }
  SUBCASE("zero at the base itself") {
    CHECK(log_map(pole(), pole()).norm() == 0.0);
  }
  SUBCASE("antipodes have no shortest direction") {
    expect_error(ErrorCode::AntipodalPoints, [] {
      (void)log_map(pole(), SpherePoint(Vec(0.0, 0.0, -1.0)));
    });
  }
  SUBCASE("norm equals geodesic distance and result is tangent") {
    SplitMix64 rng(909);
    for (int t = 0; t < 64; ++t) {
      SpherePoint a = random_sphere_point(rng);
      SpherePoint b = random_sphere_point(rng);
      if (dot(a.coords(), b.coords()) <= -1.0 + 1e-6) continue;
      TangentVector v = log_map(a, b);
      CHECK(std::abs(v.norm() - geodesic_distance(a, b)) <= 1e-12);
      CHECK(std::abs(dot(v.vec, a.coords())) <= 1e-10);
    }
  }
}

TEST_CASE("exp/log round trips") {
  SplitMix64 rng(4242);
  int done = 0;
  while (done < 256) {
    SpherePoint base = random_sphere_point(rng);
    SpherePoint target = random_sphere_point(rng);
    if (dot(base.coords(), target.coords()) <= -1.0 + 1e-3) continue;
    SpherePoint back = exp_map(base, log_map(base, target));
    CHECK((back.coords() - target.coords()).norm() <= 1e-10);

    TangentVector v = random_tangent(rng, base, kPi - 0.1);
    TangentVector w = log_map(base, exp_map(base, v));
    CHECK((w.vec - v.vec).norm() <= 1e-10);
    ++done;
  }
}

TEST_CASE("sphere configuration and hemisphere flag") {
  SUBCASE("symmetric cap is inside an open hemisphere") {
    SphereConfiguration c = testgen::make_symmetric_cap();
    CHECK(c.in_open_hemisphere());
    REQUIRE(c.hemisphere_witness().has_value());
    const Vec n = *c.hemisphere_witness();
    CHECK(std::abs(n.norm() - 1.0) <= 1e-9);
    for (std::size_t i : c.active()) CHECK(dot(n, c.at(i).position.coords()) > 0.0);
  }
  SUBCASE("balanced equator triple is not") {
    std::vector<SphereWeightedPoint> pts;
    for (int k = 0; k < 3; ++k) {
      const double lon = 2.0 * kPi * k / 3.0;
      pts.push_back({SpherePoint(Vec(std::cos(lon), std::sin(lon), 0.0)), 1.0});
    }
    SphereConfiguration c(pts);
    CHECK_FALSE(c.in_open_hemisphere());
  }
  SUBCASE("antipodal pair is not") {
    SphereConfiguration c({{SpherePoint(Vec(0.0, 0.0, 1.0)), 1.0},
                           {SpherePoint(Vec(0.0, 0.0, -1.0)), 1.0}});
    CHECK_FALSE(c.in_open_hemisphere());
  }
  SUBCASE("duplicate merge sums weights") {
    SphereConfiguration c({{pole(), 1.0},
                           {pole(), 2.0},
                           {SpherePoint(Vec(1.0, 0.0, 0.0)), 1.0}});
    std::vector<std::size_t> first;
    SphereConfiguration merged = merge_sphere_duplicates(c, &first);
    REQUIRE(merged.size() == 2);
    CHECK(merged.at(0).weight == 3.0);
    CHECK(first == std::vector<std::size_t>{0, 2});
  }
}

TEST_CASE("geodesic objective and residual") {
  SphereConfiguration c = testgen::make_symmetric_cap();
  SUBCASE("symmetric value at the pole") {
    // Three anchors, each a quarter turn from the pole.
    CHECK(geodesic_objective(c, pole()) ==
          doctest::Approx(3.0 * kPi / 4.0).epsilon(1e-14));
  }
  SUBCASE("residual vanishes at the pole by symmetry") {
    TangentVector r = geodesic_balancing_residual(c, pole());
    CHECK(r.norm() <= 1e-12);
  }
  SUBCASE("single anchor pulls with its weight") {
    SphereConfiguration one({{SpherePoint(Vec(1.0, 0.0, 0.0)), 2.0}});
    TangentVector r = geodesic_balancing_residual(one, pole());
    CHECK(std::abs(r.norm() - 2.0) <= 1e-12);
    // Direction agrees with the log map toward the anchor.
    TangentVector l = log_map(pole(), SpherePoint(Vec(1.0, 0.0, 0.0)));
    CHECK(cross3(r.vec, l.vec).norm() <= 1e-12);
    CHECK(dot(r.vec, l.vec) > 0.0);
  }
  SUBCASE("probing an anchor is an error") {
    expect_error(ErrorCode::AtAnchor,
                 [&] { (void)geodesic_balancing_residual(c, c.at(0).position); });
  }
}

TEST_CASE("sphere vertex test") {
  SphereConfiguration dom({{SpherePoint::normalized(Vec(0.1, 0.0, 1.0)), 5.0},
                           {SpherePoint::normalized(Vec(0.0, 0.3, 1.0)), 1.0},
                           {SpherePoint::normalized(Vec(-0.2, -0.1, 1.0)), 1.0}});
  CHECK(sphere_vertex_pull(dom, 0) <= 2.0);
  CHECK(classify_sphere_vertex(dom, 0));
  CHECK_FALSE(classify_sphere_vertex(dom, 1));

  SphereConfiguration sym = testgen::make_symmetric_cap();
  for (std::size_t i = 0; i < 3; ++i) CHECK_FALSE(classify_sphere_vertex(sym, i));

  expect_error(ErrorCode::IndexOutOfRange,
               [&] { (void)sphere_vertex_pull(sym, 5); });
}

TEST_CASE("solve_on_sphere") {
  SUBCASE("symmetric cap settles at the pole") {
    SphereConfiguration c = testgen::make_symmetric_cap();
    SphereSolverOutcome out = solve_on_sphere(c);
    REQUIRE(out.converged);
    CHECK(out.kind == SolveCase::Floating);
    CHECK(geodesic_distance(out.minimizer, pole()) <= 1e-8);
    CHECK(out.residual_norm <= 1e-9 * c.weight_sum());
  }

  SUBCASE("dominant weight absorbs exactly") {
    SphereConfiguration c({{SpherePoint::normalized(Vec(0.1, 0.0, 1.0)), 5.0},
                           {SpherePoint::normalized(Vec(0.0, 0.3, 1.0)), 1.0},
                           {SpherePoint::normalized(Vec(-0.2, -0.1, 1.0)), 1.0}});
    SphereSolverOutcome out = solve_on_sphere(c);
    REQUIRE(out.converged);
    CHECK(out.kind == SolveCase::Absorbed);
    CHECK(out.absorbed_index == 0);
    CHECK(out.minimizer == c.at(0).position);
    CHECK(out.iterations == 0);
  }

  SUBCASE("configurations outside a hemisphere are refused") {
    std::vector<SphereWeightedPoint> pts;
    for (int k = 0; k < 3; ++k) {
      const double lon = 2.0 * kPi * k / 3.0;
      pts.push_back({SpherePoint(Vec(std::cos(lon), std::sin(lon), 0.0)), 1.0});
    }
    SphereConfiguration c(pts);
    expect_error(ErrorCode::NotInHemisphere, [&] { (void)solve_on_sphere(c); });
  }

  SUBCASE("converged floating solutions satisfy the residual bound") {
    for (int t = 0; t < 12; ++t) {
      SphereConfiguration c = testgen::random_cap_configuration(5000 + t, 3 + (t % 4));
      SphereSolverOutcome out = solve_on_sphere(c);
      REQUIRE(out.converged);
      if (out.kind == SolveCase::Floating) {
        TangentVector r = geodesic_balancing_residual(c, out.minimizer);
        CHECK(r.norm() <= 2e-9 * c.weight_sum());
      }
    }
  }

  SUBCASE("rotation equivariance") {
    SplitMix64 rng(606);
    for (int t = 0; t < 6; ++t) {
      SphereConfiguration c = testgen::random_cap_configuration(5100 + t, 4);
      SphereSolverOutcome base = solve_on_sphere(c);
      REQUIRE(base.converged);
      std::vector<Vec> rot = testgen::random_rotation(rng, 3);
      std::vector<SphereWeightedPoint> moved;
      for (const auto& p : c.points())
        moved.push_back({SpherePoint::normalized(testgen::apply_rotation(
                             rot, p.position.coords())),
                         p.weight});
      SphereSolverOutcome out = solve_on_sphere(SphereConfiguration(moved));
      REQUIRE(out.converged);
      SpherePoint expected = SpherePoint::normalized(
          testgen::apply_rotation(rot, base.minimizer.coords()));
      CHECK(geodesic_distance(out.minimizer, expected) <= 1e-7);
    }
  }

  SUBCASE("tiny caps behave like the plane") {
    // Anchors exp-mapped from scaled tangent offsets; the sphere minimizer
    // must match the image of the planar one once curvature is negligible.
    const double s = 1e-3;
    SplitMix64 rng(707);
    for (int t = 0; t < 5; ++t) {
      Configuration flat = random_configuration(5200 + t, 4 + t % 3, 2, 0.5, 2.0);
      const Vec e1(1.0, 0.0, 0.0), e2(0.0, 1.0, 0.0);
      std::vector<SphereWeightedPoint> pts;
      for (const auto& p : flat.points()) {
        Vec offset = s * (p.position[0] * e1 + p.position[1] * e2);
        pts.push_back({exp_map(pole(), TangentVector(pole(), offset)), p.weight});
      }
      SphereConfiguration cap(pts);
      SphereSolverOutcome out = solve_on_sphere(cap);
      REQUIRE(out.converged);
      SolverOutcome planar = solve(flat);
      REQUIRE(planar.converged);
      Vec image_offset =
          s * (planar.minimizer[0] * e1 + planar.minimizer[1] * e2);
      SpherePoint image = exp_map(pole(), TangentVector(pole(), image_offset));
      CHECK(geodesic_distance(out.minimizer, image) <= 1e-5 * s * flat.diameter());
    }
  }

  SUBCASE("iteration cap reports non-convergence") {
    SphereConfiguration c = testgen::random_cap_configuration(5300, 5);
    SolverOptions opt;
    opt.max_iterations = 1;
    SphereSolverOutcome out = solve_on_sphere(c, opt);
    if (out.kind == SolveCase::Floating) CHECK_FALSE(out.converged);
  }

  SUBCASE("initial point is honored") {
    SphereConfiguration c = testgen::make_symmetric_cap();
    SolverOptions opt;
    opt.initial_point = Vec(0.3, -0.2, 0.9);
    SphereSolverOutcome out = solve_on_sphere(c, opt);
    REQUIRE(out.converged);
    CHECK(geodesic_distance(out.minimizer, pole()) <= 1e-8);
  }

  SUBCASE("all weights zero is an error") {
    expect_error(ErrorCode::NoActiveAnchor, [] {
      SphereConfiguration c({{SpherePoint(Vec(0.0, 0.0, 1.0)), 0.0}});
      (void)solve_on_sphere(c);
    });
  }
}
