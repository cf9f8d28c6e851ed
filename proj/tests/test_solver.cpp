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

bool has_warning(const SolverOutcome& out, Warning w) {
  return std::find(out.warnings.begin(), out.warnings.end(), w) !=
         out.warnings.end();
}

}  // namespace

TEST_CASE("vertex_pull") {
  SUBCASE("equilateral corner feels sqrt(3)") {
    Configuration c = testgen::make_equilateral();
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(vertex_pull(c, i) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  }
  SUBCASE("two unit anchors pull with exactly 1") {
    Configuration c({{Vec(0.0, 0.0), 1.0}, {Vec(1.0, 0.0), 1.0}}, 2);
    CHECK(vertex_pull(c, 0) == 1.0);
    CHECK(vertex_pull(c, 1) == 1.0);
  }
  SUBCASE("dominant corner of the right triangle") {
    Configuration c = testgen::make_dominant();
    CHECK(vertex_pull(c, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  }
  SUBCASE("errors") {
    Configuration c({{Vec(0.0, 0.0), 1.0},
                     {Vec(1.0, 0.0), 0.0},
                     {Vec(2.0, 0.0), 1.0}},
                    2);
    expect_error(ErrorCode::InactiveAnchor, [&] { (void)vertex_pull(c, 1); });
    expect_error(ErrorCode::IndexOutOfRange, [&] { (void)vertex_pull(c, 9); });
    Configuration dup({{Vec(0.0, 0.0), 1.0}, {Vec(0.0, 0.0), 1.0}}, 2);
    expect_error(ErrorCode::CoincidentPoints, [&] { (void)vertex_pull(dup, 0); });
  }
}

TEST_CASE("classify_vertex") {
  Configuration dominant = testgen::make_dominant();
  CHECK(classify_vertex(dominant, 0));   // pull sqrt(2) <= 5
  CHECK_FALSE(classify_vertex(dominant, 1));
  CHECK_FALSE(classify_vertex(dominant, 2));

  Configuration eq = testgen::make_equilateral();
  for (std::size_t i = 0; i < 3; ++i) CHECK_FALSE(classify_vertex(eq, i));

  // Closed test: equal pull and weight count as absorbed on both ends.
  Configuration pair({{Vec(0.0, 0.0), 1.0}, {Vec(1.0, 0.0), 1.0}}, 2);
  CHECK(classify_vertex(pair, 0));
  CHECK(classify_vertex(pair, 1));
}

TEST_CASE("weiszfeld_step") {
  SUBCASE("fixed point at the symmetric center") {
    Configuration c = testgen::make_equilateral();
    const Point centroid = testgen::centroid_of(c);
    Point next = weiszfeld_step(c, centroid);
    CHECK(distance(next, centroid) <= 1e-15);
  }
  SUBCASE("single active anchor maps everything onto it") {
    Configuration c({{Vec(2.0, -1.0), 3.0}}, 2);
    Point next = weiszfeld_step(c, Vec(10.0, 10.0));
    CHECK(next == Vec(2.0, -1.0));
  }
  SUBCASE("never increases the objective") {
    SplitMix64 rng(101);
    for (int t = 0; t < 25; ++t) {
      const int d = 2 + (t % 2);
      Configuration c = random_configuration(2000 + t, 3 + (t % 5), d, 0.5, 2.0);
      Point x = testgen::random_smooth_point(rng, c);
      for (int k = 0; k < 5; ++k) {
        Point next = weiszfeld_step(c, x);
        CHECK(objective(c, next) <= objective(c, x) * (1.0 + 1e-12) + 1e-12);
        x = next;
      }
    }
  }
  SUBCASE("undefined on an anchor") {
    Configuration c = testgen::make_equilateral();
    expect_error(ErrorCode::AtAnchor,
                 [&] { (void)weiszfeld_step(c, c.at(0).position); });
  }
}

TEST_CASE("solve on symmetric fixtures") {
  SUBCASE("equilateral triangle settles at the centroid") {
    Configuration c = testgen::make_equilateral();
    SolverOutcome out = solve(c);
    REQUIRE(out.converged);
    CHECK(out.kind == SolveCase::Floating);
    CHECK(distance(out.minimizer, testgen::centroid_of(c)) <= 1e-8);
    CHECK(out.residual_norm <= 1e-9 * c.weight_sum());
    CHECK(out.objective_value ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  }
  SUBCASE("unit square settles at the origin") {
    SolverOutcome out = solve(testgen::make_square());
    REQUIRE(out.converged);
    CHECK(out.minimizer.norm() <= 1e-8);
  }
  SUBCASE("regular tetrahedron settles at the centroid") {
    SolverOutcome out = solve(testgen::make_tetrahedron());
    REQUIRE(out.converged);
    CHECK(out.minimizer.norm() <= 1e-8);
  }
}

TEST_CASE("solve absorbed cases") {
  SUBCASE("dominant weight swallows the minimizer exactly") {
    Configuration c = testgen::make_dominant();
    SolverOutcome out = solve(c);
    REQUIRE(out.converged);
    CHECK(out.kind == SolveCase::Absorbed);
    CHECK(out.absorbed_index == 0);
    CHECK(out.minimizer == c.at(0).position);  // bitwise, not approximate
    CHECK(out.iterations == 0);
    CHECK(out.residual_norm == 0.0);
    CHECK(out.objective_value == 4.0);  // 1*|(2,0)| + 1*|(0,2)|, exact
  }
  SUBCASE("single anchor is trivially absorbed") {
    Configuration c({{Vec(0.5, -1.25), 2.0}}, 2);
    SolverOutcome out = solve(c);
    REQUIRE(out.converged);
    CHECK(out.kind == SolveCase::Absorbed);
    CHECK(out.minimizer == Vec(0.5, -1.25));
    CHECK(out.objective_value == 0.0);
  }
  SUBCASE("coincident anchors merge, index maps to first occurrence") {
    Configuration c({{Vec(3.0, 0.0), 1.0},
                     {Vec(0.0, 0.0), 1.0},
                     {Vec(0.0, 0.0), 2.0}},
                    2);
    SolverOutcome out = solve(c);
    REQUIRE(out.converged);
    CHECK(has_warning(out, Warning::MergedDuplicates));
    CHECK(out.kind == SolveCase::Absorbed);  // merged weight 3 vs pull 1
    CHECK(out.absorbed_index == 1);
    CHECK(out.minimizer == Vec(0.0, 0.0));
  }
  SUBCASE("boundary tie is reported and resolved deterministically") {
    Configuration c({{Vec(0.0, 0.0), 1.0}, {Vec(1.0, 0.0), 1.0}}, 2);
    SolverOutcome out = solve(c);
    REQUIRE(out.converged);
    CHECK(out.kind == SolveCase::Absorbed);
    CHECK(has_warning(out, Warning::BoundaryTie));
    CHECK(has_warning(out, Warning::CollinearInput));
    CHECK(out.absorbed_index == 0);  // first of the tied anchors
    CHECK(out.objective_value == 1.0);
  }
}

TEST_CASE("solve floating behaviour") {
  SUBCASE("converged means the residual bound holds") {
    for (int t = 0; t < 20; ++t) {
      const int d = 2 + (t % 2);
      Configuration c = random_configuration(2100 + t, 3 + (t % 5), d, 0.5, 2.0);
      SolverOutcome out = solve(c);
      REQUIRE(out.converged);
      if (out.kind == SolveCase::Floating) {
        CHECK(out.residual_norm <= 1e-9 * c.weight_sum());
        CHECK(balancing_residual(c, out.minimizer).norm() <=
              2e-9 * c.weight_sum());
      }
    }
  }

  SUBCASE("minimizer does not depend on the starting point") {
    SplitMix64 rng(303);
    for (int t = 0; t < 4; ++t) {
      Configuration c = random_configuration(2200 + t, 4 + t, 2 + (t % 2), 0.5, 2.0);
      SolverOutcome base = solve(c);
      if (base.kind != SolveCase::Floating) continue;
      for (int k = 0; k < 8; ++k) {
        SolverOptions opt;
        opt.initial_point = testgen::random_smooth_point(rng, c);
        SolverOutcome out = solve(c, opt);
        REQUIRE(out.converged);
        CHECK(distance(out.minimizer, base.minimizer) <= 1e-6 * c.diameter());
      }
    }
  }

  SUBCASE("weight scaling leaves the minimizer in place") {
    for (int t = 0; t < 6; ++t) {
      Configuration c = random_configuration(2300 + t, 4, 2, 0.5, 2.0);
      SolverOutcome base = solve(c);
      for (double lam : {0.1, 10.0}) {
        std::vector<WeightedPoint> scaled;
        for (const auto& p : c.points()) scaled.emplace_back(p.position, lam * p.weight);
        SolverOutcome out = solve(Configuration(scaled, 2));
        REQUIRE(out.converged);
        CHECK(out.kind == base.kind);
        CHECK(distance(out.minimizer, base.minimizer) <= 1e-8 * c.diameter());
      }
    }
  }

  SUBCASE("similarity transforms carry the minimizer along") {
    SplitMix64 rng(404);
    for (int t = 0; t < 6; ++t) {
      const int d = 2 + (t % 2);
      Configuration c = random_configuration(2400 + t, 4 + (t % 3), d, 0.5, 2.0);
      SolverOutcome base = solve(c);
      const double scale = testgen::uniform(rng, 0.2, 5.0);
      Vec shift = Vec::zero(d);
      for (int k = 0; k < d; ++k) shift[k] = testgen::uniform(rng, -4.0, 4.0);
      std::vector<Vec> rot = testgen::random_rotation(rng, d);
      std::vector<WeightedPoint> moved;
      for (const auto& p : c.points())
        moved.emplace_back(scale * testgen::apply_rotation(rot, p.position) + shift,
                           p.weight);
      Configuration cm(moved, d);
      SolverOutcome out = solve(cm);
      REQUIRE(out.converged);
      const Point expected =
          scale * testgen::apply_rotation(rot, base.minimizer) + shift;
      CHECK(distance(out.minimizer, expected) <= 1e-7 * cm.diameter());
    }
  }

  SUBCASE("iteration cap reports honest non-convergence") {
    Configuration c({{Vec(0.0, 0.0), 2.0},
                     {Vec(4.0, 0.0), 1.0},
                     {Vec(1.0, 2.5), 1.5}},
                    2);
    SolverOptions opt;
    opt.max_iterations = 1;
    SolverOutcome out = solve(c, opt);
    CHECK_FALSE(out.converged);
    CHECK(out.iterations == 1);
    CHECK(out.residual_norm > 1e-9 * c.weight_sum());
  }

  SUBCASE("collinear active anchors are flagged") {
    Configuration c({{Vec(0.0, 0.0), 1.0},
                     {Vec(1.0, 0.0), 3.0},
                     {Vec(5.0, 0.0), 1.0}},
                    2);
    SolverOutcome out = solve(c);
    REQUIRE(out.converged);
    CHECK(has_warning(out, Warning::CollinearInput));
    // Middle anchor dominates on a line: pull |1 - 1| = 0 <= 3.
    CHECK(out.kind == SolveCase::Absorbed);
    CHECK(out.absorbed_index == 1);
  }

  SUBCASE("all weights zero is an error") {
    expect_error(ErrorCode::NoActiveAnchor, [] {
      Configuration c({{Vec(0.0, 0.0), 0.0}, {Vec(1.0, 0.0), 0.0}}, 2);
      (void)solve(c);
    });
  }

  SUBCASE("bad options are rejected") {
    Configuration c = testgen::make_equilateral();
    expect_error(ErrorCode::InvalidArgument, [&] {
      SolverOptions opt;
      opt.residual_tolerance = 0.0;
      (void)solve(c, opt);
    });
    expect_error(ErrorCode::InvalidArgument, [&] {
      SolverOptions opt;
      opt.max_iterations = 0;
      (void)solve(c, opt);
    });
  }
}

TEST_CASE("random_configuration is deterministic and well separated") {
  Configuration a = random_configuration(77, 6, 3, 0.5, 2.0);
  Configuration b = random_configuration(77, 6, 3, 0.5, 2.0);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.at(i).position == b.at(i).position);
    CHECK(a.at(i).weight == b.at(i).weight);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.at(i).weight >= 0.5);
    CHECK(a.at(i).weight <= 2.0);
    for (int c = 0; c < 3; ++c) {
      CHECK(a.at(i).position[c] >= -1.0);
      CHECK(a.at(i).position[c] <= 1.0);
    }
    for (std::size_t j = i + 1; j < a.size(); ++j)
      CHECK(distance(a.at(i).position, a.at(j).position) >= 1e-3);
  }
}
