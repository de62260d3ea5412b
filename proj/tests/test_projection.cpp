#include <doctest.h>

#include "fm/family.hpp"
#include "fm/projection.hpp"

using namespace fm;

TEST_SUITE_BEGIN("projection");

TEST_CASE("axis projection of the uniform is uniform") {
  auto grid = discretize(uniform_measure(6).to_double(), 6);
  auto line = project_grid(grid, Direction(0.0), 0);
  CHECK(line.total() == doctest::Approx(1.0));
  CHECK(line.l2_norm_sq() == doctest::Approx(1.0));
  double sum = 0;
  for (double m : line.masses()) sum += m;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("point mass projects to a point") {
  // cell containing (3/4, 0) at depth 4
  SparseLevel<double> leaves{{morton_key(2, 12, 0), 1.0}};
  auto tree = MeasureTree::from_leaves(2, 4, std::move(leaves));
  auto line = project_grid(discretize(tree, 4), Direction(0.0), 0);
  std::size_t charged = 0;
  for (double m : line.masses()) charged += m != 0;
  CHECK(charged == 1);
  // single bin at t ~ 3/4: global index 12 at level 4
  CHECK(line.lo() == 12);
}

TEST_CASE("diagonal projection converges to the triangle density") {
  auto grid = discretize(uniform_measure(7).to_double(), 7);
  auto line = project_grid(grid, Direction(M_PI / 4), 2);
  double expect = 2.0 * std::sqrt(2.0) / 3.0;
  CHECK(line.l2_norm_sq() == doctest::Approx(expect).epsilon(0.05));
}

TEST_CASE("projection preserves mass for every subdiv") {
  auto grid = discretize(beta_model_measure(0.7, 6, 3).to_double(), 6);
  for (int subdiv : {0, 1, 3}) {
    auto line = project_grid(grid, Direction(1.1), subdiv);
    CHECK(line.total() == doctest::Approx(grid.total()));
    double sum = 0;
    for (double m : line.masses()) sum += m;
    CHECK(sum == doctest::Approx(grid.total()).epsilon(1e-12));
  }
}

TEST_CASE("l2 comparison stays within the coarse two-sided bound") {
  SUBCASE("uniform, axis") {
    auto grid = discretize(uniform_measure(6).to_double(), 6);
    auto cmp = l2_comparison(grid, Direction(0.0));
    CHECK(cmp.ratio == doctest::Approx(1.0).epsilon(0.05));
  }
  SUBCASE("point mass ratio within [1/5, 5]") {
    SparseLevel<double> leaves{{morton_key(2, 9, 6), 1.0}};
    auto tree = MeasureTree::from_leaves(2, 5, std::move(leaves));
    auto grid = discretize(tree, 5);
    for (const auto& th : angle_grid(8)) {
      auto cmp = l2_comparison(grid, th);
      CHECK(cmp.ratio >= 0.2);
      CHECK(cmp.ratio <= 5.0);
    }
  }
}

TEST_CASE("sobolev norm oracles") {
  auto grid = discretize(uniform_measure(8).to_double(), 8);
  SUBCASE("gamma 0 recovers the L2 norm of the uniform density") {
    auto line = project_grid(grid, Direction(0.0), 0);
    CHECK(sobolev_norm_sq(line, 0.0) == doctest::Approx(1.0).epsilon(0.02));
  }
  SUBCASE("triangle density") {
    auto line = project_grid(grid, Direction(M_PI / 4), 3);
    double expect = 2.0 * std::sqrt(2.0) / 3.0;
    CHECK(sobolev_norm_sq(line, 0.0) == doctest::Approx(expect).epsilon(0.05));
  }
  SUBCASE("point-mass bins have no finite Sobolev norm") {
    // the binned atom's norm keeps growing with the resolution of the bin
    // (and mildly with the cutoff): the underlying atom diverges
    double prev = 0;
    for (int m : {4, 6, 8}) {
      SparseLevel<double> one{{morton_key(2, 3, 3), 1.0}};
      auto pm = MeasureTree::from_leaves(2, m, std::move(one));
      auto line = project_grid(discretize(pm, m), Direction(0.3), 0);
      double v = sobolev_norm_sq(line, 0.2);
      CHECK(v > 2.0 * prev);
      prev = v;
    }
    SparseLevel<double> one{{morton_key(2, 3, 3), 1.0}};
    auto pm = MeasureTree::from_leaves(2, 4, std::move(one));
    auto line = project_grid(discretize(pm, 4), Direction(0.3), 0);
    double lo = sobolev_norm_sq(line, 0.2, std::exp2(7), 0.125);
    double hi = sobolev_norm_sq(line, 0.2, std::exp2(9), 0.125);
    CHECK(hi > lo);  // cutoff-dependent
  }
  SUBCASE("parameter validation") {
    auto line = project_grid(grid, Direction(0.0), 0);
    CHECK_THROWS_AS(sobolev_norm_sq(line, 0.7, std::exp2(13), 1.0), validation_error);
    CHECK_THROWS_AS(sobolev_norm_sq(line, 0.0, 16.0, 1.0), validation_error);
  }
}

TEST_CASE("marstrand integral brackets") {
  SUBCASE("uniform") {
    auto r = marstrand_integral(uniform_measure(6).to_double(), 0.05, 16);
    CHECK(r.ratio > 0.02);
    CHECK(r.ratio < 50.0);
  }
  SUBCASE("3-branch at gamma 0.2") {
    auto r = marstrand_integral(three_branch_measure(8).to_double(), 0.2, 16);
    CHECK(std::isfinite(r.lhs));
    CHECK(std::isfinite(r.rhs));
    CHECK(r.ratio > 0.0);
  }
  SUBCASE("line measure: lhs finite, rhs large, ratio small but positive") {
    auto line = line_segment_measure({0.1, 0.4}, {0.9, 0.4}, 8);
    auto r = marstrand_integral(line, 0.2, 32);
    CHECK(std::isfinite(r.lhs));
    CHECK(r.rhs > 10.0);
    CHECK(r.ratio > 0.0);
  }
  CHECK_THROWS_AS(marstrand_integral(uniform_measure(4).to_double(), 0.2, 8),
                  validation_error);
}

TEST_CASE("slice measure raycasting") {
  auto grid = discretize(uniform_measure(6).to_double(), 6);
  SUBCASE("horizontal chord of the uniform") {
    CHECK(slice_measure(grid, Direction(0.0), {0.0, 0.5}) == doctest::Approx(1.0));
  }
  SUBCASE("line missing the support") {
    CHECK(slice_measure(grid, Direction(0.0), {0.0, 1.5}) == 0.0);
    // restricted to one quadrant, a line through the opposite half misses
    auto q = discretize(
        normalize(restrict_to(uniform_measure(6), CubeIndex(2, 1, 0, 0))).to_double(), 6);
    CHECK(slice_measure(q, Direction(0.0), {0.0, 0.9}) == doctest::Approx(0.0));
  }
  SUBCASE("diagonal chord has length sqrt 2") {
    double v = slice_measure(grid, Direction(M_PI / 4), {0.0, 0.0});
    CHECK(v == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  }
  SUBCASE("vertical line through the middle") {
    CHECK(slice_measure(grid, Direction(M_PI / 2), {0.5, 0.2}) == doctest::Approx(1.0));
  }
}

TEST_CASE("slice disintegration recovers total mass") {
  auto grid = discretize(three_branch_measure(6).to_double(), 6);
  Direction th(0.7);
  Direction normal(0.7 + M_PI / 2);
  double step = std::exp2(-8);
  double acc = 0;
  for (double o = -1.5; o <= 1.5; o += step) {
    acc += slice_measure(grid, normal, {0.5 + o * th.ux, 0.5 + o * th.uy}) * step;
  }
  CHECK(acc == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("projected l2 respects the Cauchy-Schwarz floor") {
  auto grid = discretize(beta_model_measure(0.75, 6, 9).to_double(), 6);
  for (const auto& th : angle_grid(8)) {
    auto line = project_grid(grid, th, 1);
    double support = static_cast<double>(line.masses().size()) * std::exp2(-line.level());
    CHECK(line.l2_norm_sq() + 1e-12 >= line.total() * line.total() / support);
  }
}

TEST_SUITE_END();
