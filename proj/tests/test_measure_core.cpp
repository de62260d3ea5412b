#include <doctest.h>

#include "fm/family.hpp"
#include "fm/generators.hpp"
#include "fm/measure.hpp"

using namespace fm;

TEST_SUITE_BEGIN("measure-core");

TEST_CASE("cube index keys round-trip and nest") {
  CubeIndex q(2, 3, 5, 6);
  CHECK(CubeIndex::from_key(2, 3, q.key()) == q);
  CHECK(q.parent() == CubeIndex(2, 2, 2, 3));
  CHECK(q.child(3) == CubeIndex(2, 4, 11, 13));
  CHECK_THROWS_AS(CubeIndex(2, 2, 4, 0), validation_error);
  // children tile the parent: keys of children are 4k..4k+3
  for (int c = 0; c < 4; ++c) CHECK(q.child(c).key() == 4 * q.key() + c);
}

TEST_CASE("discretize uniform and root") {
  auto uni = uniform_measure(3);
  auto g3 = discretize(uni, 3);
  CHECK(g3.size() == 64);
  for (const auto& [k, v] : g3.cells()) CHECK(v == Rational(1, 64));
  auto g0 = discretize(uni, 0);
  CHECK(g0.size() == 1);
  CHECK(g0.total() == 1);
  CHECK_THROWS_AS(discretize(uni, 4), resolution_error);
}

TEST_CASE("discretize 3-branch tree") {
  auto tb = three_branch_measure(2);
  auto g = discretize(tb, 2);
  CHECK(g.size() == 9);
  for (const auto& [k, v] : g.cells()) CHECK(v == Rational(1, 9));
}

TEST_CASE("restrict to one quadrant of the uniform") {
  auto uni = uniform_measure(3);
  auto r = restrict_to(uni, CubeIndex(2, 1, 0, 0));
  CHECK(r.total() == Rational(1, 4));
  // interior masses unchanged
  CHECK(r.mass(CubeIndex(2, 3, 1, 1)) == Rational(1, 64));
  CHECK(r.mass(CubeIndex(2, 3, 7, 7)) == 0);
  CHECK(r.consistent());
}

TEST_CASE("restrict to everything is the identity; empty selection throws") {
  auto tb = three_branch_measure(3);
  std::vector<CubeIndex> all;
  for (const auto& [k, v] : tb.level(3)) all.push_back(CubeIndex::from_key(2, 3, k));
  auto r = restrict_to(tb, all);
  CHECK(r.total() == 1);
  CHECK(r.node_count() == tb.node_count());
  // cell 2 at level 1 carries no mass in the {0,1,3} pattern
  CHECK_THROWS_AS(restrict_to(tb, CubeIndex(2, 1, 0, 1)), empty_restriction_error);
}

TEST_CASE("restrict 3-branch to two children then normalize") {
  auto tb = three_branch_measure(4);
  std::vector<CubeIndex> two{CubeIndex(2, 1, 0, 0), CubeIndex(2, 1, 1, 0)};
  auto r = restrict_to(tb, two);
  CHECK(r.total() == Rational(2, 3));
  auto n = normalize(r);
  CHECK(n.total() == 1);
  CHECK(n.mass(CubeIndex(2, 1, 0, 0)) == Rational(1, 2));
  CHECK(n.mass(CubeIndex(2, 1, 1, 0)) == Rational(1, 2));
  SUBCASE("normalize is idempotent") {
    auto n2 = normalize(n);
    CHECK(n2.mass(CubeIndex(2, 1, 0, 0)) == Rational(1, 2));
  }
}

TEST_CASE("renormalize_to_unit of the uniform is uniform") {
  auto uni = uniform_measure(4);
  auto sub = renormalize_to_unit(uni, CubeIndex(2, 2, 1, 2));
  CHECK(sub.depth() == 2);
  CHECK(sub.total() == 1);
  for (const auto& [k, v] : sub.level(2)) CHECK(v == Rational(1, 16));
}

TEST_CASE("renormalize_to_unit at leaf level gives the trivial tree") {
  auto tb = three_branch_measure(3);
  auto leafkey = tb.level(3).front().first;
  auto sub = renormalize_to_unit(tb, CubeIndex::from_key(2, 3, leafkey));
  CHECK(sub.depth() == 0);
  CHECK(sub.total() == 1);
}

TEST_CASE("3-branch renormalized at child 0 reproduces the pattern") {
  auto tb = three_branch_measure(4);
  auto sub = renormalize_to_unit(tb, CubeIndex(2, 1, 0, 0));
  auto expect = three_branch_measure(3);
  CHECK(sub.depth() == 3);
  REQUIRE(sub.level(3).size() == expect.level(3).size());
  for (std::size_t i = 0; i < sub.level(3).size(); ++i) {
    CHECK(sub.level(3)[i].first == expect.level(3)[i].first);
    CHECK(sub.level(3)[i].second == expect.level(3)[i].second);
  }
  CHECK_THROWS_AS(renormalize_to_unit(tb, CubeIndex(2, 1, 0, 1)),
                  empty_restriction_error);
}

TEST_CASE("consistency holds after every operation on random trees") {
  Rng rng(99);
  for (int i = 0; i < 10; ++i) {
    auto t = random_rational_tree(2, 5, rng);
    CHECK(t.consistent());
    CHECK(normalize(t).consistent());
    int lev = 1 + static_cast<int>(rng.next_below(3));
    std::vector<CubeIndex> keep;
    for (const auto& [k, v] : t.level(lev)) {
      if (rng.next_below(2) == 0) keep.push_back(CubeIndex::from_key(2, lev, k));
    }
    if (!keep.empty()) {
      auto r = restrict_to(t, keep);
      CHECK(r.consistent());
      // restriction total equals the mass of the selected union
      Rational expect(0);
      for (const auto& c : keep) expect += t.mass(c);
      CHECK(r.total() == expect);
    }
  }
}

TEST_CASE("float trees validate consistency within tolerance") {
  auto t = beta_model_measure(0.6, 8, 5).to_double();
  CHECK(t.consistent());
  CHECK(discretize(t, 8).total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("expand_to_depth spreads cells uniformly") {
  auto tb = three_branch_measure(2);
  auto flat = expand_to_depth(discretize(tb, 1), 3);
  CHECK(flat.depth() == 3);
  CHECK(flat.total() == 1);
  CHECK(flat.consistent());
  // each level-1 cell of mass 1/3 spreads to 16 level-3 cells of mass 1/48
  CHECK(flat.level(3).size() == 3 * 16);
  for (const auto& [k, v] : flat.level(3)) CHECK(v == Rational(1, 48));
}

TEST_SUITE_END();
