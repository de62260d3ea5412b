#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "fm/family.hpp"
#include "fm/measure_io.hpp"

using namespace fm;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/fm_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("rational measures round-trip exactly") {
  TempFile f("rational.json");
  auto tree = beta_model_measure(0.7, 8, 42);
  save_measure(f.path, tree);
  auto loaded = load_measure(f.path);
  REQUIRE(loaded.mode == NumericMode::Rational);
  CHECK(loaded.exact->depth() == 8);
  CHECK(tree_hash(*loaded.exact) == tree_hash(tree));
  CHECK(loaded.exact->total() == 1);
}

TEST_CASE("float measures round-trip bit-exactly") {
  TempFile f("float.json");
  auto tree = circle_measure({0.5, 0.5}, 0.25, 7);
  save_measure(f.path, tree);
  auto loaded = load_measure(f.path);
  REQUIRE(loaded.mode == NumericMode::Float64);
  CHECK(tree_hash(*loaded.flt) == tree_hash(tree));
}

TEST_CASE("large denominators survive via string entries") {
  TempFile f("bigden.json");
  // depth-14 digit tree has denominators 2^10 at most, so force a big one
  SparseLevel<Rational> leaves;
  Rational third(1, 3);
  Rational big = third;
  for (int i = 0; i < 40; ++i) big *= third;  // 3^-41, den ~ 2^65
  leaves.emplace_back(0, big);
  leaves.emplace_back(1, Rational(1) - big);
  auto tree = ExactMeasureTree::from_leaves(1, 1, std::move(leaves));
  save_measure(f.path, tree);
  auto loaded = load_measure(f.path);
  REQUIRE(loaded.mode == NumericMode::Rational);
  CHECK(loaded.exact->mass_at(1, 0) == big);
}

TEST_CASE("loader validates") {
  TempFile f("bad.json");
  {
    std::ofstream out(f.path);
    out << "{\"format\":\"fractalmeter-measure\",\"dim\":2,\"depth\":2,"
           "\"mode\":\"rational\",\"leaves\":[[1,0,0,1,2]]}";
  }
  CHECK_THROWS_AS(load_measure(f.path), format_error);  // level != depth
  {
    std::ofstream out(f.path);
    out << "not json";
  }
  CHECK_THROWS_AS(load_measure(f.path), format_error);
  CHECK_THROWS_AS(load_measure("/nonexistent/x.json"), format_error);
}

TEST_CASE("tree hash is order-insensitive and content-sensitive") {
  SparseLevel<Rational> a{{0, Rational(1, 2)}, {3, Rational(1, 2)}};
  SparseLevel<Rational> b{{3, Rational(1, 2)}, {0, Rational(1, 2)}};
  auto ta = ExactMeasureTree::from_leaves(2, 1, std::move(a));
  auto tb = ExactMeasureTree::from_leaves(2, 1, std::move(b));
  CHECK(tree_hash(ta) == tree_hash(tb));
  SparseLevel<Rational> c{{0, Rational(1, 4)}, {3, Rational(3, 4)}};
  auto tc = ExactMeasureTree::from_leaves(2, 1, std::move(c));
  CHECK(tree_hash(ta) != tree_hash(tc));
}

TEST_SUITE_END();
