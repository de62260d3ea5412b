#include <doctest.h>

#include "fm/entropy.hpp"
#include "fm/family.hpp"

using namespace fm;

TEST_SUITE_BEGIN("entropy");

TEST_CASE("partition entropy closed forms") {
  CHECK(partition_entropy(discretize(uniform_measure(4).to_double(), 4)) ==
        doctest::Approx(8.0));
  CHECK(partition_entropy(discretize(branching_measure({3}, 5).to_double(), 5)) ==
        doctest::Approx(0.0));
  // masses 1/2, 1/4, 1/4 -> 1.5 bits
  SparseLevel<double> cells{{0, 0.5}, {1, 0.25}, {2, 0.25}};
  GridMeasure g(2, 1, std::move(cells));
  CHECK(partition_entropy(g) == doctest::Approx(1.5));
  SparseLevel<double> bad{{0, 0.5}};
  CHECK_THROWS_AS(partition_entropy(GridMeasure(2, 1, std::move(bad))), validation_error);
}

TEST_CASE("conditional entropy equals the chain-rule difference") {
  auto tree = beta_model_measure(0.7, 6, 17).to_double();
  for (int b : {0, 2, 4, 6}) {
    double direct = conditional_entropy(tree, 6, b);
    double via_chain = partition_entropy(discretize(tree, 6)) -
                       (b == 0 ? 0.0 : partition_entropy(discretize(tree, b)));
    CHECK(direct == doctest::Approx(via_chain).epsilon(1e-12));
  }
  CHECK(conditional_entropy(tree, 4, 4) == 0.0);
  CHECK_THROWS_AS(conditional_entropy(tree, 2, 4), validation_error);
}

TEST_CASE("conditional entropy of structured trees") {
  // uniform: a - b levels at d bits each
  auto uni = uniform_measure(5).to_double();
  CHECK(conditional_entropy(uni, 5, 2) == doctest::Approx(6.0));
  // 3-branch: log2 3 per level
  auto tb = three_branch_measure(5).to_double();
  CHECK(conditional_entropy(tb, 4, 3) == doctest::Approx(std::log2(3.0)));
}

TEST_CASE("normalized entropy") {
  CHECK(normalized_entropy(discretize(uniform_measure(3).to_double(), 3)) ==
        doctest::Approx(2.0));
  CHECK(normalized_entropy(discretize(branching_measure({0}, 3).to_double(), 3)) ==
        doctest::Approx(0.0));
  CHECK(normalized_entropy(discretize(three_branch_measure(7).to_double(), 7)) ==
        doctest::Approx(std::log2(3.0)));
  CHECK_THROWS_AS(normalized_entropy(discretize(uniform_measure(2).to_double(), 0)),
                  validation_error);
}

TEST_CASE("l2 lower bound is tight on the equality cases") {
  auto uni = discretize(uniform_measure(4).to_double(), 4);
  CHECK(entropy_lower_bound_from_l2(uni) == doctest::Approx(2.0));
  CHECK(normalized_entropy(uni) == doctest::Approx(2.0));

  auto pm = discretize(branching_measure({1}, 4).to_double(), 4);
  CHECK(entropy_lower_bound_from_l2(pm) == doctest::Approx(0.0));

  // two half masses on level-1 cells of the line
  auto two = digit_restricted_measure(1, [](int) { return false; }).to_double();
  auto g = discretize(two, 1);
  CHECK(entropy_lower_bound_from_l2(g) == doctest::Approx(1.0));
  CHECK(normalized_entropy(g) == doctest::Approx(1.0));
}

TEST_CASE("bound never exceeds the entropy on random measures") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = discretize(beta_model_measure(0.5 + 0.01 * seed, 6, seed).to_double(), 6);
    CHECK(normalized_entropy(g) + kEntropyTol >= entropy_lower_bound_from_l2(g));
  }
}

TEST_CASE("entropy bounded by log of partition size") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    int dim = seed % 2 ? 1 : 2;
    auto tree = beta_model_measure(0.8, 6, seed, dim).to_double();
    for (int k = 1; k <= 6; ++k)
      CHECK(partition_entropy(discretize(tree, k)) <= dim * k + kEntropyTol);
  }
}

TEST_CASE("shifted-grid entropy differs by at most d bits") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    int dim = seed % 2 ? 1 : 2;
    auto tree = beta_model_measure(0.7, 6, 100 + seed, dim).to_double();
    double h = partition_entropy(discretize(tree, 5));
    double hs = shifted_partition_entropy(tree, 5);
    CHECK(std::abs(h - hs) <= dim + kEntropyTol);
  }
}

TEST_CASE("conditional entropy is concave in the measure") {
  auto a = beta_model_measure(0.6, 5, 1).to_double();
  auto b = beta_model_measure(0.8, 5, 2).to_double();
  for (double t : {0.25, 0.5, 0.75}) {
    auto mix = mix_trees(a, b, t);
    double lhs = conditional_entropy(mix, 5, 2);
    double rhs =
        t * conditional_entropy(a, 5, 2) + (1 - t) * conditional_entropy(b, 5, 2);
    CHECK(lhs + kEntropyTol >= rhs);
  }
}

TEST_SUITE_END();
