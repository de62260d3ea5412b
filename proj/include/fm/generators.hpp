#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fm/measure.hpp"

namespace fm {

// Test-measure generators. All structural randomness comes from the integer
// Rng stream, so a (spec, seed) pair reproduces the identical tree on every
// platform. Branching, digit-restricted and beta-model trees carry exact
// rational masses; curve measures (circle, line) are float only.

// Mass splits equally among the pattern's children at every level (d=2,
// children numbered 0..3 as in CubeIndex::child). Dimension log2 |pattern|.
ExactMeasureTree branching_measure(const std::vector<int>& pattern, int depth);

// Float-mode variant for deep trees, skipping the rational intermediate.
MeasureTree branching_measure_float(const std::vector<int>& pattern, int depth);

// 1d binary-digit measure: at blocked levels the digit is forced to 0, at
// free levels the mass splits in half. Level n of the expansion is blocked
// iff blocked(n) for n = 1..depth.
ExactMeasureTree digit_restricted_measure(int depth, const std::function<bool(int)>& blocked);

// The standard blocked set {n : (2k)^2 <= n < (2k+1)^2}, i.e. floor(sqrt n)
// even.
bool squares_blocked(int n);

// Product of two 1d trees of equal depth, as a 2d tree.
ExactMeasureTree product_measure(const ExactMeasureTree& x, const ExactMeasureTree& y);

// Fractal percolation: each child survives independently with probability p,
// survivors share the parent mass equally; dead subtrees lose their mass and
// the surviving tree is renormalized. Retries (up to 100) on total
// extinction.
ExactMeasureTree beta_model_measure(double p, int depth, std::uint64_t seed, int dim = 2);

// Arc-length measure on a circle, binned at the given level through a
// 2^(level+4)-segment polyline. The circle must fit inside [0,1)^2.
MeasureTree circle_measure(std::array<double, 2> center, double radius, int level);

// Uniform length measure on a segment inside [0,1)^2, binned at the level.
MeasureTree line_segment_measure(std::array<double, 2> a, std::array<double, 2> b, int level);

// CLI/JSON-facing description of a generator run.
struct GeneratorSpec {
  std::string kind;  // branching | digits | beta | circle | line | product
  int depth = 8;
  int dim = 2;
  std::vector<int> pattern{0, 1, 3};
  std::string blocked = "squares";
  std::vector<int> blocked_list;
  double p = 0.7;
  std::uint64_t seed = 0;
  std::array<double, 2> center{0.5, 0.5};
  double radius = 0.25;
  std::array<double, 2> line_a{0.25, 0.5};
  std::array<double, 2> line_b{0.75, 0.5};

  bool exact_capable() const;
  std::string to_json_string() const;
  static GeneratorSpec from_json_string(const std::string& text);
};

ExactMeasureTree generate_exact(const GeneratorSpec& spec);
MeasureTree generate_float(const GeneratorSpec& spec);

}  // namespace fm
