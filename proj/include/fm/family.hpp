#pragma once

#include <string>
#include <vector>

#include "fm/generators.hpp"
#include "fm/measure.hpp"
#include "fm/rng.hpp"

namespace fm {

// The standard test family used across the verification suites: one member
// per qualitative shape the statements care about (full dimension, strict
// self-similarity, random, product structure, one-dimensional curve).
struct FamilyMember {
  std::string name;
  MeasureTree tree;
};

std::vector<FamilyMember> standard_family(int depth);

inline ExactMeasureTree uniform_measure(int depth) {
  return branching_measure({0, 1, 2, 3}, depth);
}
inline ExactMeasureTree three_branch_measure(int depth) {
  return branching_measure({0, 1, 3}, depth);
}

// Random sparse tree with exact rational masses: each node keeps a random
// nonempty subset of children with small integer weights. Used by the exact
// identity suites.
ExactMeasureTree random_rational_tree(int dim, int depth, Rng& rng);

// Convex combination of two same-shape trees at the leaf level.
MeasureTree mix_trees(const MeasureTree& a, const MeasureTree& b, double t);

}  // namespace fm
