#pragma once

#include "fm/energy.hpp"
#include "fm/measure.hpp"

namespace fm {

// Reference computations used only by the verification suites. They evaluate
// the same quantities as the energy module through an unrelated route (pair
// enumeration over leaves instead of per-level sums), so agreement certifies
// the level-sum identities rather than re-running them.

// Self-energy of the uniform measure on one cube against itself, evaluated by
// its own geometric series: 1 + (1 - 2^{-s}) sum_{r>=1} 2^{(s-d) r}.
inline Sqrt2Ext oracle_uniform_self_energy(long s_num, int dim) {
  Sqrt2Ext q = pow2_half(s_num - 2L * dim);
  Sqrt2Ext series = q / (Sqrt2Ext(1L) - q);
  return Sqrt2Ext(1L) + (Sqrt2Ext(1L) - pow2_half(-s_num)) * series;
}

// The pairwise double sum of the dyadic kernel over the leaves of mu^(M):
// distinct leaves contribute m m' 2^{s lca}, a leaf against itself carries
// the uniform-cube self-energy at scale M. Exact in Q(sqrt 2).
inline Sqrt2Ext brute_force_dyadic_energy(const ExactMeasureTree& tree, long s_num) {
  int depth = tree.depth();
  int dim = tree.dim();
  const auto& leaves = tree.level(depth);
  Sqrt2Ext acc(0L);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      int lca = common_ancestor_level(dim, depth, leaves[i].first, leaves[j].first);
      acc += pow2_half(s_num * lca) *
             Rational(leaves[i].second * leaves[j].second * 2);
    }
  }
  Sqrt2Ext self = oracle_uniform_self_energy(s_num, dim) * pow2_half(s_num * depth);
  for (const auto& [k, v] : leaves) acc += self * Rational(v * v);
  return acc;
}

// Float variant for larger spot checks.
inline double brute_force_dyadic_energy(const MeasureTree& tree, double s) {
  int depth = tree.depth();
  int dim = tree.dim();
  const auto& leaves = tree.level(depth);
  double acc = 0;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      int lca = common_ancestor_level(dim, depth, leaves[i].first, leaves[j].first);
      acc += 2.0 * leaves[i].second * leaves[j].second * std::exp2(s * lca);
    }
  }
  double self = uniform_cell_self_energy(s, dim) * std::exp2(s * depth);
  for (const auto& [k, v] : leaves) acc += self * v * v;
  return acc;
}

}  // namespace fm
