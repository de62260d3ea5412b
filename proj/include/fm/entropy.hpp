#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "fm/measure.hpp"

namespace fm {

// Entropies are reported in bits (log base 2), so the normalized entropy of a
// measure on [0,1)^d lies in [0, d]. They are computed in float64 even for
// rational-mode trees; the logs are irrational anyway.

inline constexpr double kEntropyTol = 9.313225746154785e-10;  // 2^-30

// -sum m log2 m over positive entries, with 0 log 0 = 0. The masses are
// expected to sum to ~1; no normalization is applied here.
inline double entropy_bits(const std::vector<double>& masses) {
  double h = 0;
  for (double m : masses) {
    if (m > 0) h -= m * std::log2(m);
  }
  return h;
}

template <class T>
double partition_entropy(const BasicGridMeasure<T>& grid) {
  double tot = to_double(grid.total());
  if (std::abs(tot - 1.0) > 1e-9)
    throw validation_error("partition_entropy: grid must be normalized");
  double h = 0;
  for (const auto& [k, v] : grid.cells()) {
    double m = to_double(v);
    if (m > 0) h -= m * std::log2(m);
  }
  return h;
}

template <class T>
double normalized_entropy(const BasicGridMeasure<T>& grid) {
  if (grid.level() < 1) throw validation_error("normalized_entropy: level must be >= 1");
  return partition_entropy(grid) / static_cast<double>(grid.level());
}

// H(mu, D_a | D_b) = sum_{G in D_b} mu(G) H(mu_G, D_a), computed directly
// from the definition by grouping level-a cells under their level-b ancestor.
// The chain rule H(D_a) = H(D_b) + H(D_a|D_b) is a consequence, not the
// implementation; tests compare the two routes.
template <class T>
double conditional_entropy(const BasicMeasureTree<T>& tree, int fine, int coarse) {
  if (coarse > fine) throw validation_error("conditional_entropy: coarse level above fine");
  if (fine > tree.depth()) throw resolution_error("conditional_entropy: level exceeds depth");
  double tot = to_double(tree.total());
  if (std::abs(tot - 1.0) > 1e-9)
    throw validation_error("conditional_entropy: tree must be normalized");
  if (fine == coarse) return 0.0;

  int shift = tree.dim() * (fine - coarse);
  const auto& lv = tree.level(fine);
  double h = 0;
  std::size_t i = 0;
  while (i < lv.size()) {
    std::uint64_t g = lv[i].first >> shift;
    double mg = to_double(tree.mass_at(coarse, g));
    double hg = 0;
    for (; i < lv.size() && (lv[i].first >> shift) == g; ++i) {
      double m = to_double(lv[i].second) / mg;
      if (m > 0) hg -= m * std::log2(m);
    }
    h += mg * hg;
  }
  return h;
}

// d - (1/m) log2 ||mu^(m)||_2^2; always a lower bound for the normalized
// entropy by concavity of the logarithm.
template <class T>
double entropy_lower_bound_from_l2(const BasicGridMeasure<T>& grid) {
  double acc = 0;
  for (const auto& [k, v] : grid.cells()) {
    double m = to_double(v);
    acc += m * m;
  }
  double l2 = std::exp2(static_cast<double>(grid.dim() * grid.level())) * acc;
  return static_cast<double>(grid.dim()) -
         std::log2(l2) / static_cast<double>(grid.level());
}

// Entropy of the level-m grid translated by half a cell in every axis,
// evaluated exactly from the level-(m+1) masses: each shifted cell is a union
// of level-(m+1) cells. Each cell of either partition meets at most 2^d of
// the other, the bounded-multiplicity comparison the tests exercise.
template <class T>
double shifted_partition_entropy(const BasicMeasureTree<T>& tree, int m) {
  if (m + 1 > tree.depth())
    throw resolution_error("shifted_partition_entropy: needs one level below m");
  double tot = to_double(tree.total());
  if (std::abs(tot - 1.0) > 1e-9)
    throw validation_error("shifted_partition_entropy: tree must be normalized");

  auto shifted_axis = [](std::uint64_t c) -> std::uint64_t {
    // level-(m+1) coordinate c -> shifted-cell index along that axis, with
    // the boundary sliver [0, 2^-(m+1)) mapped to a sentinel of its own.
    return c == 0 ? ~std::uint64_t{0} : (c - 1) >> 1;
  };

  std::map<std::pair<std::uint64_t, std::uint64_t>, double> groups;
  for (const auto& [k, v] : tree.level(m + 1)) {
    std::uint64_t x = morton_x(tree.dim(), k);
    std::uint64_t y = morton_y(tree.dim(), k);
    auto idx = std::make_pair(shifted_axis(x),
                              tree.dim() == 2 ? shifted_axis(y) : std::uint64_t{0});
    groups[idx] += to_double(v);
  }
  double h = 0;
  for (const auto& [idx, mass] : groups) {
    if (mass > 0) h -= mass * std::log2(mass);
  }
  return h;
}

}  // namespace fm
