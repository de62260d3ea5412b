#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fm/measure.hpp"

namespace fm {

// Measure file format (JSON): a header {dim, depth, mode} and an array of
// leaf entries at level = depth, [level, coords..., numerator, denominator]
// in rational mode or [level, coords..., mass] in float mode. Integers that
// do not fit a double exactly are written as decimal strings; the loader
// accepts both. Ancestors are rebuilt and the consistency invariant checked
// on load.

void save_measure(const std::string& path, const ExactMeasureTree& tree);
void save_measure(const std::string& path, const MeasureTree& tree);

struct LoadedMeasure {
  NumericMode mode = NumericMode::Float64;
  std::optional<ExactMeasureTree> exact;
  std::optional<MeasureTree> flt;

  int dim() const { return mode == NumericMode::Rational ? exact->dim() : flt->dim(); }
  int depth() const { return mode == NumericMode::Rational ? exact->depth() : flt->depth(); }
  MeasureTree as_float() const {
    return mode == NumericMode::Rational ? exact->to_double() : *flt;
  }
};

LoadedMeasure load_measure(const std::string& path);

// Stable content hash over the canonical leaf records; identical trees hash
// identically across platforms and serializations.
std::uint64_t tree_hash(const ExactMeasureTree& tree);
std::uint64_t tree_hash(const MeasureTree& tree);

}  // namespace fm
