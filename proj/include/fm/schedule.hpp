#pragma once

#include <cmath>
#include <vector>

#include "fm/errors.hpp"

namespace fm {

// Scale sequence 0 = m_0 <= m_1 <= ... <= m_k with gaps d_j = m_{j+1} - m_j.
// The hyperdyadic constructor uses m_j = floor((1+eps)^j), which repeats small
// values for a while and then grows geometrically; repeated entries give empty
// blocks and are harmless.
class ScaleSchedule {
 public:
  ScaleSchedule(double eps, std::vector<int> values) : eps_(eps), m_(std::move(values)) {
    if (m_.size() < 2) throw validation_error("ScaleSchedule: need at least two scales");
    if (m_.front() != 0) throw validation_error("ScaleSchedule: must start at 0");
    for (std::size_t j = 1; j < m_.size(); ++j) {
      if (m_[j] < m_[j - 1]) throw validation_error("ScaleSchedule: not nondecreasing");
    }
  }

  // m_j = floor((1+eps)^j) capped at max_level; generation stops once the cap
  // is reached (the final entry is exactly max_level).
  static ScaleSchedule hyperdyadic(double eps, int max_level) {
    if (eps <= 0) throw validation_error("ScaleSchedule: eps must be positive");
    if (max_level < 1) throw validation_error("ScaleSchedule: max_level must be >= 1");
    std::vector<int> m{0};
    double v = 1.0;
    for (;;) {
      v *= 1.0 + eps;
      int mj = static_cast<int>(std::floor(v));
      if (mj >= max_level) {
        m.push_back(max_level);
        break;
      }
      m.push_back(mj);
    }
    return ScaleSchedule(eps, std::move(m));
  }

  static ScaleSchedule explicit_scales(std::vector<int> values) {
    return ScaleSchedule(0.0, std::move(values));
  }

  double eps() const { return eps_; }
  // Number of gaps (blocks); scales are m(0) .. m(k).
  int k() const { return static_cast<int>(m_.size()) - 1; }
  int m(int j) const { return m_.at(static_cast<std::size_t>(j)); }
  int gap(int j) const { return m(j + 1) - m(j); }
  int finest() const { return m_.back(); }
  const std::vector<int>& values() const { return m_; }

  // d_j <= m_j + T for every j; the linearization step needs this.
  bool linearization_admissible(int T) const {
    for (int j = 0; j < k(); ++j) {
      if (gap(j) > m(j) + T) return false;
    }
    return true;
  }

  // m_j + j <= m_{j+1} for all j >= j1.
  bool vantage_admissible_from(int j1) const {
    for (int j = j1; j < k(); ++j) {
      if (m(j) + j > m(j + 1)) return false;
    }
    return true;
  }

  // Smallest j1 for which the vantage condition holds onward (k() if only
  // vacuously).
  int min_vantage_j1() const {
    int j1 = 0;
    for (int j = 0; j < k(); ++j) {
      if (m(j) + j > m(j + 1)) j1 = j + 1;
    }
    return j1;
  }

 private:
  double eps_ = 0.0;
  std::vector<int> m_;
};

}  // namespace fm
