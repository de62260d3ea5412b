#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "fm/measure.hpp"

namespace fm {

inline constexpr double kUnitTol = 9.094947017729282e-13;  // 2^-40

// A direction on the circle; the unit vector is kept explicitly so axis
// cases can be detected by snapping.
struct Direction {
  double angle = 0;
  double ux = 1;
  double uy = 0;

  Direction() = default;
  explicit Direction(double theta)
      : angle(theta), ux(std::cos(theta)), uy(std::sin(theta)) {
    if (std::abs(ux) < kUnitTol) ux = 0;
    if (std::abs(uy) < kUnitTol) uy = 0;
    double n = std::hypot(ux, uy);
    ux /= n;
    uy /= n;
  }
  static Direction from_vector(double x, double y) {
    Direction d;
    d.angle = std::atan2(y, x);
    double n = std::hypot(x, y);
    if (n == 0) throw validation_error("Direction: zero vector");
    d.ux = x / n;
    d.uy = y / n;
    return d;
  }
};

// Equispaced circle quadrature, offset by half a step so no sampled angle is
// exactly axis-parallel.
inline std::vector<Direction> angle_grid(int n) {
  if (n < 1) throw validation_error("angle_grid: need at least one angle");
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.emplace_back(2.0 * M_PI * (static_cast<double>(i) + 0.5) / static_cast<double>(n));
  return out;
}

// Masses on the dyadic intervals [i 2^-m, (i+1) 2^-m) of the line; bins are a
// dense window [lo, lo + size) of global indices i = floor(t 2^m).
class Grid1D {
 public:
  Grid1D() = default;
  Grid1D(int level, long lo, std::vector<double> mass, double total);

  int level() const { return level_; }
  long lo() const { return lo_; }
  const std::vector<double>& masses() const { return mass_; }
  double total() const { return total_; }
  std::size_t size() const { return mass_.size(); }

  double l2_norm_sq() const;
  // -sum m log2 m; total must be ~1.
  double entropy_bits() const;
  // Entropy after aggregating to a coarser dyadic level.
  double entropy_bits_at(int coarse_level) const;
  Grid1D coarsened(int coarse_level) const;

 private:
  int level_ = 0;
  long lo_ = 0;
  std::vector<double> mass_;
  double total_ = 0;
};

// Accumulator used by the projection and pushforward kernels. Callers size
// the window from the geometry; stray values clamp to the edge bins rather
// than running off the buffer.
class LineBinner {
 public:
  LineBinner(int level, double tmin, double tmax);
  void add(double t, double mass) {
    long idx = static_cast<long>(std::floor(t * scale_)) - lo_;
    if (idx < 0) idx = 0;
    if (idx >= static_cast<long>(bins_.size())) idx = static_cast<long>(bins_.size()) - 1;
    bins_[static_cast<std::size_t>(idx)] += mass;
  }
  Grid1D finish(double total) const;

 private:
  int level_;
  long lo_;
  double scale_;
  std::vector<double> bins_;
};

// Push the grid down to the line through the origin with direction theta.
// subdiv = 0 places one atom at each cell center (the discretize-then-project
// surrogate); subdiv = r >= 1 splits each cell into 4^r sub-atoms, converging
// to the pushforward of the cell density. Output binned at out_level (the
// grid's own level by default); total mass preserved.
Grid1D project_grid(const GridMeasure& grid, const Direction& theta, int subdiv,
                    int out_level);
Grid1D project_grid(const GridMeasure& grid, const Direction& theta, int subdiv);

struct L2Comparison {
  double a = 0;      // ||(mu_theta)^(m)||_2^2, subdiv 0
  double b = 0;      // ||Pi_theta(mu^(m))||_2^2 surrogate, subdiv 3
  double ratio = 0;  // a / b
};

L2Comparison l2_comparison(const GridMeasure& grid, const Direction& theta);

// Numerical (2,gamma)-Sobolev norm of the step density: the Fourier transform
// of each bin is known in closed form (mass * phase * sinc), and the weighted
// integral over |xi| <= cutoff uses trapezoid values against exact per-cell
// integrals of |xi|^{2 gamma}. gamma in (-1/2, 1/2); cutoff >= 2^{m+3}.
double sobolev_norm_sq(const Grid1D& line, double gamma, double cutoff, double quad_step);

// Defaults used throughout: cutoff 2^{m+5}, step cutoff / 2^12.
double sobolev_norm_sq(const Grid1D& line, double gamma);

struct MarstrandResult {
  double lhs = 0;    // angle average of sobolev norms of projections
  double rhs = 0;    // dyadic energy at s = 1 + 2 gamma
  double ratio = 0;  // lhs / rhs
  int subdiv_used = 0;
};

// subdiv is lowered when cells * 4^subdiv would exceed ~2^26 atoms per angle;
// the subdivision actually used is reported in the result.
MarstrandResult marstrand_integral(const MeasureTree& tree, double gamma, int n_angles,
                                   int subdiv = 3);

// Exact line integral of the piecewise-constant density along the line
// through x with direction theta: sum over cells of density * chord length,
// via grid traversal. Axis-parallel directions take an error-free dyadic
// path; the diagonal walk compares break positions exactly and carries the
// sqrt(2) factor once.
double slice_measure(const GridMeasure& grid, const Direction& theta,
                     std::array<double, 2> x);

// Per-angle sweep rows for CSV emission.
struct AngleSweepRow {
  double theta = 0;
  double sobolev = 0;
  double l2 = 0;
};

std::vector<AngleSweepRow> angle_sweep(const MeasureTree& tree, double gamma, int n_angles,
                                       int subdiv = 3);

}  // namespace fm
