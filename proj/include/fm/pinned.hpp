#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fm/energy.hpp"
#include "fm/entropy.hpp"
#include "fm/measure.hpp"
#include "fm/projection.hpp"
#include "fm/rng.hpp"
#include "fm/schedule.hpp"

namespace fm {

using Point = std::array<double, 2>;

// Unit vector from y toward x.
inline Direction direction(Point x, Point y) {
  double dx = x[0] - y[0];
  double dy = x[1] - y[1];
  if (dx == 0 && dy == 0) throw validation_error("direction: coincident points");
  return Direction::from_vector(dx, dy);
}

inline double dist_to_box(Point p, double x0, double y0, double side) {
  double dx = std::max({x0 - p[0], 0.0, p[0] - (x0 + side)});
  double dy = std::max({y0 - p[1], 0.0, p[1] - (y0 + side)});
  return std::hypot(dx, dy);
}

template <class T>
double distance_to_support(const BasicGridMeasure<T>& grid, Point y) {
  double h = std::exp2(-grid.level());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [k, v] : grid.cells()) {
    double x0 = static_cast<double>(morton_x(grid.dim(), k)) * h;
    double y0 = grid.dim() == 2 ? static_cast<double>(morton_y(grid.dim(), k)) * h : 0.0;
    best = std::min(best, dist_to_box(y, x0, y0, h));
  }
  return best;
}

template <class T>
double distance_to_support(const BasicMeasureTree<T>& tree, Point y) {
  return distance_to_support(discretize(tree, tree.depth()), y);
}

// Pushforward of the (subdivided) cell atomization under z -> |z - y|, binned
// dyadically at out_level on [0, 2 sqrt 2]. Mass preserved. The pin must stay
// at distance >= 2^-out_level from every positive cell.
template <class T>
Grid1D pinned_pushforward(const BasicGridMeasure<T>& grid, Point y, int out_level,
                          int subdiv) {
  if (grid.dim() != 2) throw validation_error("pinned_pushforward: grid must be 2d");
  if (subdiv < 0) throw validation_error("pinned_pushforward: subdiv must be >= 0");
  double min_sep = std::exp2(-out_level);
  double h = std::exp2(-grid.level());
  // farthest possible distance: the pin to the worst unit-square corner
  double dmax = 0;
  for (double cx : {0.0, 1.0}) {
    for (double cy : {0.0, 1.0}) dmax = std::max(dmax, std::hypot(cx - y[0], cy - y[1]));
  }
  LineBinner binner(out_level, 0.0, dmax + 1.0);
  int ns = 1 << subdiv;
  double sub = h / ns;
  double atom_scale = 1.0 / static_cast<double>(ns * ns);
  for (const auto& [key, mass] : grid.cells()) {
    double m = to_double(mass);
    if (m <= 0) continue;
    double x0 = static_cast<double>(morton_x(2, key)) * h;
    double y0 = static_cast<double>(morton_y(2, key)) * h;
    if (dist_to_box(y, x0, y0, h) < min_sep)
      throw separation_error("pinned_pushforward: pin too close to the support");
    double am = m * atom_scale;
    for (int a = 0; a < ns; ++a) {
      double px = x0 + (a + 0.5) * sub - y[0];
      for (int b = 0; b < ns; ++b) {
        double py = y0 + (b + 0.5) * sub - y[1];
        binner.add(std::hypot(px, py), am);
      }
    }
  }
  return binner.finish(to_double(grid.total()));
}

// |H(Delta_y(mu_Q), D_fine | D_coarse) - H(Pi_theta(mu_Q), D_fine | D_coarse)|
// with theta the direction from the cube center toward y and coarse the
// cube's own level. The gap stays O(1) when the scale gap is admissible.
template <class T>
double linearization_gap(const BasicMeasureTree<T>& tree, const CubeIndex& q, Point y,
                         int fine, int t_const, int subdiv = 2, double separation = 0.25) {
  if (fine > tree.depth()) throw resolution_error("linearization_gap: level exceeds depth");
  if (fine - q.level > q.level + t_const)
    throw validation_error("linearization_gap: gap violates d_j <= m_j + T");
  auto lower = q.lower();
  if (dist_to_box(y, lower[0], lower[1], q.side()) < separation)
    throw separation_error("linearization_gap: pin too close to the cube");

  auto mu_q = normalize(restrict_to(tree, q));
  // atomize at the tree's full resolution, bin at the fine level
  auto grid = discretize(mu_q, tree.depth()).to_double();
  auto pinned = pinned_pushforward(grid, y, fine, subdiv);
  auto center = q.center();
  Direction theta = direction(y, {center[0], center[1]});
  auto projected = project_grid(grid, theta, subdiv, fine);

  double pin_cond = pinned.entropy_bits() - pinned.entropy_bits_at(q.level);
  double lin_cond = projected.entropy_bits() - projected.entropy_bits_at(q.level);
  return std::abs(pin_cond - lin_cond);
}

struct MultiscaleBound {
  double lhs = 0;                  // H(Delta_y mu, D_{m_k})
  double rhs_sum = 0;              // sum_j sum_Q mu(Q) H(mu^Q_theta, D_{d_j})
  std::vector<double> per_scale;   // one term per j
};

namespace detail {

// Entropy at level d of the projection of the renormalized cube content mu^Q,
// without materializing the renormalized tree: the cube's leaves are atomized
// on the unit cube at full relative resolution and binned at level d on the
// line.
template <class T>
double local_projection_entropy(const BasicMeasureTree<T>& tree, int level,
                                std::uint64_t qkey, double qmass, int d,
                                const Direction& theta, int subdiv) {
  int rel = tree.depth() - level;
  const auto& lv = tree.level(tree.depth());
  std::uint64_t lo = qkey << (2 * rel);
  std::uint64_t hi = (qkey + 1) << (2 * rel);
  auto cmp = [](const auto& kv, std::uint64_t k) { return kv.first < k; };
  auto it = std::lower_bound(lv.begin(), lv.end(), lo, cmp);

  double h = std::exp2(-rel);
  LineBinner binner(d, -1.5, 1.5);
  int ns = 1 << subdiv;
  double sub = h / ns;
  double atom_scale = 1.0 / static_cast<double>(ns * ns);
  for (; it != lv.end() && it->first < hi; ++it) {
    std::uint64_t rk = it->first - lo;
    double m = to_double(it->second) / qmass * atom_scale;
    double x0 = static_cast<double>(morton_x(2, rk)) * h;
    double y0 = static_cast<double>(morton_y(2, rk)) * h;
    for (int a = 0; a < ns; ++a) {
      double px = x0 + (a + 0.5) * sub;
      double tx = theta.ux * px;
      for (int b = 0; b < ns; ++b) {
        binner.add(tx + theta.uy * (y0 + (b + 0.5) * sub), m);
      }
    }
  }
  return binner.finish(1.0).entropy_bits();
}

// x_Q for the local projections: the cube center, falling back to the first
// positive leaf center when the center coincides with the pin.
template <class T>
Direction pin_direction(const BasicMeasureTree<T>& tree, const CubeIndex& q, Point y) {
  auto c = q.center();
  if (std::abs(c[0] - y[0]) > 1e-12 || std::abs(c[1] - y[1]) > 1e-12)
    return direction(y, {c[0], c[1]});
  auto [b, e] = tree.descendant_range(q, tree.depth() - q.level);
  const auto& lv = tree.level(tree.depth());
  double h = std::exp2(-tree.depth());
  for (std::size_t i = b; i < e; ++i) {
    Point lc{(static_cast<double>(morton_x(2, lv[i].first)) + 0.5) * h,
             (static_cast<double>(morton_y(2, lv[i].first)) + 0.5) * h};
    if (std::abs(lc[0] - y[0]) > 1e-12 || std::abs(lc[1] - y[1]) > 1e-12)
      return direction(y, lc);
  }
  return Direction(0.0);
}

}  // namespace detail

// Both sides of the multi-scale entropy bound for pinned distances: the
// pushforward entropy at the finest scale against the weighted sum of local
// projection entropies along the schedule, with x_Q the cube center.
template <class T>
MultiscaleBound multiscale_entropy_bound(const BasicMeasureTree<T>& tree, Point y,
                                         const ScaleSchedule& sched, int subdiv = 1,
                                         int t_const = 1) {
  if (sched.finest() > tree.depth())
    throw resolution_error("multiscale_entropy_bound: schedule exceeds depth");
  if (!sched.linearization_admissible(t_const))
    throw validation_error("multiscale_entropy_bound: schedule not linearization-admissible");
  if (tree.dim() != 2) throw validation_error("multiscale_entropy_bound: tree must be 2d");

  MultiscaleBound out;
  auto grid = discretize(tree, tree.depth()).to_double();
  out.lhs = pinned_pushforward(grid, y, sched.finest(), subdiv).entropy_bits();

  out.per_scale.reserve(static_cast<std::size_t>(sched.k()));
  for (int j = 0; j < sched.k(); ++j) {
    int mj = sched.m(j);
    int dj = sched.gap(j);
    double term = 0;
    for (const auto& [qk, qv] : tree.level(mj)) {
      double qmass = to_double(qv);
      if (qmass <= 0) continue;
      auto q = CubeIndex::from_key(2, mj, qk);
      Direction theta = detail::pin_direction(tree, q, y);
      term += qmass *
              detail::local_projection_entropy(tree, mj, qk, qmass, dj, theta, subdiv);
    }
    out.per_scale.push_back(term);
    out.rhs_sum += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Heavy / good / bad squares

struct SquareLabel {
  std::uint64_t key = 0;
  bool heavy = false;
  bool good = false;
  double mu = 0;            // mu(Q)
  double mu_tilde = 0;      // reweighted mass
  double local_energy = 0;  // E_{s1}(mu^{Q,(d_j)})
};

struct ClassifySummary {
  double light_mass = 0;         // sum of mu over non-heavy squares
  double bad_weighted_mass = 0;  // sum of mu_tilde over bad squares
  double mean_local_entropy = 0; // mass-weighted, filled by the experiment
  std::size_t charged = 0;
  std::size_t heavy_count = 0;
  std::size_t good_count = 0;
};

// Labels every positive-mass level-m cube of mu. Heavy: mu(Q) > 2^{-(s1+5d)m}.
// Good: mu~(Q) >= 2^{-4dm} mu(Q) > 0 and E_{s1}(mu^{Q,(gap)}) <= 2^{6dm}.
template <class T>
std::vector<SquareLabel> classify_squares(const BasicMeasureTree<T>& mu,
                                          const BasicMeasureTree<T>& weighted, int level,
                                          double s1, double delta, int gap) {
  if (mu.dim() != weighted.dim() || mu.depth() != weighted.depth())
    throw validation_error("classify_squares: tree shapes differ");
  if (level + gap > mu.depth())
    throw resolution_error("classify_squares: level+gap exceeds depth");
  FloatExponent exp_s1(s1, mu.dim());
  double heavy_thr = std::exp2(-(s1 + 5 * delta) * level);
  double ratio_thr = std::exp2(-4 * delta * level);
  double energy_thr = std::exp2(6 * delta * level);

  std::vector<SquareLabel> out;
  const auto& lv = mu.level(level);
  out.reserve(lv.size());
  for (const auto& [qk, qv] : lv) {
    SquareLabel lab;
    lab.key = qk;
    lab.mu = to_double(qv);
    if (lab.mu <= 0) continue;
    lab.mu_tilde = to_double(weighted.mass_at(level, qk));
    lab.heavy = lab.mu > heavy_thr;
    lab.local_energy =
        FloatExponent::to_value(local_discretized_energy(mu, CubeIndex::from_key(2, level, qk), gap, exp_s1));
    lab.good = lab.mu_tilde >= ratio_thr * lab.mu && lab.mu_tilde > 0 &&
               lab.local_energy <= energy_thr;
    out.push_back(lab);
  }
  // weighted mass must live inside mu's support
  for (const auto& [qk, qv] : weighted.level(level)) {
    if (to_double(qv) > 0 && mu.mass_at(level, qk) == T(0))
      throw validation_error("classify_squares: weighted mass outside mu support");
  }
  return out;
}

inline ClassifySummary summarize(const std::vector<SquareLabel>& labels) {
  ClassifySummary s;
  for (const auto& l : labels) {
    ++s.charged;
    if (l.heavy) ++s.heavy_count; else s.light_mass += l.mu;
    if (l.good) ++s.good_count; else s.bad_weighted_mass += l.mu_tilde;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Direction sets and vantage points

struct DirectionSet {
  Point anchor{0, 0};
  std::vector<Direction> angles;
  std::vector<int> scale_js;                  // the j values covered (j0..k-1)
  std::vector<std::vector<bool>> scale_masks; // pass mask per scale
  std::vector<bool> theta_mask;               // intersection over scales
  std::vector<double> pass_fraction;          // per scale
};

// Per-cube pass mask over the angle grid: angle i passes when
// ||mu^{Q,(d)}_theta||_2^2 <= 2^{eps d} E_s(mu^{Q,(d)}).
template <class T>
std::vector<bool> cube_pass_mask(const BasicMeasureTree<T>& tree, int level,
                                 std::uint64_t qkey, int d, double s, double eps,
                                 const std::vector<Direction>& angles) {
  double qmass = to_double(tree.mass_at(level, qkey));
  double energy = FloatExponent::to_value(
      local_discretized_energy(tree, CubeIndex::from_key(2, level, qkey), d,
                               FloatExponent(s, tree.dim())));
  double threshold = std::exp2(eps * d) * energy;

  // gather renormalized atom positions once
  const auto& lv = tree.level(level + d);
  std::uint64_t lo = qkey << (2 * d);
  std::uint64_t hi = (qkey + 1) << (2 * d);
  auto cmp = [](const auto& kv, std::uint64_t k) { return kv.first < k; };
  auto it = std::lower_bound(lv.begin(), lv.end(), lo, cmp);
  std::vector<std::array<double, 3>> atoms;  // x, y, mass
  double h = std::exp2(-d);
  for (; it != lv.end() && it->first < hi; ++it) {
    std::uint64_t rk = it->first - lo;
    atoms.push_back({(static_cast<double>(morton_x(2, rk)) + 0.5) * h,
                     (static_cast<double>(morton_y(2, rk)) + 0.5) * h,
                     to_double(it->second) / qmass});
  }

  std::vector<bool> mask(angles.size());
  std::vector<double> bins;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const auto& th = angles[i];
    long lo_bin = -(2L << d), hi_bin = 2L << d;
    bins.assign(static_cast<std::size_t>(hi_bin - lo_bin), 0.0);
    double scale = std::exp2(d);
    for (const auto& a : atoms) {
      double t = th.ux * a[0] + th.uy * a[1];
      bins[static_cast<std::size_t>(static_cast<long>(std::floor(t * scale)) - lo_bin)] +=
          a[2];
    }
    double l2 = 0;
    for (double b : bins) l2 += b * b;
    l2 *= scale;
    mask[i] = l2 <= threshold;
  }
  return mask;
}

// Shared cache of per-cube masks for every scale of a schedule; direction
// sets of all anchors are conjunctions of their ancestors' masks.
class DirectionSetIndex {
 public:
  template <class T>
  DirectionSetIndex(const BasicMeasureTree<T>& tree, const ScaleSchedule& sched, double s,
                    double eps, int j0, int n_angles);

  const std::vector<Direction>& angles() const { return angles_; }
  const ScaleSchedule& schedule() const { return sched_; }
  int j0() const { return j0_; }

  std::size_t nearest_angle_index(double theta) const {
    double step = 2.0 * M_PI / static_cast<double>(angles_.size());
    double idx = theta / step - 0.5;
    long i = std::lround(idx);
    long n = static_cast<long>(angles_.size());
    return static_cast<std::size_t>(((i % n) + n) % n);
  }

  // Does the leaf containing key (at the tree depth) pass at every scale for
  // this angle index?
  bool passes(std::uint64_t leaf_key, int tree_depth, std::size_t angle_idx) const {
    for (std::size_t sj = 0; sj < scale_js_.size(); ++sj) {
      int mj = sched_.m(scale_js_[sj]);
      std::uint64_t qk = leaf_key >> (2 * (tree_depth - mj));
      auto it = masks_[sj].find(qk);
      if (it == masks_[sj].end()) return false;
      if (!it->second[angle_idx]) return false;
    }
    return true;
  }

  const std::vector<int>& scale_js() const { return scale_js_; }
  // Pass fraction over (cube, angle) pairs, mass weighted, for one scale.
  double mass_weighted_fail_fraction(std::size_t sj) const { return fail_fraction_[sj]; }

  const std::unordered_map<std::uint64_t, std::vector<bool>>& masks_at(std::size_t sj) const {
    return masks_[sj];
  }

 private:
  ScaleSchedule sched_;
  int j0_;
  std::vector<Direction> angles_;
  std::vector<int> scale_js_;
  std::vector<std::unordered_map<std::uint64_t, std::vector<bool>>> masks_;
  std::vector<double> fail_fraction_;
};

// The direction set of one anchor: per-scale masks over the sampled angles
// for j = j0..k-1 and their conjunction. The vantage admissibility flag of
// the schedule is reported by the caller, not enforced here; finite desk
// schedules rarely satisfy it and the criterion is meaningful without it.
template <class T>
DirectionSet direction_set(const BasicMeasureTree<T>& tree, Point x,
                           const ScaleSchedule& sched, double s, double eps, int j0,
                           int n_angles);

// Total mass of leaves whose direction toward y lands in the leaf's direction
// set (nearest sampled angle).
template <class T>
double vantage_score(const BasicMeasureTree<T>& tree, Point y,
                     const DirectionSetIndex& index);

struct VantageResult {
  Point y{0, 0};
  std::size_t index = 0;
  double score = 0;
  std::vector<double> all_scores;
};

template <class T>
VantageResult vantage_search(const BasicMeasureTree<T>& tree,
                             const std::vector<Point>& candidates,
                             const DirectionSetIndex& index, double separation = 0.25);

// Monte Carlo estimate of (mu x sigma){(y, theta) : |nu_{theta,y}| >= tau}
// with y drawn from mu's leaves and theta from the angle grid.
template <class T>
double direction_incidence(const BasicMeasureTree<T>& mu, const BasicMeasureTree<T>& nu,
                           double tau, int n_angles, int n_samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// template implementations

template <class T>
DirectionSetIndex::DirectionSetIndex(const BasicMeasureTree<T>& tree,
                                     const ScaleSchedule& sched, double s, double eps,
                                     int j0, int n_angles)
    : sched_(sched), j0_(j0), angles_(angle_grid(n_angles)) {
  if (j0 < 0 || j0 >= sched.k())
    throw validation_error("DirectionSetIndex: j0 outside schedule");
  for (int j = j0; j < sched.k(); ++j) {
    if (sched.gap(j) == 0) continue;  // duplicate scale, nothing to test
    scale_js_.push_back(j);
  }
  masks_.resize(scale_js_.size());
  fail_fraction_.assign(scale_js_.size(), 0.0);
  for (std::size_t sj = 0; sj < scale_js_.size(); ++sj) {
    int j = scale_js_[sj];
    int mj = sched_.m(j);
    int dj = sched_.gap(j);
    const auto& lv = tree.level(mj);
    double fail_mass = 0, tot_mass = 0;
    for (const auto& [qk, qv] : lv) {
      double qm = to_double(qv);
      if (qm <= 0) continue;
      auto mask = cube_pass_mask(tree, mj, qk, dj, s, eps, angles_);
      double fails = 0;
      for (bool b : mask) {
        if (!b) ++fails;
      }
      fail_mass += qm * fails / static_cast<double>(mask.size());
      tot_mass += qm;
      masks_[sj].emplace(qk, std::move(mask));
    }
    fail_fraction_[sj] = tot_mass > 0 ? fail_mass / tot_mass : 0.0;
  }
}

template <class T>
DirectionSet direction_set(const BasicMeasureTree<T>& tree, Point x,
                           const ScaleSchedule& sched, double s, double eps, int j0,
                           int n_angles) {
  if (sched.finest() > tree.depth())
    throw resolution_error("direction_set: schedule exceeds depth");
  if (j0 < 0 || j0 >= sched.k()) throw validation_error("direction_set: j0 outside schedule");
  // anchor must sit in a positive-mass leaf
  double scale = std::exp2(tree.depth());
  if (x[0] < 0 || x[0] >= 1 || x[1] < 0 || x[1] >= 1)
    throw validation_error("direction_set: anchor outside the unit square");
  std::uint64_t leaf = morton_key(2, static_cast<std::uint64_t>(x[0] * scale),
                                  static_cast<std::uint64_t>(x[1] * scale));
  if (tree.mass_at(tree.depth(), leaf) == T(0))
    throw validation_error("direction_set: anchor outside the support");

  DirectionSet out;
  out.anchor = x;
  out.angles = angle_grid(n_angles);
  out.theta_mask.assign(static_cast<std::size_t>(n_angles), true);
  for (int j = j0; j < sched.k(); ++j) {
    if (sched.gap(j) == 0) continue;
    int mj = sched.m(j);
    std::uint64_t qk = leaf >> (2 * (tree.depth() - mj));
    auto mask = cube_pass_mask(tree, mj, qk, sched.gap(j), s, eps, out.angles);
    double pass = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i]) ++pass;
      if (!mask[i]) out.theta_mask[i] = false;
    }
    out.scale_js.push_back(j);
    out.pass_fraction.push_back(pass / static_cast<double>(mask.size()));
    out.scale_masks.push_back(std::move(mask));
  }
  return out;
}

template <class T>
double vantage_score(const BasicMeasureTree<T>& tree, Point y,
                     const DirectionSetIndex& index) {
  int depth = tree.depth();
  double h = std::exp2(-depth);
  double acc = 0;
  for (const auto& [k, v] : tree.level(depth)) {
    double m = to_double(v);
    if (m <= 0) continue;
    Point c{(static_cast<double>(morton_x(2, k)) + 0.5) * h,
            (static_cast<double>(morton_y(2, k)) + 0.5) * h};
    Direction th = direction(c, y);
    if (index.passes(k, depth, index.nearest_angle_index(
                                   th.angle < 0 ? th.angle + 2 * M_PI : th.angle)))
      acc += m;
  }
  return acc;
}

template <class T>
VantageResult vantage_search(const BasicMeasureTree<T>& tree,
                             const std::vector<Point>& candidates,
                             const DirectionSetIndex& index, double separation) {
  if (candidates.empty()) throw validation_error("vantage_search: no candidates");
  auto grid = discretize(tree, tree.depth());
  VantageResult best;
  best.score = -1;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (distance_to_support(grid, candidates[i]) < separation)
      throw separation_error("vantage_search: candidate too close to the support");
    double sc = vantage_score(tree, candidates[i], index);
    best.all_scores.push_back(sc);
    if (sc > best.score) {
      best.score = sc;
      best.index = i;
      best.y = candidates[i];
    }
  }
  return best;
}

template <class T>
double direction_incidence(const BasicMeasureTree<T>& mu, const BasicMeasureTree<T>& nu,
                           double tau, int n_angles, int n_samples, std::uint64_t seed) {
  if (tau < 0) throw validation_error("direction_incidence: tau must be >= 0");
  if (tau == 0) return 1.0;  // every slice is trivially >= 0
  if (n_angles < 1 || n_samples < 1)
    throw validation_error("direction_incidence: need angles and samples");
  auto grid = discretize(nu, nu.depth()).to_double();
  auto dirs = angle_grid(n_angles);

  // cumulative leaf masses of mu for sampling
  const auto& leaves = mu.level(mu.depth());
  std::vector<double> cum(leaves.size());
  double tot = 0;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    tot += to_double(leaves[i].second);
    cum[i] = tot;
  }
  double h = std::exp2(-mu.depth());

  Rng rng(seed);
  long hits = 0;
  for (int i = 0; i < n_samples; ++i) {
    double u = rng.next_double() * tot;
    std::size_t idx = static_cast<std::size_t>(
        std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
    if (idx >= leaves.size()) idx = leaves.size() - 1;
    std::uint64_t k = leaves[idx].first;
    Point y{(static_cast<double>(morton_x(2, k)) + 0.5) * h,
            (static_cast<double>(morton_y(2, k)) + 0.5) * h};
    const Direction& th = dirs[rng.next_below(static_cast<std::uint64_t>(n_angles))];
    if (slice_measure(grid, th, y) >= tau) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n_samples);
}

}  // namespace fm
