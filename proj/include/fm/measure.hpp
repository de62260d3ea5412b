#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "fm/cube.hpp"
#include "fm/errors.hpp"
#include "fm/rational.hpp"

namespace fm {

// Relative slack for the parent/child consistency check in float mode.
inline constexpr double kFloatConsistencyTol = 9.094947017729282e-13;  // 2^-40

enum class NumericMode { Float64, Rational };

template <class T>
struct mass_traits;

template <>
struct mass_traits<double> {
  static constexpr NumericMode mode = NumericMode::Float64;
  static bool consistent(double parent, double child_sum, double /*scale*/) {
    double ref = std::max(std::abs(parent), std::abs(child_sum));
    return std::abs(parent - child_sum) <= kFloatConsistencyTol * ref;
  }
};

template <>
struct mass_traits<Rational> {
  static constexpr NumericMode mode = NumericMode::Rational;
  static bool consistent(const Rational& parent, const Rational& child_sum,
                         const Rational& /*scale*/) {
    return parent == child_sum;
  }
};

// One level of a sparse tree or a grid slice: cells sorted by Morton key.
template <class T>
using SparseLevel = std::vector<std::pair<std::uint64_t, T>>;

namespace detail {

template <class T>
void sort_and_merge(SparseLevel<T>& cells) {
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (out > 0 && cells[out - 1].first == cells[i].first) {
      cells[out - 1].second += cells[i].second;
    } else {
      cells[out++] = cells[i];
    }
  }
  cells.resize(out);
}

template <class T>
void drop_zeros(SparseLevel<T>& cells) {
  cells.erase(std::remove_if(cells.begin(), cells.end(),
                             [](const auto& kv) { return kv.second == T(0); }),
              cells.end());
}

}  // namespace detail

// A single-level slice of a measure: the data of the discretization at scale
// 2^-m. The represented density is 2^{dm} * mass(Q) on each charged cell Q.
template <class T>
class BasicGridMeasure {
 public:
  BasicGridMeasure() = default;
  BasicGridMeasure(int dim, int level, SparseLevel<T> cells)
      : dim_(dim), level_(level), cells_(std::move(cells)) {
    detail::sort_and_merge(cells_);
    detail::drop_zeros(cells_);
    total_ = T(0);
    for (const auto& [k, v] : cells_) {
      if (v < T(0)) throw validation_error("GridMeasure: negative mass");
      total_ += v;
    }
  }

  int dim() const { return dim_; }
  int level() const { return level_; }
  const T& total() const { return total_; }
  const SparseLevel<T>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

  T mass(std::uint64_t key) const {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), key,
                               [](const auto& kv, std::uint64_t k) { return kv.first < k; });
    return (it != cells_.end() && it->first == key) ? it->second : T(0);
  }

  BasicGridMeasure<double> to_double() const {
    SparseLevel<double> out;
    out.reserve(cells_.size());
    for (const auto& [k, v] : cells_) out.emplace_back(k, fm::to_double(v));
    return BasicGridMeasure<double>(dim_, level_, std::move(out));
  }

 private:
  int dim_ = 2;
  int level_ = 0;
  SparseLevel<T> cells_;
  T total_{0};
};

// Sparse dyadic tree of masses down to a fixed depth M; the canonical
// finite-resolution representation of a measure on [0,1)^dim. Immutable
// after construction; zero-mass cells are simply absent.
template <class T>
class BasicMeasureTree {
 public:
  BasicMeasureTree() = default;

  // Build from the leaf level; ancestor masses are the child sums, so the
  // consistency invariant holds by construction.
  static BasicMeasureTree from_leaves(int dim, int depth, SparseLevel<T> leaves) {
    if (dim != 1 && dim != 2) throw validation_error("MeasureTree: dim must be 1 or 2");
    if (depth < 0 || depth > max_level(dim))
      throw validation_error("MeasureTree: depth out of range");
    detail::sort_and_merge(leaves);
    detail::drop_zeros(leaves);
    for (const auto& [k, v] : leaves) {
      if (v < T(0)) throw validation_error("MeasureTree: negative mass");
      std::uint64_t n = depth == 0 ? 1 : (std::uint64_t{1} << (dim * depth));
      if (k >= n) throw validation_error("MeasureTree: leaf key out of range");
    }
    if (leaves.empty()) throw validation_error("MeasureTree: zero total mass");

    BasicMeasureTree t;
    t.dim_ = dim;
    t.depth_ = depth;
    t.levels_.resize(static_cast<std::size_t>(depth) + 1);
    t.levels_[static_cast<std::size_t>(depth)] = std::move(leaves);
    for (int m = depth - 1; m >= 0; --m) {
      const auto& fine = t.levels_[static_cast<std::size_t>(m) + 1];
      auto& coarse = t.levels_[static_cast<std::size_t>(m)];
      for (const auto& [k, v] : fine) {
        std::uint64_t pk = k >> dim;
        if (!coarse.empty() && coarse.back().first == pk) {
          coarse.back().second += v;
        } else {
          coarse.emplace_back(pk, v);
        }
      }
    }
    return t;
  }

  // Assemble from fully specified levels (already consistent); used by
  // operations that slice an existing tree.
  static BasicMeasureTree from_levels(int dim, int depth,
                                      std::vector<SparseLevel<T>> levels) {
    BasicMeasureTree t;
    t.dim_ = dim;
    t.depth_ = depth;
    t.levels_ = std::move(levels);
    return t;
  }

  int dim() const { return dim_; }
  int depth() const { return depth_; }
  const T& total() const { return levels_[0].front().second; }
  bool normalized() const { return total() == T(1); }

  const SparseLevel<T>& level(int m) const {
    if (m < 0 || m > depth_) throw resolution_error("MeasureTree: level exceeds depth");
    return levels_[static_cast<std::size_t>(m)];
  }

  std::size_t node_count() const {
    std::size_t n = 0;
    for (const auto& lv : levels_) n += lv.size();
    return n;
  }

  T mass_at(int m, std::uint64_t key) const {
    const auto& lv = level(m);
    auto it = std::lower_bound(lv.begin(), lv.end(), key,
                               [](const auto& kv, std::uint64_t k) { return kv.first < k; });
    return (it != lv.end() && it->first == key) ? it->second : T(0);
  }

  T mass(const CubeIndex& q) const {
    if (q.dim != dim_) throw validation_error("MeasureTree: dimension mismatch");
    return mass_at(q.level, q.key());
  }

  // [first, last) range of the level-(q.level + rel) cells inside q.
  std::pair<std::size_t, std::size_t> descendant_range(const CubeIndex& q, int rel) const {
    const auto& lv = level(q.level + rel);
    std::uint64_t lo = q.key() << (dim_ * rel);
    std::uint64_t hi = (q.key() + 1) << (dim_ * rel);
    auto cmp = [](const auto& kv, std::uint64_t k) { return kv.first < k; };
    auto b = std::lower_bound(lv.begin(), lv.end(), lo, cmp);
    auto e = std::lower_bound(lv.begin(), lv.end(), hi, cmp);
    return {static_cast<std::size_t>(b - lv.begin()), static_cast<std::size_t>(e - lv.begin())};
  }

  // Verify the parent/child consistency invariant on every internal node
  // (exact in rational mode, within 2^-40 relative in float mode).
  bool consistent() const {
    for (int m = 0; m < depth_; ++m) {
      const auto& coarse = levels_[static_cast<std::size_t>(m)];
      const auto& fine = levels_[static_cast<std::size_t>(m) + 1];
      std::size_t i = 0;
      for (const auto& [pk, pv] : coarse) {
        T sum(0);
        while (i < fine.size() && (fine[i].first >> dim_) == pk) sum += fine[i++].second;
        if (!mass_traits<T>::consistent(pv, sum, total())) return false;
      }
      if (i != fine.size()) return false;  // orphan fine cell
    }
    return true;
  }

  BasicMeasureTree<double> to_double() const {
    std::vector<SparseLevel<double>> lv(levels_.size());
    for (std::size_t m = 0; m < levels_.size(); ++m) {
      lv[m].reserve(levels_[m].size());
      for (const auto& [k, v] : levels_[m]) lv[m].emplace_back(k, fm::to_double(v));
    }
    return BasicMeasureTree<double>::from_levels(dim_, depth_, std::move(lv));
  }

 private:
  int dim_ = 2;
  int depth_ = 0;
  std::vector<SparseLevel<T>> levels_;
};

using MeasureTree = BasicMeasureTree<double>;
using ExactMeasureTree = BasicMeasureTree<Rational>;
using GridMeasure = BasicGridMeasure<double>;
using ExactGridMeasure = BasicGridMeasure<Rational>;

// --- core operations -------------------------------------------------------

// The level-m slice of the tree; the data of the discretization at 2^-m.
template <class T>
BasicGridMeasure<T> discretize(const BasicMeasureTree<T>& tree, int m) {
  if (m < 0 || m > tree.depth())
    throw resolution_error("discretize: level exceeds tree depth");
  return BasicGridMeasure<T>(tree.dim(), m, tree.level(m));
}

// Restriction to a union of same-level cells: masses outside are zeroed and
// ancestors recomputed bottom-up. Not renormalized.
template <class T>
BasicMeasureTree<T> restrict_to(const BasicMeasureTree<T>& tree,
                                const std::vector<CubeIndex>& cells) {
  if (cells.empty()) throw empty_restriction_error("restrict: empty selection");
  int lev = cells.front().level;
  std::vector<std::uint64_t> keys;
  keys.reserve(cells.size());
  for (const auto& c : cells) {
    if (c.dim != tree.dim()) throw validation_error("restrict: dimension mismatch");
    if (c.level != lev) throw validation_error("restrict: cells must share one level");
    if (c.level > tree.depth()) throw resolution_error("restrict: level exceeds depth");
    keys.push_back(c.key());
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  int shift = tree.dim() * (tree.depth() - lev);
  SparseLevel<T> leaves;
  for (const auto& [k, v] : tree.level(tree.depth())) {
    if (std::binary_search(keys.begin(), keys.end(), k >> shift)) leaves.emplace_back(k, v);
  }
  if (leaves.empty()) throw empty_restriction_error("restrict: selection has zero mass");
  return BasicMeasureTree<T>::from_leaves(tree.dim(), tree.depth(), std::move(leaves));
}

template <class T>
BasicMeasureTree<T> restrict_to(const BasicMeasureTree<T>& tree, const CubeIndex& cell) {
  return restrict_to(tree, std::vector<CubeIndex>{cell});
}

// Scale so the root carries mass one.
template <class T>
BasicMeasureTree<T> normalize(const BasicMeasureTree<T>& tree) {
  const T& tot = tree.total();
  if (tot == T(0)) throw validation_error("normalize: zero total mass");
  std::vector<SparseLevel<T>> lv(static_cast<std::size_t>(tree.depth()) + 1);
  for (int m = 0; m <= tree.depth(); ++m) {
    lv[static_cast<std::size_t>(m)] = tree.level(m);
    for (auto& kv : lv[static_cast<std::size_t>(m)]) kv.second = kv.second / tot;
  }
  return BasicMeasureTree<T>::from_levels(tree.dim(), tree.depth(), std::move(lv));
}

// The renormalized measure mu^Q: the subtree rooted at Q, masses divided by
// mass(Q), re-rooted on the unit cube as a depth-(M - level(Q)) tree.
template <class T>
BasicMeasureTree<T> renormalize_to_unit(const BasicMeasureTree<T>& tree, const CubeIndex& q) {
  if (q.dim != tree.dim()) throw validation_error("renormalize_to_unit: dimension mismatch");
  if (q.level > tree.depth()) throw resolution_error("renormalize_to_unit: level exceeds depth");
  T mq = tree.mass(q);
  if (mq == T(0)) throw empty_restriction_error("renormalize_to_unit: zero-mass cube");

  int new_depth = tree.depth() - q.level;
  std::vector<SparseLevel<T>> lv(static_cast<std::size_t>(new_depth) + 1);
  for (int r = 0; r <= new_depth; ++r) {
    auto [b, e] = tree.descendant_range(q, r);
    const auto& src = tree.level(q.level + r);
    std::uint64_t base = q.key() << (tree.dim() * r);
    auto& dst = lv[static_cast<std::size_t>(r)];
    dst.reserve(e - b);
    for (std::size_t i = b; i < e; ++i) dst.emplace_back(src[i].first - base, src[i].second / mq);
  }
  return BasicMeasureTree<T>::from_levels(tree.dim(), new_depth, std::move(lv));
}

// View a grid slice as a depth-M tree by spreading each cell uniformly; this
// is the tree of the measure mu^(m) itself.
template <class T>
BasicMeasureTree<T> expand_to_depth(const BasicGridMeasure<T>& grid, int depth) {
  if (depth < grid.level()) throw validation_error("expand_to_depth: depth above grid level");
  int rel = depth - grid.level();
  int d = grid.dim();
  std::uint64_t per = std::uint64_t{1} << (d * rel);
  SparseLevel<T> leaves;
  leaves.reserve(grid.size() * per);
  for (const auto& [k, v] : grid.cells()) {
    T share = v / T(static_cast<long>(per));
    std::uint64_t base = k << (d * rel);
    for (std::uint64_t i = 0; i < per; ++i) leaves.emplace_back(base + i, share);
  }
  return BasicMeasureTree<T>::from_leaves(d, depth, std::move(leaves));
}

}  // namespace fm
