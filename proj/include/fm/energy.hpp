#pragma once

#include <cmath>
#include <vector>

#include "fm/measure.hpp"
#include "fm/rational.hpp"
#include "fm/schedule.hpp"

namespace fm {

// Exponent policies. An energy computation is parameterized by the exponent
// s and the ambient dimension; the policy supplies the kernel powers 2^{s j}
// in the matching number field. HalfExponent keeps everything in Q(sqrt 2),
// which is what makes the energy identities exactly checkable.

struct FloatExponent {
  using value_type = double;
  double s;
  int dim;

  FloatExponent(double s_, int dim_) : s(s_), dim(dim_) {
    if (!(s > 0.0) || !(s < static_cast<double>(dim)))
      throw validation_error("energy: s must lie in (0, dim)");
  }
  double pow_s(long j) const { return std::exp2(s * static_cast<double>(j)); }
  double one_minus_pow_neg_s() const { return 1.0 - std::exp2(-s); }
  // 2^{s-d} / (1 - 2^{s-d}), the exact tail of the geometric series below the
  // leaf level of a discretized measure.
  double tail_factor() const {
    double q = std::exp2(s - static_cast<double>(dim));
    return q / (1.0 - q);
  }
  static double to_value(double x) { return x; }
  static double to_value(const Rational& x) { return x.get_d(); }
};

struct HalfExponent {
  using value_type = Sqrt2Ext;
  long num;  // s = num / 2
  int dim;

  HalfExponent(long num_, int dim_) : num(num_), dim(dim_) {
    if (num <= 0 || num >= 2L * dim)
      throw validation_error("energy: s must lie in (0, dim)");
  }
  double s() const { return static_cast<double>(num) / 2.0; }
  Sqrt2Ext pow_s(long j) const { return pow2_half(num * j); }
  Sqrt2Ext one_minus_pow_neg_s() const { return Sqrt2Ext(1L) - pow2_half(-num); }
  Sqrt2Ext tail_factor() const {
    Sqrt2Ext q = pow2_half(num - 2L * dim);
    return q / (Sqrt2Ext(1L) - q);
  }
  static Sqrt2Ext to_value(const Rational& x) { return Sqrt2Ext(x); }
  static Sqrt2Ext to_value(double x) { return Sqrt2Ext(Rational(x)); }
};

// Sum of squared masses per level, S_j for j = 0..M.
template <class T>
std::vector<T> corr_level_sums(const BasicMeasureTree<T>& tree) {
  std::vector<T> s(static_cast<std::size_t>(tree.depth()) + 1, T(0));
  for (int m = 0; m <= tree.depth(); ++m) {
    T acc(0);
    for (const auto& [k, v] : tree.level(m)) acc += v * v;
    s[static_cast<std::size_t>(m)] = acc;
  }
  return s;
}

// Correlation profile T_j = 2^{s j} sum_{Q in D_j} mu(Q)^2 for j = 1..M.
template <class Exp, class T>
std::vector<typename Exp::value_type> correlation_profile(const BasicMeasureTree<T>& tree,
                                                          const Exp& e) {
  auto s = corr_level_sums(tree);
  std::vector<typename Exp::value_type> out;
  out.reserve(s.size() - 1);
  for (std::size_t j = 1; j < s.size(); ++j)
    out.push_back(e.pow_s(static_cast<long>(j)) * Exp::to_value(s[j]));
  return out;
}

namespace detail {

template <class Exp>
typename Exp::value_type energy_from_sums(
    const std::vector<typename Exp::value_type>& terms,
    typename Exp::value_type total_sq, const Exp& e) {
  using V = typename Exp::value_type;
  V acc = V(0);
  for (const auto& t : terms) acc += t;
  // T_0 = total^2 anchors the tail when the discretization depth is zero.
  const V& last = terms.empty() ? total_sq : terms.back();
  acc += last * e.tail_factor();
  return total_sq + e.one_minus_pow_neg_s() * acc;
}

}  // namespace detail

// Dyadic s-energy of the discretization mu^(M) at the tree's own depth:
//   total^2 + (1 - 2^{-s}) * (sum_{j<=M} T_j + T_M * 2^{s-d}/(1 - 2^{s-d})).
// The closed-form tail accounts exactly for all levels below M, where the
// discretized measure spreads uniformly. For a probability measure the
// leading term is 1.
template <class Exp, class T>
typename Exp::value_type dyadic_energy(const BasicMeasureTree<T>& tree, const Exp& e) {
  using V = typename Exp::value_type;
  auto terms = correlation_profile(tree, e);
  V tot = Exp::to_value(tree.total());
  return detail::energy_from_sums(terms, tot * tot, e);
}

inline double dyadic_energy(const MeasureTree& tree, double s) {
  return dyadic_energy(tree, FloatExponent(s, tree.dim()));
}

// Dyadic s-energy of mu^{Q,(r)}, the discretization at relative depth r of
// the renormalized measure on Q, computed in place from the subtree sums.
template <class Exp, class T>
typename Exp::value_type local_discretized_energy(const BasicMeasureTree<T>& tree,
                                                  const CubeIndex& q, int rel_depth,
                                                  const Exp& e) {
  using V = typename Exp::value_type;
  if (q.level + rel_depth > tree.depth())
    throw resolution_error("local_discretized_energy: relative depth exceeds tree");
  T mq = tree.mass(q);
  if (mq == T(0)) throw empty_restriction_error("local_discretized_energy: zero-mass cube");
  std::vector<V> terms;
  terms.reserve(static_cast<std::size_t>(rel_depth));
  T mq_sq = mq * mq;
  for (int r = 1; r <= rel_depth; ++r) {
    auto [b, end] = tree.descendant_range(q, r);
    const auto& lv = tree.level(q.level + r);
    T acc(0);
    for (std::size_t i = b; i < end; ++i) acc += lv[i].second * lv[i].second;
    terms.push_back(e.pow_s(r) * Exp::to_value(acc / mq_sq));
  }
  return detail::energy_from_sums(terms, V(1L), e);
}

// One block of the multi-scale decomposition:
//   B_j = 2^{s m_j} sum_{Q in D_{m_j}} mu(Q)^2 * CorrSum(mu^Q, d_j),
// where CorrSum(nu, n) = sum_{i<=n} 2^{s i} sum_{Q'} nu(Q')^2. Computed the
// definition way, by renormalizing each cube's subtree; the telescoping
// identity sum_j B_j = sum_k T_k is what the tests check against.
template <class Exp, class T>
std::vector<typename Exp::value_type> block_decomposition(const BasicMeasureTree<T>& tree,
                                                          const Exp& e,
                                                          const ScaleSchedule& sched) {
  using V = typename Exp::value_type;
  if (sched.finest() > tree.depth())
    throw resolution_error("block_decomposition: schedule exceeds tree depth");

  std::vector<V> blocks;
  blocks.reserve(static_cast<std::size_t>(sched.k()));
  int d = tree.dim();
  for (int j = 0; j < sched.k(); ++j) {
    int mj = sched.m(j);
    int dj = sched.gap(j);
    V bj = V(0);
    for (const auto& [qk, qm] : tree.level(mj)) {
      if (qm == T(0)) continue;
      T qm_sq = qm * qm;
      V corr = V(0);
      for (int i = 1; i <= dj; ++i) {
        const auto& lv = tree.level(mj + i);
        std::uint64_t lo = qk << (d * i);
        std::uint64_t hi = (qk + 1) << (d * i);
        auto cmp = [](const auto& kv, std::uint64_t k) { return kv.first < k; };
        auto it = std::lower_bound(lv.begin(), lv.end(), lo, cmp);
        T acc(0);
        for (; it != lv.end() && it->first < hi; ++it) acc += it->second * it->second;
        corr += e.pow_s(i) * Exp::to_value(acc / qm_sq);
      }
      bj += e.pow_s(mj) * (Exp::to_value(qm_sq) * corr);
    }
    blocks.push_back(bj);
  }
  return blocks;
}

// ||density of the grid||_2^2 = 2^{dm} sum mu(Q)^2 (exact in rational mode).
template <class T>
T l2_norm_sq(const BasicGridMeasure<T>& grid);

template <>
inline double l2_norm_sq(const BasicGridMeasure<double>& grid) {
  double acc = 0;
  for (const auto& [k, v] : grid.cells()) acc += v * v;
  return std::exp2(static_cast<double>(grid.dim() * grid.level())) * acc;
}

template <>
inline Rational l2_norm_sq(const BasicGridMeasure<Rational>& grid) {
  Rational acc(0);
  for (const auto& [k, v] : grid.cells()) acc += v * v;
  return pow2_rational(static_cast<long>(grid.dim()) * grid.level()) * acc;
}

// Riesz s-energy of the center-atomization of mu^(M); each leaf optionally
// splits into 4^subdiv sub-atoms. Diagonal pairs are replaced by the
// self-energy of the uniform cell against itself, approximated as
// c(s) * mass^2 * 2^{s L} with L the atom level and
//   c(s) = 1 + (1 - 2^{-s}) * 2^{s-d} / (1 - 2^{s-d}),
// the dyadic self-energy of the uniform unit cube (comparable to the
// Euclidean one by the standard two-sided bound).
double euclidean_energy(const MeasureTree& tree, double s, int subdiv);

inline double uniform_cell_self_energy(double s, int dim) {
  double q = std::exp2(s - static_cast<double>(dim));
  return 1.0 + (1.0 - std::exp2(-s)) * q / (1.0 - q);
}

}  // namespace fm
