#include "fm/family.hpp"

namespace fm {

std::vector<FamilyMember> standard_family(int depth) {
  std::vector<FamilyMember> fam;
  fam.push_back({"uniform", branching_measure_float({0, 1, 2, 3}, depth)});
  fam.push_back({"three-branch", branching_measure_float({0, 1, 3}, depth)});
  fam.push_back({"beta-0.7-s42", beta_model_measure(0.7, depth, 42).to_double()});
  auto digits = digit_restricted_measure(depth, squares_blocked);
  fam.push_back({"digits-product", product_measure(digits, digits).to_double()});
  fam.push_back({"circle-0.3", circle_measure({0.5, 0.5}, 0.3, depth)});
  return fam;
}

ExactMeasureTree random_rational_tree(int dim, int depth, Rng& rng) {
  struct Node {
    std::uint64_t key;
    Rational mass;
  };
  int fanout = 1 << dim;
  std::vector<Node> front{{0, Rational(1)}};
  for (int m = 0; m < depth; ++m) {
    std::vector<Node> next;
    next.reserve(front.size() * 2);
    for (const auto& node : front) {
      // biased toward few children so deep trees stay sparse
      std::uint64_t r = rng.next_below(100);
      int want = r < 50 ? 1 : r < 80 ? 2 : r < 95 ? 3 : 4;
      if (want > fanout) want = fanout;
      // choose distinct children
      int chosen[4];
      int n_chosen = 0;
      while (n_chosen < want) {
        int q = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(fanout)));
        bool dup = false;
        for (int i = 0; i < n_chosen; ++i) dup |= chosen[i] == q;
        if (!dup) chosen[n_chosen++] = q;
      }
      long weights[4];
      long wsum = 0;
      for (int i = 0; i < n_chosen; ++i) {
        weights[i] = 1 + static_cast<long>(rng.next_below(8));
        wsum += weights[i];
      }
      for (int i = 0; i < n_chosen; ++i) {
        Rational share(weights[i], wsum);
        share.canonicalize();
        next.push_back({(node.key << dim) | static_cast<std::uint64_t>(chosen[i]),
                        node.mass * share});
      }
    }
    front = std::move(next);
  }
  SparseLevel<Rational> leaves;
  leaves.reserve(front.size());
  for (auto& n : front) leaves.emplace_back(n.key, std::move(n.mass));
  return ExactMeasureTree::from_leaves(dim, depth, std::move(leaves));
}

MeasureTree mix_trees(const MeasureTree& a, const MeasureTree& b, double t) {
  if (a.dim() != b.dim() || a.depth() != b.depth())
    throw validation_error("mix_trees: shape mismatch");
  SparseLevel<double> leaves = a.level(a.depth());
  for (auto& kv : leaves) kv.second *= t;
  for (const auto& [k, v] : b.level(b.depth())) leaves.emplace_back(k, (1.0 - t) * v);
  return MeasureTree::from_leaves(a.dim(), a.depth(), std::move(leaves));
}

}  // namespace fm
