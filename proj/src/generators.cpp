#include "fm/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "fm/rng.hpp"

namespace fm {

namespace {

std::vector<std::uint64_t> branching_keys(const std::vector<int>& pattern, int depth) {
  if (pattern.empty()) throw validation_error("branching_measure: empty pattern");
  std::set<int> uniq(pattern.begin(), pattern.end());
  for (int q : uniq) {
    if (q < 0 || q > 3) throw validation_error("branching_measure: pattern entries in 0..3");
  }
  std::vector<std::uint64_t> keys{0};
  for (int m = 0; m < depth; ++m) {
    std::vector<std::uint64_t> next;
    next.reserve(keys.size() * uniq.size());
    for (std::uint64_t k : keys) {
      for (int q : uniq) next.push_back((k << 2) | static_cast<std::uint64_t>(q));
    }
    keys = std::move(next);
  }
  return keys;
}

}  // namespace

ExactMeasureTree branching_measure(const std::vector<int>& pattern, int depth) {
  auto keys = branching_keys(pattern, depth);
  Rational share = Rational(1) / Rational(static_cast<long>(keys.size()));
  SparseLevel<Rational> leaves;
  leaves.reserve(keys.size());
  for (std::uint64_t k : keys) leaves.emplace_back(k, share);
  return ExactMeasureTree::from_leaves(2, depth, std::move(leaves));
}

MeasureTree branching_measure_float(const std::vector<int>& pattern, int depth) {
  auto keys = branching_keys(pattern, depth);
  double share = 1.0 / static_cast<double>(keys.size());
  SparseLevel<double> leaves;
  leaves.reserve(keys.size());
  for (std::uint64_t k : keys) leaves.emplace_back(k, share);
  return MeasureTree::from_leaves(2, depth, std::move(leaves));
}

bool squares_blocked(int n) {
  if (n < 1) return false;
  auto r = static_cast<int>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r % 2 == 0;
}

ExactMeasureTree digit_restricted_measure(int depth,
                                          const std::function<bool(int)>& blocked) {
  if (depth < 1) throw validation_error("digit_restricted_measure: depth must be >= 1");
  std::vector<std::uint64_t> keys{0};
  int free_levels = 0;
  for (int n = 1; n <= depth; ++n) {
    bool blk = blocked(n);
    if (!blk) ++free_levels;
    std::vector<std::uint64_t> next;
    next.reserve(keys.size() * (blk ? 1 : 2));
    for (std::uint64_t k : keys) {
      next.push_back(k << 1);
      if (!blk) next.push_back((k << 1) | 1);
    }
    keys = std::move(next);
  }
  Rational share = pow2_rational(-free_levels);
  SparseLevel<Rational> leaves;
  leaves.reserve(keys.size());
  for (std::uint64_t k : keys) leaves.emplace_back(k, share);
  return ExactMeasureTree::from_leaves(1, depth, std::move(leaves));
}

ExactMeasureTree product_measure(const ExactMeasureTree& x, const ExactMeasureTree& y) {
  if (x.dim() != 1 || y.dim() != 1)
    throw validation_error("product_measure: factors must be 1d");
  if (x.depth() != y.depth())
    throw validation_error("product_measure: factors must share depth");
  const auto& lx = x.level(x.depth());
  const auto& ly = y.level(y.depth());
  SparseLevel<Rational> leaves;
  leaves.reserve(lx.size() * ly.size());
  for (const auto& [kx, mx] : lx) {
    for (const auto& [ky, my] : ly) {
      leaves.emplace_back(morton_key(2, kx, ky), mx * my);
    }
  }
  return ExactMeasureTree::from_leaves(2, x.depth(), std::move(leaves));
}

ExactMeasureTree beta_model_measure(double p, int depth, std::uint64_t seed, int dim) {
  if (!(p > 0.0) || p > 1.0) throw validation_error("beta_model_measure: p must be in (0,1]");
  if (dim != 1 && dim != 2) throw validation_error("beta_model_measure: dim must be 1 or 2");
  std::uint64_t thr = bernoulli_threshold(p);
  int fanout = 1 << dim;
  Rng rng(seed);

  for (int attempt = 0; attempt < 100; ++attempt) {
    // (key, mass) front at the current level; dead nodes drop out.
    SparseLevel<Rational> front{{0, Rational(1)}};
    for (int m = 0; m < depth && !front.empty(); ++m) {
      SparseLevel<Rational> next;
      next.reserve(front.size() * static_cast<std::size_t>(fanout));
      for (const auto& [k, mass] : front) {
        int alive[4];
        int count = 0;
        for (int q = 0; q < fanout; ++q) {
          if (rng.bernoulli_fixed(thr)) alive[count++] = q;
        }
        if (count == 0) continue;
        Rational share = mass / count;
        for (int i = 0; i < count; ++i) {
          next.emplace_back((k << dim) | static_cast<std::uint64_t>(alive[i]), share);
        }
      }
      front = std::move(next);
    }
    if (!front.empty()) {
      auto tree = ExactMeasureTree::from_leaves(dim, depth, std::move(front));
      return tree.normalized() ? tree : normalize(tree);
    }
  }
  throw validation_error("beta_model_measure: extinct after 100 retries");
}

namespace {

MeasureTree polyline_measure(const std::vector<std::array<double, 2>>& pts, int level,
                             const char* what) {
  double h = std::exp2(-level);
  SparseLevel<double> cellmass;
  double total_len = 0;
  std::vector<std::pair<std::uint64_t, double>> raw;
  raw.reserve(pts.size());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double mx = 0.5 * (pts[i][0] + pts[i + 1][0]);
    double my = 0.5 * (pts[i][1] + pts[i + 1][1]);
    double len = std::hypot(pts[i + 1][0] - pts[i][0], pts[i + 1][1] - pts[i][1]);
    if (mx < 0 || mx >= 1 || my < 0 || my >= 1)
      throw validation_error(std::string(what) + ": escapes the unit square");
    auto cx = static_cast<std::uint64_t>(mx / h);
    auto cy = static_cast<std::uint64_t>(my / h);
    raw.emplace_back(morton_key(2, cx, cy), len);
    total_len += len;
  }
  cellmass.reserve(raw.size());
  for (auto& [k, len] : raw) cellmass.emplace_back(k, len / total_len);
  return MeasureTree::from_leaves(2, level, std::move(cellmass));
}

}  // namespace

MeasureTree circle_measure(std::array<double, 2> center, double radius, int level) {
  if (radius <= 0) throw validation_error("circle_measure: radius must be positive");
  if (center[0] - radius < 0 || center[0] + radius >= 1 || center[1] - radius < 0 ||
      center[1] + radius >= 1)
    throw validation_error("circle_measure: circle escapes the unit square");
  std::size_t n = std::size_t{1} << (level + 4);
  std::vector<std::array<double, 2>> pts(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    double t = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n);
    pts[i] = {center[0] + radius * std::cos(t), center[1] + radius * std::sin(t)};
  }
  return polyline_measure(pts, level, "circle_measure");
}

MeasureTree line_segment_measure(std::array<double, 2> a, std::array<double, 2> b,
                                 int level) {
  std::size_t n = std::size_t{1} << (level + 4);
  std::vector<std::array<double, 2>> pts(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    double t = static_cast<double>(i) / static_cast<double>(n);
    pts[i] = {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
  }
  return polyline_measure(pts, level, "line_segment_measure");
}

bool GeneratorSpec::exact_capable() const {
  return kind == "branching" || kind == "digits" || kind == "beta" || kind == "product";
}

namespace {

std::function<bool(int)> blocked_predicate(const GeneratorSpec& spec) {
  if (spec.blocked == "squares") return squares_blocked;
  if (spec.blocked == "never") return [](int) { return false; };
  if (spec.blocked == "always") return [](int) { return true; };
  if (spec.blocked == "list") {
    std::set<int> s(spec.blocked_list.begin(), spec.blocked_list.end());
    return [s](int n) { return s.count(n) > 0; };
  }
  throw validation_error("generator: unknown blocked predicate '" + spec.blocked + "'");
}

}  // namespace

ExactMeasureTree generate_exact(const GeneratorSpec& spec) {
  if (spec.kind == "branching") return branching_measure(spec.pattern, spec.depth);
  if (spec.kind == "beta") return beta_model_measure(spec.p, spec.depth, spec.seed, spec.dim);
  if (spec.kind == "digits" || spec.kind == "product") {
    auto blocked = blocked_predicate(spec);
    auto one_d = digit_restricted_measure(spec.depth, blocked);
    bool want_2d = spec.kind == "product" || spec.dim == 2;
    return want_2d ? product_measure(one_d, one_d) : one_d;
  }
  throw validation_error("generator: kind '" + spec.kind + "' has no exact form");
}

MeasureTree generate_float(const GeneratorSpec& spec) {
  if (spec.kind == "circle") return circle_measure(spec.center, spec.radius, spec.depth);
  if (spec.kind == "line") return line_segment_measure(spec.line_a, spec.line_b, spec.depth);
  return generate_exact(spec).to_double();
}

std::string GeneratorSpec::to_json_string() const {
  nlohmann::ordered_json j;
  j["kind"] = kind;
  j["depth"] = depth;
  j["dim"] = dim;
  if (kind == "branching") j["pattern"] = pattern;
  if (kind == "digits" || kind == "product") {
    j["blocked"] = blocked;
    if (blocked == "list") j["blocked_list"] = blocked_list;
  }
  if (kind == "beta") {
    j["p"] = p;
    j["seed"] = seed;
  }
  if (kind == "circle") {
    j["center"] = center;
    j["radius"] = radius;
  }
  if (kind == "line") {
    j["a"] = line_a;
    j["b"] = line_b;
  }
  return j.dump();
}

GeneratorSpec GeneratorSpec::from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw format_error(std::string("generator spec: ") + e.what());
  }
  GeneratorSpec s;
  try {
    s.kind = j.at("kind").get<std::string>();
    s.depth = j.value("depth", s.depth);
    s.dim = j.value("dim", s.dim);
    if (j.contains("pattern")) s.pattern = j["pattern"].get<std::vector<int>>();
    s.blocked = j.value("blocked", s.blocked);
    if (j.contains("blocked_list"))
      s.blocked_list = j["blocked_list"].get<std::vector<int>>();
    s.p = j.value("p", s.p);
    s.seed = j.value("seed", s.seed);
    if (j.contains("center")) s.center = j["center"].get<std::array<double, 2>>();
    s.radius = j.value("radius", s.radius);
    if (j.contains("a")) s.line_a = j["a"].get<std::array<double, 2>>();
    if (j.contains("b")) s.line_b = j["b"].get<std::array<double, 2>>();
  } catch (const nlohmann::json::exception& e) {
    throw format_error(std::string("generator spec: ") + e.what());
  }
  return s;
}

}  // namespace fm
