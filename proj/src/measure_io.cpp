#include "fm/measure_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

namespace fm {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::int64_t kExactDoubleLimit = std::int64_t{1} << 53;

json integer_entry(const mpz_class& z) {
  if (z.fits_slong_p()) {
    long v = z.get_si();
    if (v < kExactDoubleLimit && v > -kExactDoubleLimit) return json(v);
  }
  return json(z.get_str());
}

mpz_class integer_from(const json& j, const char* what) {
  if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw format_error(std::string("measure file: bad ") + what);
}

ordered_json header(int dim, int depth, const char* mode) {
  ordered_json j;
  j["format"] = "fractalmeter-measure";
  j["version"] = 1;
  j["dim"] = dim;
  j["depth"] = depth;
  j["mode"] = mode;
  return j;
}

void append_coords(json& entry, int dim, int depth, std::uint64_t key) {
  entry.push_back(morton_x(dim, key));
  if (dim == 2) entry.push_back(morton_y(dim, key));
  (void)depth;
}

void write_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw format_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
}

}  // namespace

void save_measure(const std::string& path, const ExactMeasureTree& tree) {
  ordered_json j = header(tree.dim(), tree.depth(), "rational");
  json leaves = json::array();
  for (const auto& [k, v] : tree.level(tree.depth())) {
    json entry = json::array();
    entry.push_back(tree.depth());
    append_coords(entry, tree.dim(), tree.depth(), k);
    entry.push_back(integer_entry(v.get_num()));
    entry.push_back(integer_entry(v.get_den()));
    leaves.push_back(std::move(entry));
  }
  j["leaves"] = std::move(leaves);
  write_file(path, j);
}

void save_measure(const std::string& path, const MeasureTree& tree) {
  ordered_json j = header(tree.dim(), tree.depth(), "float");
  json leaves = json::array();
  for (const auto& [k, v] : tree.level(tree.depth())) {
    json entry = json::array();
    entry.push_back(tree.depth());
    append_coords(entry, tree.dim(), tree.depth(), k);
    entry.push_back(v);
    leaves.push_back(std::move(entry));
  }
  j["leaves"] = std::move(leaves);
  write_file(path, j);
}

LoadedMeasure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw format_error(std::string("measure file: ") + e.what());
  }
  if (j.value("format", "") != "fractalmeter-measure")
    throw format_error("measure file: unrecognized format field");
  int dim = j.value("dim", 0);
  int depth = j.value("depth", -1);
  std::string mode = j.value("mode", "");
  if (dim != 1 && dim != 2) throw format_error("measure file: dim must be 1 or 2");
  if (depth < 0) throw format_error("measure file: missing depth");
  if (!j.contains("leaves") || !j["leaves"].is_array())
    throw format_error("measure file: missing leaves array");

  std::size_t coord_count = static_cast<std::size_t>(dim);
  LoadedMeasure out;
  try {
    if (mode == "rational") {
      SparseLevel<Rational> leaves;
      for (const auto& entry : j["leaves"]) {
        if (!entry.is_array() || entry.size() != 2 + coord_count + 1)
          throw format_error("measure file: malformed rational leaf entry");
        if (entry[0].get<int>() != depth)
          throw format_error("measure file: leaf level must equal depth");
        std::uint64_t x = entry[1].get<std::uint64_t>();
        std::uint64_t y = dim == 2 ? entry[2].get<std::uint64_t>() : 0;
        mpz_class num = integer_from(entry[1 + coord_count], "numerator");
        mpz_class den = integer_from(entry[2 + coord_count], "denominator");
        if (den == 0) throw format_error("measure file: zero denominator");
        Rational q(num, den);
        q.canonicalize();
        leaves.emplace_back(morton_key(dim, x, y), q);
      }
      out.mode = NumericMode::Rational;
      out.exact = ExactMeasureTree::from_leaves(dim, depth, std::move(leaves));
      if (!out.exact->consistent()) throw format_error("measure file: inconsistent tree");
    } else if (mode == "float") {
      SparseLevel<double> leaves;
      for (const auto& entry : j["leaves"]) {
        if (!entry.is_array() || entry.size() != 2 + coord_count)
          throw format_error("measure file: malformed float leaf entry");
        if (entry[0].get<int>() != depth)
          throw format_error("measure file: leaf level must equal depth");
        std::uint64_t x = entry[1].get<std::uint64_t>();
        std::uint64_t y = dim == 2 ? entry[2].get<std::uint64_t>() : 0;
        leaves.emplace_back(morton_key(dim, x, y), entry[1 + coord_count].get<double>());
      }
      out.mode = NumericMode::Float64;
      out.flt = MeasureTree::from_leaves(dim, depth, std::move(leaves));
      if (!out.flt->consistent()) throw format_error("measure file: inconsistent tree");
    } else {
      throw format_error("measure file: mode must be 'rational' or 'float'");
    }
  } catch (const json::exception& e) {
    throw format_error(std::string("measure file: ") + e.what());
  }
  return out;
}

namespace {

struct Fnv64 {
  std::uint64_t h = 0xcbf29ce484222325ull;
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ull;
    }
  }
  void str(const std::string& s) { bytes(s.data(), s.size()); }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
};

}  // namespace

std::uint64_t tree_hash(const ExactMeasureTree& tree) {
  Fnv64 f;
  f.u64(static_cast<std::uint64_t>(tree.dim()));
  f.u64(static_cast<std::uint64_t>(tree.depth()));
  for (const auto& [k, v] : tree.level(tree.depth())) {
    f.u64(k);
    f.str(v.get_str());
  }
  return f.h;
}

std::uint64_t tree_hash(const MeasureTree& tree) {
  Fnv64 f;
  f.u64(static_cast<std::uint64_t>(tree.dim()));
  f.u64(static_cast<std::uint64_t>(tree.depth()));
  char buf[40];
  for (const auto& [k, v] : tree.level(tree.depth())) {
    f.u64(k);
    std::snprintf(buf, sizeof buf, "%.17a", v);
    f.str(buf);
  }
  return f.h;
}

}  // namespace fm
