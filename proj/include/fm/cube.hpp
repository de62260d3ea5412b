#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "fm/errors.hpp"

namespace fm {

// Deepest level representable in a 64-bit interleaved key.
inline constexpr int kMaxLevel1D = 56;
inline constexpr int kMaxLevel2D = 28;

inline int max_level(int dim) { return dim == 1 ? kMaxLevel1D : kMaxLevel2D; }

namespace detail {

// Spread the low 32 bits of x so bit i lands at position 2i.
inline std::uint64_t interleave_zeros(std::uint64_t x) {
  x &= 0xFFFFFFFFull;
  x = (x | (x << 16)) & 0x0000FFFF0000FFFFull;
  x = (x | (x << 8)) & 0x00FF00FF00FF00FFull;
  x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0Full;
  x = (x | (x << 2)) & 0x3333333333333333ull;
  x = (x | (x << 1)) & 0x5555555555555555ull;
  return x;
}

inline std::uint64_t compact_bits(std::uint64_t x) {
  x &= 0x5555555555555555ull;
  x = (x | (x >> 1)) & 0x3333333333333333ull;
  x = (x | (x >> 2)) & 0x0F0F0F0F0F0F0F0Full;
  x = (x | (x >> 4)) & 0x00FF00FF00FF00FFull;
  x = (x | (x >> 8)) & 0x0000FFFF0000FFFFull;
  x = (x | (x >> 16)) & 0x00000000FFFFFFFFull;
  return x;
}

}  // namespace detail

// Morton key of a cell: d=1 the coordinate itself, d=2 bit-interleaved with
// the x bit in the even positions. Keys at one level sort in Z-order, and the
// descendants of key k at r levels below occupy [k << dr, (k+1) << dr).
inline std::uint64_t morton_key(int dim, std::uint64_t x, std::uint64_t y = 0) {
  if (dim == 1) return x;
  return detail::interleave_zeros(x) | (detail::interleave_zeros(y) << 1);
}

inline std::uint64_t morton_x(int dim, std::uint64_t key) {
  return dim == 1 ? key : detail::compact_bits(key);
}

inline std::uint64_t morton_y(int dim, std::uint64_t key) {
  return dim == 1 ? 0 : detail::compact_bits(key >> 1);
}

// A half-open dyadic cube [j 2^-m, (j+1) 2^-m)^dim addressed by
// (dimension, level, integer coordinates).
struct CubeIndex {
  int dim = 2;
  int level = 0;
  std::array<std::uint64_t, 2> coords{0, 0};

  CubeIndex() = default;
  CubeIndex(int d, int m, std::uint64_t x, std::uint64_t y = 0)
      : dim(d), level(m), coords{x, y} {
    if (d != 1 && d != 2) throw validation_error("CubeIndex: dim must be 1 or 2");
    if (m < 0 || m > max_level(d)) throw validation_error("CubeIndex: level out of range");
    std::uint64_t n = (m == 0) ? 1 : (std::uint64_t{1} << m);
    for (int i = 0; i < d; ++i) {
      if (coords[static_cast<std::size_t>(i)] >= n)
        throw validation_error("CubeIndex: coordinate out of range for level");
    }
    if (d == 1 && y != 0) throw validation_error("CubeIndex: 1d cube has one coordinate");
  }

  static CubeIndex from_key(int dim, int level, std::uint64_t key) {
    return CubeIndex(dim, level, morton_x(dim, key), morton_y(dim, key));
  }

  std::uint64_t key() const { return morton_key(dim, coords[0], coords[1]); }

  CubeIndex parent() const {
    if (level == 0) throw validation_error("CubeIndex: root has no parent");
    return CubeIndex(dim, level - 1, coords[0] >> 1, coords[1] >> 1);
  }

  // Child q: low x bit = q & 1, low y bit = q >> 1 (so in 2d, 0 is the
  // lower-left quadrant and 3 the upper-right, y increasing upward).
  CubeIndex child(int q) const {
    if (q < 0 || q >= (1 << dim)) throw validation_error("CubeIndex: bad child index");
    return CubeIndex(dim, level + 1, (coords[0] << 1) | static_cast<std::uint64_t>(q & 1),
                     dim == 2 ? (coords[1] << 1) | static_cast<std::uint64_t>(q >> 1) : 0);
  }

  double side() const { return 1.0 / static_cast<double>(std::uint64_t{1} << level); }

  // Lower corner and center in [0,1)^dim.
  std::array<double, 2> lower() const {
    double h = 1.0 / static_cast<double>(std::uint64_t{1} << level);
    return {static_cast<double>(coords[0]) * h, static_cast<double>(coords[1]) * h};
  }
  std::array<double, 2> center() const {
    double h = 1.0 / static_cast<double>(std::uint64_t{1} << level);
    return {(static_cast<double>(coords[0]) + 0.5) * h,
            (static_cast<double>(coords[1]) + 0.5) * h};
  }

  friend bool operator==(const CubeIndex& a, const CubeIndex& b) {
    return a.dim == b.dim && a.level == b.level && a.coords == b.coords;
  }

  std::string to_string() const {
    std::string s = "D" + std::to_string(level) + "(" + std::to_string(coords[0]);
    if (dim == 2) s += "," + std::to_string(coords[1]);
    return s + ")";
  }
};

// Level of the deepest common dyadic ancestor of two level-m keys; this is
// |x ^ y| for the cell centers, the quantity the dyadic metric is built on.
inline int common_ancestor_level(int dim, int level, std::uint64_t ka, std::uint64_t kb) {
  if (ka == kb) return level;
  std::uint64_t x = ka ^ kb;
  int bits = 64 - __builtin_clzll(x);           // highest differing bit, 1-based
  int r = (bits + dim - 1) / dim;               // levels of separation
  return level - r;
}

}  // namespace fm
