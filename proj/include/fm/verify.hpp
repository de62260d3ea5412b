#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fm::verify {

struct Check {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Options {
  std::uint64_t seed = 7;
  bool small = false;  // reduced counts for quick runs
  int count = 0;       // override for the bulk case counts (0 = per size)
};

// Exact identity suite (rational mode): energy pair-sum identity, block
// telescoping, discretization scaling law, restriction monotonicity.
std::vector<Check> identities(const Options& opt);

// Inequality suite (float mode): entropy bounds and properties, projection
// comparability, Sobolev oracles, Marstrand brackets, disintegration.
std::vector<Check> inequalities(const Options& opt);

// Pipeline suite: pinned-distance machinery, degenerate cases, flagship
// regression, square accounting, direction machinery, determinism.
std::vector<Check> pipeline(const Options& opt);

inline bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

}  // namespace fm::verify
