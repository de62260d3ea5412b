#pragma once

#include <cstdint>

namespace fm::recorded {

// Release-recorded empirical constants and regression values. Each entry was
// produced by the corresponding sweep or pipeline run at the recorded
// parameters before release; the verification suites check against these, so
// any behavioral change shows up as a diff here.

// Projection L2 comparability sweep: 25 beta-model measures (depth 8, seeds
// 1..25, p = 0.55 + 0.015 seed) x 4 angles. Observed [1.1057, 1.3813],
// recorded with headroom.
inline constexpr double kL2RatioLo = 0.8;
inline constexpr double kL2RatioHi = 2.0;

// Marstrand quadrature ratio bracket over the standard 5-measure family at
// gamma in {0.05, 0.2}, depths 6 and 12, 32 angles. Observed
// [0.1121, 0.6477], recorded with headroom.
inline constexpr double kMarstrandLo = 0.04;
inline constexpr double kMarstrandHi = 2.0;

// Linearization constant: max over the generator family x 3 schedules x 2
// pins of (rhs_sum - lhs) / k in the multi-scale entropy bound, separation
// 1/4. Observed 0.4995, recorded with headroom. Zero violations of
// lhs >= rhs - C k are allowed at this C.
inline constexpr double kLinearizationC = 0.75;

// Direction-set exceptional fractions: fail_fraction(j) <= A 2^{-eps d_j}
// over the standard family plus the line measure, eps = 0.3, s = 1.2,
// schedule (0,1,2,4,8) at depth 8. Observed A = 0.0698 (max fail 0.0304);
// recorded with headroom.
inline constexpr double kFailFractionEnvelope = 0.15;

// Flagship pinned-distance experiment (3-branch pattern {0,1,3}, depth 12,
// eps 0.3, t 0.8, 8x8 candidate grid over [-1.1,-0.3]^2, seed 1, 256
// angles): worst qualifying stress-restriction normalized entropy.
inline constexpr double kFlagshipEntropy = 0.831798518497;
inline constexpr double kFlagshipTol = 1e-9;

// Digit-restricted product experiment (depth 12, s = 7/6, same pipeline
// parameters as the flagship): the blocked-digit runs make whole scales
// locally atomic, the square classifier marks them bad, and the verdict at
// t = 0.8 is honestly false at desk scale. Archived as a regression.
inline constexpr double kDigitsEntropy = 0.6235406258709993;
inline constexpr bool kDigitsVerdict = false;

// Vantage regression: 3-branch depth 10, same 8x8 pin grid (tie-break to the
// first candidate when every pin scores full mass).
inline constexpr std::size_t kVantageArgmax = 0;

// Determinism regression: beta model p=0.7 seed 42 depth 8 tree hash.
inline constexpr std::uint64_t kBetaTreeHash = 4671654600078006655ull;

}  // namespace fm::recorded
