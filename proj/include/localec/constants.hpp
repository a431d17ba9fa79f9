#pragma once

namespace localec {

// Implementation constants, measured once and frozen. Verifiers and the
// acceptance suite assert against these exact values.

// Iterated color reduction (linial_color_reduction): the final number of
// colors on a graph of maximum degree D is at most kLinialBeta * max(D,1)^2.
// The reduction ends at q^2 colors for the smallest prime q >= 2D+1, and
// Bertrand gives q <= 2(2D+1), so 4(2D+1)^2 <= 36 D^2 for D >= 1.
inline constexpr int kLinialBeta = 36;

// Round budget for the log*-style routines: color reduction and the path
// 3-colorings finish within kLogStarC * log_star(n) rounds, where
// log_star(n) counts iterated log2 until the value drops to <= 2.
inline constexpr int kLogStarC = 4;

// Path-compression length for the two-part tree decomposition: ell = 20k.
// Large enough that the [k,7k] relabeling of compressed paths always has
// room to repair endpoint labels.
inline constexpr int kCompressPathFactor = 20;

// Two-part decomposition, condition C2: same-label components have tree
// diameter at most kTwoPartDiamC * (k * log2(s) + d + 1). The construction
// gives <= 2*(3d+1) + (2*(ell-1) + 7k) * ceil(log2 s) = 6d+2 + 47k ceil(log2 s).
inline constexpr int kTwoPartDiamC = 60;

// Mixed decomposition requires lambda >= kMixedMinLambdaFactor * k.  The
// removal-round bound log_m(s) additionally needs m = lambda/(2.5k) - 1 >= 2,
// i.e. lambda >= 7.5k; below that the peeling still terminates, just without
// the round guarantee.
inline constexpr int kMixedMinLambdaFactor = 3;

// Contagion depth: tau = ceil(kTauFactor * log_mu(max(log2 n, 2))).
inline constexpr int kTauFactor = 4;

// Smallness budget: greedy distance-2r dominating sets of infected-ball
// components must have size <= kSmallnessC * log2(n).
inline constexpr int kSmallnessC = 8;

// Enumeration cap for exact event probabilities (joint states).
inline constexpr long long kEventEnumCap = 1LL << 24;

// Monte Carlo sample count for the fallback probability estimator.
inline constexpr int kEventMonteCarloSamples = 1000000;

// Subset-enumeration budget for the zero-round sink probabilities.
inline constexpr int kZeroRoundMaxDelta = 14;

// Default number of layers frozen at the top of the layered gadget.
inline constexpr int kFrozenTopLayers = 6;

}  // namespace localec
