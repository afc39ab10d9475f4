#pragma once

#include "metricforge/space.hpp"
#include "metricforge/triplets.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace metricforge {

/// How cross distances are chosen when two spaces are glued: max diameter
/// divided by 1+K (STRONG) or 2K (B, RPI).
enum class BridgeMode { STRONG, B, RPI };

std::string_view to_string(BridgeMode mode);
BridgeMode parse_bridge_mode(std::string_view text);

double bridge_denominator(BridgeMode mode, double K);

/// Axiom whose relaxation constant a bridge mode preserves.
Axiom bridge_axiom(BridgeMode mode);

/// Disjoint union of s1 and s2 (s1's points first) with every cross distance
/// equal to max(diam s1, diam s2) / bridge_denominator(mode, K). Both inputs
/// must already satisfy the mode's axiom at K; the result then does too, and
/// its diameter is the larger input diameter.
FiniteSemimetricSpace concatenate(const FiniteSemimetricSpace& s1, const FiniteSemimetricSpace& s2, double K,
                                  BridgeMode mode, double tol = kDefaultTol);

/// Left fold of concatenate over the blocks; a single block is returned as is.
FiniteSemimetricSpace chain_concatenate(std::span<const FiniteSemimetricSpace> blocks, double K, BridgeMode mode,
                                        double tol = kDefaultTol);

/// Cycle space x1..xn realizing the polygon: d(x1,xn) = a1,
/// d(x_{i-1},x_i) = a_i for 2 <= i <= n, and every non-adjacent pair at the
/// shorter of the two perimeter walks. `entries` must already be sorted
/// nonincreasing, have length >= 3 and be strictly positive.
FiniteSemimetricSpace implement_polygon(std::span<const double> entries);
FiniteSemimetricSpace implement_polygon(const PolygonTuple& polygon);

/// Labels x1..xn used by implement_polygon.
std::vector<std::string> polygon_labels(std::size_t n);

/// Points <prefix>1, <prefix>2, <prefix>3 with d(1,2)=a, d(2,3)=b, d(1,3)=c.
FiniteSemimetricSpace three_point_space(double a, double b, double c, std::string_view prefix = "");

/// A seeded chain of `blocks` three-point spaces, each a strong b-metric
/// with constant in (1, k_target] that is not a metric, glued in STRONG
/// mode at K = k_target. The result satisfies (S) at k_target and fails (M).
FiniteSemimetricSpace generate_strong_space(int blocks, double k_target, std::uint64_t seed);

} // namespace metricforge
