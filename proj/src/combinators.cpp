#include "metricforge/combinators.hpp"

#include "metricforge/errors.hpp"
#include "metricforge/numbers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace metricforge {

std::string_view to_string(BridgeMode mode) {
    switch (mode) {
    case BridgeMode::STRONG: return "STRONG";
    case BridgeMode::B: return "B";
    case BridgeMode::RPI: return "RPI";
    }
    return "?";
}

BridgeMode parse_bridge_mode(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    if (upper == "STRONG" || upper == "S") return BridgeMode::STRONG;
    if (upper == "B") return BridgeMode::B;
    if (upper == "RPI" || upper == "P") return BridgeMode::RPI;
    throw PreconditionError("unknown bridge mode '" + std::string(text) + "' (expected strong, b or rpi)");
}

double bridge_denominator(BridgeMode mode, double K) { return mode == BridgeMode::STRONG ? 1.0 + K : 2.0 * K; }

Axiom bridge_axiom(BridgeMode mode) {
    switch (mode) {
    case BridgeMode::STRONG: return Axiom::S;
    case BridgeMode::B: return Axiom::B;
    case BridgeMode::RPI: return Axiom::P;
    }
    return Axiom::B;
}

namespace {

double mode_constant(const FiniteSemimetricSpace& s, BridgeMode mode) {
    switch (mode) {
    case BridgeMode::STRONG: return min_strong_constant(s);
    case BridgeMode::B: return min_b_constant(s);
    case BridgeMode::RPI: return min_rpi_constant(s);
    }
    return 0.0;
}

void check_constant(const FiniteSemimetricSpace& s, double K, BridgeMode mode, double tol, std::string_view which) {
    const double raw = mode_constant(s, mode);
    if (raw > K * (1.0 + tol))
        throw ConstantTooSmallError("K = " + format_number(K) + " is below the " + std::string(to_string(mode)) +
                                    " constant " + format_number(raw) + " of " + std::string(which));
}

void check_k(double K) {
    if (!std::isfinite(K) || K < 1.0) throw PreconditionError("relaxation constant K must be finite and >= 1");
}

FiniteSemimetricSpace glue(const FiniteSemimetricSpace& s1, const FiniteSemimetricSpace& s2, double K,
                           BridgeMode mode) {
    std::set<std::string_view> names(s1.labels().begin(), s1.labels().end());
    for (const auto& label : s2.labels())
        if (names.count(label)) throw LabelCollisionError("label '" + label + "' appears in both spaces");
    const std::size_t n1 = s1.size(), n2 = s2.size(), n = n1 + n2;
    if (n < 3) throw TooSmallError("concatenation needs at least 3 points in total");

    const double bridge = std::max(s1.diameter(), s2.diameter()) / bridge_denominator(mode, K);
    DistanceMatrix m(n, bridge);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) m(i, j) = s1.distance(i, j);
    for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j) m(n1 + i, n1 + j) = s2.distance(i, j);

    std::vector<std::string> labels = s1.labels();
    labels.insert(labels.end(), s2.labels().begin(), s2.labels().end());
    return FiniteSemimetricSpace::validate(std::move(labels), std::move(m));
}

} // namespace

FiniteSemimetricSpace concatenate(const FiniteSemimetricSpace& s1, const FiniteSemimetricSpace& s2, double K,
                                  BridgeMode mode, double tol) {
    check_k(K);
    check_constant(s1, K, mode, tol, "the first space");
    check_constant(s2, K, mode, tol, "the second space");
    return glue(s1, s2, K, mode);
}

FiniteSemimetricSpace chain_concatenate(std::span<const FiniteSemimetricSpace> blocks, double K, BridgeMode mode,
                                        double tol) {
    check_k(K);
    if (blocks.empty()) throw PreconditionError("chain_concatenate needs at least one block");
    for (std::size_t i = 0; i < blocks.size(); ++i) check_constant(blocks[i], K, mode, tol, "block " + std::to_string(i));
    // Each partial union satisfies the axiom at K by construction, so only the
    // blocks are checked.
    FiniteSemimetricSpace acc = blocks[0];
    for (std::size_t i = 1; i < blocks.size(); ++i) acc = glue(acc, blocks[i], K, mode);
    return acc;
}

std::vector<std::string> polygon_labels(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("x" + std::to_string(i));
    return labels;
}

FiniteSemimetricSpace implement_polygon(std::span<const double> entries) {
    const std::size_t n = entries.size();
    if (n < 3) throw DegenerateError("a polygon needs at least 3 sides, got " + std::to_string(n));
    for (double a : entries)
        if (!std::isfinite(a) || !(a > 0.0)) throw DegenerateError("polygon sides must be positive, got " + format_number(a));
    for (std::size_t i = 1; i < n; ++i)
        if (entries[i] > entries[i - 1]) throw NotSortedError("polygon sides must be sorted nonincreasing");

    // Cycle x1 - x2 - ... - xn - x1. Edge k (0-based) joins x_{k+1} and x_{k+2}
    // with length entries[k+1]; the closing edge xn - x1 has length entries[0].
    // prefix[k] = walk length from x1 to x_{k+1} along the non-closing edges.
    std::vector<double> prefix(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) prefix[k] = prefix[k - 1] + entries[k];

    DistanceMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d;
            if (j == i + 1) d = entries[j];
            else if (i == 0 && j == n - 1) d = entries[0];
            else {
                const double forward = prefix[j] - prefix[i];
                const double backward = (prefix[n - 1] - prefix[j]) + entries[0] + prefix[i];
                d = std::min(forward, backward);
            }
            m(i, j) = m(j, i) = d;
        }
    return FiniteSemimetricSpace::validate(polygon_labels(n), std::move(m));
}

FiniteSemimetricSpace implement_polygon(const PolygonTuple& polygon) { return implement_polygon(polygon.entries()); }

FiniteSemimetricSpace three_point_space(double a, double b, double c, std::string_view prefix) {
    for (double v : {a, b, c})
        if (!std::isfinite(v) || !(v > 0.0))
            throw DegenerateError("three-point distances must be positive, got " + format_number(v));
    const std::string p(prefix);
    return FiniteSemimetricSpace::validate({p + "1", p + "2", p + "3"}, {{0.0, a, c}, {a, 0.0, b}, {c, b, 0.0}});
}

namespace {

// 53 random bits mapped to [0, 1); independent of the standard library's
// distribution implementations so seeds reproduce across toolchains.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

FiniteSemimetricSpace generate_strong_space(int blocks, double k_target, std::uint64_t seed) {
    if (blocks < 1) throw PreconditionError("generate_strong_space needs at least one block");
    if (!std::isfinite(k_target) || !(k_target > 1.0)) throw PreconditionError("k_target must be finite and > 1");

    constexpr int kMaxAttempts = 1000;
    std::mt19937_64 rng(seed);
    std::vector<FiniteSemimetricSpace> parts;
    for (int block = 1; block <= blocks; ++block) {
        bool placed = false;
        for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
            // Triplet (a, a/rho, a/rho): strong constant rho - 1, b constant rho / 2.
            // rho in (2, k_target + 1] keeps the first in (1, k_target] and the
            // second above 1.
            const double a = 1.0 + unit_uniform(rng);
            const double rho = (k_target + 1.0) - unit_uniform(rng) * (k_target - 1.0);
            const double side = a / rho;
            const Triplet t(a, side, side);
            const double strong = min_constant(t, TripletKind::SKTT);
            if (!(strong > 1.0) || strong > k_target || !(a > 2.0 * side)) continue;
            parts.push_back(three_point_space(a, side, side, std::to_string(block) + "."));
            placed = true;
        }
        if (!placed) throw InternalSamplingError("could not sample a block after " + std::to_string(kMaxAttempts) + " attempts");
    }
    return chain_concatenate(parts, k_target, BridgeMode::STRONG);
}

} // namespace metricforge
