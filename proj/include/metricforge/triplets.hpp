#pragma once

#include "metricforge/space.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

namespace metricforge {

/// TT: a <= b + c. KTT: a <= K(b + c). SKTT: a <= K c + b.
/// POLY: largest <= K * (sum of the rest).
enum class TripletKind { TT, KTT, SKTT, POLY };

std::string_view to_string(TripletKind kind);

/// Three nonnegative reals stored in nonincreasing order a >= b >= c.
/// Unsorted input is rearranged; the definitions only ever look at the
/// sorted arrangement.
class Triplet {
  public:
    Triplet(double x, double y, double z);

    double a() const noexcept { return v_[0]; }
    double b() const noexcept { return v_[1]; }
    double c() const noexcept { return v_[2]; }
    const std::array<double, 3>& values() const noexcept { return v_; }

    auto operator<=>(const Triplet&) const = default;

  private:
    std::array<double, 3> v_;
};

/// Finite tuple (length >= 3) of nonnegative reals, sorted nonincreasing.
class PolygonTuple {
  public:
    explicit PolygonTuple(std::vector<double> entries);

    const std::vector<double>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    double largest() const noexcept { return entries_.front(); }
    double tail_sum() const noexcept;

    auto operator<=>(const PolygonTuple&) const = default;

  private:
    std::vector<double> entries_;
};

bool satisfies(const Triplet& t, TripletKind kind, double K = 1.0, double tol = kDefaultTol);
bool satisfies(const PolygonTuple& p, TripletKind kind, double K = 1.0, double tol = kDefaultTol);

/// Smallest K >= 1 for which satisfies() holds. +inf when no K works.
/// kind must be KTT, SKTT or POLY.
double min_constant(const Triplet& t, TripletKind kind);
double min_constant(const PolygonTuple& p, TripletKind kind);

/// POLY constant of a nonincreasing range, without constructing a tuple.
double polygon_constant(double largest, double tail_sum);

// ---------------------------------------------------------------------------
// Sample grids

/// Union of an arithmetic grid {step, 2 step, ..., max}, a geometric grid
/// {max r^k : 0 <= k < geo_levels} and the extra values. step <= 0 or
/// geo_levels == 0 switch the respective part off.
struct GridConfig {
    double step = 0.125;
    double max = 16.0;
    double ratio = 0.5;
    int geo_levels = 12;
    std::vector<double> extra;
};

class Grid {
  public:
    Grid() : Grid(GridConfig{}) {}
    explicit Grid(GridConfig config);

    static Grid from_values(std::vector<double> values);

    /// Sorted ascending, deduplicated, all positive.
    const std::vector<double>& values() const noexcept { return values_; }
    const GridConfig& config() const noexcept { return config_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// At most `count` values picked at evenly spaced indices, always keeping
    /// the smallest and largest.
    Grid thinned(std::size_t count) const;

  private:
    GridConfig config_;
    std::vector<double> values_;
};

/// Number of nonincreasing tuples of lengths 3..max_len over m values.
double polygon_tuple_count(std::size_t m, std::size_t max_len);

/// Largest grid (by thinning) whose polygon enumeration stays within budget.
Grid polygon_grid(const Grid& grid, std::size_t max_len, double budget);

/// Whether a >= b >= c meets the condition of `kind` at K·(1+tol).
inline bool source_condition(double a, double b, double c, TripletKind kind, double K, double tol) {
    switch (kind) {
    case TripletKind::TT: return a <= (b + c) * (1.0 + tol);
    case TripletKind::KTT:
    case TripletKind::POLY: return a <= K * (1.0 + tol) * (b + c);
    case TripletKind::SKTT: return a <= K * (1.0 + tol) * c + b;
    }
    return false;
}

/// Calls visit(ia, ib, ic) for index triples ia >= ib >= ic into the
/// ascending `values` whose values meet the source condition. The outer
/// index runs over [first, last); order is ia, then ib, then ic ascending.
template <class Visit>
void for_each_triplet_index(const std::vector<double>& values, TripletKind kind, double K, double tol,
                            std::size_t first, std::size_t last, Visit&& visit) {
    for (std::size_t ia = first; ia < last; ++ia)
        for (std::size_t ib = 0; ib <= ia; ++ib)
            for (std::size_t ic = 0; ic <= ib; ++ic)
                if (source_condition(values[ia], values[ib], values[ic], kind, K, tol)) visit(ia, ib, ic);
}

namespace detail {
template <class Visit>
void extend_polygon(const std::vector<double>& values, std::vector<std::size_t>& idx, std::size_t depth,
                    double tail, double K, double tol, Visit& visit) {
    const std::size_t len = idx.size();
    const std::size_t bound = idx[depth - 1];
    if (depth + 1 == len) {
        const double largest = values[idx[0]];
        for (std::size_t i = 0; i <= bound; ++i) {
            idx[depth] = i;
            if (largest <= K * (1.0 + tol) * (tail + values[i])) visit(std::as_const(idx));
        }
        return;
    }
    for (std::size_t i = 0; i <= bound; ++i) {
        idx[depth] = i;
        extend_polygon(values, idx, depth + 1, tail + values[i], K, tol, visit);
    }
}
} // namespace detail

/// Calls visit(indices) for every nonincreasing index tuple of length
/// 3..max_len whose values form a K-relaxed polygon. Largest index runs over
/// [first, last). Order: length, then indices ascending position by position.
template <class Visit>
void for_each_polygon_index(const std::vector<double>& values, double K, double tol, std::size_t max_len,
                            std::size_t first, std::size_t last, Visit&& visit) {
    std::vector<std::size_t> idx;
    for (std::size_t len = 3; len <= max_len; ++len) {
        idx.assign(len, 0);
        for (std::size_t i0 = first; i0 < last; ++i0) {
            idx[0] = i0;
            detail::extend_polygon(values, idx, 1, 0.0, K, tol, visit);
        }
    }
}

/// Every grid triplet a >= b >= c meeting (kind, K1), in deterministic order.
std::vector<Triplet> sample_triplets(TripletKind kind, double K1, const Grid& grid, double tol = kDefaultTol);

/// Every nonincreasing grid tuple of length 3..max_len that is a
/// K1-relaxed polygon.
std::vector<PolygonTuple> sample_polygons(double K1, std::size_t max_len, const Grid& grid,
                                          double tol = kDefaultTol);

} // namespace metricforge
