#include "metricforge/triplets.hpp"

#include "metricforge/errors.hpp"
#include "metricforge/numbers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace metricforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_entry(double v) {
    if (!std::isfinite(v) || v < 0.0)
        throw DomainError("tuple entries must be finite and nonnegative, got " + format_number(v));
}

} // namespace

std::string_view to_string(TripletKind kind) {
    switch (kind) {
    case TripletKind::TT: return "TT";
    case TripletKind::KTT: return "KTT";
    case TripletKind::SKTT: return "SKTT";
    case TripletKind::POLY: return "POLY";
    }
    return "?";
}

Triplet::Triplet(double x, double y, double z) : v_{x, y, z} {
    for (double v : v_) check_entry(v);
    std::sort(v_.begin(), v_.end(), std::greater<>());
}

PolygonTuple::PolygonTuple(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 3)
        throw DegenerateError("a polygon tuple needs at least 3 entries, got " + std::to_string(entries_.size()));
    for (double v : entries_) check_entry(v);
    std::sort(entries_.begin(), entries_.end(), std::greater<>());
}

double PolygonTuple::tail_sum() const noexcept {
    return std::accumulate(entries_.begin() + 1, entries_.end(), 0.0);
}

bool satisfies(const Triplet& t, TripletKind kind, double K, double tol) {
    if (K < 1.0) throw PreconditionError("relaxation constant must be >= 1");
    return source_condition(t.a(), t.b(), t.c(), kind, K, tol);
}

bool satisfies(const PolygonTuple& p, TripletKind kind, double K, double tol) {
    if (K < 1.0) throw PreconditionError("relaxation constant must be >= 1");
    switch (kind) {
    case TripletKind::TT: return p.largest() <= p.tail_sum() * (1.0 + tol);
    case TripletKind::KTT:
    case TripletKind::POLY: return p.largest() <= K * (1.0 + tol) * p.tail_sum();
    case TripletKind::SKTT:
        if (p.size() == 3) return satisfies(Triplet(p.entries()[0], p.entries()[1], p.entries()[2]), kind, K, tol);
        break;
    }
    throw PreconditionError("strong triangle condition is only defined for three values");
}

double polygon_constant(double largest, double tail_sum) {
    if (tail_sum == 0.0) return largest > 0.0 ? kInf : 1.0;
    return std::max(1.0, largest / tail_sum);
}

double min_constant(const Triplet& t, TripletKind kind) {
    switch (kind) {
    case TripletKind::KTT:
    case TripletKind::POLY: return polygon_constant(t.a(), t.b() + t.c());
    case TripletKind::SKTT:
        if (t.c() == 0.0) return t.a() > t.b() ? kInf : 1.0;
        return std::max(1.0, (t.a() - t.b()) / t.c());
    case TripletKind::TT: break;
    }
    throw PreconditionError("min_constant needs kind KTT, SKTT or POLY");
}

double min_constant(const PolygonTuple& p, TripletKind kind) {
    switch (kind) {
    case TripletKind::KTT:
    case TripletKind::POLY: return polygon_constant(p.largest(), p.tail_sum());
    case TripletKind::SKTT:
        if (p.size() == 3) return min_constant(Triplet(p.entries()[0], p.entries()[1], p.entries()[2]), kind);
        throw PreconditionError("strong triangle condition is only defined for three values");
    case TripletKind::TT: break;
    }
    throw PreconditionError("min_constant needs kind KTT, SKTT or POLY");
}

Grid::Grid(GridConfig config) : config_(std::move(config)) {
    if (config_.step > 0.0) {
        if (!(config_.max > 0.0)) throw PreconditionError("grid max must be positive");
        const auto count = static_cast<std::size_t>(std::floor(config_.max / config_.step + 1e-9));
        for (std::size_t k = 1; k <= count; ++k) values_.push_back(static_cast<double>(k) * config_.step);
    }
    if (config_.geo_levels > 0) {
        if (!(config_.max > 0.0) || !(config_.ratio > 0.0) || !(config_.ratio < 1.0))
            throw PreconditionError("geometric grid needs max > 0 and 0 < ratio < 1");
        double v = config_.max;
        for (int k = 0; k < config_.geo_levels; ++k, v *= config_.ratio) values_.push_back(v);
    }
    for (double v : config_.extra) values_.push_back(v);
    for (double v : values_)
        if (!std::isfinite(v) || !(v > 0.0)) throw PreconditionError("grid values must be positive and finite");
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    if (values_.empty()) throw PreconditionError("grid is empty");
}

Grid Grid::from_values(std::vector<double> values) {
    GridConfig config;
    config.step = 0.0;
    config.geo_levels = 0;
    config.extra = std::move(values);
    return Grid(std::move(config));
}

Grid Grid::thinned(std::size_t count) const {
    if (count >= values_.size()) return *this;
    if (count == 0) throw PreconditionError("cannot thin a grid to zero values");
    std::vector<double> picked;
    if (count == 1) {
        picked.push_back(values_.back());
    } else {
        const std::size_t m = values_.size();
        for (std::size_t k = 0; k < count; ++k) {
            const std::size_t i = (k * (m - 1) + (count - 1) / 2) / (count - 1);
            picked.push_back(values_[i]);
        }
    }
    Grid out = from_values(std::move(picked));
    out.config_ = config_;
    return out;
}

double polygon_tuple_count(std::size_t m, std::size_t max_len) {
    // multisets of size n from m values: C(m+n-1, n)
    double total = 0.0;
    for (std::size_t n = 3; n <= max_len; ++n) {
        double c = 1.0;
        for (std::size_t k = 1; k <= n; ++k) c = c * static_cast<double>(m + k - 1) / static_cast<double>(k);
        total += c;
    }
    return total;
}

Grid polygon_grid(const Grid& grid, std::size_t max_len, double budget) {
    std::size_t m = grid.size();
    while (m > 1 && polygon_tuple_count(m, max_len) > budget) --m;
    return grid.thinned(m);
}

std::vector<Triplet> sample_triplets(TripletKind kind, double K1, const Grid& grid, double tol) {
    if (K1 < 1.0) throw PreconditionError("K1 must be >= 1");
    const auto& v = grid.values();
    std::vector<Triplet> out;
    for_each_triplet_index(v, kind, K1, tol, 0, v.size(),
                           [&](std::size_t ia, std::size_t ib, std::size_t ic) { out.emplace_back(v[ia], v[ib], v[ic]); });
    return out;
}

std::vector<PolygonTuple> sample_polygons(double K1, std::size_t max_len, const Grid& grid, double tol) {
    if (K1 < 1.0) throw PreconditionError("K1 must be >= 1");
    if (max_len < 3) throw PreconditionError("max_len must be >= 3");
    const auto& v = grid.values();
    std::vector<PolygonTuple> out;
    for_each_polygon_index(v, K1, tol, max_len, 0, v.size(), [&](const std::vector<std::size_t>& idx) {
        std::vector<double> entries;
        entries.reserve(idx.size());
        for (std::size_t i : idx) entries.push_back(v[i]);
        out.emplace_back(std::move(entries));
    });
    return out;
}

} // namespace metricforge
