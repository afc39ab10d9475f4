#pragma once

// Independent reference computations for tests. Nothing here calls the
// library's constant solvers or closure routine.

#include "metricforge/space.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix rows(const metricforge::FiniteSemimetricSpace& s) { return s.matrix().rows(); }

/// Minimum path sum over every simple path x -> y, by exhaustive DFS.
inline double min_simple_path(const Matrix& d, std::size_t x, std::size_t y) {
    const std::size_t n = d.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<bool> used(n, false);
    std::function<void(std::size_t, double)> walk = [&](std::size_t at, double length) {
        if (at == y) {
            best = std::min(best, length);
            return;
        }
        for (std::size_t next = 0; next < n; ++next) {
            if (used[next]) continue;
            used[next] = true;
            walk(next, length + d[at][next]);
            used[next] = false;
        }
    };
    used[x] = true;
    walk(x, 0.0);
    return best;
}

/// max over pairs of d(x,y) / (shortest simple path x -> y).
inline double rpi_by_paths(const Matrix& d) {
    double best = 0.0;
    for (std::size_t x = 0; x < d.size(); ++x)
        for (std::size_t y = x + 1; y < d.size(); ++y) best = std::max(best, d[x][y] / min_simple_path(d, x, y));
    return best;
}

/// Sorted-triangle ratios over every 3-subset: max of a/(b+c) and of (a-b)/c
/// where a >= b >= c are the subset's three distances.
struct TriangleRatios {
    double b = 0.0;
    double strong = 0.0;
};

inline TriangleRatios triangle_ratios(const Matrix& d) {
    TriangleRatios r;
    const std::size_t n = d.size();
    bool any = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                double v[3] = {d[i][j], d[j][k], d[i][k]};
                std::sort(v, v + 3, std::greater<>());
                const double b = v[0] / (v[1] + v[2]);
                const double s = std::max((v[0] - v[1]) / v[2], (v[0] - v[2]) / v[1]);
                if (!any) {
                    r = {b, s};
                    any = true;
                } else {
                    r.b = std::max(r.b, b);
                    r.strong = std::max(r.strong, s);
                }
            }
    return r;
}

inline std::vector<std::string> labels(std::size_t n, const std::string& prefix = "p") {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

/// Random semimetric on n points. Entries are drawn from [lo, hi]; with
/// probability `spike` an entry is multiplied by up to 6 so that plenty of
/// samples break the triangle inequality.
inline metricforge::FiniteSemimetricSpace random_space(std::mt19937_64& rng, std::size_t n,
                                                       const std::string& prefix = "p", double lo = 0.5,
                                                       double hi = 4.0, double spike = 0.3) {
    std::uniform_real_distribution<double> value(lo, hi), coin(0.0, 1.0), boost(1.0, 6.0);
    Matrix d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = value(rng);
            if (coin(rng) < spike) v *= boost(rng);
            d[i][j] = d[j][i] = v;
        }
    return metricforge::FiniteSemimetricSpace::validate(labels(n, prefix), d);
}

/// Random metric: shortest-path closure computed by repeated relaxation
/// until nothing changes (Bellman-Ford style, not the library's routine).
inline metricforge::FiniteSemimetricSpace random_metric(std::mt19937_64& rng, std::size_t n,
                                                        const std::string& prefix = "m") {
    auto raw = rows(random_space(rng, n, prefix, 0.5, 4.0, 0.5));
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (raw[i][k] + raw[k][j] < raw[i][j]) {
                        raw[i][j] = raw[i][k] + raw[k][j];
                        changed = true;
                    }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) raw[i][j] = raw[j][i] = std::min(raw[i][j], raw[j][i]);
    return metricforge::FiniteSemimetricSpace::validate(labels(n, prefix), raw);
}

inline metricforge::FiniteSemimetricSpace space3(double d12, double d23, double d13) {
    return metricforge::FiniteSemimetricSpace::validate({"1", "2", "3"},
                                                        {{0, d12, d13}, {d12, 0, d23}, {d13, d23, 0}});
}

} // namespace oracle
