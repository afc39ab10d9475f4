#include "metricforge/space.hpp"

#include "metricforge/errors.hpp"
#include "metricforge/functions.hpp"
#include "metricforge/numbers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace metricforge {

std::vector<std::vector<double>> DistanceMatrix::rows() const {
    std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
    return out;
}

FiniteSemimetricSpace FiniteSemimetricSpace::validate(std::vector<std::string> labels,
                                                      const std::vector<std::vector<double>>& rows) {
    if (rows.size() != labels.size())
        throw ShapeError("matrix has " + std::to_string(rows.size()) + " rows but there are " +
                         std::to_string(labels.size()) + " points");
    DistanceMatrix matrix(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw ShapeError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                             " entries, expected " + std::to_string(rows.size()));
        for (std::size_t j = 0; j < rows.size(); ++j) matrix(i, j) = rows[i][j];
    }
    return validate(std::move(labels), std::move(matrix));
}

FiniteSemimetricSpace FiniteSemimetricSpace::validate(std::vector<std::string> labels, DistanceMatrix matrix) {
    const std::size_t n = labels.size();
    if (n < 2) throw ShapeError("a space needs at least 2 points, got " + std::to_string(n));
    if (matrix.size() != n)
        throw ShapeError("matrix is " + std::to_string(matrix.size()) + "x" + std::to_string(matrix.size()) +
                         " but there are " + std::to_string(n) + " points");
    std::set<std::string_view> seen;
    for (const auto& label : labels)
        if (!seen.insert(label).second) throw ShapeError("duplicate point label '" + label + "'");

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(matrix(i, j)))
                throw NonfiniteEntryError("entry d(" + labels[i] + "," + labels[j] + ") is not finite");

    for (std::size_t i = 0; i < n; ++i) {
        if (matrix(i, i) != 0.0)
            throw ZeroDistanceError("diagonal entry d(" + labels[i] + "," + labels[i] +
                                    ") = " + format_number(matrix(i, i)) + " must be 0");
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !(matrix(i, j) > 0.0))
                throw ZeroDistanceError("off-diagonal entry d(" + labels[i] + "," + labels[j] +
                                        ") = " + format_number(matrix(i, j)) + " must be positive");
    }

    double worst = 0.0;
    std::size_t wi = 0, wj = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double gap = std::abs(matrix(i, j) - matrix(j, i));
            if (gap > worst) {
                worst = gap;
                wi = i;
                wj = j;
            }
        }
    if (worst > 0.0)
        throw AsymmetryError("d(" + labels[wi] + "," + labels[wj] + ") = " + format_number(matrix(wi, wj)) +
                             " differs from d(" + labels[wj] + "," + labels[wi] + ") = " +
                             format_number(matrix(wj, wi)));

    return FiniteSemimetricSpace(std::move(labels), std::move(matrix));
}

std::optional<std::size_t> FiniteSemimetricSpace::index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

double FiniteSemimetricSpace::diameter() const {
    double diam = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j) diam = std::max(diam, matrix_(i, j));
    return diam;
}

FiniteSemimetricSpace FiniteSemimetricSpace::restrict_to(std::span<const std::string> labels) const {
    std::vector<std::size_t> order;
    order.reserve(labels.size());
    for (const auto& label : labels) {
        auto idx = index_of(label);
        if (!idx) throw PreconditionError("unknown point label '" + label + "'");
        order.push_back(*idx);
    }
    return permuted(order);
}

FiniteSemimetricSpace FiniteSemimetricSpace::permuted(std::span<const std::size_t> order) const {
    std::vector<std::string> labels;
    labels.reserve(order.size());
    DistanceMatrix matrix(order.size());
    for (std::size_t a = 0; a < order.size(); ++a) {
        if (order[a] >= size()) throw PreconditionError("point index out of range");
        labels.push_back(labels_[order[a]]);
        for (std::size_t b = 0; b < order.size(); ++b) matrix(a, b) = matrix_(order[a], order[b]);
    }
    return validate(std::move(labels), std::move(matrix));
}

std::string_view to_string(Axiom axiom) {
    switch (axiom) {
    case Axiom::U: return "U";
    case Axiom::M: return "M";
    case Axiom::S: return "S";
    case Axiom::P: return "P";
    case Axiom::B: return "B";
    }
    return "?";
}

Axiom parse_axiom(std::string_view text) {
    if (text == "U" || text == "u") return Axiom::U;
    if (text == "M" || text == "m") return Axiom::M;
    if (text == "S" || text == "s") return Axiom::S;
    if (text == "P" || text == "p") return Axiom::P;
    if (text == "B" || text == "b") return Axiom::B;
    throw PreconditionError("unknown axiom '" + std::string(text) + "' (expected U, M, S, P or B)");
}

double min_b_constant(const FiniteSemimetricSpace& space) {
    const auto& d = space.matrix();
    const std::size_t n = space.size();
    double best = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = x + 1; z < n; ++z)
            for (std::size_t y = 0; y < n; ++y) {
                if (y == x || y == z) continue;
                best = std::max(best, d(x, z) / (d(x, y) + d(y, z)));
            }
    return best;
}

double min_strong_constant(const FiniteSemimetricSpace& space) {
    const auto& d = space.matrix();
    const std::size_t n = space.size();
    if (n < 3) return 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x) continue;
            for (std::size_t z = 0; z < n; ++z) {
                if (z == x || z == y) continue;
                best = std::max(best, (d(x, z) - d(y, z)) / d(x, y));
            }
        }
    return best;
}

DistanceMatrix shortest_path_closure(const FiniteSemimetricSpace& space) {
    DistanceMatrix sp = space.matrix();
    const std::size_t n = sp.size();
    // One Floyd-Warshall pass is exact in real arithmetic; rounding can leave
    // a triangle violated by an ulp, so passes repeat until none fires.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                const double dik = sp(i, k);
                for (std::size_t j = 0; j < n; ++j) {
                    const double through = dik + sp(k, j);
                    if (through < sp(i, j)) {
                        sp(i, j) = through;
                        changed = true;
                    }
                }
            }
    }
    return sp;
}

RpiCertificate rpi_certificate(const FiniteSemimetricSpace& space) {
    RpiCertificate cert{0.0, shortest_path_closure(space)};
    const std::size_t n = space.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            cert.raw = std::max(cert.raw, space.distance(i, j) / cert.closure(i, j));
    return cert;
}

double min_rpi_constant(const FiniteSemimetricSpace& space) { return rpi_certificate(space).raw; }

bool is_ultrametric(const FiniteSemimetricSpace& space, double tol) {
    const auto& d = space.matrix();
    const std::size_t n = space.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = x + 1; z < n; ++z)
            for (std::size_t y = 0; y < n; ++y) {
                if (y == x || y == z) continue;
                if (d(x, z) > std::max(d(x, y), d(y, z)) * (1.0 + tol)) return false;
            }
    return true;
}

RelaxationProfile classify(const FiniteSemimetricSpace& space, double tol) {
    RelaxationProfile p;
    p.tol = tol;
    p.raw_b = min_b_constant(space);
    p.raw_strong = min_strong_constant(space);
    p.raw_rpi = min_rpi_constant(space);
    p.k_b = std::max(1.0, p.raw_b);
    p.k_strong = std::max(1.0, p.raw_strong);
    p.k_rpi = std::max(1.0, p.raw_rpi);
    p.is_metric = p.raw_b <= 1.0 + tol;
    p.is_ultrametric = p.is_metric && is_ultrametric(space, tol);
    return p;
}

double raw_constant(const RelaxationProfile& profile, Axiom axiom) {
    switch (axiom) {
    case Axiom::M:
    case Axiom::B: return profile.raw_b;
    case Axiom::S: return profile.raw_strong;
    case Axiom::P: return profile.raw_rpi;
    case Axiom::U: break;
    }
    throw PreconditionError("axiom U has no relaxation constant");
}

bool satisfies_axiom(const RelaxationProfile& profile, Axiom axiom, double K) {
    switch (axiom) {
    case Axiom::U: return profile.is_ultrametric;
    case Axiom::M: return profile.is_metric;
    default: return raw_constant(profile, axiom) <= K * (1.0 + profile.tol);
    }
}

FiniteSemimetricSpace transform(const FiniteSemimetricSpace& space, const FunctionSpec& f) {
    const std::size_t n = space.size();
    DistanceMatrix image(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) image(i, j) = f(space.distance(i, j));
    return FiniteSemimetricSpace::validate(space.labels(), std::move(image));
}

} // namespace metricforge
