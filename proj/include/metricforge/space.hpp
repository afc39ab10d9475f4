#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace metricforge {

/// Relative tolerance used by every "satisfies with K" predicate unless the
/// caller passes its own. A predicate at constant K accepts K·(1+tol).
inline constexpr double kDefaultTol = 1e-9;

class FunctionSpec;

/// Dense square matrix of distances, row-major.
class DistanceMatrix {
  public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

    std::vector<std::vector<double>> rows() const;

    bool operator==(const DistanceMatrix&) const = default;

  private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// A finite set of labelled points with a semimetric: zero diagonal, strictly
/// positive off-diagonal entries, exact symmetry, all entries finite.
/// Instances only come out of validate(), so every live value satisfies
/// these invariants.
class FiniteSemimetricSpace {
  public:
    static FiniteSemimetricSpace validate(std::vector<std::string> labels, DistanceMatrix matrix);
    static FiniteSemimetricSpace validate(std::vector<std::string> labels,
                                          const std::vector<std::vector<double>>& rows);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const DistanceMatrix& matrix() const noexcept { return matrix_; }
    double distance(std::size_t i, std::size_t j) const { return matrix_(i, j); }

    std::optional<std::size_t> index_of(std::string_view label) const;
    double diameter() const;

    /// Sub-space on the given labels, in the given order.
    FiniteSemimetricSpace restrict_to(std::span<const std::string> labels) const;

    /// Same space with points reordered: result point k is this point order[k].
    FiniteSemimetricSpace permuted(std::span<const std::size_t> order) const;

    bool operator==(const FiniteSemimetricSpace&) const = default;

  private:
    FiniteSemimetricSpace(std::vector<std::string> labels, DistanceMatrix matrix)
        : labels_(std::move(labels)), matrix_(std::move(matrix)) {}

    std::vector<std::string> labels_;
    DistanceMatrix matrix_;
};

inline FiniteSemimetricSpace validate_space(std::vector<std::string> labels,
                                            const std::vector<std::vector<double>>& rows) {
    return FiniteSemimetricSpace::validate(std::move(labels), rows);
}

enum class Axiom { U, M, S, P, B };

std::string_view to_string(Axiom axiom);
Axiom parse_axiom(std::string_view text);

struct RelaxationProfile {
    double raw_b = 0.0;
    double raw_strong = 0.0;
    double raw_rpi = 0.0;
    double k_b = 1.0;
    double k_strong = 1.0;
    double k_rpi = 1.0;
    bool is_ultrametric = false;
    bool is_metric = false;
    double tol = kDefaultTol;
};

/// max over ordered triples (x,y,z), x != z, y outside {x,z}, of
/// d(x,z) / (d(x,y) + d(y,z)). Zero for two-point spaces.
double min_b_constant(const FiniteSemimetricSpace& space);

/// max over pairwise distinct (x,y,z) of (d(x,z) - d(y,z)) / d(x,y).
/// Zero for two-point spaces.
double min_strong_constant(const FiniteSemimetricSpace& space);

/// All-pairs shortest-path closure of the matrix. This is the largest metric
/// below d, i.e. the witness d' in the metric-sandwich characterization of
/// the relaxed polygonal inequality.
DistanceMatrix shortest_path_closure(const FiniteSemimetricSpace& space);

struct RpiCertificate {
    double raw = 0.0;
    DistanceMatrix closure;
};

/// max over x != y of d(x,y) / sp(x,y), together with sp.
RpiCertificate rpi_certificate(const FiniteSemimetricSpace& space);
double min_rpi_constant(const FiniteSemimetricSpace& space);

bool is_ultrametric(const FiniteSemimetricSpace& space, double tol = kDefaultTol);

RelaxationProfile classify(const FiniteSemimetricSpace& space, double tol = kDefaultTol);

/// Whether the classified space satisfies `axiom` with constant K, i.e. the
/// relevant raw ratio is at most K·(1+tol). M and U ignore K.
bool satisfies_axiom(const RelaxationProfile& profile, Axiom axiom, double K);

/// Raw supremum ratio governing `axiom` (B, S or P); M maps to raw_b.
double raw_constant(const RelaxationProfile& profile, Axiom axiom);

/// Pointwise image space with matrix f(d(x,y)), re-validated.
FiniteSemimetricSpace transform(const FiniteSemimetricSpace& space, const FunctionSpec& f);

} // namespace metricforge
