#pragma once

#include "metricforge/space.hpp"
#include "metricforge/triplets.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace metricforge {

/// A candidate distance transform f: [0,inf) -> [0,inf), built from a closed
/// catalog of builtins and the combinators compose / scale / sum.
///
/// Builtins:
///   identity             t
///   linear(a)            a t                      (a >= 0)
///   bounded              t / (1 + t)
///   power(p)             t^p                      (p > 0)
///   sawtooth(c1, c2)     c1 t - c2 floor(t)       (c1 >= 0, c2 <= c1)
///   cap(c)               min(t, c)                (c > 0)
///   tight(v)             0 at 0, v (1 + t/(1+t)) otherwise   (v > 0)
///   pwl(x0,y0, x1,y1,..) linear interpolation through the breakpoints,
///                        x0 = 0, x strictly increasing, y >= 0; extended
///                        past the last breakpoint with the last slope (>= 0)
///
/// Values are immutable and cheap to copy (shared tree).
class FunctionSpec {
  public:
    enum class Kind { Identity, Linear, Bounded, Power, Sawtooth, Cap, Tight, PiecewiseLinear, Compose, Scale, Sum };

    static FunctionSpec identity();
    static FunctionSpec linear(double a);
    static FunctionSpec bounded();
    static FunctionSpec power(double p);
    static FunctionSpec sawtooth(double c1, double c2);
    static FunctionSpec cap(double c);
    static FunctionSpec tight(double v);
    static FunctionSpec piecewise_linear(std::vector<std::pair<double, double>> breakpoints);
    /// outer(inner(t))
    static FunctionSpec compose(FunctionSpec outer, FunctionSpec inner);
    static FunctionSpec scale(double k, FunctionSpec f);
    static FunctionSpec sum(FunctionSpec f, FunctionSpec g);

    Kind kind() const noexcept;

    /// Throws DomainError for t < 0 or NaN.
    double operator()(double t) const;

    /// Canonical DSL text; parse_function(canonical()) == *this.
    std::string canonical() const;

    bool operator==(const FunctionSpec& other) const;

  private:
    struct Node;
    explicit FunctionSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Parses the function DSL:
///   expr := name | name '(' arg (',' arg)* ')'
///   arg  := decimal | expr
/// e.g. "bounded", "sawtooth(5,4)", "compose(scale(2), bounded)".
/// scale(k) on its own means scale(k, identity). Whitespace is ignored.
FunctionSpec parse_function(std::string_view text);

inline double evaluate(const FunctionSpec& f, double t) { return f(t); }

/// floor(t), except that t within 1e-9 (relative) of an integer snaps to it.
double snapped_floor(double t);

enum class Outcome { Counterexample, NoViolationFound };

std::string_view to_string(Outcome outcome);

/// Grid-relative verdict. NoViolationFound is evidence, not a proof.
struct PropertyVerdict {
    std::string property;
    Outcome outcome = Outcome::NoViolationFound;
    // Inputs and the f-values the defining inequality was evaluated on.
    // Layout per property:
    //   amenable          in {t}        values {f(t)}
    //   nondecreasing     in {s, t}     values {f(s), f(t)}          s < t
    //   subadditive       in {a, b}     values {f(a+b), f(a), f(b)}
    //   quasi-subadditive in {a, b}     values {f(a+b), f(a), f(b)}
    //   concave           in {a, b, s}  values {f(s a + (1-s) b), f(a), f(b)}
    //   tightly-bounded   in {t_lo, t_hi} values {f(t_lo), f(t_hi)}
    //   linear-bounds     in {t}        values {f(t)}
    std::vector<double> witness_inputs;
    std::vector<double> witness_values;
    std::map<std::string, double> estimates;
    Grid grid;
};

inline const std::vector<std::string>& property_names() {
    static const std::vector<std::string> names{"amenable",        "nondecreasing", "subadditive",  "quasi-subadditive",
                                                "concave",         "tightly-bounded", "linear-bounds"};
    return names;
}

/// Grid scan for one of property_names(); UnknownPropertyError otherwise.
PropertyVerdict check_property(const FunctionSpec& f, std::string_view property, const Grid& grid,
                               double tol = kDefaultTol);

} // namespace metricforge
