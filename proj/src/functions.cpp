#include "metricforge/functions.hpp"

#include "metricforge/errors.hpp"
#include "metricforge/numbers.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>

namespace metricforge {

struct FunctionSpec::Node {
    Kind kind;
    std::vector<double> params;
    std::vector<FunctionSpec> children;
};

namespace {

constexpr double kSnapTol = 1e-9;

using Kind = FunctionSpec::Kind;

std::string_view builtin_name(Kind kind) {
    switch (kind) {
    case Kind::Identity: return "identity";
    case Kind::Linear: return "linear";
    case Kind::Bounded: return "bounded";
    case Kind::Power: return "power";
    case Kind::Sawtooth: return "sawtooth";
    case Kind::Cap: return "cap";
    case Kind::Tight: return "tight";
    case Kind::PiecewiseLinear: return "pwl";
    case Kind::Compose: return "compose";
    case Kind::Scale: return "scale";
    case Kind::Sum: return "sum";
    }
    return "?";
}

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

double eval_pwl(const std::vector<double>& p, double t) {
    // p = x0,y0,x1,y1,...
    const std::size_t count = p.size() / 2;
    auto x = [&](std::size_t i) { return p[2 * i]; };
    auto y = [&](std::size_t i) { return p[2 * i + 1]; };
    std::size_t lo = 0, hi = count;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (x(mid) <= t) lo = mid; else hi = mid;
    }
    if (t == x(lo)) return y(lo);
    if (lo + 1 == count) {
        const double slope = (y(lo) - y(lo - 1)) / (x(lo) - x(lo - 1));
        return y(lo) + slope * (t - x(lo));
    }
    return y(lo) + (y(lo + 1) - y(lo)) * (t - x(lo)) / (x(lo + 1) - x(lo));
}

} // namespace

FunctionSpec FunctionSpec::identity() { return FunctionSpec(std::make_shared<const Node>(Node{Kind::Identity, {}, {}})); }

FunctionSpec FunctionSpec::linear(double a) {
    require(std::isfinite(a) && a >= 0.0, "linear(a) needs a >= 0");
    return FunctionSpec(std::make_shared<const Node>(Node{Kind::Linear, {a}, {}}));
}

FunctionSpec FunctionSpec::bounded() { return FunctionSpec(std::make_shared<const Node>(Node{Kind::Bounded, {}, {}})); }

FunctionSpec FunctionSpec::power(double p) {
    require(std::isfinite(p) && p > 0.0, "power(p) needs p > 0");
    return FunctionSpec(std::make_shared<const Node>(Node{Kind::Power, {p}, {}}));
}

FunctionSpec FunctionSpec::sawtooth(double c1, double c2) {
    require(std::isfinite(c1) && std::isfinite(c2) && c1 >= 0.0 && c2 <= c1, "sawtooth(c1,c2) needs c1 >= 0 and c2 <= c1");
    return FunctionSpec(std::make_shared<const Node>(Node{Kind::Sawtooth, {c1, c2}, {}}));
}

FunctionSpec FunctionSpec::cap(double c) {
    require(std::isfinite(c) && c > 0.0, "cap(c) needs c > 0");
    return FunctionSpec(std::make_shared<const Node>(Node{Kind::Cap, {c}, {}}));
}

FunctionSpec FunctionSpec::tight(double v) {
    require(std::isfinite(v) && v > 0.0, "tight(v) needs v > 0");
    return FunctionSpec(std::make_shared<const Node>(Node{Kind::Tight, {v}, {}}));
}

FunctionSpec FunctionSpec::piecewise_linear(std::vector<std::pair<double, double>> breakpoints) {
    require(breakpoints.size() >= 2, "pwl needs at least two breakpoints");
    require(breakpoints.front().first == 0.0, "pwl needs its first breakpoint at x = 0");
    std::vector<double> params;
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        const auto [x, y] = breakpoints[i];
        require(std::isfinite(x) && std::isfinite(y) && y >= 0.0, "pwl breakpoints must be finite with y >= 0");
        if (i > 0) require(x > breakpoints[i - 1].first, "pwl breakpoints need strictly increasing x");
        params.push_back(x);
        params.push_back(y);
    }
    const auto& last = breakpoints.back();
    const auto& prev = breakpoints[breakpoints.size() - 2];
    require(last.second >= prev.second, "pwl needs a nonnegative final slope");
    return FunctionSpec(std::make_shared<const Node>(Node{Kind::PiecewiseLinear, std::move(params), {}}));
}

FunctionSpec FunctionSpec::compose(FunctionSpec outer, FunctionSpec inner) {
    return FunctionSpec(std::make_shared<const Node>(Node{Kind::Compose, {}, {std::move(outer), std::move(inner)}}));
}

FunctionSpec FunctionSpec::scale(double k, FunctionSpec f) {
    require(std::isfinite(k) && k >= 0.0, "scale(k,f) needs k >= 0");
    return FunctionSpec(std::make_shared<const Node>(Node{Kind::Scale, {k}, {std::move(f)}}));
}

FunctionSpec FunctionSpec::sum(FunctionSpec f, FunctionSpec g) {
    return FunctionSpec(std::make_shared<const Node>(Node{Kind::Sum, {}, {std::move(f), std::move(g)}}));
}

FunctionSpec::Kind FunctionSpec::kind() const noexcept { return node_->kind; }

double snapped_floor(double t) {
    const double nearest = std::round(t);
    if (std::abs(t - nearest) <= kSnapTol * std::max(1.0, std::abs(t))) return nearest;
    return std::floor(t);
}

double FunctionSpec::operator()(double t) const {
    if (!(t >= 0.0)) throw DomainError("f is defined on [0,inf), got t = " + format_number(t));
    const auto& p = node_->params;
    switch (node_->kind) {
    case Kind::Identity: return t;
    case Kind::Linear: return p[0] * t;
    case Kind::Bounded: return std::isinf(t) ? 1.0 : t / (1.0 + t);
    case Kind::Power: return std::pow(t, p[0]);
    case Kind::Sawtooth: return std::max(0.0, p[0] * t - p[1] * snapped_floor(t));
    case Kind::Cap: return std::min(t, p[0]);
    case Kind::Tight: return t == 0.0 ? 0.0 : p[0] * (1.0 + t / (1.0 + t));
    case Kind::PiecewiseLinear: return eval_pwl(p, t);
    case Kind::Compose: return node_->children[0](node_->children[1](t));
    case Kind::Scale: return p[0] * node_->children[0](t);
    case Kind::Sum: return node_->children[0](t) + node_->children[1](t);
    }
    return t;
}

std::string FunctionSpec::canonical() const {
    const auto& node = *node_;
    std::string out(builtin_name(node.kind));
    if (node.params.empty() && node.children.empty()) return out;
    out += '(';
    bool first = true;
    for (double v : node.params) {
        if (!first) out += ',';
        out += format_number(v);
        first = false;
    }
    for (const auto& child : node.children) {
        if (!first) out += ',';
        out += child.canonical();
        first = false;
    }
    out += ')';
    return out;
}

bool FunctionSpec::operator==(const FunctionSpec& other) const {
    if (node_ == other.node_) return true;
    return node_->kind == other.node_->kind && node_->params == other.node_->params &&
           node_->children == other.node_->children;
}

// ---------------------------------------------------------------------------
// DSL parser

namespace {

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    FunctionSpec parse() {
        FunctionSpec f = expression();
        skip_space();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input '" + std::string(text_.substr(pos_)) + "'", pos_);
        return f;
    }

  private:
    struct Arg {
        std::optional<double> number;
        std::optional<FunctionSpec> function;
        std::size_t position;
    };

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) {
            if (pos_ >= text_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
            throw ParseError(std::string("expected '") + c + "', found '" + text_[pos_] + "'", pos_);
        }
        ++pos_;
    }

    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    }

    std::string identifier() {
        skip_space();
        const std::size_t start = pos_;
        if (pos_ >= text_.size() || !ident_start(text_[pos_])) {
            if (pos_ >= text_.size()) throw ParseError("expected a function name but input ended", pos_);
            throw ParseError(std::string("expected a function name, found '") + text_[pos_] + "'", pos_);
        }
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    Arg argument() {
        skip_space();
        const std::size_t start = pos_;
        if (pos_ < text_.size() && ident_start(text_[pos_])) return Arg{std::nullopt, expression(), start};
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        if (pos_ < text_.size() && text_[pos_] == '+') ++first;
        double value = 0.0;
        auto [end, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || end == first) throw ParseError("expected a decimal number or a function", start);
        pos_ = static_cast<std::size_t>(end - text_.data());
        return Arg{value, std::nullopt, start};
    }

    FunctionSpec expression() {
        skip_space();
        const std::size_t start = pos_;
        const std::string name = identifier();
        std::vector<Arg> args;
        if (peek('(')) {
            ++pos_;
            args.push_back(argument());
            while (peek(',')) {
                ++pos_;
                args.push_back(argument());
            }
            expect(')');
        }
        return build(name, args, start);
    }

    static std::vector<double> numbers(const std::string& name, const std::vector<Arg>& args) {
        std::vector<double> out;
        for (const auto& a : args) {
            if (!a.number) throw ArityError(name + " takes numeric arguments only (argument at position " +
                                            std::to_string(a.position) + ")");
            out.push_back(*a.number);
        }
        return out;
    }

    static void arity(const std::string& name, const std::vector<Arg>& args, std::size_t expected) {
        if (args.size() != expected)
            throw ArityError(name + " takes " + std::to_string(expected) + " argument(s), got " +
                             std::to_string(args.size()));
    }

    static FunctionSpec function_arg(const std::string& name, const Arg& a) {
        if (!a.function)
            throw ArityError(name + " expects a function at position " + std::to_string(a.position));
        return *a.function;
    }

    static FunctionSpec build(const std::string& name, const std::vector<Arg>& args, std::size_t position) {
        if (name == "identity") { arity(name, args, 0); return FunctionSpec::identity(); }
        if (name == "bounded") { arity(name, args, 0); return FunctionSpec::bounded(); }
        if (name == "linear") { arity(name, args, 1); return FunctionSpec::linear(numbers(name, args)[0]); }
        if (name == "power") { arity(name, args, 1); return FunctionSpec::power(numbers(name, args)[0]); }
        if (name == "cap") { arity(name, args, 1); return FunctionSpec::cap(numbers(name, args)[0]); }
        if (name == "tight") { arity(name, args, 1); return FunctionSpec::tight(numbers(name, args)[0]); }
        if (name == "sawtooth") {
            arity(name, args, 2);
            const auto v = numbers(name, args);
            return FunctionSpec::sawtooth(v[0], v[1]);
        }
        if (name == "pwl" || name == "piecewise-linear") {
            const auto v = numbers(name, args);
            if (v.size() < 4 || v.size() % 2 != 0)
                throw ArityError(name + " takes an even number (>= 4) of x,y breakpoint values, got " +
                                 std::to_string(v.size()));
            std::vector<std::pair<double, double>> table;
            for (std::size_t i = 0; i < v.size(); i += 2) table.emplace_back(v[i], v[i + 1]);
            return FunctionSpec::piecewise_linear(std::move(table));
        }
        if (name == "compose" || name == "sum") {
            arity(name, args, 2);
            auto f = function_arg(name, args[0]);
            auto g = function_arg(name, args[1]);
            return name == "compose" ? FunctionSpec::compose(std::move(f), std::move(g))
                                     : FunctionSpec::sum(std::move(f), std::move(g));
        }
        if (name == "scale") {
            if (args.empty() || args.size() > 2)
                throw ArityError("scale takes (k) or (k, f), got " + std::to_string(args.size()) + " argument(s)");
            if (!args[0].number) throw ArityError("scale expects a number as its first argument");
            auto f = args.size() == 2 ? function_arg(name, args[1]) : FunctionSpec::identity();
            return FunctionSpec::scale(*args[0].number, std::move(f));
        }
        throw UnknownBuiltinError("unknown function '" + name + "' at position " + std::to_string(position));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

FunctionSpec parse_function(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Property checks

std::string_view to_string(Outcome outcome) {
    return outcome == Outcome::Counterexample ? "COUNTEREXAMPLE" : "NO_VIOLATION_FOUND";
}

namespace {

void counterexample(PropertyVerdict& v, std::vector<double> inputs, std::vector<double> values) {
    v.outcome = Outcome::Counterexample;
    v.witness_inputs = std::move(inputs);
    v.witness_values = std::move(values);
}

void check_amenable(const FunctionSpec& f, const std::vector<double>& grid, PropertyVerdict& v) {
    if (const double f0 = f(0.0); f0 != 0.0) return counterexample(v, {0.0}, {f0});
    for (double t : grid)
        if (const double ft = f(t); ft == 0.0) return counterexample(v, {t}, {ft});
}

void check_nondecreasing(const FunctionSpec& f, const std::vector<double>& grid, double tol, PropertyVerdict& v) {
    double prev_t = 0.0, prev_f = f(0.0);
    for (double t : grid) {
        const double ft = f(t);
        if (!leq_tol(prev_f, ft, tol)) return counterexample(v, {prev_t, t}, {prev_f, ft});
        prev_t = t;
        prev_f = ft;
    }
}

struct PairWitness {
    double ratio = 0.0;
    double a = 0.0, b = 0.0;
    double fab = 0.0, fa = 0.0, fb = 0.0;
};

// Shared by subadditive and quasi-subadditive. Scans a >= b over the grid for
// the largest f(a+b)/(f(a)+f(b)), overall and among pairs violating
// subadditivity; ties keep the first pair in ascending (a, b) order.
struct RatioScan {
    PairWitness worst;
    std::optional<PairWitness> violation;
};

RatioScan scan_ratios(const FunctionSpec& f, const std::vector<double>& grid, double tol) {
    std::vector<double> fv(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) fv[i] = f(grid[i]);
    RatioScan s;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double fab = f(grid[i] + grid[j]);
            const double denom = fv[i] + fv[j];
            double ratio = 0.0;
            if (denom > 0.0) ratio = fab / denom;
            else if (fab > 0.0) ratio = std::numeric_limits<double>::infinity();
            const PairWitness w{ratio, grid[i], grid[j], fab, fv[i], fv[j]};
            if (ratio > s.worst.ratio) s.worst = w;
            if (fab > denom * (1.0 + tol) && (!s.violation || ratio > s.violation->ratio)) s.violation = w;
        }
    return s;
}

void check_subadditive(const FunctionSpec& f, const std::vector<double>& grid, double tol, PropertyVerdict& v) {
    const RatioScan s = scan_ratios(f, grid, tol);
    v.estimates["max_ratio"] = s.worst.ratio;
    if (const auto& w = s.violation) counterexample(v, {w->a, w->b}, {w->fab, w->fa, w->fb});
}

void check_quasi_subadditive(const FunctionSpec& f, const std::vector<double>& grid, double tol, PropertyVerdict& v) {
    const RatioScan s = scan_ratios(f, grid, tol);
    const auto& w = s.worst;
    v.estimates["K"] = std::max(1.0, w.ratio);
    if (std::isinf(w.ratio)) counterexample(v, {w.a, w.b}, {w.fab, w.fa, w.fb});
}

void check_concave(const FunctionSpec& f, const std::vector<double>& grid, double tol, PropertyVerdict& v) {
    std::vector<double> points{0.0};
    points.insert(points.end(), grid.begin(), grid.end());
    std::vector<double> fv(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) fv[i] = f(points[i]);
    constexpr double weights[] = {0.25, 0.5, 0.75};
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            for (double s : weights) {
                const double mid = f(s * points[i] + (1.0 - s) * points[j]);
                const double chord = s * fv[i] + (1.0 - s) * fv[j];
                if (!leq_tol(chord, mid, tol)) return counterexample(v, {points[i], points[j], s}, {mid, fv[i], fv[j]});
            }
}

void check_tightly_bounded(const FunctionSpec& f, const std::vector<double>& grid, double tol, PropertyVerdict& v) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    double t_lo = 0.0, t_hi = 0.0;
    for (double t : grid) {
        const double ft = f(t);
        if (ft < lo) { lo = ft; t_lo = t; }
        if (ft > hi) { hi = ft; t_hi = t; }
    }
    v.estimates["v"] = lo;
    v.estimates["max"] = hi;
    if (!(lo > 0.0) || hi > 2.0 * lo * (1.0 + tol)) counterexample(v, {t_lo, t_hi}, {lo, hi});
}

void check_linear_bounds(const FunctionSpec& f, const std::vector<double>& grid, PropertyVerdict& v) {
    double a = std::numeric_limits<double>::infinity(), b = 0.0;
    double t_a = 0.0, f_a = 0.0;
    for (double t : grid) {
        const double ft = f(t);
        const double r = ft / t;
        if (r < a) { a = r; t_a = t; f_a = ft; }
        b = std::max(b, r);
    }
    v.estimates["a"] = a;
    v.estimates["b"] = b;
    if (!(a > 0.0)) counterexample(v, {t_a}, {f_a});
}

} // namespace

PropertyVerdict check_property(const FunctionSpec& f, std::string_view property, const Grid& grid, double tol) {
    PropertyVerdict v;
    v.property = std::string(property);
    v.grid = grid;
    const auto& g = grid.values();
    if (property == "amenable") check_amenable(f, g, v);
    else if (property == "nondecreasing") check_nondecreasing(f, g, tol, v);
    else if (property == "subadditive") check_subadditive(f, g, tol, v);
    else if (property == "quasi-subadditive") check_quasi_subadditive(f, g, tol, v);
    else if (property == "concave") check_concave(f, g, tol, v);
    else if (property == "tightly-bounded") check_tightly_bounded(f, g, tol, v);
    else if (property == "linear-bounds") check_linear_bounds(f, g, v);
    else throw UnknownPropertyError("unknown property '" + std::string(property) + "'");
    return v;
}

} // namespace metricforge
