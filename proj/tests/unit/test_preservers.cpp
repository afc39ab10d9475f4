#include "metricforge/combinators.hpp"
#include "metricforge/errors.hpp"
#include "metricforge/preservers.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>

using namespace metricforge;

namespace {

ScanOptions with_grid(std::vector<double> values) {
    ScanOptions o;
    o.grid = Grid::from_values(std::move(values));
    return o;
}

ScanOptions small_grid() {
    GridConfig c;
    c.step = 0.5;
    c.max = 6;
    c.geo_levels = 4;
    ScanOptions o;
    o.grid = Grid(c);
    return o;
}

bool source_holds(Axiom ax, double K, double a, double b, double c, double tol) {
    switch (ax) {
    case Axiom::M: return a <= (b + c) * (1 + tol);
    case Axiom::B: return a <= K * (1 + tol) * (b + c);
    case Axiom::S: return a <= K * (1 + tol) * c + b;
    default: return false;
    }
}

// Exhaustive triplet scan written without the library's enumeration helpers.
double brute_k2(const FunctionSpec& f, Axiom source, double K1, Axiom target, const std::vector<double>& v) {
    const double tol = kDefaultTol;
    double best = 1.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            for (std::size_t k = 0; k < v.size(); ++k) {
                const double a = v[i], b = v[j], c = v[k];
                if (!(a >= b && b >= c) || !source_holds(source, K1, a, b, c, tol)) continue;
                std::array<double, 3> img{f(a), f(b), f(c)};
                std::sort(img.begin(), img.end(), std::greater<>());
                double r;
                if (target == Axiom::S)
                    r = img[0] <= img[1] ? 0.0 : (img[2] == 0 ? INFINITY : (img[0] - img[1]) / img[2]);
                else
                    r = img[0] == 0 ? 0.0 : (img[1] + img[2] == 0 ? INFINITY : img[0] / (img[1] + img[2]));
                best = std::max(best, r);
            }
    return best;
}

std::vector<double> sorted_distances(const FiniteSemimetricSpace& s) {
    std::vector<double> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) out.push_back(s.distance(i, j));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_SUITE("preservation_scan") {
    TEST_CASE("squaring breaks the triangle inequality") {
        const auto r = preservation_scan(FunctionSpec::power(2), ClassSpec::make(Axiom::M), Axiom::M, with_grid({1, 2}));
        CHECK(r.worst_tuple == std::vector<double>{2, 1, 1});
        CHECK(r.worst_image == std::vector<double>{4, 1, 1});
        CHECK(r.estimated_k2 == 2.0);
        CHECK(r.violation);
        CHECK(r.tuples_scanned == 4);
    }

    TEST_CASE("bounded preserves metrics on the default grid") {
        const auto r = preservation_scan(FunctionSpec::bounded(), ClassSpec::make(Axiom::M), Axiom::M);
        CHECK(r.estimated_k2 == 1.0);
        CHECK_FALSE(r.violation);
    }

    TEST_CASE("identity on b-metrics is sharp") {
        const auto r = preservation_scan(FunctionSpec::identity(), ClassSpec::make(Axiom::B, 2), Axiom::B);
        CHECK(r.estimated_k2 == 2.0);
        CHECK_FALSE(r.violation);
        const auto s = preservation_scan(FunctionSpec::identity(), ClassSpec::make(Axiom::S, 3), Axiom::S);
        CHECK(s.estimated_k2 == 3.0);
    }

    TEST_CASE("sawtooth on polygons stays within 5 K1") {
        auto o = small_grid();
        o.max_len = 5;
        const auto r = preservation_scan(parse_function("sawtooth(5,4)"), ClassSpec::make(Axiom::P, 2), Axiom::P, o);
        CHECK(r.estimated_k2 <= 10.0 + 1e-9);
        CHECK(r.estimated_k2 >= 2.0);
        CHECK(r.worst_tuple.size() >= 3);
        CHECK(r.worst_tuple.size() <= 5);
        CHECK_FALSE(r.violation);
    }

    TEST_CASE("agrees with an exhaustive scan") {
        const auto o = small_grid();
        const std::vector<std::string> fns{"identity", "bounded", "power(2)", "power(0.5)", "sawtooth(5,4)",
                                           "cap(2)", "tight(1)", "linear(3)", "sum(identity,power(2))"};
        for (const auto& text : fns) {
            const auto f = parse_function(text);
            for (Axiom src : {Axiom::M, Axiom::S, Axiom::B})
                for (Axiom tgt : {Axiom::M, Axiom::S, Axiom::B})
                    for (double K1 : {1.0, 1.5, 3.0}) {
                        if (src == Axiom::M && K1 != 1.0) continue;
                        CAPTURE(text);
                        const auto r = preservation_scan(f, ClassSpec::make(src, K1), tgt, o);
                        CHECK(r.estimated_k2 == doctest::Approx(brute_k2(f, src, K1, tgt, o.grid.values())).epsilon(1e-12));
                    }
        }
    }

    TEST_CASE("thread count does not change the report") {
        auto o = small_grid();
        o.max_len = 5;
        for (const auto& text : {"power(2)", "sawtooth(5,4)", "tight(2)"}) {
            const auto f = parse_function(text);
            for (auto [src, tgt] : std::vector<std::pair<Axiom, Axiom>>{{Axiom::B, Axiom::B}, {Axiom::S, Axiom::M},
                                                                       {Axiom::P, Axiom::P}}) {
                o.threads = 1;
                const auto one = preservation_scan(f, ClassSpec::make(src, 2), tgt, o);
                o.threads = 4;
                const auto four = preservation_scan(f, ClassSpec::make(src, 2), tgt, o);
                CHECK(one.estimated_k2 == four.estimated_k2);
                CHECK(one.worst_tuple == four.worst_tuple);
                CHECK(one.tuples_scanned == four.tuples_scanned);
                CHECK(one.violation == four.violation);
            }
        }
    }

    TEST_CASE("worst tuple realizes the estimate on a witness space") {
        const auto o = small_grid();
        for (const auto& text : {"power(2)", "sawtooth(5,4)", "power(0.5)", "tight(1)"}) {
            const auto f = parse_function(text);
            for (Axiom src : {Axiom::S, Axiom::B})
                for (Axiom tgt : {Axiom::S, Axiom::B}) {
                    const auto spec = ClassSpec::make(src, 2);
                    const auto r = preservation_scan(f, spec, tgt, o);
                    if (std::isinf(r.estimated_k2) || r.estimated_k2 == 1.0) continue;
                    const Triplet t(r.worst_tuple[0], r.worst_tuple[1], r.worst_tuple[2]);
                    const auto w = build_witness_space(std::span<const Triplet>(&t, 1), spec);
                    const auto p = classify(transform(w, f));
                    CHECK(raw_constant(p, tgt) == doctest::Approx(r.estimated_k2).epsilon(1e-12));
                }
        }
    }

    TEST_CASE("mismatched or unsupported classes") {
        CHECK_THROWS_AS(preservation_scan(FunctionSpec::identity(), ClassSpec::make(Axiom::P, 2), Axiom::B),
                        PreconditionError);
        CHECK_THROWS_AS(preservation_scan(FunctionSpec::identity(), ClassSpec::make(Axiom::B, 2), Axiom::P),
                        PreconditionError);
        CHECK_THROWS_AS(ClassSpec::make(Axiom::U), PreconditionError);
        CHECK_THROWS_AS(ClassSpec::make(Axiom::B, 0.5), PreconditionError);
        CHECK(ClassSpec::make(Axiom::M, 3).k == 1.0);
    }
}

TEST_SUITE("estimate_gmap") {
    TEST_CASE("identity maps K1 to itself") {
        const std::vector<double> ks{1, 2, 3};
        const auto g = estimate_gmap(FunctionSpec::identity(), Axiom::B, Axiom::B, ks);
        REQUIRE(g.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(g[i].k1 == ks[i]);
            CHECK(g[i].k2 == ks[i]);
        }
    }

    TEST_CASE("bounded keeps metrics") {
        const std::vector<double> ks{1};
        CHECK(estimate_gmap(FunctionSpec::bounded(), Axiom::M, Axiom::M, ks)[0].k2 == 1.0);
    }

    TEST_CASE("estimates are nondecreasing in K1") {
        const std::vector<double> ks{1, 1.5, 2, 3, 4};
        const auto g = estimate_gmap(FunctionSpec::power(2), Axiom::B, Axiom::B, ks, small_grid());
        for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i].k2 >= g[i - 1].k2);
    }

    TEST_CASE("bad lists") {
        const std::vector<double> unsorted{2, 1}, low{0.5}, none{};
        CHECK_THROWS_AS(estimate_gmap(FunctionSpec::identity(), Axiom::B, Axiom::B, unsorted), PreconditionError);
        CHECK_THROWS_AS(estimate_gmap(FunctionSpec::identity(), Axiom::B, Axiom::B, low), PreconditionError);
        CHECK_THROWS_AS(estimate_gmap(FunctionSpec::identity(), Axiom::B, Axiom::B, none), PreconditionError);
    }
}

TEST_SUITE("witness spaces") {
    TEST_CASE("single b-metric block matches the 1-1-4 space up to relabelling") {
        const std::vector<Triplet> ts{Triplet(4, 1, 1)};
        const auto w = build_witness_space(ts, ClassSpec::make(Axiom::B, 2));
        CHECK(w.size() == 3);
        CHECK(sorted_distances(w) == sorted_distances(oracle::space3(1, 1, 4)));
        CHECK(min_b_constant(w) == 2.0);
    }

    TEST_CASE("several blocks keep the source constant") {
        const std::vector<Triplet> ts{Triplet(4, 1, 1), Triplet(3, 2, 1), Triplet(2, 2, 2)};
        const auto w = build_witness_space(ts, ClassSpec::make(Axiom::B, 2));
        CHECK(w.size() == 9);
        CHECK(min_b_constant(w) <= 2.0 + 1e-9);
        const auto s = build_witness_space(ts, ClassSpec::make(Axiom::S, 3));
        CHECK(min_strong_constant(s) <= 3.0 + 1e-9);
        const std::vector<Triplet> metric{Triplet(2, 1, 1), Triplet(1, 1, 1)};
        CHECK(classify(build_witness_space(metric, ClassSpec::make(Axiom::M))).is_metric);
    }

    TEST_CASE("errors") {
        const std::vector<Triplet> none{}, bad{Triplet(5, 1, 1)};
        CHECK_THROWS_AS(build_witness_space(none, ClassSpec::make(Axiom::B, 2)), PreconditionError);
        CHECK_THROWS_AS(build_witness_space(bad, ClassSpec::make(Axiom::B, 2)), BlockViolatesSourceError);
    }
}

TEST_SUITE("verify_on_space") {
    TEST_CASE("squaring the 1-1-4 space") {
        const auto s = oracle::space3(1, 1, 4);
        const auto f = FunctionSpec::power(2);
        const auto v = verify_on_space(f, s, Axiom::B, 8);
        CHECK(v.holds);
        CHECK(v.profile.raw_b == 8.0);
        CHECK_FALSE(verify_on_space(f, s, Axiom::B, 7).holds);
        CHECK_THROWS_AS(verify_on_space(f, s, Axiom::B, 0.5), PreconditionError);
    }

    TEST_CASE("bounded keeps random metrics metric") {
        std::mt19937_64 rng(47);
        for (int i = 0; i < 30; ++i) {
            const auto m = oracle::random_metric(rng, 3 + i % 5, "p");
            CHECK(verify_on_space(FunctionSpec::bounded(), m, Axiom::M, 1).holds);
        }
    }
}
