#include "metricforge/errors.hpp"
#include "metricforge/triplets.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace metricforge;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("triplets are stored sorted") {
    const Triplet t(2, 4, 5);
    CHECK(t.a() == 5);
    CHECK(t.b() == 4);
    CHECK(t.c() == 2);
    CHECK_THROWS_AS(Triplet(-1, 1, 1), DomainError);
}

TEST_CASE("polygon tuples are stored sorted") {
    const PolygonTuple p({10, 120, 10, 20, 10, 10});
    CHECK(p.entries() == std::vector<double>{120, 20, 10, 10, 10, 10});
    CHECK(p.tail_sum() == 60);
    CHECK_THROWS_AS(PolygonTuple({1, 2}), DegenerateError);
}

TEST_CASE("satisfies") {
    CHECK(satisfies(Triplet(2, 4, 5), TripletKind::TT));
    CHECK_FALSE(satisfies(Triplet(4, 1, 1), TripletKind::TT));
    CHECK(satisfies(Triplet(4, 1, 1), TripletKind::KTT, 2));
    CHECK_FALSE(satisfies(Triplet(4, 1, 1), TripletKind::SKTT, 2));
    CHECK(satisfies(Triplet(4, 1, 1), TripletKind::SKTT, 3));
    CHECK(satisfies(PolygonTuple({120, 20, 10, 10, 10, 10}), TripletKind::POLY, 2));
    CHECK_FALSE(satisfies(PolygonTuple({120, 20, 10, 10, 10, 10}), TripletKind::POLY, 1.99));
    CHECK_THROWS_AS(satisfies(PolygonTuple({4, 3, 2, 1}), TripletKind::SKTT, 2), PreconditionError);
    CHECK_THROWS_AS(satisfies(Triplet(1, 1, 1), TripletKind::KTT, 0.5), PreconditionError);
}

TEST_CASE("min_constant") {
    CHECK(min_constant(Triplet(4, 1, 1), TripletKind::KTT) == 2.0);
    CHECK(min_constant(Triplet(4, 1, 1), TripletKind::SKTT) == 3.0);
    CHECK(min_constant(PolygonTuple({120, 20, 10, 10, 10, 10}), TripletKind::POLY) == 2.0);
    CHECK(min_constant(Triplet(3, 2, 1), TripletKind::KTT) == 1.0);
    CHECK(min_constant(Triplet(5, 2, 0), TripletKind::SKTT) == kInf);
    CHECK(min_constant(Triplet(2, 2, 0), TripletKind::SKTT) == 1.0);
    CHECK(min_constant(Triplet(2, 0, 0), TripletKind::KTT) == kInf);
    CHECK(min_constant(PolygonTuple({1, 0, 0}), TripletKind::POLY) == kInf);
    CHECK(min_constant(PolygonTuple({0, 0, 0}), TripletKind::POLY) == 1.0);
    CHECK_THROWS_AS(min_constant(Triplet(1, 1, 1), TripletKind::TT), PreconditionError);
}

TEST_CASE("triplet properties on random inputs") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> v(0.01, 10.0), kd(1.0, 6.0);
    const double tol = kDefaultTol;
    for (int i = 0; i < 2000; ++i) {
        const Triplet t(v(rng), v(rng), v(rng));
        const double K = kd(rng), K2 = K + kd(rng);
        for (auto kind : {TripletKind::TT, TripletKind::KTT, TripletKind::SKTT, TripletKind::POLY}) {
            // monotone in K
            if (satisfies(t, kind, K)) CHECK(satisfies(t, kind, K2));
        }
        for (auto kind : {TripletKind::KTT, TripletKind::SKTT, TripletKind::POLY}) {
            const double m = min_constant(t, kind);
            CHECK(satisfies(t, kind, m));
            if (m > 1.0) CHECK_FALSE(satisfies(t, kind, std::max(1.0, m * (1 - 10 * tol))));
        }
        CHECK(min_constant(t, TripletKind::KTT) <= min_constant(t, TripletKind::SKTT));
        const bool tt = satisfies(t, TripletKind::TT);
        CHECK(tt == (min_constant(PolygonTuple({t.a(), t.b(), t.c()}), TripletKind::POLY) <= 1.0 + tol));
        CHECK(tt == (min_constant(t, TripletKind::KTT) <= 1.0 + tol));
    }
}

TEST_CASE("grid construction") {
    const Grid g;
    CHECK(g.values().front() == 0.0078125);
    CHECK(g.values().back() == 16.0);
    CHECK(g.size() == 132);  // 128 arithmetic values plus 4 geometric values below the step
    CHECK(std::is_sorted(g.values().begin(), g.values().end()));

    GridConfig c;
    c.step = 0.0;
    c.geo_levels = 3;
    c.max = 8;
    c.extra = {3, 8};
    CHECK(Grid(c).values() == std::vector<double>{2, 3, 4, 8});
    CHECK_THROWS_AS(Grid::from_values({}), PreconditionError);
    CHECK_THROWS_AS(Grid::from_values({0.0, 1.0}), PreconditionError);
}

TEST_CASE("grid thinning keeps endpoints") {
    const Grid g = Grid::from_values({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    const Grid t = g.thinned(4);
    CHECK(t.size() == 4);
    CHECK(t.values().front() == 1);
    CHECK(t.values().back() == 10);
    CHECK(polygon_grid(Grid(), 6, 1e7).size() < Grid().size());
    CHECK(polygon_tuple_count(polygon_grid(Grid(), 6, 1e7).size(), 6) <= 1e7);
    CHECK(polygon_tuple_count(3, 3) == 10.0);  // C(5,3)
}

TEST_CASE("sample_triplets") {
    const auto tt = sample_triplets(TripletKind::TT, 1.0, Grid::from_values({1, 2}));
    CHECK(tt == std::vector<Triplet>{Triplet(1, 1, 1), Triplet(2, 1, 1), Triplet(2, 2, 1), Triplet(2, 2, 2)});

    CHECK(sample_triplets(TripletKind::SKTT, 1.0, Grid::from_values({1})) == std::vector<Triplet>{Triplet(1, 1, 1)});

    // {1,4}: sorted combos (1,1,1) (4,1,1) (4,4,1) (4,4,4); none has a > 2(b+c)
    const auto ktt = sample_triplets(TripletKind::KTT, 2.0, Grid::from_values({1, 4}));
    CHECK(ktt.size() == 4);
    CHECK(std::find(ktt.begin(), ktt.end(), Triplet(4, 1, 1)) != ktt.end());
    // (8,1,1) breaks 2-TT
    const auto wider = sample_triplets(TripletKind::KTT, 2.0, Grid::from_values({1, 8}));
    CHECK(std::find(wider.begin(), wider.end(), Triplet(8, 1, 1)) == wider.end());
}

TEST_CASE("sample_polygons") {
    const auto polys = sample_polygons(2.0, 6, Grid::from_values({10, 20, 120}));
    CHECK(std::find(polys.begin(), polys.end(), PolygonTuple({120, 20, 10, 10, 10, 10})) != polys.end());
    for (const auto& p : polys) CHECK(satisfies(p, TripletKind::POLY, 2.0));
    // (120,10,10,10,10,10) needs K = 2.4
    CHECK(std::find(polys.begin(), polys.end(), PolygonTuple({120, 10, 10, 10, 10, 10})) == polys.end());

    const auto ones = sample_polygons(1.0, 3, Grid::from_values({1}));
    CHECK(ones == std::vector<PolygonTuple>{PolygonTuple({1, 1, 1})});

    // brute force over all index tuples of length 3..4 on a 4-value grid
    const Grid g = Grid::from_values({1, 2, 5, 9});
    const auto got = sample_polygons(1.5, 4, g);
    std::size_t expected = 0;
    const auto& v = g.values();
    for (std::size_t len = 3; len <= 4; ++len) {
        std::vector<std::size_t> idx(len, 0);
        while (true) {
            bool sorted = true;
            for (std::size_t i = 1; i < len; ++i) sorted = sorted && idx[i] <= idx[i - 1];
            if (sorted) {
                double tail = 0;
                for (std::size_t i = 1; i < len; ++i) tail += v[idx[i]];
                if (v[idx[0]] <= 1.5 * tail) ++expected;
            }
            std::size_t pos = 0;
            while (pos < len && ++idx[pos] == v.size()) idx[pos++] = 0;
            if (pos == len) break;
        }
    }
    CHECK(got.size() == expected);
}
