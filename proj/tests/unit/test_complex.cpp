#include "medgraph/complex.hpp"
#include "medgraph/errors.hpp"
#include "medgraph/testkit.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace medgraph;
using namespace medgraph::testkit;

namespace {

Rational r(long p, long q = 1) {
    Rational x(p, q);
    x.canonicalize();
    return x;
}

Terminal at(Vertex v, Coords coords = {}, Rational w = 1) { return Terminal{v, std::move(coords), w}; }

using Points = std::vector<std::pair<Rational, Rational>>;

struct Square {
    // vertices 0 = 00, 1 = 10, 2 = 01, 3 = 11; class 0 moves the first bit
    Graph g = make_hypercube(2);
    ThetaPartition tp = theta_classes_lexbfs(g, 0);
};

} // namespace

TEST_CASE("the square fixture has the expected classes") {
    Square s;
    REQUIRE(s.tp.class_count() == 2);
    CHECK(s.tp.class_of[0] == 0); // 0-1
    CHECK(s.tp.class_of[1] == 1); // 0-2
}

TEST_CASE("rebasing moves the base to the corner nearest the basepoint") {
    Square s;
    auto out = rebase_terminals(s.g, s.tp, {at(3, {{0, r(1, 4)}, {1, r(1, 3)}})});
    CHECK(out[0].base == 0);
    CHECK(out[0].coords == Coords{{0, r(3, 4)}, {1, r(2, 3)}});
    auto same = rebase_terminals(s.g, s.tp, {at(0, {{0, r(1, 4)}, {1, r(1, 3)}})});
    CHECK(same[0].base == 0);
    CHECK(same[0].coords == Coords{{0, r(1, 4)}, {1, r(1, 3)}});
    auto half = rebase_terminals(s.g, s.tp, {at(2, {{0, r(1, 5)}})});
    CHECK(half[0].base == 2);
    auto flip = rebase_terminals(s.g, s.tp, {at(2, {{1, r(1, 5)}})});
    CHECK(flip[0].base == 0);
    CHECK(flip[0].coords == Coords{{1, r(4, 5)}});
    auto vertex = rebase_terminals(s.g, s.tp, {at(3)});
    CHECK(vertex[0].base == 3);
    CHECK(vertex[0].coords.empty());
}

TEST_CASE("rebasing rejects malformed points") {
    Square s;
    CHECK_THROWS_AS(rebase_terminals(s.g, s.tp, {at(0, {{0, r(0)}})}), InvalidInput);
    CHECK_THROWS_AS(rebase_terminals(s.g, s.tp, {at(0, {{0, r(1)}})}), InvalidInput);
    Graph p3 = make_path(3);
    auto tp3 = theta_classes_lexbfs(p3, 0);
    CHECK_THROWS_AS(rebase_terminals(p3, tp3, {at(0, {{1, r(1, 2)}})}), InvalidInput);
    // both classes meet vertex 1 but do not span a square
    CHECK_THROWS_AS(rebase_terminals(p3, tp3, {at(1, {{0, r(1, 2)}, {1, r(1, 2)}})}), InvalidInput);
}

TEST_CASE("normalisation drops 0 and crosses 1") {
    Square s;
    auto out = normalize_terminals(s.g, s.tp, {at(0, {{1, r(1)}, {0, r(0)}}), at(1, {{1, r(2, 3)}, {0, r(1)}})});
    CHECK(out[0].base == 2);
    CHECK(out[0].coords.empty());
    CHECK(out[1].base == 0);
    CHECK(out[1].coords == Coords{{1, r(2, 3)}});
    CHECK_THROWS_AS(normalize_terminals(s.g, s.tp, {at(0, {{0, r(3, 2)}})}), InvalidInput);
    CHECK_THROWS_AS(normalize_terminals(s.g, s.tp, {at(0, {{0, r(1, 2)}, {0, r(1, 3)}})}), InvalidInput);
    CHECK_THROWS_AS(normalize_terminals(s.g, s.tp, {at(0, {{7, r(1, 2)}})}), InvalidInput);
    CHECK_THROWS_AS(normalize_terminals(s.g, s.tp, {at(0, {}, r(0))}), InvalidInput);
    CHECK_THROWS_AS(normalize_terminals(s.g, s.tp, {at(9)}), InvalidInput);
}

TEST_CASE("terminal file parsing") {
    auto ts = parse_terminals("# two points\n3 2 0 1/4 1 1/3 1\n0 0 5/2\n");
    REQUIRE(ts.size() == 2);
    CHECK(ts[0].base == 3);
    CHECK(ts[0].coords == Coords{{0, r(1, 4)}, {1, r(1, 3)}});
    CHECK(ts[1].weight == r(5, 2));
    CHECK_THROWS_AS(parse_terminals("3 2 0 1/4 1\n"), ParseError);
    CHECK_THROWS_AS(parse_terminals("3 1 0 x 1\n"), ParseError);
}

TEST_CASE("one-dimensional weighted median") {
    for (auto mode : {SelectMode::quickselect, SelectMode::sorting}) {
        auto a = weighted_median_interval(Points{{r(0), r(1)}, {r(1), r(1)}}, mode);
        CHECK(a.lo == 0);
        CHECK(a.hi == 1);
        auto b = weighted_median_interval(Points{{r(0), r(2)}, {r(1), r(1)}}, mode);
        CHECK(b.lo == 0);
        CHECK(b.hi == 0);
        auto c = weighted_median_interval(Points{{r(0), r(1)}, {r(3, 10), r(1)}, {r(1), r(1)}}, mode);
        CHECK(c.lo == r(3, 10));
        CHECK(c.hi == r(3, 10));
        auto d = weighted_median_interval(Points{{r(0), r(1)}, {r(3, 10), r(1)}, {r(7, 10), r(1)}, {r(1), r(1)}},
                                          mode);
        CHECK(d.lo == r(3, 10));
        CHECK(d.hi == r(7, 10));
        auto e = weighted_median_interval(Points{{r(0), r(0)}, {r(1, 2), r(1)}, {r(1), r(0)}}, mode);
        CHECK(e.lo == r(1, 2));
        CHECK(e.hi == r(1, 2));
        CHECK_THROWS_AS(weighted_median_interval(Points{{r(0), r(0)}}, mode), InvalidInput);
    }
}

TEST_CASE("selection and sorting agree and match the definition") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 300; ++round) {
        Points pts;
        int k = 1 + static_cast<int>(rng() % 9);
        for (int i = 0; i < k; ++i)
            pts.emplace_back(r(static_cast<long>(rng() % 7), 6), r(static_cast<long>(rng() % 4)));
        pts.emplace_back(r(static_cast<long>(rng() % 7), 6), r(1));
        auto a = weighted_median_interval(pts, SelectMode::quickselect);
        auto b = weighted_median_interval(pts, SelectMode::sorting);
        CHECK(a.lo == b.lo);
        CHECK(a.hi == b.hi);
        Rational total;
        for (auto& p : pts)
            total += p.second;
        // every x in [lo, hi] has at most half the weight strictly on each side
        for (const Rational* x : {&a.lo, &a.hi}) {
            Rational below, above;
            for (auto& p : pts) {
                if (p.first < *x)
                    below += p.second;
                if (p.first > *x)
                    above += p.second;
            }
            CHECK(2 * below <= total);
            CHECK(2 * above <= total);
        }
        // nothing with positive weight strictly inside
        for (auto& p : pts)
            if (sgn(p.second) > 0)
                CHECK_FALSE((p.first > a.lo && p.first < a.hi));
    }
}

TEST_CASE("geometric median examples on the square") {
    Square s;
    auto prep = [&](std::vector<Terminal> t) { return prepare_terminals(s.g, s.tp, std::move(t)); };

    auto whole = geometric_median(s.g, s.tp, prep({at(0), at(3)}));
    CHECK(whole.vertices.size() == 4);
    CHECK(whole.edges.size() == 4);
    for (const auto& v : whole.vertices)
        CHECK(v.coords.empty());

    auto corner = geometric_median(s.g, s.tp, prep({at(0), at(1), at(2)}));
    REQUIRE(corner.vertices.size() == 1);
    CHECK(corner.vertices[0].anchor == 0);
    CHECK(corner.vertices[0].coords.empty());
    CHECK(corner.edges.empty());

    auto inner = geometric_median(s.g, s.tp, prep({at(0), at(3), at(0, {{0, r(1, 2)}, {1, r(1, 4)}})}));
    REQUIRE(inner.vertices.size() == 1);
    CHECK(inner.vertices[0].anchor == 0);
    CHECK(inner.vertices[0].coords == Coords{{0, r(1, 2)}, {1, r(1, 4)}});

    CHECK_THROWS_AS(geometric_median(s.g, s.tp, {}), InvalidInput);
}

TEST_CASE("geometric median of one interior point is that point") {
    Graph p2 = make_path(2);
    auto tp = theta_classes_lexbfs(p2, 0);
    auto sk = geometric_median(p2, tp, prepare_terminals(p2, tp, {at(0, {{0, r(3, 10)}})}));
    REQUIRE(sk.vertices.size() == 1);
    CHECK(sk.vertices[0].coords == Coords{{0, r(3, 10)}});
    CHECK(sk.edges.empty());

    // measured from the far end the same point is found
    auto back = geometric_median(p2, tp, prepare_terminals(p2, tp, {at(1, {{0, r(7, 10)}})}));
    REQUIRE(back.vertices.size() == 1);
    CHECK(back.vertices[0].anchor == 0);
    CHECK(back.vertices[0].coords == Coords{{0, r(3, 10)}});

    // two interior points: the segment between them
    auto seg = geometric_median(p2, tp, prepare_terminals(p2, tp, {at(0, {{0, r(3, 10)}}), at(0, {{0, r(7, 10)}})}));
    REQUIRE(seg.vertices.size() == 2);
    CHECK(seg.edges.size() == 1);
}

TEST_CASE("vertex terminals reduce to the graph median") {
    std::uint64_t seed = 40;
    for (int i = 0; i < 12; ++i) {
        Graph g = make_random_median(6, 5, ++seed).graph;
        auto tp = theta_classes_lexbfs(g, 0);
        auto terms = prepare_terminals(g, tp, random_terminals(g, tp, 1 + i % 6, seed, true));
        std::vector<Rational> w(g.vertex_count());
        for (const auto& t : terms)
            w[t.base] += t.weight;
        auto med = median_set(g, tp, halfspace_weights(g, w, tp));
        auto sk = geometric_median(g, tp, terms);
        std::vector<Vertex> verts;
        for (const auto& v : sk.vertices) {
            CHECK(v.coords.empty());
            verts.push_back(v.anchor);
        }
        std::sort(verts.begin(), verts.end());
        CHECK(verts == med.vertices);
        CHECK(sk.edges.size() == med.induced_edges.size());
    }
}

TEST_CASE("geometric median agrees with candidate enumeration") {
    std::uint64_t seed = 900;
    for (int i = 0; i < 25; ++i) {
        Graph g = i % 3 == 0 ? make_grid(2 + i % 3, 3) : make_random_median(5, 4, ++seed).graph;
        auto tp = theta_classes_lexbfs(g, 0);
        auto raw = random_terminals(g, tp, 1 + i % 5, ++seed);
        auto terms = prepare_terminals(g, tp, raw);
        ComplexOracle oracle(g, tp);
        auto opt = oracle.brute_geometric_median(raw);
        for (auto mode : {SelectMode::quickselect, SelectMode::sorting}) {
            auto sk = geometric_median(g, tp, terms, mode);
            CHECK(sk.vertices.size() <= g.vertex_count());
            CHECK(sk.edges.size() <= g.edge_count());
            std::vector<std::vector<Rational>> pts;
            for (const auto& v : sk.vertices) {
                auto x = oracle.chi(v.anchor, v.coords);
                CHECK(oracle.F(raw, x) == opt.value);
                pts.push_back(std::move(x));
            }
            std::sort(pts.begin(), pts.end());
            CHECK(pts == opt.minimizers);
        }
        CHECK(geometric_wiener(g, tp, terms) == oracle.wiener(raw));
    }
}

TEST_CASE("geometric wiener examples") {
    Square s;
    CHECK(geometric_wiener(s.g, s.tp, prepare_terminals(s.g, s.tp, {at(0), at(3)})) == 2);
    CHECK(geometric_wiener(s.g, s.tp, prepare_terminals(s.g, s.tp, {at(1)})) == 0);
    Graph p2 = make_path(2);
    auto tp = theta_classes_lexbfs(p2, 0);
    auto terms = prepare_terminals(p2, tp, {at(0), at(0, {{0, r(1, 2)}}), at(1)});
    CHECK(geometric_wiener(p2, tp, terms) == 2);
}
