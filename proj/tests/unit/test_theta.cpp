#include "medgraph/errors.hpp"
#include "medgraph/testkit.hpp"
#include "medgraph/theta.hpp"

#include <doctest.h>

#include <bit>

#include <algorithm>
#include <cmath>

using namespace medgraph;
using namespace medgraph::testkit;

namespace {

std::vector<Vertex> parents(const SearchOrder& so) {
    std::vector<Vertex> p;
    for (Vertex v : so.order)
        p.push_back(so.parent[v]);
    return p;
}

std::vector<std::uint32_t> pred_ranks(const SearchOrder& so, Vertex v) {
    std::vector<std::uint32_t> r;
    for (const auto& p : so.predecessors(v))
        r.push_back(so.rank[p.neighbor]);
    return r;
}

// a may precede b in a LexBFS iff its label is not smaller: at the first
// difference a has the earlier predecessor, or b's list is a prefix of a's.
bool lex_not_after(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
        if (a[i] != b[i])
            return a[i] < b[i];
    return a.size() >= b.size();
}

void check_search_order(const Graph& g, const SearchOrder& so, bool lex) {
    const std::size_t n = g.vertex_count();
    REQUIRE(so.order.size() == n);
    auto dist = bfs_distances(g, so.basepoint);
    CHECK(so.order[0] == so.basepoint);
    for (std::size_t r = 0; r < n; ++r) {
        Vertex v = so.order[r];
        CHECK(so.rank[v] == r);
        CHECK(so.dist[v] == dist[v]);
        if (r > 0)
            CHECK(dist[so.order[r - 1]] <= dist[v]);
        auto ranks = pred_ranks(so, v);
        CHECK(std::is_sorted(ranks.begin(), ranks.end()));
        std::size_t expected = 0;
        for (const auto& [w, e] : g.neighbors(v))
            expected += dist[w] + 1 == dist[v];
        CHECK(ranks.size() == expected);
        if (v != so.basepoint)
            CHECK(so.parent[v] == so.predecessors(v)[0].neighbor);
    }
    // parents are monotone along the order
    for (std::size_t r = 2; r < n; ++r)
        CHECK(so.rank[so.parent[so.order[r - 1]]] <= so.rank[so.parent[so.order[r]]]);
    if (!lex)
        return;
    for (std::size_t r = 1; r + 1 < n; ++r) {
        Vertex a = so.order[r], b = so.order[r + 1];
        if (dist[a] == dist[b])
            CHECK(lex_not_after(pred_ranks(so, a), pred_ranks(so, b)));
    }
}

std::vector<Graph> small_suite() {
    std::vector<Graph> s;
    s.push_back(make_path(1));
    s.push_back(make_path(5));
    s.push_back(make_hypercube(3));
    s.push_back(make_hypercube(4));
    s.push_back(make_grid(3, 3));
    s.push_back(make_product_of_paths({3, 2, 4}));
    s.push_back(make_random_tree(40, 7));
    for (std::uint64_t seed = 1; seed <= 6; ++seed)
        s.push_back(make_random_median(7, 4 + seed, seed).graph);
    return s;
}

} // namespace

TEST_CASE("bfs_order small examples") {
    auto p3 = bfs_order(make_path(3), 0);
    CHECK(p3.order == std::vector<Vertex>{0, 1, 2});
    CHECK(parents(p3) == std::vector<Vertex>{kNoVertex, 0, 1});

    Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(bfs_order(star, 0).order == std::vector<Vertex>{0, 1, 2, 3});

    auto q2 = bfs_order(make_hypercube(2), 0);
    CHECK(q2.order == std::vector<Vertex>{0, 1, 2, 3});
    auto l3 = q2.predecessors(3);
    REQUIRE(l3.size() == 2);
    CHECK(l3[0].neighbor == 1);
    CHECK(l3[1].neighbor == 2);
}

TEST_CASE("lexbfs_order small examples") {
    CHECK(lexbfs_order(make_path(3), 0).order == std::vector<Vertex>{0, 1, 2});
    CHECK(lexbfs_order(make_hypercube(2), 0).order == std::vector<Vertex>{0, 1, 2, 3});
    Graph q3 = make_hypercube(3);
    auto so = lexbfs_order(q3, 0);
    check_search_order(q3, so, true);
    CHECK(check_fellow_traveler(q3, so));
}

TEST_CASE("lexbfs moves a vertex forward when it gains a second predecessor") {
    // square 0-1-5-3 with pendant vertices 4 (below 1) and 6 (below 2)
    Graph g(7, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {3, 5}, {2, 6}});
    auto bfs = bfs_order(g, 0);
    auto lex = lexbfs_order(g, 0);
    CHECK(bfs.order == std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6});
    CHECK(lex.order == std::vector<Vertex>{0, 1, 2, 3, 5, 4, 6});
    check_search_order(g, bfs, false);
    check_search_order(g, lex, true);
    CHECK(canonical_partition(theta_classes_lexbfs(g, 0)) == brute_theta(g));
}

TEST_CASE("search orders satisfy their axioms on assorted median graphs") {
    for (const Graph& g : small_suite())
        for (Vertex v0 : {Vertex{0}, static_cast<Vertex>(g.vertex_count() / 2)}) {
            check_search_order(g, bfs_order(g, v0), false);
            auto lex = lexbfs_order(g, v0);
            check_search_order(g, lex, true);
            CHECK(check_fellow_traveler(g, lex));
        }
}

TEST_CASE("fellow traveler check detects non-adjacent parents") {
    Graph q3 = make_hypercube(3);
    auto so = bfs_order(q3, 0);
    CHECK(check_fellow_traveler(q3, so));
    // 3 and 7 are adjacent; give 7 the parent 6, which is far from 1 = f(3)
    so.parent[7] = 6;
    so.parent[3] = 1;
    CHECK_FALSE(check_fellow_traveler(q3, so));
    for (std::size_t n : {2, 5, 9})
        CHECK(check_fellow_traveler(make_path(n), bfs_order(make_path(n), 0)));
}

TEST_CASE("theta classes of standard shapes") {
    for (auto algo : {theta_classes_bfs, theta_classes_lexbfs}) {
        auto q3 = algo(make_hypercube(3), 0);
        CHECK(q3.class_count() == 3);
        for (const auto& c : q3.classes)
            CHECK(c.size() == 4);
        auto p5 = algo(make_path(5), 0);
        CHECK(p5.class_count() == 4);
        for (const auto& c : p5.classes)
            CHECK(c.size() == 1);
        auto g3 = algo(make_grid(3, 3), 0);
        CHECK(g3.class_count() == 4);
        for (const auto& c : g3.classes)
            CHECK(c.size() == 3);
        Graph g10 = make_grid(10, 10);
        for (Vertex v0 : {0u, 37u, 99u}) {
            auto tp = algo(g10, v0);
            CHECK(tp.class_count() == 18);
            for (const auto& c : tp.classes)
                CHECK(c.size() == 10);
        }
    }
}

TEST_CASE("both algorithms agree with square closure") {
    for (const Graph& g : small_suite()) {
        auto brute = brute_theta(g);
        for (Vertex v0 = 0; v0 < g.vertex_count(); v0 += 7) {
            CHECK(canonical_partition(theta_classes_bfs(g, v0)) == brute);
            CHECK(canonical_partition(theta_classes_lexbfs(g, v0)) == brute);
        }
    }
    auto big = make_random_median(10, 8, 99).graph;
    CHECK(big.vertex_count() > 100);
    CHECK(canonical_partition(theta_classes_lexbfs(big, 0)) == brute_theta(big));
}

TEST_CASE("partition structure: roots, sides, distances") {
    for (const Graph& g : small_suite()) {
        Vertex v0 = static_cast<Vertex>(g.vertex_count() - 1);
        auto tp = theta_classes_lexbfs(g, v0);
        auto so = lexbfs_order(g, v0);
        auto dist = bfs_distances(g, v0);
        std::vector<int> seen(g.edge_count(), 0);
        for (ClassId c = 0; c < tp.class_count(); ++c) {
            EdgeId root = tp.classes[c].front();
            CHECK(so.predecessors(tp.sides[root].far).size() == 1);
            CHECK(tp.root_distance[c] == dist[tp.sides[root].far]);
            if (c > 0)
                CHECK(tp.root_distance[c - 1] <= tp.root_distance[c]);
            for (EdgeId e : tp.classes[c]) {
                ++seen[e];
                CHECK(tp.class_of[e] == c);
                CHECK(dist[tp.sides[e].near] + 1 == dist[tp.sides[e].far]);
            }
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; }));
    }
}

TEST_CASE("halfspaces are the two convex components left by a class") {
    for (const Graph& g : small_suite()) {
        if (g.vertex_count() > 120)
            continue;
        auto tp = theta_classes_lexbfs(g, 0);
        for (ClassId c = 0; c < tp.class_count(); ++c) {
            std::vector<Edge> rest;
            for (EdgeId e = 0; e < g.edge_count(); ++e)
                if (tp.class_of[e] != c)
                    rest.push_back(g.edge(e));
            // component labels by flood fill over the remaining edges
            std::vector<int> comp(g.vertex_count(), -1);
            std::vector<std::vector<Vertex>> adj(g.vertex_count());
            for (auto [u, v] : rest) {
                adj[u].push_back(v);
                adj[v].push_back(u);
            }
            int count = 0;
            for (Vertex s = 0; s < g.vertex_count(); ++s) {
                if (comp[s] >= 0)
                    continue;
                std::vector<Vertex> stack{s};
                comp[s] = count;
                while (!stack.empty()) {
                    Vertex x = stack.back();
                    stack.pop_back();
                    for (Vertex y : adj[x])
                        if (comp[y] < 0) {
                            comp[y] = count;
                            stack.push_back(y);
                        }
                }
                ++count;
            }
            CHECK(count == 2);
            EdgeId root = tp.classes[c].front();
            CHECK(comp[tp.sides[root].near] == comp[0]);
            CHECK(comp[tp.sides[root].far] != comp[0]);
            for (Vertex u = 0; u < g.vertex_count(); ++u)
                for (Vertex v = u + 1; v < g.vertex_count(); ++v)
                    if (comp[u] == comp[v])
                        for (Vertex x : interval(g, u, v))
                            CHECK(comp[x] == comp[u]);
        }
    }
}

TEST_CASE("dimension bounds") {
    for (const Graph& g : small_suite()) {
        auto so = lexbfs_order(g, 0);
        std::size_t d = 0;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            d = std::max<std::size_t>(d, so.predecessors(v).size());
        auto tp = theta_classes_lexbfs(g, 0);
        const double n = static_cast<double>(g.vertex_count());
        CHECK(g.edge_count() <= d * g.vertex_count());
        if (d > 0)
            CHECK(static_cast<double>(tp.class_count()) >= d * (std::pow(n, 1.0 / d) - 1) - 1e-9);
        // predecessor lists of distinct vertices share at most one vertex
        for (Vertex u = 0; u < g.vertex_count(); ++u)
            for (Vertex v = u + 1; v < g.vertex_count(); ++v) {
                std::size_t common = 0;
                for (const auto& a : so.predecessors(u))
                    for (const auto& b : so.predecessors(v))
                        common += a.neighbor == b.neighbor;
                CHECK(common <= 1);
            }
    }
}

TEST_CASE("non-median inputs are reported where detectable") {
    Graph c6 = make_cycle(6);
    CHECK_THROWS_AS(theta_classes_bfs(c6, 0), NotMedianGraph);
    CHECK_THROWS_AS(theta_classes_lexbfs(c6, 0), NotMedianGraph);
    Graph k3 = make_cycle(3);
    CHECK_THROWS_AS(theta_classes_bfs(k3, 0), NotMedianGraph);
    CHECK_THROWS_AS(theta_classes_lexbfs(k3, 0), NotMedianGraph);
    CHECK_THROWS_AS(theta_classes_lexbfs(make_path(3), 5), InvalidInput);
}

TEST_CASE("edge and class lookups") {
    Graph q3 = make_hypercube(3);
    EdgeIndex idx(q3);
    CHECK(idx.find(0, 1));
    CHECK(idx.find(1, 0) == idx.find(0, 1));
    CHECK_FALSE(idx.find(0, 3));
    auto tp = theta_classes_lexbfs(q3, 0);
    ClassIncidence inc(q3, tp);
    for (Vertex v = 0; v < 8; ++v)
        for (ClassId c = 0; c < 3; ++c) {
            auto w = inc.across(v, c);
            REQUIRE(w);
            CHECK(std::popcount(v ^ *w) == 1);
            CHECK(*inc.across(*w, c) == v);
        }
    CHECK_FALSE(inc.find(0, 3));
}
