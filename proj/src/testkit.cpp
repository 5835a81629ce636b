#include "medgraph/testkit.hpp"

#include "medgraph/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace medgraph::testkit {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(salt)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

// All assignments of d variables satisfying every unit and 2-clause that
// holds on all seeds, sorted.
std::vector<std::uint32_t> median_hull(const std::vector<std::uint32_t>& seeds, std::size_t d) {
    // seen[i][j]: bit (2a + b) set when some seed has x_i = a, x_j = b
    std::vector<std::vector<std::uint8_t>> seen(d, std::vector<std::uint8_t>(d, 0));
    for (auto s : seeds)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                seen[i][j] |= std::uint8_t(1u << (2 * ((s >> i) & 1u) + ((s >> j) & 1u)));
    std::vector<std::uint32_t> out;
    auto rec = [&](auto&& self, std::size_t j, std::uint32_t partial) -> void {
        if (j == d) {
            out.push_back(partial);
            return;
        }
        for (std::uint32_t b = 0; b < 2; ++b) {
            bool ok = true;
            for (std::size_t i = 0; i <= j && ok; ++i) {
                std::uint32_t a = i == j ? b : (partial >> i) & 1u;
                ok = (seen[i][j] >> (2 * a + b)) & 1u;
            }
            if (ok)
                self(self, j + 1, partial | (b << j));
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

void require(bool cond, const std::string& what) {
    if (!cond)
        throw InvalidInput(what);
}

mpz_class mpz_from_i128(__int128 x) {
    bool neg = x < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
    mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
    mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

// Weights scaled to integers by the lcm of their denominators.
struct ScaledWeights {
    mpz_class scale;
    std::vector<mpz_class> a;
    double max_abs = 0;
};

ScaledWeights scale_weights(const WeightFn& w) {
    ScaledWeights s;
    s.scale = 1;
    for (const auto& x : w.values())
        mpz_lcm(s.scale.get_mpz_t(), s.scale.get_mpz_t(), x.get_den_mpz_t());
    s.a.reserve(w.size());
    for (const auto& x : w.values()) {
        s.a.push_back(x.get_num() * (s.scale / x.get_den()));
        s.max_abs = std::max(s.max_abs, std::fabs(s.a.back().get_d()));
    }
    return s;
}

std::uint32_t max_distance(const DistanceMatrix& d) {
    std::uint32_t m = 0;
    for (Vertex u = 0; u < d.size(); ++u)
        for (Vertex v = 0; v < d.size(); ++v)
            m = std::max(m, d(u, v));
    return m;
}

} // namespace

Graph make_path(std::size_t n) { return make_product_of_paths({n}); }

Graph make_cycle(std::size_t n) {
    require(n >= 3, "cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i)
        edges.push_back({i, static_cast<Vertex>((i + 1) % n)});
    return Graph(n, std::move(edges));
}

Graph make_hypercube(std::size_t d) {
    require(d <= 24, "hypercube dimension too large");
    return make_product_of_paths(std::vector<std::size_t>(d, 2));
}

Graph make_complete_bipartite(std::size_t a, std::size_t b) {
    require(a >= 1 && b >= 1, "complete bipartite graph needs nonempty sides");
    std::vector<Edge> edges;
    for (Vertex i = 0; i < a; ++i)
        for (Vertex j = 0; j < b; ++j)
            edges.push_back({i, static_cast<Vertex>(a + j)});
    return Graph(a + b, std::move(edges));
}

Graph make_product_of_paths(const std::vector<std::size_t>& lengths) {
    std::size_t n = 1;
    for (auto len : lengths) {
        require(len >= 1, "path length must be positive");
        n *= len;
        require(n < (std::size_t{1} << 31), "product too large");
    }
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) {
        std::size_t stride = 1, rest = v;
        for (auto len : lengths) {
            if (rest % len + 1 < len)
                edges.push_back({v, static_cast<Vertex>(v + stride)});
            rest /= len;
            stride *= len;
        }
    }
    return Graph(n, std::move(edges));
}

Graph make_grid(std::size_t rows, std::size_t cols) { return make_product_of_paths({cols, rows}); }

Graph make_random_tree(std::size_t n, std::uint64_t seed) {
    require(n >= 1, "tree needs a vertex");
    std::mt19937_64 rng(mix_seed(seed, 1));
    std::vector<Edge> edges;
    for (Vertex v = 1; v < n; ++v)
        edges.push_back({static_cast<Vertex>(std::uniform_int_distribution<Vertex>(0, v - 1)(rng)), v});
    return Graph(n, std::move(edges));
}

MedianInstance make_random_median(std::size_t d, std::size_t seeds, std::uint64_t seed) {
    if (d > 20)
        throw CapExceeded("random median dimension above 20");
    require(seeds >= 1, "need at least one seed vertex");
    std::mt19937_64 rng(mix_seed(seed, 2));
    const std::uint32_t full = d == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << d) - 1);
    std::vector<std::uint32_t> pts;
    for (std::size_t i = 0; i < seeds; ++i)
        pts.push_back(static_cast<std::uint32_t>(rng()) & full);

    std::vector<std::uint32_t> hull;
    std::vector<std::int32_t> where(std::size_t{1} << d);
    while (true) {
        hull = median_hull(pts, d);
        std::fill(where.begin(), where.end(), -1);
        for (std::size_t i = 0; i < hull.size(); ++i)
            where[hull[i]] = static_cast<std::int32_t>(i);
        // BFS through the whole cube from the component of hull[0]
        std::vector<std::int32_t> from(where.size(), -2);
        std::queue<std::uint32_t> bfs;
        std::vector<char> in_comp(hull.size(), 0);
        std::vector<std::uint32_t> stack{hull[0]};
        in_comp[0] = 1;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            from[x] = -1;
            bfs.push(x);
            for (std::size_t b = 0; b < d; ++b) {
                auto y = x ^ (1u << b);
                if (where[y] >= 0 && !in_comp[where[y]]) {
                    in_comp[where[y]] = 1;
                    stack.push_back(y);
                }
            }
        }
        if (std::all_of(in_comp.begin(), in_comp.end(), [](char c) { return c != 0; }))
            break;
        // first hull vertex outside the component; step one bit off the component toward it
        std::uint32_t bridge = 0;
        bool found = false;
        while (!bfs.empty() && !found) {
            auto x = bfs.front();
            bfs.pop();
            for (std::size_t b = 0; b < d && !found; ++b) {
                auto y = x ^ (1u << b);
                if (from[y] != -2)
                    continue;
                from[y] = static_cast<std::int32_t>(x);
                if (where[y] >= 0) {
                    // walk back to the vertex adjacent to the component
                    auto z = y;
                    while (from[from[z]] != -1)
                        z = static_cast<std::uint32_t>(from[z]);
                    bridge = z;
                    found = true;
                } else {
                    bfs.push(y);
                }
            }
        }
        pts.push_back(bridge);
    }

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < hull.size(); ++i)
        for (std::size_t b = 0; b < d; ++b) {
            auto y = hull[i] | (1u << b);
            if (y != hull[i] && where[y] >= 0)
                edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(where[y])});
        }
    return MedianInstance{Graph(hull.size(), std::move(edges)), std::move(hull)};
}

EventStructure make_random_event_structure(std::size_t k, std::uint64_t seed, double order_density,
                                           double conflict_density) {
    std::mt19937_64 rng(mix_seed(seed, 3));
    std::bernoulli_distribution take_order(order_density), take_conflict(conflict_density);
    std::vector<Event> label(k);
    std::iota(label.begin(), label.end(), 0);
    std::shuffle(label.begin(), label.end(), rng);
    // up[i][j]: i <= j in the index order before relabelling
    std::vector<std::vector<char>> up(k, std::vector<char>(k, 0));
    EventStructure es;
    es.events = k;
    for (std::size_t j = 0; j < k; ++j) {
        up[j][j] = 1;
        for (std::size_t i = 0; i < j; ++i)
            if (take_order(rng)) {
                es.order.emplace_back(label[i], label[j]);
                for (std::size_t h = 0; h <= i; ++h)
                    if (up[h][i])
                        up[h][j] = 1;
            }
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            if (!take_conflict(rng))
                continue;
            bool common = false;
            for (std::size_t x = 0; x < k && !common; ++x)
                common = up[i][x] && up[j][x];
            if (!common)
                es.conflict.emplace_back(label[i], label[j]);
        }
    return es;
}

WeightFn random_weights(std::size_t n, std::uint64_t seed, double zero_fraction) {
    std::mt19937_64 rng(mix_seed(seed, 4));
    std::bernoulli_distribution zero(zero_fraction);
    std::uniform_int_distribution<long> num(0, 20), den(1, 12);
    std::vector<Rational> w(n);
    for (auto& x : w) {
        if (zero(rng))
            continue;
        long p = num(rng);
        x = Rational(p, den(rng));
        x.canonicalize();
    }
    return WeightFn(std::move(w));
}

WeightFn egalitarian_weights(const Graph& g, const ThetaPartition& tp, ClassId c, std::uint64_t seed) {
    std::mt19937_64 rng(mix_seed(seed, 5));
    std::uniform_int_distribution<long> num(1, 20), den(1, 12);
    // near side of c: reachable from the basepoint without crossing c
    std::vector<char> near(g.vertex_count(), 0);
    std::vector<Vertex> stack{tp.basepoint};
    near[tp.basepoint] = 1;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        for (const auto& [y, e] : g.neighbors(x))
            if (tp.class_of[e] != c && !near[y]) {
                near[y] = 1;
                stack.push_back(y);
            }
    }
    std::vector<Rational> w(g.vertex_count());
    Rational sum_near, sum_far;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        w[v] = Rational(num(rng), den(rng));
        w[v].canonicalize();
        (near[v] ? sum_near : sum_far) += w[v];
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!near[v])
            w[v] = w[v] * sum_near / sum_far;
    return WeightFn(std::move(w));
}

std::vector<Terminal> random_terminals(const Graph& g, const ThetaPartition& tp, std::size_t count,
                                       std::uint64_t seed, bool vertices_only) {
    std::mt19937_64 rng(mix_seed(seed, 6));
    std::uniform_int_distribution<Vertex> vertex(0, static_cast<Vertex>(g.vertex_count() - 1));
    std::uniform_int_distribution<long> den(2, 6), wnum(1, 10), wden(1, 2);
    std::bernoulli_distribution take(0.6), edge_value(0.1);
    ClassIncidence inc(g, tp);
    auto square = [&](Vertex v, ClassId i, ClassId j) {
        auto a = inc.across(v, i), b = inc.across(v, j);
        if (!a || !b)
            return false;
        auto x = inc.across(*a, j), y = inc.across(*b, i);
        return x && y && *x == *y && *x != v;
    };
    std::vector<Terminal> out;
    for (std::size_t t = 0; t < count; ++t) {
        Terminal term;
        term.base = vertex(rng);
        term.weight = Rational(wnum(rng), wden(rng));
        term.weight.canonicalize();
        if (!vertices_only) {
            std::vector<ClassId> chosen;
            for (const auto& [w, e] : g.neighbors(term.base)) {
                ClassId c = tp.class_of[e];
                if (!take(rng))
                    continue;
                if (std::all_of(chosen.begin(), chosen.end(), [&](ClassId o) { return square(term.base, o, c); }))
                    chosen.push_back(c);
            }
            for (ClassId c : chosen) {
                long q = den(rng);
                long p = edge_value(rng) ? (rng() % 2 ? q : 0)
                                         : std::uniform_int_distribution<long>(1, q - 1)(rng);
                Rational eps(p, q);
                eps.canonicalize();
                term.coords.emplace_back(c, eps);
            }
        }
        out.push_back(std::move(term));
    }
    return out;
}

Graph generate(const std::string& kind, const std::vector<std::size_t>& params, std::uint64_t seed) {
    auto need = [&](std::size_t count) {
        if (params.size() != count)
            throw InvalidInput("generator '" + kind + "' takes " + std::to_string(count) + " parameters");
    };
    if (kind == "path") {
        need(1);
        return make_path(params[0]);
    }
    if (kind == "cycle") {
        need(1);
        return make_cycle(params[0]);
    }
    if (kind == "hypercube") {
        need(1);
        return make_hypercube(params[0]);
    }
    if (kind == "grid") {
        need(2);
        return make_grid(params[0], params[1]);
    }
    if (kind == "product") {
        require(!params.empty(), "generator 'product' takes at least one length");
        return make_product_of_paths(params);
    }
    if (kind == "random-tree") {
        need(1);
        return make_random_tree(params[0], seed);
    }
    if (kind == "random-median") {
        need(2);
        return make_random_median(params[0], params[1], seed).graph;
    }
    throw InvalidInput("unknown generator '" + kind + "'");
}

MedianVerdict verify_median_graph(const Graph& g, std::size_t cap) {
    const std::size_t n = g.vertex_count();
    if (n > cap)
        throw CapExceeded("median verification of " + std::to_string(n) + " vertices exceeds cap " +
                          std::to_string(cap));
    DistanceMatrix d = apsp_bfs(g);
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> iv(n * n * words, 0);
    auto row = [&](Vertex u, Vertex v) { return iv.data() + (static_cast<std::size_t>(u) * n + v) * words; };
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u; v < n; ++v) {
            auto* r = row(u, v);
            for (Vertex x = 0; x < n; ++x)
                if (d(u, x) + d(x, v) == d(u, v))
                    r[x / 64] |= std::uint64_t{1} << (x % 64);
            std::copy(r, r + words, row(v, u));
        }
    MedianVerdict verdict;
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y)
            for (Vertex z = y + 1; z < n; ++z) {
                const auto *a = row(x, y), *b = row(y, z), *c = row(x, z);
                std::size_t count = 0;
                for (std::size_t w = 0; w < words; ++w)
                    count += std::popcount(a[w] & b[w] & c[w]);
                if (count != 1) {
                    verdict.median = false;
                    verdict.witness = {x, y, z};
                    verdict.intersection_size = count;
                    return verdict;
                }
            }
    return verdict;
}

std::vector<std::vector<EdgeId>> brute_theta(const Graph& g) {
    const std::size_t m = g.edge_count();
    std::vector<EdgeId> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](EdgeId x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](EdgeId a, EdgeId b) { parent[find(a)] = find(b); };
    EdgeIndex index(g);
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        auto nb = g.neighbors(u);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                // squares u - a - w - b
                for (const auto& [w, e_aw] : g.neighbors(nb[i].neighbor)) {
                    if (w == u)
                        continue;
                    if (auto e_bw = index.find(nb[j].neighbor, w)) {
                        unite(nb[i].edge, *e_bw);
                        unite(nb[j].edge, e_aw);
                    }
                }
            }
    }
    std::map<EdgeId, std::vector<EdgeId>> groups;
    for (EdgeId e = 0; e < m; ++e)
        groups[find(e)].push_back(e);
    std::vector<std::vector<EdgeId>> out;
    for (auto& [root, edges] : groups)
        out.push_back(std::move(edges));
    std::sort(out.begin(), out.end());
    return out;
}

DistanceMatrix apsp_bfs(const Graph& g) {
    const std::size_t n = g.vertex_count();
    DistanceMatrix d(n);
    for (Vertex s = 0; s < n; ++s) {
        auto dist = bfs_distances(g, s);
        for (Vertex v = 0; v < n; ++v)
            d.at(s, v) = dist[v];
    }
    return d;
}

BruteMedian brute_median(const Graph& g, const WeightFn& w) { return brute_median(apsp_bfs(g), w); }

BruteMedian brute_median(const DistanceMatrix& d, const WeightFn& w) {
    const std::size_t n = d.size();
    require(w.size() == n, "weight function does not match the graph");
    ScaledWeights s = scale_weights(w);
    std::vector<mpz_class> f(n);
    double bound = s.max_abs * static_cast<double>(n) * static_cast<double>(max_distance(d));
    if (bound < 0x1p62) {
        std::vector<std::int64_t> a(n);
        for (Vertex v = 0; v < n; ++v)
            a[v] = s.a[v].get_si();
        for (Vertex x = 0; x < n; ++x) {
            std::int64_t sum = 0;
            for (Vertex v = 0; v < n; ++v)
                sum += a[v] * static_cast<std::int64_t>(d(x, v));
            f[x] = static_cast<long>(sum);
        }
    } else {
        for (Vertex x = 0; x < n; ++x)
            for (Vertex v = 0; v < n; ++v)
                f[x] += s.a[v] * d(x, v);
    }
    BruteMedian res;
    mpz_class best = *std::min_element(f.begin(), f.end());
    res.f.reserve(n);
    for (Vertex x = 0; x < n; ++x) {
        Rational r(f[x], s.scale);
        r.canonicalize();
        res.f.push_back(std::move(r));
        if (f[x] == best)
            res.argmin.push_back(x);
    }
    return res;
}

Rational brute_wiener(const DistanceMatrix& d, const WeightFn& w) {
    const std::size_t n = d.size();
    require(w.size() == n, "weight function does not match the graph");
    ScaledWeights s = scale_weights(w);
    mpz_class total = 0;
    double bound = s.max_abs * s.max_abs * static_cast<double>(max_distance(d)) *
                   static_cast<double>(n) * static_cast<double>(n);
    if (bound < 0x1p120) {
        std::vector<__int128> a(n);
        for (Vertex v = 0; v < n; ++v)
            a[v] = s.a[v].get_si();
        __int128 sum = 0;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                sum += a[u] * a[v] * d(u, v);
        total = mpz_from_i128(sum);
    } else {
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                total += s.a[u] * s.a[v] * d(u, v);
    }
    Rational r(total, s.scale * s.scale);
    r.canonicalize();
    return r;
}

std::vector<Vertex> majority_rule_intersection_bruteforce(const Graph& g, const WeightFn& w) {
    const std::size_t n = g.vertex_count();
    DistanceMatrix d = apsp_bfs(g);
    Rational total = w.total();
    std::vector<char> keep(n, 1);
    for (const auto& e : g.edges())
        for (auto [u, v] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
            Rational side;
            for (Vertex x = 0; x < n; ++x)
                if (d(x, u) < d(x, v))
                    side += w[x];
            if (2 * side <= total)
                continue;
            for (Vertex x = 0; x < n; ++x)
                if (d(x, u) >= d(x, v))
                    keep[x] = 0;
        }
    std::vector<Vertex> out;
    for (Vertex x = 0; x < n; ++x)
        if (keep[x])
            out.push_back(x);
    return out;
}

std::vector<std::vector<char>> class_signatures(const Graph& g, const ThetaPartition& tp) {
    SearchOrder so = bfs_order(g, tp.basepoint);
    std::vector<std::vector<char>> sig(g.vertex_count(), std::vector<char>(tp.class_count(), 0));
    for (Vertex v : so.order) {
        if (v == tp.basepoint)
            continue;
        const Incidence& p = so.predecessors(v)[0];
        sig[v] = sig[p.neighbor];
        sig[v][tp.class_of[p.edge]] = 1;
    }
    return sig;
}

ComplexOracle::ComplexOracle(const Graph& g, const ThetaPartition& tp)
    : g_(&g), tp_(&tp), inc_(g, tp), sig_(class_signatures(g, tp)) {}

std::vector<Rational> ComplexOracle::chi(Vertex base, const Coords& coords) const {
    if (base >= g_->vertex_count())
        throw InvalidInput("point base out of range");
    std::vector<Rational> x(tp_->class_count());
    for (std::size_t c = 0; c < x.size(); ++c)
        x[c] = sig_[base][c];
    for (const auto& [c, eps] : coords) {
        if (c >= x.size() || !inc_.find(base, c))
            throw InvalidInput("point coordinate on a class not incident to its base");
        x[c] = sig_[base][c] ? Rational(1 - eps) : eps;
    }
    return x;
}

Rational ComplexOracle::distance(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += abs(a[i] - b[i]);
    return s;
}

Rational ComplexOracle::F(const std::vector<Terminal>& terminals, const std::vector<Rational>& point) const {
    Rational s;
    for (const auto& t : terminals)
        s += t.weight * distance(chi(t), point);
    return s;
}

Rational ComplexOracle::wiener(const std::vector<Terminal>& terminals) const {
    std::vector<std::vector<Rational>> pts;
    for (const auto& t : terminals)
        pts.push_back(chi(t));
    Rational s;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            s += terminals[i].weight * terminals[j].weight * distance(pts[i], pts[j]);
    return s;
}

ComplexOracle::Optimum ComplexOracle::brute_geometric_median(const std::vector<Terminal>& terminals,
                                                             std::size_t cap) const {
    const std::size_t q = tp_->class_count();
    std::vector<std::vector<Rational>> pts;
    std::vector<std::vector<Rational>> values(q);
    for (const auto& t : terminals) {
        pts.push_back(chi(t));
        for (std::size_t c = 0; c < q; ++c)
            if (sgn(pts.back()[c]) > 0 && pts.back()[c] < 1)
                values[c].push_back(pts.back()[c]);
    }
    for (auto& v : values) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    // two classes cross iff all four side combinations occur
    std::vector<std::vector<char>> cross(q, std::vector<char>(q, 0));
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = i + 1; j < q; ++j) {
            int seen = 0;
            for (const auto& s : sig_)
                seen |= 1 << (2 * s[i] + s[j]);
            cross[i][j] = cross[j][i] = seen == 15;
        }

    Optimum opt;
    bool first = true;
    auto consider = [&](std::vector<Rational> x) {
        if (++opt.candidates > cap)
            throw CapExceeded("more than " + std::to_string(cap) + " candidate points");
        Rational f;
        for (std::size_t p = 0; p < pts.size(); ++p)
            f += terminals[p].weight * distance(pts[p], x);
        if (first || f < opt.value) {
            first = false;
            opt.value = f;
            opt.minimizers.clear();
        }
        if (f == opt.value)
            opt.minimizers.push_back(std::move(x));
    };
    for (Vertex v = 0; v < g_->vertex_count(); ++v) {
        std::vector<ClassId> incident;
        for (const auto& inc : g_->neighbors(v))
            incident.push_back(tp_->class_of[inc.edge]);
        std::vector<Rational> base(q);
        for (std::size_t c = 0; c < q; ++c)
            base[c] = sig_[v][c];
        for (std::uint32_t mask = 0; mask < (1u << incident.size()); ++mask) {
            std::vector<ClassId> k;
            for (std::size_t i = 0; i < incident.size(); ++i)
                if (mask >> i & 1u)
                    k.push_back(incident[i]);
            bool ok = true;
            for (std::size_t i = 0; i < k.size() && ok; ++i) {
                ok = !values[k[i]].empty();
                for (std::size_t j = i + 1; j < k.size() && ok; ++j)
                    ok = cross[k[i]][k[j]] != 0;
            }
            if (!ok)
                continue;
            std::vector<std::size_t> pick(k.size(), 0);
            while (true) {
                auto x = base;
                for (std::size_t i = 0; i < k.size(); ++i)
                    x[k[i]] = values[k[i]][pick[i]];
                consider(std::move(x));
                std::size_t i = 0;
                while (i < k.size() && ++pick[i] == values[k[i]].size())
                    pick[i++] = 0;
                if (i == k.size())
                    break;
            }
        }
    }
    std::sort(opt.minimizers.begin(), opt.minimizers.end());
    opt.minimizers.erase(std::unique(opt.minimizers.begin(), opt.minimizers.end()), opt.minimizers.end());
    return opt;
}

BruteEsMedian brute_es_median(const Domain& d, const WeightedConfigurations& wc) {
    BruteEsMedian res;
    for (std::size_t x = 0; x < d.configs.size(); ++x) {
        Rational f;
        for (std::size_t j = 0; j < wc.configs.size(); ++j) {
            std::vector<Event> diff;
            std::set_symmetric_difference(d.configs[x].begin(), d.configs[x].end(), wc.configs[j].begin(),
                                          wc.configs[j].end(), std::back_inserter(diff));
            f += wc.weights[j] * static_cast<unsigned long>(diff.size());
        }
        if (x == 0 || f < res.value) {
            res.value = f;
            res.argmin.clear();
        }
        if (f == res.value)
            res.argmin.push_back(x);
        res.f.push_back(std::move(f));
    }
    return res;
}

std::vector<std::uint32_t> twosat_solutions(const TwoSatFormula& f) {
    if (f.variables > 24)
        throw CapExceeded("solution enumeration above 24 variables");
    auto holds = [](std::uint32_t mask, int lit) {
        bool value = (mask >> (std::abs(lit) - 1)) & 1u;
        return lit > 0 ? value : !value;
    };
    std::vector<std::uint32_t> out;
    for (std::uint32_t mask = 0; mask < (1u << f.variables); ++mask)
        if (std::all_of(f.clauses.begin(), f.clauses.end(),
                        [&](const auto& c) { return holds(mask, c.first) || holds(mask, c.second); }))
            out.push_back(mask);
    return out;
}

std::vector<std::uint32_t> configuration_masks(const Domain& d) {
    std::vector<std::uint32_t> out;
    for (const auto& c : d.configs) {
        std::uint32_t mask = 0;
        for (Event e : c) {
            if (e >= 32)
                throw CapExceeded("configuration masks limited to 32 events");
            mask |= 1u << e;
        }
        out.push_back(mask);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool graph_matches_domain(const Graph& g, const ThetaPartition& tp, const Domain& d) {
    if (g.vertex_count() != d.graph.vertex_count() || g.edge_count() != d.graph.edge_count())
        return false;
    std::map<Configuration, Vertex> index;
    for (Vertex i = 0; i < d.configs.size(); ++i)
        index.emplace(d.configs[i], i);
    auto sig = class_signatures(g, tp);
    std::vector<Vertex> image(g.vertex_count());
    std::vector<char> hit(d.configs.size(), 0);
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
        Configuration c;
        for (ClassId k = 0; k < tp.class_count(); ++k)
            if (sig[x][k])
                c.push_back(k);
        auto it = index.find(c);
        if (it == index.end() || hit[it->second])
            return false;
        hit[it->second] = 1;
        image[x] = it->second;
    }
    EdgeIndex target(d.graph);
    for (const auto& e : g.edges())
        if (!target.find(image[e.u], image[e.v]))
            return false;
    return image[tp.basepoint] == 0;
}

bool es_matches_pointed_domain(const EsRelations& rel, const Domain& d, const ThetaPartition& tp,
                               const EsRelations& back) {
    if (back.events != rel.events || tp.class_count() != rel.events)
        return false;
    std::map<Configuration, Vertex> index;
    for (Vertex i = 0; i < d.configs.size(); ++i)
        index.emplace(d.configs[i], i);
    EdgeIndex edges(d.graph);
    std::vector<ClassId> phi(rel.events);
    std::vector<char> hit(rel.events, 0);
    for (Event e = 0; e < rel.events; ++e) {
        Configuration strict = rel.below[e];
        Configuration down = strict;
        down.insert(std::lower_bound(down.begin(), down.end(), e), e);
        auto a = index.find(strict), b = index.find(down);
        if (a == index.end() || b == index.end())
            return false;
        auto edge = edges.find(a->second, b->second);
        if (!edge)
            return false;
        phi[e] = tp.class_of[*edge];
        if (hit[phi[e]])
            return false;
        hit[phi[e]] = 1;
    }
    for (Event a = 0; a < rel.events; ++a)
        for (Event b = 0; b < rel.events; ++b)
            if (rel.leq.test(a, b) != back.leq.test(phi[a], phi[b]) ||
                rel.conflict.test(a, b) != back.conflict.test(phi[a], phi[b]))
                return false;
    return true;
}

} // namespace medgraph::testkit
