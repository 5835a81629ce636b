#include "medgraph/graph.hpp"

#include "medgraph/errors.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace medgraph {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ == 0)
        throw InvalidInput("graph must have at least one vertex");
    if (n_ > UINT32_MAX - 1 || edges_.size() > UINT32_MAX - 1)
        throw InvalidInput("graph too large");

    std::vector<std::uint64_t> keys;
    keys.reserve(edges_.size());
    offsets_.assign(n_ + 1, 0);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto [u, v] = edges_[e];
        if (u >= n_ || v >= n_)
            throw InvalidInput("edge " + std::to_string(e) + ": endpoint out of range");
        if (u == v)
            throw InvalidInput("edge " + std::to_string(e) + ": loop at vertex " + std::to_string(u));
        keys.push_back((std::uint64_t{std::min(u, v)} << 32) | std::max(u, v));
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    std::sort(keys.begin(), keys.end());
    if (auto it = std::adjacent_find(keys.begin(), keys.end()); it != keys.end())
        throw InvalidInput("duplicate edge " + std::to_string(*it >> 32) + "-" +
                           std::to_string(*it & 0xffffffffu));

    for (std::size_t v = 0; v < n_; ++v)
        offsets_[v + 1] += offsets_[v];
    incidences_.resize(2 * edges_.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto [u, v] = edges_[e];
        incidences_[fill[u]++] = {v, static_cast<EdgeId>(e)};
        incidences_[fill[v]++] = {u, static_cast<EdgeId>(e)};
    }

    auto dist = bfs_distances(*this, 0);
    if (std::find(dist.begin(), dist.end(), kUnreached) != dist.end())
        throw InvalidInput("graph is disconnected");
}

WeightFn::WeightFn(std::vector<Rational> weights) : weights_(std::move(weights)) {
    for (std::size_t v = 0; v < weights_.size(); ++v)
        if (weights_[v] < 0)
            throw InvalidInput("negative weight at vertex " + std::to_string(v));
}

WeightFn WeightFn::unit(std::size_t n) { return WeightFn(std::vector<Rational>(n, Rational(1))); }

Rational WeightFn::total() const {
    Rational sum = 0;
    for (const auto& w : weights_)
        sum += w;
    return sum;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Graph parse_graph(std::string_view text) {
    auto lines = detail::tokenize(text);
    if (lines.empty())
        throw ParseError("empty graph file");
    detail::expect_tokens(lines[0], 2);
    const auto n = detail::parse_count(lines[0].tokens[0], lines[0].number);
    const auto m = detail::parse_count(lines[0].tokens[1], lines[0].number);
    if (lines.size() - 1 != m)
        throw ParseError("header announces " + std::to_string(m) + " edges, file has " +
                         std::to_string(lines.size() - 1));
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        detail::expect_tokens(lines[i], 2);
        auto u = detail::parse_count(lines[i].tokens[0], lines[i].number);
        auto v = detail::parse_count(lines[i].tokens[1], lines[i].number);
        if (u >= n || v >= n)
            throw ParseError("line " + std::to_string(lines[i].number) + ": vertex out of range");
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    return Graph(n, std::move(edges));
}

Graph read_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

void write_graph(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges())
        out << e.u << ' ' << e.v << '\n';
}

WeightFn parse_weights(std::string_view text, std::size_t n) {
    std::vector<Rational> weights(n);
    std::vector<bool> seen(n, false);
    for (const auto& line : detail::tokenize(text)) {
        detail::expect_tokens(line, 2);
        auto v = detail::parse_count(line.tokens[0], line.number);
        if (v >= n)
            throw ParseError("line " + std::to_string(line.number) + ": vertex out of range");
        if (seen[v])
            throw ParseError("line " + std::to_string(line.number) + ": vertex " + std::to_string(v) +
                             " listed twice");
        seen[v] = true;
        weights[v] = parse_rational(line.tokens[1]);
        if (weights[v] < 0)
            throw ParseError("line " + std::to_string(line.number) + ": negative weight");
    }
    return WeightFn(std::move(weights));
}

WeightFn read_weights_file(const std::string& path, std::size_t n) {
    return parse_weights(read_text_file(path), n);
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source) {
    std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
    std::vector<Vertex> queue;
    queue.reserve(g.vertex_count());
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        for (auto [w, e] : g.neighbors(u)) {
            if (dist[w] == kUnreached) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::vector<Vertex> interval(const Graph& g, Vertex u, Vertex v) {
    auto du = bfs_distances(g, u);
    auto dv = bfs_distances(g, v);
    std::vector<Vertex> out;
    for (Vertex x = 0; x < g.vertex_count(); ++x)
        if (du[x] + dv[x] == du[v])
            out.push_back(x);
    return out;
}

TripleMedian median_of_triple(const Graph& g, Vertex x, Vertex y, Vertex z) {
    auto dx = bfs_distances(g, x);
    auto dy = bfs_distances(g, y);
    auto dz = bfs_distances(g, z);
    TripleMedian result;
    Vertex last = 0;
    for (Vertex m = 0; m < g.vertex_count(); ++m) {
        if (dx[m] + dy[m] == dx[y] && dy[m] + dz[m] == dy[z] && dz[m] + dx[m] == dz[x]) {
            ++result.intersection_size;
            last = m;
        }
    }
    if (result.intersection_size == 1)
        result.median = last;
    return result;
}

} // namespace medgraph
