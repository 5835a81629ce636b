#pragma once

#include "medgraph/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace medgraph {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
    Vertex u;
    Vertex v;
};

struct Incidence {
    Vertex neighbor;
    EdgeId edge;
};

/**
 * Immutable undirected simple connected graph on vertices 0..n-1.
 *
 * Edge ids are positions in the edge list the graph was built from, and the
 * adjacency of every vertex lists its incident edges in that same order.
 */
class Graph {
public:
    /// Validates and builds. Throws InvalidInput on loops, parallel edges,
    /// out-of-range endpoints, n == 0 or a disconnected result.
    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::span<const Incidence> neighbors(Vertex v) const {
        return {incidences_.data() + offsets_[v], incidences_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<Incidence> incidences_;
};

/// Nonnegative exact weight per vertex.
class WeightFn {
public:
    explicit WeightFn(std::size_t n) : weights_(n) {}
    /// Throws InvalidInput if any weight is negative.
    explicit WeightFn(std::vector<Rational> weights);

    static WeightFn unit(std::size_t n);

    std::size_t size() const noexcept { return weights_.size(); }
    const Rational& operator[](Vertex v) const { return weights_[v]; }
    std::span<const Rational> values() const noexcept { return weights_; }
    Rational total() const;

private:
    std::vector<Rational> weights_;
};

/// Graph file: "n m" then m lines "u v" (0-based). Blank lines and lines
/// starting with '#' are ignored.
Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

/// Weight file: lines "v p/q" or "v p"; unlisted vertices weigh 0.
WeightFn parse_weights(std::string_view text, std::size_t n);
WeightFn read_weights_file(const std::string& path, std::size_t n);

std::string read_text_file(const std::string& path);

inline constexpr std::uint32_t kUnreached = UINT32_MAX;

std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source);

/// Vertices on shortest (u,v)-paths, sorted.
std::vector<Vertex> interval(const Graph& g, Vertex u, Vertex v);

struct TripleMedian {
    std::optional<Vertex> median; ///< set iff the triple intersection is a singleton
    std::size_t intersection_size = 0;
};

TripleMedian median_of_triple(const Graph& g, Vertex x, Vertex y, Vertex z);

} // namespace medgraph
