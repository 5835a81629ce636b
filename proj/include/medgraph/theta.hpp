#pragma once

// Theta-classes (hyperplanes) of a median graph, oriented from a basepoint.

#include "medgraph/graph.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace medgraph {

using ClassId = std::uint32_t;

inline constexpr Vertex kNoVertex = UINT32_MAX;

/**
 * A BFS or LexBFS traversal from a basepoint.
 *
 * For each vertex v the predecessor list holds the neighbors one step closer
 * to the basepoint, in discovery order; its first entry is the parent.
 */
struct SearchOrder {
    Vertex basepoint = 0;
    std::vector<Vertex> order;         ///< order[rank] = vertex
    std::vector<std::uint32_t> rank;   ///< inverse of order
    std::vector<std::uint32_t> dist;   ///< distance from the basepoint
    std::vector<Vertex> parent;        ///< kNoVertex for the basepoint
    std::vector<std::size_t> pred_begin;
    std::vector<std::uint32_t> pred_count;
    std::vector<Incidence> pred_slots;

    std::span<const Incidence> predecessors(Vertex v) const {
        return {pred_slots.data() + pred_begin[v], pred_count[v]};
    }
};

struct EdgeSides {
    Vertex near; ///< endpoint closer to the basepoint
    Vertex far;
};

/**
 * Partition of the edges into Theta-classes.
 *
 * Class ids are creation order, which is non-decreasing in the distance from
 * the basepoint to the far halfspace. The first edge of each class is its
 * root edge.
 */
struct ThetaPartition {
    Vertex basepoint = 0;
    std::vector<ClassId> class_of;
    std::vector<std::vector<EdgeId>> classes;
    std::vector<EdgeSides> sides;
    std::vector<std::uint32_t> root_distance; ///< d(basepoint, far halfspace) per class

    std::size_t class_count() const noexcept { return classes.size(); }
};

/// Constant-time adjacency test by unordered vertex pair.
class EdgeIndex {
public:
    explicit EdgeIndex(const Graph& g);
    std::optional<EdgeId> find(Vertex a, Vertex b) const;

private:
    std::unordered_map<std::uint64_t, EdgeId> map_;
};

/// Edge of a given class incident to a vertex, if any. In a median graph a
/// vertex has at most one incident edge per class.
class ClassIncidence {
public:
    ClassIncidence(const Graph& g, const ThetaPartition& tp);
    std::optional<EdgeId> find(Vertex v, ClassId c) const;
    /// The neighbor of v across class c, if any.
    std::optional<Vertex> across(Vertex v, ClassId c) const;

private:
    const Graph* graph_;
    std::unordered_map<std::uint64_t, EdgeId> map_;
    std::uint64_t stride_;
};

SearchOrder bfs_order(const Graph& g, Vertex v0);

/// LexBFS specialised to median graphs: ties between children of the same
/// parent are broken by the second predecessor only.
SearchOrder lexbfs_order(const Graph& g, Vertex v0);

/// O(dm) construction from a BFS. Throws NotMedianGraph when a square partner
/// cannot be identified uniquely.
ThetaPartition theta_classes_bfs(const Graph& g, Vertex v0);

/// Linear-time construction from a LexBFS. Throws NotMedianGraph when an edge
/// required by the fellow-traveler property is missing.
ThetaPartition theta_classes_lexbfs(const Graph& g, Vertex v0);

/// True iff for every edge uv avoiding the basepoint, the parents of u and v
/// coincide, are adjacent, or one parent is the other endpoint.
bool check_fellow_traveler(const Graph& g, const SearchOrder& so);

/// Classes as sorted edge lists, sorted; equal for equal partitions.
std::vector<std::vector<EdgeId>> canonical_partition(const ThetaPartition& tp);

} // namespace medgraph
