#pragma once

// Instance generators and slow reference implementations used to check the
// fast algorithms.

#include "medgraph/complex.hpp"
#include "medgraph/events.hpp"
#include "medgraph/graph.hpp"
#include "medgraph/median.hpp"
#include "medgraph/theta.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace medgraph::testkit {

// ---- generators ----------------------------------------------------------

Graph make_path(std::size_t n);
Graph make_cycle(std::size_t n);
Graph make_hypercube(std::size_t d);
Graph make_complete_bipartite(std::size_t a, std::size_t b);
/// Cartesian product of paths with the given vertex counts; the first
/// coordinate varies fastest in the vertex numbering.
Graph make_product_of_paths(const std::vector<std::size_t>& lengths);
Graph make_grid(std::size_t rows, std::size_t cols);
/// Random recursive tree: vertex i attaches to a uniform earlier vertex.
Graph make_random_tree(std::size_t n, std::uint64_t seed);

struct MedianInstance {
    Graph graph;
    std::vector<std::uint32_t> labels; ///< hypercube vertex of each graph vertex
};

/// Subgraph of Q_d induced by the median closure of `seeds` random vertices
/// (enlarged until connected). Throws CapExceeded for d > 20.
MedianInstance make_random_median(std::size_t d, std::size_t seeds, std::uint64_t seed);

/// Events 0..k-1 with random order pairs i < j and random conflicts between
/// events that have no common upper bound.
EventStructure make_random_event_structure(std::size_t k, std::uint64_t seed,
                                           double order_density = 0.25,
                                           double conflict_density = 0.2);

/// Random rationals p/q with small p and q; each vertex is zero with
/// probability zero_fraction.
WeightFn random_weights(std::size_t n, std::uint64_t seed, double zero_fraction = 0.0);

/// Random positive weights rescaled so that class c splits the total evenly.
WeightFn egalitarian_weights(const Graph& g, const ThetaPartition& tp, ClassId c, std::uint64_t seed);

/// Random points of the cube complex with weights in (0, 5]: a random vertex,
/// a random set of classes spanning a cube at it, and coordinates in [0,1]
/// (occasionally exactly 0 or 1). Needs prepare_terminals before use.
std::vector<Terminal> random_terminals(const Graph& g, const ThetaPartition& tp, std::size_t count,
                                       std::uint64_t seed, bool vertices_only = false);

/// Dispatches on kind: "path N", "cycle N", "hypercube D", "grid R C",
/// "product L1 L2 ...", "random-tree N", "random-median D S".
Graph generate(const std::string& kind, const std::vector<std::size_t>& params,
               std::uint64_t seed);

// ---- graph oracles -------------------------------------------------------

struct MedianVerdict {
    bool median = true;
    std::array<Vertex, 3> witness{}; ///< a triple without a unique median
    std::size_t intersection_size = 1;
};

inline constexpr std::size_t kDefaultVerifyCap = 300;

/// Checks every triple for a unique median. Throws CapExceeded for n > cap.
MedianVerdict verify_median_graph(const Graph& g, std::size_t cap = kDefaultVerifyCap);

/// Closure of square opposition, as sorted classes of sorted edge ids.
std::vector<std::vector<EdgeId>> brute_theta(const Graph& g);

DistanceMatrix apsp_bfs(const Graph& g);

struct BruteMedian {
    std::vector<Rational> f;      ///< F_w(x) = sum_v w(v) d(x, v)
    std::vector<Vertex> argmin;   ///< sorted
};

BruteMedian brute_median(const Graph& g, const WeightFn& w);
BruteMedian brute_median(const DistanceMatrix& d, const WeightFn& w);

/// Sum over unordered pairs of w(u) w(v) d(u, v).
Rational brute_wiener(const DistanceMatrix& d, const WeightFn& w);

/// Intersection of all halfspaces {x : d(x,u) < d(x,v)} (uv an edge) that
/// carry strictly more than half the weight. Meaningful on bipartite graphs.
std::vector<Vertex> majority_rule_intersection_bruteforce(const Graph& g, const WeightFn& w);

/// Separating-class sets per vertex.
std::vector<std::vector<char>> class_signatures(const Graph& g, const ThetaPartition& tp);

// ---- cube complex oracles ------------------------------------------------

/// Points are described by per-class halfspace coordinates: 0 on the
/// basepoint side, 1 on the far side, the position in between inside a
/// carrier.
class ComplexOracle {
public:
    ComplexOracle(const Graph& g, const ThetaPartition& tp);

    /// Coordinates of a point given as a vertex plus eps per class measured
    /// from that vertex (no normalisation required, eps in [0,1]).
    std::vector<Rational> chi(Vertex base, const Coords& coords) const;
    std::vector<Rational> chi(const Terminal& t) const { return chi(t.base, t.coords); }

    static Rational distance(const std::vector<Rational>& a, const std::vector<Rational>& b);

    Rational F(const std::vector<Terminal>& terminals, const std::vector<Rational>& point) const;

    /// Sum over unordered terminal pairs of w w' d1.
    Rational wiener(const std::vector<Terminal>& terminals) const;

    struct Optimum {
        Rational value;
        std::vector<std::vector<Rational>> minimizers; ///< sorted, distinct
        std::size_t candidates = 0;
    };

    /// Enumerates every vertex, every set of pairwise crossing classes at it,
    /// and every choice of terminal coordinates in (0,1) for those classes.
    Optimum brute_geometric_median(const std::vector<Terminal>& terminals,
                                   std::size_t cap = 2'000'000) const;

private:
    const Graph* g_;
    const ThetaPartition* tp_;
    ClassIncidence inc_;
    std::vector<std::vector<char>> sig_;
};

// ---- event structure oracles ---------------------------------------------

/// F(c) = sum_j w_j |c xor c_j| over the domain, with its minimisers.
struct BruteEsMedian {
    Rational value;
    std::vector<std::size_t> argmin; ///< domain vertex indices
    std::vector<Rational> f;
};

BruteEsMedian brute_es_median(const Domain& d, const WeightedConfigurations& wc);

/// Satisfying assignments as bit masks (bit v-1 for variable v). Throws
/// CapExceeded above 24 variables.
std::vector<std::uint32_t> twosat_solutions(const TwoSatFormula& f);

/// Configurations as bit masks over at most 32 events.
std::vector<std::uint32_t> configuration_masks(const Domain& d);

/// Vertex x maps to the set of classes separating it from the basepoint;
/// true iff this is a bijection onto the domain that preserves edges.
bool graph_matches_domain(const Graph& g, const ThetaPartition& tp, const Domain& d);

/// Event e maps to the class of the domain edge from the strict down-set of e
/// to the down-set of e; true iff this is a bijection preserving order and
/// conflict.
bool es_matches_pointed_domain(const EsRelations& rel, const Domain& d, const ThetaPartition& tp,
                               const EsRelations& back);

} // namespace medgraph::testkit
