#pragma once

// Peripheral peeling and the weighted-median toolkit built on it.

#include "medgraph/graph.hpp"
#include "medgraph/theta.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace medgraph {

/**
 * Result of contracting classes from the last to the first.
 *
 * When class c is contracted, the graph left over from later contractions
 * meets it in the edges listed here as (far, near) pairs; every such far
 * endpoint is folded into its near partner.
 */
struct PeelingSequence {
    std::vector<std::size_t> begin; ///< size q + 1, indexes pairs
    std::vector<std::pair<Vertex, Vertex>> pairs;

    std::span<const std::pair<Vertex, Vertex>> alive(ClassId c) const {
        return {pairs.data() + begin[c], pairs.data() + begin[c + 1]};
    }
};

PeelingSequence peripheral_peeling(const Graph& g, const ThetaPartition& tp);

struct HalfspaceWeights {
    std::vector<Rational> near_weight; ///< w(H''), the basepoint side
    std::vector<Rational> far_weight;  ///< w(H')
    Rational total;
};

/// Accepts any nonnegative per-vertex weights of size n.
HalfspaceWeights halfspace_weights(const Graph& g, std::span<const Rational> w,
                                   const ThetaPartition& tp);
HalfspaceWeights halfspace_weights(const Graph& g, std::span<const Rational> w,
                                   const ThetaPartition& tp, const PeelingSequence& peel);

enum class ClassBalance { majoritary_far, majoritary_near, egalitarian };

/// "majoritary-H'", "majoritary-H''" or "egalitarian".
const char* balance_tag(ClassBalance b);

struct MedianResult {
    std::vector<Vertex> vertices;       ///< sorted
    std::vector<EdgeId> induced_edges;  ///< sorted
    std::vector<ClassBalance> classification;
};

ClassBalance classify(const Rational& near_weight, const Rational& far_weight);

/// Sinks of the orientation towards strictly heavier halfspaces. With zero
/// total weight every vertex is returned.
MedianResult median_set(const Graph& g, const ThetaPartition& tp, const HalfspaceWeights& hw);

/// (u, v) with interval(u, v) equal to the median set. Throws InvalidInput
/// on zero total weight.
std::pair<Vertex, Vertex> diametral_pair(const Graph& g, const WeightFn& w,
                                         const MedianResult& med);

/// Sum over unordered vertex pairs of w(u) w(v) d(u, v).
Rational wiener_index(const HalfspaceWeights& hw);

class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0) {}

    std::size_t size() const noexcept { return n_; }
    std::uint32_t operator()(Vertex u, Vertex v) const { return d_[u * n_ + v]; }
    std::uint32_t& at(Vertex u, Vertex v) { return d_[u * n_ + v]; }
    bool operator==(const DistanceMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint32_t> d_;
};

inline constexpr std::size_t kDefaultDistanceCap = 32768;

/// All-pairs distances by undoing the peeling. Throws CapExceeded when
/// n > cap.
DistanceMatrix distance_matrix(const Graph& g, const ThetaPartition& tp,
                               std::size_t cap = kDefaultDistanceCap);

} // namespace medgraph
