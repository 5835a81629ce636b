#pragma once

// Weighted median and Wiener index of points in the l1 cube complex of a
// median graph. A point is a vertex of the smallest cube containing it plus
// one coordinate in (0,1) per class spanning that cube.

#include "medgraph/graph.hpp"
#include "medgraph/median.hpp"
#include "medgraph/theta.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace medgraph {

using Coords = std::vector<std::pair<ClassId, Rational>>; ///< sorted by class

struct Terminal {
    Vertex base = 0;
    Coords coords;
    Rational weight;
};

/// Terminal file: one line per terminal, "v k i1 p1 ... ik pk w". Only the
/// syntax is checked here.
std::vector<Terminal> parse_terminals(std::string_view text);
std::vector<Terminal> read_terminals_file(const std::string& path);

/// Drops coordinates equal to 0, moves the base across classes with
/// coordinate 1, sorts coordinates. Throws InvalidInput for coordinates
/// outside [0,1], repeated or unknown classes, non-positive weights, or a
/// base without an edge of a class it must cross.
std::vector<Terminal> normalize_terminals(const Graph& g, const ThetaPartition& tp,
                                          std::vector<Terminal> terminals);

/// Moves every base to the corner of its cube closest to the basepoint,
/// replacing eps by 1 - eps for each class crossed. Throws InvalidInput when
/// coordinates are not in (0,1), a class is not incident to the base, or the
/// classes do not span a cube.
std::vector<Terminal> rebase_terminals(const Graph& g, const ThetaPartition& tp,
                                       std::vector<Terminal> terminals);

/// normalize_terminals followed by rebase_terminals.
std::vector<Terminal> prepare_terminals(const Graph& g, const ThetaPartition& tp,
                                        std::vector<Terminal> terminals);

enum class SelectMode { quickselect, sorting };

struct Interval01 {
    Rational lo; ///< rho''
    Rational hi; ///< rho'
};

/// Weighted median interval of points on a line: the hull of the two
/// consecutive positive-weight points bounding every x with at most half of
/// the weight strictly on either side. Throws InvalidInput on zero total.
Interval01 weighted_median_interval(std::vector<std::pair<Rational, Rational>> points,
                                    SelectMode mode = SelectMode::quickselect);

/// Per class, the 1-D median interval of its coordinate multiset: 0 carries
/// the weight of the near halfspace outside the class carrier, 1 that of the
/// far halfspace, and each terminal inside the carrier its own coordinate.
/// Terminals must be rebased.
std::vector<Interval01> class_median_intervals(const Graph& g, const ThetaPartition& tp,
                                               const std::vector<Terminal>& terminals,
                                               SelectMode mode = SelectMode::quickselect);

struct SkeletonVertex {
    Vertex anchor; ///< corner of the containing cube closest to the basepoint
    Coords coords;
    Vertex source; ///< first sink mapped to this vertex
};

struct Skeleton {
    std::vector<SkeletonVertex> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// 1-skeleton of the median set. Terminals must be rebased and non-empty.
Skeleton geometric_median(const Graph& g, const ThetaPartition& tp,
                          const std::vector<Terminal>& terminals,
                          SelectMode mode = SelectMode::quickselect);

/// Sum over unordered terminal pairs of w(p) w(p') d1(p, p').
Rational geometric_wiener(const Graph& g, const ThetaPartition& tp,
                          const std::vector<Terminal>& terminals);

} // namespace medgraph
