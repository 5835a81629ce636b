#include "medgraph/median.hpp"

#include "medgraph/errors.hpp"

#include <algorithm>
#include <string>

namespace medgraph {

namespace {

void check_partition(const Graph& g, const ThetaPartition& tp) {
    if (tp.class_of.size() != g.edge_count() || tp.sides.size() != g.edge_count())
        throw InvalidInput("theta partition does not match the graph");
}

} // namespace

PeelingSequence peripheral_peeling(const Graph& g, const ThetaPartition& tp) {
    check_partition(g, tp);
    const std::size_t q = tp.class_count();
    std::vector<char> contracted(g.vertex_count(), 0);
    std::vector<std::size_t> count(q, 0);
    std::vector<std::pair<Vertex, Vertex>> reversed;
    reversed.reserve(g.vertex_count());
    for (std::size_t c = q; c-- > 0;) {
        std::size_t before = reversed.size();
        for (EdgeId e : tp.classes[c]) {
            auto [near, far] = tp.sides[e];
            if (!contracted[near] && !contracted[far])
                reversed.emplace_back(far, near);
        }
        for (std::size_t i = before; i < reversed.size(); ++i)
            contracted[reversed[i].first] = 1;
        count[c] = reversed.size() - before;
    }
    PeelingSequence peel;
    peel.begin.assign(q + 1, 0);
    for (std::size_t c = 0; c < q; ++c)
        peel.begin[c + 1] = peel.begin[c] + count[c];
    peel.pairs.resize(reversed.size());
    // reversed holds the last class first
    std::size_t at = 0;
    for (std::size_t c = q; c-- > 0;) {
        std::copy(reversed.begin() + at, reversed.begin() + at + count[c],
                  peel.pairs.begin() + peel.begin[c]);
        at += count[c];
    }
    return peel;
}

HalfspaceWeights halfspace_weights(const Graph& g, std::span<const Rational> w,
                                   const ThetaPartition& tp) {
    return halfspace_weights(g, w, tp, peripheral_peeling(g, tp));
}

HalfspaceWeights halfspace_weights(const Graph& g, std::span<const Rational> w,
                                   const ThetaPartition& tp, const PeelingSequence& peel) {
    check_partition(g, tp);
    if (w.size() != g.vertex_count())
        throw InvalidInput("weight function has " + std::to_string(w.size()) +
                           " entries for " + std::to_string(g.vertex_count()) + " vertices");
    const std::size_t q = tp.class_count();
    std::vector<Rational> cur(w.begin(), w.end());
    HalfspaceWeights hw;
    for (const auto& x : cur)
        hw.total += x;
    hw.near_weight.resize(q);
    hw.far_weight.resize(q);
    for (std::size_t c = q; c-- > 0;) {
        Rational far;
        for (auto [f, n] : peel.alive(static_cast<ClassId>(c))) {
            far += cur[f];
            cur[n] += cur[f];
        }
        hw.near_weight[c] = hw.total - far;
        hw.far_weight[c] = std::move(far);
    }
    return hw;
}

const char* balance_tag(ClassBalance b) {
    switch (b) {
    case ClassBalance::majoritary_far:
        return "majoritary-H'";
    case ClassBalance::majoritary_near:
        return "majoritary-H''";
    case ClassBalance::egalitarian:
        return "egalitarian";
    }
    return "?";
}

ClassBalance classify(const Rational& near_weight, const Rational& far_weight) {
    int s = cmp(far_weight, near_weight);
    if (s > 0)
        return ClassBalance::majoritary_far;
    if (s < 0)
        return ClassBalance::majoritary_near;
    return ClassBalance::egalitarian;
}

MedianResult median_set(const Graph& g, const ThetaPartition& tp, const HalfspaceWeights& hw) {
    check_partition(g, tp);
    const std::size_t q = tp.class_count();
    if (hw.far_weight.size() != q)
        throw InvalidInput("halfspace weights do not match the theta partition");
    MedianResult res;
    res.classification.resize(q);
    for (std::size_t c = 0; c < q; ++c)
        res.classification[c] = classify(hw.near_weight[c], hw.far_weight[c]);
    std::vector<char> sink(g.vertex_count(), 1);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        switch (res.classification[tp.class_of[e]]) {
        case ClassBalance::majoritary_far:
            sink[tp.sides[e].near] = 0;
            break;
        case ClassBalance::majoritary_near:
            sink[tp.sides[e].far] = 0;
            break;
        case ClassBalance::egalitarian:
            break;
        }
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (sink[v])
            res.vertices.push_back(v);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (sink[g.edge(e).u] && sink[g.edge(e).v])
            res.induced_edges.push_back(e);
    return res;
}

std::pair<Vertex, Vertex> diametral_pair(const Graph& g, const WeightFn& w,
                                         const MedianResult& med) {
    if (w.size() != g.vertex_count())
        throw InvalidInput("weight function does not match the graph");
    if (med.vertices.empty())
        throw InvalidInput("empty median set");
    Vertex v1 = 0;
    while (v1 < w.size() && sgn(w[v1]) == 0)
        ++v1;
    if (v1 == w.size())
        throw InvalidInput("zero total weight");
    // Med is gated, so distances from v1 inside Med are d(v1, u) + d(u, x)
    auto dist = bfs_distances(g, v1);
    Vertex u = med.vertices.front(), v = med.vertices.front();
    for (Vertex x : med.vertices) {
        if (dist[x] < dist[u])
            u = x;
        if (dist[x] > dist[v])
            v = x;
    }
    return {u, v};
}

Rational wiener_index(const HalfspaceWeights& hw) {
    Rational sum;
    for (std::size_t c = 0; c < hw.far_weight.size(); ++c)
        sum += hw.near_weight[c] * hw.far_weight[c];
    return sum;
}

DistanceMatrix distance_matrix(const Graph& g, const ThetaPartition& tp, std::size_t cap) {
    const std::size_t n = g.vertex_count();
    if (n > cap)
        throw CapExceeded("distance matrix for " + std::to_string(n) +
                          " vertices exceeds cap " + std::to_string(cap));
    PeelingSequence peel = peripheral_peeling(g, tp);
    if (peel.pairs.size() + 1 != n)
        throw NotMedianGraph("peeling did not contract the graph to a single vertex");
    DistanceMatrix d(n);
    std::vector<Vertex> present{tp.basepoint};
    present.reserve(n);
    for (ClassId c = 0; c < tp.class_count(); ++c) {
        auto fresh = peel.alive(c);
        for (auto [f, near] : fresh) {
            for (Vertex x : present) {
                std::uint32_t dx = d(near, x) + 1;
                d.at(f, x) = dx;
                d.at(x, f) = dx;
            }
        }
        for (auto [f1, n1] : fresh)
            for (auto [f2, n2] : fresh)
                d.at(f1, f2) = d(n1, n2);
        for (auto [f, near] : fresh)
            present.push_back(f);
    }
    return d;
}

} // namespace medgraph
