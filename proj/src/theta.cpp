#include "medgraph/theta.hpp"

#include "medgraph/errors.hpp"

#include <algorithm>
#include <string>

namespace medgraph {

namespace {

std::uint64_t pair_key(Vertex a, Vertex b) {
    if (a > b)
        std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

SearchOrder blank_order(const Graph& g, Vertex v0) {
    const std::size_t n = g.vertex_count();
    if (v0 >= n)
        throw InvalidInput("basepoint " + std::to_string(v0) + " out of range");
    SearchOrder so;
    so.basepoint = v0;
    so.order.assign(n, 0);
    so.rank.assign(n, 0);
    so.dist.assign(n, kUnreached);
    so.parent.assign(n, kNoVertex);
    so.pred_begin.assign(n + 1, 0);
    for (Vertex v = 0; v < n; ++v)
        so.pred_begin[v + 1] = so.pred_begin[v] + g.degree(v);
    so.pred_count.assign(n, 0);
    so.pred_slots.resize(so.pred_begin[n]);
    return so;
}

void add_pred(SearchOrder& so, Vertex v, Vertex u, EdgeId e) {
    so.pred_slots[so.pred_begin[v] + so.pred_count[v]++] = {u, e};
}

// Edges grouped by near endpoint in search order, then by far endpoint in
// search order; calls visit(near, far, edge).
template <typename Visit>
void for_each_edge_in_order(const SearchOrder& so, Visit&& visit) {
    const std::size_t n = so.order.size();
    std::vector<std::size_t> start(n + 1, 0);
    for (Vertex v = 0; v < n; ++v)
        for (const auto& p : so.predecessors(v))
            ++start[so.rank[p.neighbor] + 1];
    for (std::size_t i = 0; i < n; ++i)
        start[i + 1] += start[i];
    std::vector<Incidence> bucket(start[n]);
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (Vertex v : so.order)
        for (const auto& p : so.predecessors(v))
            bucket[fill[so.rank[p.neighbor]]++] = {v, p.edge};
    for (std::size_t r = 0; r < n; ++r) {
        Vertex u = so.order[r];
        for (std::size_t i = start[r]; i < start[r + 1]; ++i)
            visit(u, bucket[i].neighbor, bucket[i].edge);
    }
}

ThetaPartition blank_partition(const Graph& g, const SearchOrder& so) {
    ThetaPartition tp;
    tp.basepoint = so.basepoint;
    tp.class_of.assign(g.edge_count(), kNoVertex);
    tp.sides.resize(g.edge_count());
    return tp;
}

void open_class(ThetaPartition& tp, const SearchOrder& so, Vertex near, Vertex far, EdgeId e) {
    tp.class_of[e] = static_cast<ClassId>(tp.classes.size());
    tp.classes.push_back({e});
    tp.root_distance.push_back(so.dist[far]);
    tp.sides[e] = {near, far};
}

void join_class(ThetaPartition& tp, Vertex near, Vertex far, EdgeId e, EdgeId partner) {
    ClassId c = tp.class_of[partner];
    if (c == kNoVertex)
        throw NotMedianGraph("edge " + std::to_string(partner) + " has no class yet");
    tp.class_of[e] = c;
    tp.classes[c].push_back(e);
    tp.sides[e] = {near, far};
}

void require_bipartite(const Graph& g, const SearchOrder& so) {
    for (const auto& e : g.edges())
        if (so.dist[e.u] == so.dist[e.v])
            throw NotMedianGraph("graph is not bipartite: edge " + std::to_string(e.u) + "-" +
                                 std::to_string(e.v) + " joins one level");
}

} // namespace

EdgeIndex::EdgeIndex(const Graph& g) {
    map_.reserve(g.edge_count());
    EdgeId id = 0;
    for (const auto& e : g.edges())
        map_.emplace(pair_key(e.u, e.v), id++);
}

std::optional<EdgeId> EdgeIndex::find(Vertex a, Vertex b) const {
    auto it = map_.find(pair_key(a, b));
    if (it == map_.end())
        return std::nullopt;
    return it->second;
}

ClassIncidence::ClassIncidence(const Graph& g, const ThetaPartition& tp)
    : graph_(&g), stride_(std::max<std::uint64_t>(tp.class_count(), 1)) {
    map_.reserve(2 * g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        ClassId c = tp.class_of[e];
        map_.emplace(ed.u * stride_ + c, e);
        map_.emplace(ed.v * stride_ + c, e);
    }
}

std::optional<EdgeId> ClassIncidence::find(Vertex v, ClassId c) const {
    if (c >= stride_)
        return std::nullopt;
    auto it = map_.find(v * stride_ + c);
    if (it == map_.end())
        return std::nullopt;
    return it->second;
}

std::optional<Vertex> ClassIncidence::across(Vertex v, ClassId c) const {
    auto e = find(v, c);
    if (!e)
        return std::nullopt;
    const Edge& ed = graph_->edge(*e);
    return ed.u == v ? ed.v : ed.u;
}

SearchOrder bfs_order(const Graph& g, Vertex v0) {
    SearchOrder so = blank_order(g, v0);
    std::size_t head = 0, tail = 0;
    so.order[tail++] = v0;
    so.dist[v0] = 0;
    while (head < tail) {
        Vertex u = so.order[head++];
        for (const auto& [w, e] : g.neighbors(u)) {
            if (so.dist[w] == kUnreached) {
                so.dist[w] = so.dist[u] + 1;
                so.parent[w] = u;
                so.order[tail++] = w;
            }
            if (so.dist[w] == so.dist[u] + 1)
                add_pred(so, w, u, e);
        }
    }
    for (std::size_t r = 0; r < tail; ++r)
        so.rank[so.order[r]] = static_cast<std::uint32_t>(r);
    return so;
}

SearchOrder lexbfs_order(const Graph& g, Vertex v0) {
    SearchOrder so = blank_order(g, v0);
    const std::size_t n = g.vertex_count();
    auto& queue = so.order;
    auto& pos = so.rank;
    // first[u]: queue position of the earliest vertex whose only predecessor so far is u
    std::vector<std::uint32_t> first(n, kUnreached);
    std::uint32_t head = 0, tail = 0;
    pos[v0] = tail;
    queue[tail++] = v0;
    so.dist[v0] = 0;
    while (head < tail) {
        Vertex u = queue[head++];
        for (const auto& [w, e] : g.neighbors(u)) {
            if (so.dist[w] == kUnreached) {
                so.dist[w] = so.dist[u] + 1;
                so.parent[w] = u;
                add_pred(so, w, u, e);
                pos[w] = tail;
                queue[tail++] = w;
                if (first[u] == kUnreached)
                    first[u] = pos[w];
            } else if (so.dist[w] == so.dist[u] + 1) {
                add_pred(so, w, u, e);
                if (so.pred_count[w] == 2) {
                    Vertex p = so.parent[w];
                    std::uint32_t j = first[p];
                    Vertex other = queue[j];
                    std::swap(queue[j], queue[pos[w]]);
                    pos[other] = pos[w];
                    pos[w] = j;
                    first[p] = j + 1;
                }
            }
        }
    }
    return so;
}

ThetaPartition theta_classes_bfs(const Graph& g, Vertex v0) {
    SearchOrder so = bfs_order(g, v0);
    require_bipartite(g, so);
    ThetaPartition tp = blank_partition(g, so);
    for_each_edge_in_order(so, [&](Vertex u, Vertex v, EdgeId e) {
        auto lv = so.predecessors(v);
        if (lv.size() == 1) {
            open_class(tp, so, u, v, e);
            return;
        }
        Vertex w = lv[0].neighbor == u ? lv[1].neighbor : lv[0].neighbor;
        // the unique common predecessor of u and w closes the square
        auto lu = so.predecessors(u);
        auto lw = so.predecessors(w);
        std::size_t i = 0, j = 0, found = 0;
        EdgeId partner = 0;
        while (i < lu.size() && j < lw.size()) {
            auto ru = so.rank[lu[i].neighbor], rw = so.rank[lw[j].neighbor];
            if (ru < rw) {
                ++i;
            } else if (rw < ru) {
                ++j;
            } else {
                ++found;
                partner = lw[j].edge;
                ++i;
                ++j;
            }
        }
        if (found != 1)
            throw NotMedianGraph("vertices " + std::to_string(u) + " and " + std::to_string(w) +
                                 " share " + std::to_string(found) + " predecessors");
        join_class(tp, u, v, e, partner);
    });
    return tp;
}

ThetaPartition theta_classes_lexbfs(const Graph& g, Vertex v0) {
    SearchOrder so = lexbfs_order(g, v0);
    require_bipartite(g, so);
    EdgeIndex index(g);
    ThetaPartition tp = blank_partition(g, so);
    for_each_edge_in_order(so, [&](Vertex u, Vertex v, EdgeId e) {
        auto lv = so.predecessors(v);
        if (lv.size() == 1) {
            open_class(tp, so, u, v, e);
            return;
        }
        if (so.parent[v] != u) {
            auto partner = index.find(so.parent[u], so.parent[v]);
            if (!partner)
                throw NotMedianGraph("parents of " + std::to_string(u) + " and " +
                                     std::to_string(v) + " are not adjacent");
            join_class(tp, u, v, e, *partner);
        } else {
            // u is the parent of v; use the parent edge of another predecessor
            Vertex x = lv[1].neighbor;
            join_class(tp, u, v, e, so.predecessors(x)[0].edge);
        }
    });
    return tp;
}

bool check_fellow_traveler(const Graph& g, const SearchOrder& so) {
    EdgeIndex index(g);
    for (const auto& [u, v] : g.edges()) {
        if (u == so.basepoint || v == so.basepoint)
            continue;
        Vertex fu = so.parent[u], fv = so.parent[v];
        if (fu == fv || fu == v || fv == u)
            continue;
        if (!index.find(fu, fv))
            return false;
    }
    return true;
}

std::vector<std::vector<EdgeId>> canonical_partition(const ThetaPartition& tp) {
    std::vector<std::vector<EdgeId>> out(tp.classes);
    for (auto& c : out)
        std::sort(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace medgraph
