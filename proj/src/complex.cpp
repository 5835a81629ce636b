#include "medgraph/complex.hpp"

#include "medgraph/errors.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

namespace medgraph {

namespace {

std::string describe(std::size_t index) { return "terminal " + std::to_string(index); }

bool crosses_at(const ClassIncidence& inc, Vertex v, ClassId i, ClassId j) {
    auto a = inc.across(v, i);
    auto b = inc.across(v, j);
    if (!a || !b)
        return false;
    auto x = inc.across(*a, j);
    auto y = inc.across(*b, i);
    return x && y && *x == *y && *x != v;
}

bool pairwise_crossing(const ClassIncidence& inc, Vertex v, const Coords& coords) {
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (std::size_t j = i + 1; j < coords.size(); ++j)
            if (!crosses_at(inc, v, coords[i].first, coords[j].first))
                return false;
    return true;
}

// Point weights per class: at 0, at 1, and inside the carrier.
struct ClassPoints {
    std::vector<Rational> at_zero;
    std::vector<Rational> at_one;
    std::vector<std::vector<std::pair<Rational, Rational>>> inside;
};

ClassPoints class_points(const Graph& g, const ThetaPartition& tp,
                         const std::vector<Terminal>& terminals) {
    const std::size_t q = tp.class_count();
    std::vector<Rational> base_weight(g.vertex_count());
    ClassPoints pts;
    pts.inside.resize(q);
    std::vector<Rational> carried(q);
    for (const auto& t : terminals) {
        if (t.base >= g.vertex_count())
            throw InvalidInput("terminal base " + std::to_string(t.base) + " out of range");
        base_weight[t.base] += t.weight;
        for (const auto& [c, eps] : t.coords) {
            if (c >= q)
                throw InvalidInput("unknown class " + std::to_string(c));
            carried[c] += t.weight;
            pts.inside[c].emplace_back(eps, t.weight);
        }
    }
    HalfspaceWeights hw = halfspace_weights(g, base_weight, tp);
    pts.at_zero.resize(q);
    pts.at_one = std::move(hw.far_weight);
    for (std::size_t c = 0; c < q; ++c)
        pts.at_zero[c] = hw.near_weight[c] - carried[c];
    return pts;
}

Rational lower_median_select(std::vector<std::pair<Rational, Rational>>& a, Rational target) {
    std::mt19937 rng(0x6d656469u);
    std::size_t lo = 0, hi = a.size();
    while (true) {
        std::uniform_int_distribution<std::size_t> pick(lo, hi - 1);
        Rational p = a[pick(rng)].first;
        // three-way partition of [lo, hi): < p, == p, > p
        std::size_t lt = lo, i = lo, gt = hi;
        Rational wl, we;
        while (i < gt) {
            int s = cmp(a[i].first, p);
            if (s < 0) {
                wl += a[i].second;
                std::swap(a[lt++], a[i++]);
            } else if (s > 0) {
                std::swap(a[i], a[--gt]);
            } else {
                we += a[i].second;
                ++i;
            }
        }
        if (wl >= target) {
            hi = lt;
        } else if (wl + we >= target) {
            return p;
        } else {
            target -= wl + we;
            lo = gt;
        }
    }
}

Rational lower_median_sort(std::vector<std::pair<Rational, Rational>>& a, const Rational& target) {
    std::sort(a.begin(), a.end());
    Rational cum;
    for (const auto& [x, w] : a) {
        cum += w;
        if (cum >= target)
            return x;
    }
    return a.back().first;
}

} // namespace

std::vector<Terminal> parse_terminals(std::string_view text) {
    std::vector<Terminal> out;
    for (const auto& line : detail::tokenize(text)) {
        const auto& tok = line.tokens;
        auto where = "line " + std::to_string(line.number);
        if (tok.size() < 3)
            throw ParseError(where + ": expected \"v k i1 p1 ... ik pk w\"");
        Terminal t;
        t.base = static_cast<Vertex>(detail::parse_count(tok[0], line.number));
        std::size_t k = detail::parse_count(tok[1], line.number);
        if (tok.size() != 3 + 2 * k)
            throw ParseError(where + ": expected " + std::to_string(3 + 2 * k) + " tokens, got " +
                             std::to_string(tok.size()));
        for (std::size_t j = 0; j < k; ++j) {
            auto c = static_cast<ClassId>(detail::parse_count(tok[2 + 2 * j], line.number));
            try {
                t.coords.emplace_back(c, parse_rational(tok[3 + 2 * j]));
            } catch (const ParseError& e) {
                throw ParseError(where + ": " + e.what());
            }
        }
        try {
            t.weight = parse_rational(tok.back());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Terminal> read_terminals_file(const std::string& path) {
    return parse_terminals(read_text_file(path));
}

std::vector<Terminal> normalize_terminals(const Graph& g, const ThetaPartition& tp,
                                          std::vector<Terminal> terminals) {
    ClassIncidence inc(g, tp);
    for (std::size_t idx = 0; idx < terminals.size(); ++idx) {
        auto& t = terminals[idx];
        if (t.base >= g.vertex_count())
            throw InvalidInput(describe(idx) + ": base " + std::to_string(t.base) + " out of range");
        if (sgn(t.weight) <= 0)
            throw InvalidInput(describe(idx) + ": weight must be positive");
        std::sort(t.coords.begin(), t.coords.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        Coords kept;
        for (std::size_t j = 0; j < t.coords.size(); ++j) {
            const auto& [c, eps] = t.coords[j];
            if (c >= tp.class_count())
                throw InvalidInput(describe(idx) + ": unknown class " + std::to_string(c));
            if (j > 0 && t.coords[j - 1].first == c)
                throw InvalidInput(describe(idx) + ": class " + std::to_string(c) + " repeated");
            if (sgn(eps) < 0 || eps > 1)
                throw InvalidInput(describe(idx) + ": coordinate " + to_string(eps) +
                                   " outside [0,1]");
            if (eps == 1) {
                auto next = inc.across(t.base, c);
                if (!next)
                    throw InvalidInput(describe(idx) + ": vertex " + std::to_string(t.base) +
                                       " has no edge of class " + std::to_string(c));
                t.base = *next;
            } else if (sgn(eps) > 0) {
                kept.emplace_back(c, eps);
            }
        }
        t.coords = std::move(kept);
    }
    return terminals;
}

std::vector<Terminal> rebase_terminals(const Graph& g, const ThetaPartition& tp,
                                       std::vector<Terminal> terminals) {
    ClassIncidence inc(g, tp);
    for (std::size_t idx = 0; idx < terminals.size(); ++idx) {
        auto& t = terminals[idx];
        if (t.base >= g.vertex_count())
            throw InvalidInput(describe(idx) + ": base " + std::to_string(t.base) + " out of range");
        for (const auto& [c, eps] : t.coords) {
            if (sgn(eps) <= 0 || eps >= 1)
                throw InvalidInput(describe(idx) + ": coordinate " + to_string(eps) +
                                   " not in (0,1)");
            if (!inc.find(t.base, c))
                throw InvalidInput(describe(idx) + ": vertex " + std::to_string(t.base) +
                                   " has no edge of class " + std::to_string(c));
        }
        if (!pairwise_crossing(inc, t.base, t.coords))
            throw InvalidInput(describe(idx) + ": classes do not span a cube at vertex " +
                               std::to_string(t.base));
        Vertex base = t.base;
        for (auto& [c, eps] : t.coords) {
            if (tp.sides[*inc.find(t.base, c)].far != t.base)
                continue;
            base = *inc.across(base, c);
            eps = 1 - eps;
        }
        t.base = base;
    }
    return terminals;
}

std::vector<Terminal> prepare_terminals(const Graph& g, const ThetaPartition& tp,
                                        std::vector<Terminal> terminals) {
    return rebase_terminals(g, tp, normalize_terminals(g, tp, std::move(terminals)));
}

Interval01 weighted_median_interval(std::vector<std::pair<Rational, Rational>> points,
                                    SelectMode mode) {
    std::erase_if(points, [](const auto& p) { return sgn(p.second) == 0; });
    Rational total;
    for (const auto& [x, w] : points) {
        if (sgn(w) < 0)
            throw InvalidInput("negative point weight");
        total += w;
    }
    if (sgn(total) == 0)
        throw InvalidInput("zero total weight");
    Rational half = total / 2;
    Rational lo = mode == SelectMode::sorting ? lower_median_sort(points, half)
                                              : lower_median_select(points, half);
    Rational upto;
    const Rational* next = nullptr;
    for (const auto& [x, w] : points) {
        if (x <= lo)
            upto += w;
        else if (!next || x < *next)
            next = &x;
    }
    if (2 * upto > total || !next)
        return {lo, lo};
    return {lo, *next};
}

std::vector<Interval01> class_median_intervals(const Graph& g, const ThetaPartition& tp,
                                               const std::vector<Terminal>& terminals,
                                               SelectMode mode) {
    ClassPoints pts = class_points(g, tp, terminals);
    std::vector<Interval01> out;
    out.reserve(tp.class_count());
    for (std::size_t c = 0; c < tp.class_count(); ++c) {
        auto line = std::move(pts.inside[c]);
        line.emplace_back(Rational(0), pts.at_zero[c]);
        line.emplace_back(Rational(1), pts.at_one[c]);
        out.push_back(weighted_median_interval(std::move(line), mode));
    }
    return out;
}

Skeleton geometric_median(const Graph& g, const ThetaPartition& tp,
                          const std::vector<Terminal>& terminals, SelectMode mode) {
    if (terminals.empty())
        throw InvalidInput("no terminals");
    auto rho = class_median_intervals(g, tp, terminals, mode);
    std::vector<char> sink(g.vertex_count(), 1);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& iv = rho[tp.class_of[e]];
        if (iv.lo == iv.hi && sgn(iv.lo) == 0)
            sink[tp.sides[e].far] = 0;
        else if (iv.lo == iv.hi && iv.lo == 1)
            sink[tp.sides[e].near] = 0;
    }

    ClassIncidence inc(g, tp);
    Skeleton sk;
    std::map<std::pair<Vertex, Coords>, std::size_t> index;
    std::vector<std::size_t> image(g.vertex_count(), SIZE_MAX);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!sink[v])
            continue;
        Coords coords;
        std::vector<ClassId> cross;
        for (const auto& [w, e] : g.neighbors(v)) {
            ClassId c = tp.class_of[e];
            const auto& iv = rho[c];
            if (tp.sides[e].near == v) {
                if (sgn(iv.lo) > 0)
                    coords.emplace_back(c, iv.lo);
            } else if (iv.hi < 1) {
                coords.emplace_back(c, iv.hi);
                cross.push_back(c);
            }
        }
        std::sort(coords.begin(), coords.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (!pairwise_crossing(inc, v, coords))
            throw NotMedianGraph("half-edges at vertex " + std::to_string(v) +
                                 " do not span a cube");
        Vertex anchor = v;
        for (ClassId c : cross)
            anchor = *inc.across(anchor, c);
        auto [it, fresh] = index.try_emplace({anchor, coords}, sk.vertices.size());
        if (fresh)
            sk.vertices.push_back({anchor, std::move(coords), v});
        image[v] = it->second;
    }

    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& [u, v] : g.edges()) {
        if (!sink[u] || !sink[v] || image[u] == image[v])
            continue;
        auto key = std::minmax(image[u], image[v]);
        if (seen.insert(key).second)
            sk.edges.push_back(key);
    }
    return sk;
}

Rational geometric_wiener(const Graph& g, const ThetaPartition& tp,
                          const std::vector<Terminal>& terminals) {
    ClassPoints pts = class_points(g, tp, terminals);
    Rational total;
    for (const auto& t : terminals)
        total += t.weight;
    Rational sum;
    for (std::size_t c = 0; c < tp.class_count(); ++c) {
        auto line = std::move(pts.inside[c]);
        line.emplace_back(Rational(0), pts.at_zero[c]);
        line.emplace_back(Rational(1), pts.at_one[c]);
        std::sort(line.begin(), line.end());
        Rational below;
        for (std::size_t i = 0; i + 1 < line.size(); ++i) {
            below += line[i].second;
            Rational gap = line[i + 1].first - line[i].first;
            if (sgn(gap) != 0)
                sum += gap * below * (total - below);
        }
    }
    return sum;
}

} // namespace medgraph
