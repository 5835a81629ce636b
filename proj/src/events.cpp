#include "medgraph/events.hpp"

#include "medgraph/errors.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <queue>
#include <string>
#include <unordered_map>

namespace medgraph {

namespace {

std::string ev(Event e) { return "e" + std::to_string(e); }

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
    std::size_t operator()(const Bits& b) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (auto w : b)
            h = (h ^ w) * 0x100000001b3ull + (h >> 29);
        return static_cast<std::size_t>(h);
    }
};

bool has(const Bits& b, Event e) { return (b[e / 64] >> (e % 64)) & 1u; }
void flip(Bits& b, Event e) { b[e / 64] ^= std::uint64_t{1} << (e % 64); }

bool config_less(const Configuration& a, const Configuration& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

// Enumerates configurations in a DFS over a linear extension.
std::vector<Configuration> enumerate_configurations(const EsRelations& rel, std::size_t cap) {
    const std::size_t k = rel.events;
    std::vector<Configuration> out;
    std::vector<char> in(k, 0);
    Configuration current;
    auto rec = [&](auto&& self, std::size_t t) -> void {
        if (t == k) {
            if (out.size() == cap)
                throw CapExceeded("domain has more than " + std::to_string(cap) + " configurations");
            Configuration c = current;
            std::sort(c.begin(), c.end());
            out.push_back(std::move(c));
            return;
        }
        Event e = rel.topological[t];
        self(self, t + 1);
        bool ok = std::all_of(rel.below[e].begin(), rel.below[e].end(),
                              [&](Event p) { return in[p] != 0; });
        ok = ok && std::none_of(rel.conflicts[e].begin(), rel.conflicts[e].end(),
                                [&](Event x) { return in[x] != 0; });
        if (ok) {
            in[e] = 1;
            current.push_back(e);
            self(self, t + 1);
            current.pop_back();
            in[e] = 0;
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), config_less);
    return out;
}

struct EventCounts {
    std::vector<Rational> carried;
    Rational total;
};

EventCounts count_events(const EsRelations& rel, const WeightedConfigurations& wc) {
    if (wc.configs.size() != wc.weights.size())
        throw InvalidInput("configuration and weight counts differ");
    EventCounts ec;
    ec.carried.resize(rel.events);
    for (std::size_t i = 0; i < wc.configs.size(); ++i) {
        if (sgn(wc.weights[i]) < 0)
            throw InvalidInput("configuration " + std::to_string(i) + " has negative weight");
        if (!is_configuration(rel, wc.configs[i]))
            throw InvalidInput("configuration " + std::to_string(i) + " is not a configuration");
        ec.total += wc.weights[i];
        for (Event e : wc.configs[i])
            ec.carried[e] += wc.weights[i];
    }
    return ec;
}

} // namespace

EventStructure EsRelations::structure() const {
    EventStructure es;
    es.events = events;
    es.order = covers;
    for (Event a = 0; a < events; ++a)
        for (Event b : conflicts[a])
            if (a < b)
                es.conflict.emplace_back(a, b);
    return es;
}

EsValidation validate_es(const EventStructure& es, ConflictMode mode) {
    const std::size_t k = es.events;
    EsValidation res;
    auto fail = [&](std::string why) {
        res.ok = false;
        res.violation = std::move(why);
        return res;
    };
    for (auto [a, b] : es.order)
        if (a >= k || b >= k)
            return fail("order pair " + ev(a) + " <= " + ev(b) + " names an unknown event");
    for (auto [a, b] : es.conflict)
        if (a >= k || b >= k)
            return fail("conflict pair " + ev(a) + " # " + ev(b) + " names an unknown event");

    // topological order of the generating relation
    std::vector<std::vector<Event>> succ(k);
    std::vector<std::size_t> indeg(k, 0);
    for (auto [a, b] : es.order) {
        if (a == b)
            continue;
        succ[a].push_back(b);
        ++indeg[b];
    }
    std::vector<Event> topo;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> ready;
    for (Event e = 0; e < k; ++e)
        if (indeg[e] == 0)
            ready.push(e);
    while (!ready.empty()) {
        Event e = ready.top();
        ready.pop();
        topo.push_back(e);
        for (Event f : succ[e])
            if (--indeg[f] == 0)
                ready.push(f);
    }
    if (topo.size() != k) {
        Event stuck = 0;
        while (indeg[stuck] == 0)
            ++stuck;
        return fail("antisymmetry violated: order has a cycle through " + ev(stuck));
    }

    EsRelations& rel = res.relations;
    rel.events = k;
    rel.topological = topo;
    // below-closure: row b holds every a <= b
    BitMatrix down(k);
    std::vector<std::vector<Event>> pred(k);
    for (auto [a, b] : es.order)
        if (a != b)
            pred[b].push_back(a);
    for (Event e : topo) {
        down.set(e, e);
        for (Event p : pred[e])
            down.merge_row(e, p);
    }
    rel.leq = BitMatrix(k);
    rel.below.assign(k, {});
    for (Event b = 0; b < k; ++b)
        for (Event a = 0; a < k; ++a)
            if (down.test(b, a)) {
                rel.leq.set(a, b);
                if (a != b)
                    rel.below[b].push_back(a);
            }
    for (Event b = 0; b < k; ++b)
        for (Event a : rel.below[b]) {
            bool cover = std::none_of(rel.below[b].begin(), rel.below[b].end(),
                                      [&](Event c) { return c != a && rel.leq.test(a, c); });
            if (cover)
                rel.covers.emplace_back(a, b);
        }

    BitMatrix given(k);
    for (auto [a, b] : es.conflict) {
        if (a == b)
            return fail("irreflexivity violated: " + ev(a) + " conflicts with itself");
        given.set(a, b);
        given.set(b, a);
    }
    // inherited closure: a # b iff a' # b' for some a' <= a, b' <= b
    rel.conflict = BitMatrix(k);
    for (auto [x, y] : es.conflict)
        for (Event a = 0; a < k; ++a) {
            if (!rel.leq.test(x, a))
                continue;
            for (Event b = 0; b < k; ++b)
                if (rel.leq.test(y, b)) {
                    rel.conflict.set(a, b);
                    rel.conflict.set(b, a);
                }
        }
    rel.conflicts.assign(k, {});
    for (Event a = 0; a < k; ++a) {
        if (rel.conflict.test(a, a))
            return fail("irreflexivity violated: " + ev(a) + " inherits a conflict with itself");
        for (Event b = 0; b < k; ++b) {
            if (!rel.conflict.test(a, b))
                continue;
            if (mode == ConflictMode::reject && !given.test(a, b))
                return fail("inheritance violated: " + ev(a) + " # " + ev(b) + " is implied but missing");
            rel.conflicts[a].push_back(b);
        }
    }
    res.ok = true;
    return res;
}

EsRelations close_es(const EventStructure& es, ConflictMode mode) {
    EsValidation v = validate_es(es, mode);
    if (!v.ok)
        throw InvalidInput(v.violation);
    return std::move(v.relations);
}

bool is_configuration(const EsRelations& rel, const Configuration& c) {
    std::vector<char> in(rel.events, 0);
    for (Event e : c) {
        if (e >= rel.events || in[e])
            return false;
        in[e] = 1;
    }
    for (Event e : c) {
        for (Event p : rel.below[e])
            if (!in[p])
                return false;
        for (Event x : rel.conflicts[e])
            if (in[x])
                return false;
    }
    return true;
}

EventStructure parse_event_structure(std::string_view text) {
    auto lines = detail::tokenize(text);
    if (lines.empty())
        throw ParseError("empty event structure file");
    detail::expect_tokens(lines[0], 1);
    EventStructure es;
    es.events = detail::parse_count(lines[0].tokens[0], lines[0].number);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        detail::expect_tokens(line, 3);
        auto a = static_cast<Event>(detail::parse_count(line.tokens[1], line.number));
        auto b = static_cast<Event>(detail::parse_count(line.tokens[2], line.number));
        auto where = "line " + std::to_string(line.number);
        if (a >= es.events || b >= es.events)
            throw ParseError(where + ": event out of range");
        if (line.tokens[0] == "le")
            es.order.emplace_back(a, b);
        else if (line.tokens[0] == "cf")
            es.conflict.emplace_back(a, b);
        else
            throw ParseError(where + ": expected 'le' or 'cf', got '" + std::string(line.tokens[0]) + "'");
    }
    return es;
}

EventStructure read_event_structure_file(const std::string& path) {
    return parse_event_structure(read_text_file(path));
}

void write_event_structure(std::ostream& out, const EventStructure& es) {
    out << es.events << '\n';
    for (auto [a, b] : es.order)
        out << "le " << a << ' ' << b << '\n';
    for (auto [a, b] : es.conflict)
        out << "cf " << a << ' ' << b << '\n';
}

WeightedConfigurations parse_configurations(std::string_view text) {
    WeightedConfigurations wc;
    for (const auto& line : detail::tokenize(text)) {
        Rational w;
        try {
            w = parse_rational(line.tokens[0]);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line.number) + ": " + e.what());
        }
        if (sgn(w) < 0)
            throw ParseError("line " + std::to_string(line.number) + ": negative weight");
        Configuration c;
        for (std::size_t i = 1; i < line.tokens.size(); ++i)
            c.push_back(static_cast<Event>(detail::parse_count(line.tokens[i], line.number)));
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end())
            throw ParseError("line " + std::to_string(line.number) + ": repeated event");
        wc.configs.push_back(std::move(c));
        wc.weights.push_back(std::move(w));
    }
    return wc;
}

WeightedConfigurations read_configurations_file(const std::string& path) {
    return parse_configurations(read_text_file(path));
}

Domain domain_of_es(const EsRelations& rel, std::size_t cap) {
    auto configs = enumerate_configurations(rel, cap);
    const std::size_t words = (rel.events + 63) / 64;
    std::unordered_map<Bits, Vertex, BitsHash> index;
    index.reserve(configs.size());
    std::vector<Bits> bits(configs.size(), Bits(words, 0));
    for (std::size_t i = 0; i < configs.size(); ++i) {
        for (Event e : configs[i])
            flip(bits[i], e);
        index.emplace(bits[i], static_cast<Vertex>(i));
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        Bits b = bits[i];
        for (Event e : configs[i]) {
            flip(b, e);
            auto it = index.find(b);
            if (it != index.end())
                edges.push_back({it->second, static_cast<Vertex>(i)});
            flip(b, e);
        }
    }
    return Domain{Graph(configs.size(), std::move(edges)), std::move(configs)};
}

EventStructure es_of_pointed_graph(const Graph& g, const ThetaPartition& tp) {
    const std::size_t q = tp.class_count();
    SearchOrder so = bfs_order(g, tp.basepoint);
    // sig(v): classes separating v from the basepoint
    std::vector<Bits> sig(g.vertex_count(), Bits((q + 63) / 64, 0));
    for (Vertex v : so.order) {
        if (v == tp.basepoint)
            continue;
        const Incidence& p = so.predecessors(v)[0];
        sig[v] = sig[p.neighbor];
        flip(sig[v], tp.class_of[p.edge]);
    }
    BitMatrix cross(q);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto preds = so.predecessors(v);
        for (std::size_t i = 0; i < preds.size(); ++i)
            for (std::size_t j = i + 1; j < preds.size(); ++j) {
                ClassId a = tp.class_of[preds[i].edge], b = tp.class_of[preds[j].edge];
                cross.set(a, b);
                cross.set(b, a);
            }
    }
    EventStructure raw;
    raw.events = q;
    for (ClassId j = 0; j < q; ++j) {
        Vertex root = tp.sides[tp.classes[j].front()].far;
        for (ClassId i = 0; i < q; ++i)
            if (i != j && has(sig[root], i))
                raw.order.emplace_back(i, j);
    }
    for (ClassId i = 0; i < q; ++i) {
        Vertex ri = tp.sides[tp.classes[i].front()].far;
        for (ClassId j = i + 1; j < q; ++j) {
            Vertex rj = tp.sides[tp.classes[j].front()].far;
            if (!has(sig[ri], j) && !has(sig[rj], i) && !cross.test(i, j))
                raw.conflict.emplace_back(i, j);
        }
    }
    // report the cover relation rather than every comparable pair
    return close_es(raw).structure();
}

Configuration median_configuration(const EsRelations& rel, const WeightedConfigurations& wc) {
    EventCounts ec = count_events(rel, wc);
    Configuration c;
    for (Event e = 0; e < rel.events; ++e)
        if (2 * ec.carried[e] > ec.total)
            c.push_back(e);
    return c;
}

DiametralConfigurations diametral_configurations(const EsRelations& rel,
                                                 const WeightedConfigurations& wc) {
    EventCounts ec = count_events(rel, wc);
    if (sgn(ec.total) == 0)
        throw InvalidInput("zero total weight");
    const std::size_t k = rel.events;
    DiametralConfigurations out;
    Configuration majority;
    std::vector<char> egal(k, 0);
    for (Event e = 0; e < k; ++e) {
        int s = cmp(2 * ec.carried[e], ec.total);
        if (s > 0) {
            majority.push_back(e);
        } else if (s == 0) {
            egal[e] = 1;
            out.egalitarian.push_back(e);
        }
    }
    // R-classes: components of the Hasse diagram restricted to egalitarian events
    std::vector<Event> root(k);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](Event x) {
        while (root[x] != x)
            x = root[x] = root[root[x]];
        return x;
    };
    for (auto [a, b] : rel.covers)
        if (egal[a] && egal[b]) {
            Event ra = find(a), rb = find(b);
            if (ra != rb)
                root[std::max(ra, rb)] = std::min(ra, rb);
        }
    // conflict graph between R-classes, keyed by class representative
    std::vector<std::vector<Event>> gamma(k);
    for (Event a : out.egalitarian)
        for (Event b : rel.conflicts[a])
            if (egal[b] && find(a) != find(b))
                gamma[find(a)].push_back(find(b));
    std::vector<int> color(k, -1);
    for (Event e : out.egalitarian) {
        Event r = find(e);
        if (color[r] >= 0)
            continue;
        color[r] = 0;
        std::queue<Event> bfs;
        bfs.push(r);
        while (!bfs.empty()) {
            Event x = bfs.front();
            bfs.pop();
            for (Event y : gamma[x]) {
                if (color[y] < 0) {
                    color[y] = 1 - color[x];
                    bfs.push(y);
                } else if (color[y] == color[x]) {
                    throw NotMedianGraph("conflict graph of egalitarian classes has an odd cycle through " +
                                         ev(x) + " and " + ev(y));
                }
            }
        }
    }
    out.first = majority;
    out.second = majority;
    for (Event e : out.egalitarian)
        (color[find(e)] == 0 ? out.first : out.second).push_back(e);
    std::sort(out.first.begin(), out.first.end());
    std::sort(out.second.begin(), out.second.end());
    return out;
}

TwoSatFormula parse_dimacs(std::string_view text) {
    TwoSatFormula f;
    bool header = false;
    std::size_t declared = 0;
    for (const auto& line : detail::tokenize(text, 'c')) {
        const auto& tok = line.tokens;
        auto where = "line " + std::to_string(line.number);
        if (tok[0] == "p") {
            if (header)
                throw ParseError(where + ": second problem line");
            detail::expect_tokens(line, 4);
            if (tok[1] != "cnf")
                throw ParseError(where + ": expected 'p cnf k m'");
            f.variables = detail::parse_count(tok[2], line.number);
            declared = detail::parse_count(tok[3], line.number);
            header = true;
            continue;
        }
        if (!header)
            throw ParseError(where + ": clause before the problem line");
        if (tok.size() != 3 || tok[2] != "0")
            throw ParseError(where + ": expected a 2-literal clause \"a b 0\"");
        int lits[2];
        for (int i = 0; i < 2; ++i) {
            std::int64_t x = detail::parse_int(tok[i], line.number);
            if (x == 0 || static_cast<std::size_t>(x < 0 ? -x : x) > f.variables)
                throw ParseError(where + ": literal " + std::string(tok[i]) + " out of range");
            lits[i] = static_cast<int>(x);
        }
        f.clauses.emplace_back(lits[0], lits[1]);
    }
    if (!header)
        throw ParseError("missing 'p cnf' line");
    if (f.clauses.size() != declared)
        throw ParseError("header declares " + std::to_string(declared) + " clauses, found " +
                         std::to_string(f.clauses.size()));
    return f;
}

TwoSatFormula read_dimacs_file(const std::string& path) { return parse_dimacs(read_text_file(path)); }

void write_dimacs(std::ostream& out, const TwoSatFormula& f) {
    out << "p cnf " << f.variables << ' ' << f.clauses.size() << '\n';
    for (auto [a, b] : f.clauses)
        out << a << ' ' << b << " 0\n";
}

TwoSatFormula es_to_2sat(const EsRelations& rel) {
    TwoSatFormula f;
    f.variables = rel.events;
    for (Event j = 0; j < rel.events; ++j)
        for (Event i : rel.below[j])
            f.clauses.emplace_back(static_cast<int>(i) + 1, -static_cast<int>(j) - 1);
    for (Event i = 0; i < rel.events; ++i)
        for (Event j : rel.conflicts[i])
            if (i < j)
                f.clauses.emplace_back(-static_cast<int>(i) - 1, -static_cast<int>(j) - 1);
    return f;
}

EventStructure twosat_to_es(const TwoSatFormula& f) {
    EventStructure es;
    es.events = f.variables;
    for (auto [a, b] : f.clauses) {
        int va = a < 0 ? -a : a, vb = b < 0 ? -b : b;
        std::string clause = "(" + std::to_string(a) + " " + std::to_string(b) + ")";
        if (va == 0 || vb == 0 || static_cast<std::size_t>(std::max(va, vb)) > f.variables)
            throw InvalidInput("clause " + clause + " has a literal out of range");
        if (va == vb)
            throw InvalidInput("clause " + clause + " mentions a single variable");
        if (a > 0 && b > 0)
            throw InvalidInput("clause " + clause + " has two positive literals");
        Event ea = static_cast<Event>(va - 1), eb = static_cast<Event>(vb - 1);
        if (a > 0)
            es.order.emplace_back(ea, eb); // b true forces a true
        else if (b > 0)
            es.order.emplace_back(eb, ea);
        else
            es.conflict.emplace_back(ea, eb);
    }
    std::sort(es.order.begin(), es.order.end());
    es.order.erase(std::unique(es.order.begin(), es.order.end()), es.order.end());
    for (auto& p : es.conflict)
        if (p.first > p.second)
            std::swap(p.first, p.second);
    std::sort(es.conflict.begin(), es.conflict.end());
    es.conflict.erase(std::unique(es.conflict.begin(), es.conflict.end()), es.conflict.end());
    EsValidation v = validate_es(es);
    if (!v.ok)
        throw InvalidInput("formula does not define an event structure: " + v.violation);
    return v.relations.structure();
}

Configuration compact_median_bruteforce(const EsRelations& rel, std::size_t cap) {
    auto configs = enumerate_configurations(rel, cap);
    const std::size_t n = configs.size();
    std::vector<std::size_t> count(rel.events, 0);
    for (const auto& c : configs)
        for (Event e : c)
            ++count[e];
    std::size_t f_empty = std::accumulate(count.begin(), count.end(), std::size_t{0});
    const Configuration* best = nullptr;
    std::size_t best_f = 0;
    for (const auto& c : configs) {
        // F(c) = sum over events of cnt_e if e not in c, else n - cnt_e
        std::size_t f = f_empty;
        for (Event e : c)
            f = f - count[e] + (n - count[e]);
        if (!best || f < best_f || (f == best_f && *best > c)) {
            best = &c;
            best_f = f;
        }
    }
    return *best;
}

} // namespace medgraph
