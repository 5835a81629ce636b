#include "medgraph/cli.hpp"

#include "medgraph/complex.hpp"
#include "medgraph/errors.hpp"
#include "medgraph/events.hpp"
#include "medgraph/median.hpp"
#include "medgraph/testkit.hpp"
#include "medgraph/theta.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace medgraph {

namespace {

constexpr const char* kFormats = R"(File formats (0-based vertices, events and classes):
  graph          "n m" then m lines "u v"; '#' starts a comment line
                 example:  3 2 / 0 1 / 1 2
  weights        lines "v p" or "v p/q"; unlisted vertices weigh 0
                 example:  0 1 / 2 1/2
  terminals      lines "v k i1 p1 ... ik pk w": vertex v, k coordinates
                 (class id from `theta`, value in [0,1]) and weight w
                 example:  3 2 0 1/4 1 1/3 1   (point of the square at v=3)
  event struct.  "k" then lines "le a b" (a below b) and "cf a b"
                 example:  3 / le 0 1 / cf 1 2
  configurations lines "w e1 e2 ...": weight, then events
                 example:  1 0 1 / 2 / 1/2 0
  2-SAT          "p cnf k m" then m lines "a b 0" with literals +-1..k

Exit codes: 0 ok, 1 parse or validation error, 2 size cap exceeded,
3 input is not a median graph.

Worked example:
  medgraph gen grid 2 3 --out g.txt
  medgraph theta g.txt          # class 0 root 0-1 d0 1: 0-1 3-4 ...
  medgraph median g.txt w.txt --pair)";

struct Options {
    std::string graph, second;
    Vertex v0 = 0;
    std::string algo = "lexbfs";
    std::string select = "quickselect";
    std::string out_path;
    std::size_t cap = 0;
    std::uint64_t seed = 1;
    bool pair = false;
    bool strict = false;
    bool time = false;
    std::string kind;
    std::vector<std::size_t> params;
};

class Clock {
public:
    Clock(bool enabled, std::ostream& err) : enabled_(enabled), err_(err), last_(now()) {}
    void lap(const char* phase) {
        if (!enabled_)
            return;
        auto t = now();
        err_ << "time " << phase << ' '
             << std::chrono::duration<double, std::milli>(t - last_).count() << " ms\n";
        last_ = now();
    }

private:
    static std::chrono::steady_clock::time_point now() { return std::chrono::steady_clock::now(); }
    bool enabled_;
    std::ostream& err_;
    std::chrono::steady_clock::time_point last_;
};

std::string config_text(const Configuration& c) {
    std::string s;
    for (Event e : c) {
        if (!s.empty())
            s += ' ';
        s += std::to_string(e);
    }
    return s;
}

ThetaPartition theta_for(const Graph& g, const Options& o) {
    if (o.v0 >= g.vertex_count())
        throw InvalidInput("--v0 " + std::to_string(o.v0) + " out of range");
    return o.algo == "bfs" ? theta_classes_bfs(g, o.v0) : theta_classes_lexbfs(g, o.v0);
}

void cmd_theta(const Options& o, std::ostream& out, Clock& clock) {
    Graph g = read_graph_file(o.graph);
    clock.lap("read");
    ThetaPartition tp = theta_for(g, o);
    clock.lap("theta");
    for (ClassId c = 0; c < tp.class_count(); ++c) {
        const auto& root = tp.sides[tp.classes[c].front()];
        out << "class " << c << " root " << root.near << '-' << root.far << " d0 " << tp.root_distance[c]
            << ':';
        for (EdgeId e : tp.classes[c])
            out << ' ' << tp.sides[e].near << '-' << tp.sides[e].far;
        out << '\n';
    }
}

void cmd_median(const Options& o, std::ostream& out, Clock& clock) {
    Graph g = read_graph_file(o.graph);
    WeightFn w = read_weights_file(o.second, g.vertex_count());
    clock.lap("read");
    ThetaPartition tp = theta_for(g, o);
    clock.lap("theta");
    HalfspaceWeights hw = halfspace_weights(g, w.values(), tp);
    clock.lap("weights");
    MedianResult med = median_set(g, tp, hw);
    clock.lap("median");
    for (std::size_t i = 0; i < med.vertices.size(); ++i)
        out << (i ? " " : "") << med.vertices[i];
    out << '\n';
    for (ClassId c = 0; c < tp.class_count(); ++c)
        out << "class " << c << ' ' << balance_tag(med.classification[c]) << '\n';
    if (o.pair) {
        auto [u, v] = diametral_pair(g, w, med);
        clock.lap("pair");
        out << "pair " << u << ' ' << v << '\n';
    }
}

void cmd_wiener(const Options& o, std::ostream& out, Clock& clock) {
    Graph g = read_graph_file(o.graph);
    WeightFn w = read_weights_file(o.second, g.vertex_count());
    clock.lap("read");
    ThetaPartition tp = theta_for(g, o);
    clock.lap("theta");
    out << to_string(wiener_index(halfspace_weights(g, w.values(), tp))) << '\n';
    clock.lap("wiener");
}

void cmd_distmatrix(const Options& o, std::ostream& out, Clock& clock) {
    Graph g = read_graph_file(o.graph);
    clock.lap("read");
    ThetaPartition tp = theta_for(g, o);
    clock.lap("theta");
    DistanceMatrix d = distance_matrix(g, tp, o.cap ? o.cap : kDefaultDistanceCap);
    clock.lap("matrix");
    std::ofstream file;
    std::ostream* sink = &out;
    if (!o.out_path.empty()) {
        file.open(o.out_path);
        if (!file)
            throw InvalidInput("cannot write " + o.out_path);
        sink = &file;
    }
    std::string line;
    for (Vertex u = 0; u < d.size(); ++u) {
        line.clear();
        for (Vertex v = 0; v < d.size(); ++v) {
            if (v)
                line += ' ';
            line += std::to_string(d(u, v));
        }
        line += '\n';
        *sink << line;
    }
    clock.lap("write");
}

std::vector<Terminal> load_terminals(const Graph& g, const ThetaPartition& tp, const Options& o) {
    return prepare_terminals(g, tp, read_terminals_file(o.second));
}

void cmd_gmedian(const Options& o, std::ostream& out, Clock& clock) {
    Graph g = read_graph_file(o.graph);
    clock.lap("read");
    ThetaPartition tp = theta_for(g, o);
    clock.lap("theta");
    auto terminals = load_terminals(g, tp, o);
    clock.lap("rebase");
    Skeleton sk = geometric_median(g, tp, terminals,
                                   o.select == "sort" ? SelectMode::sorting : SelectMode::quickselect);
    clock.lap("median");
    for (const auto& v : sk.vertices) {
        out << v.anchor << " |";
        for (const auto& [c, x] : v.coords)
            out << ' ' << c << ':' << to_string(x);
        out << '\n';
    }
    out << "--\n";
    for (auto [a, b] : sk.edges)
        out << a << ' ' << b << '\n';
}

void cmd_gwiener(const Options& o, std::ostream& out, Clock& clock) {
    Graph g = read_graph_file(o.graph);
    clock.lap("read");
    ThetaPartition tp = theta_for(g, o);
    clock.lap("theta");
    auto terminals = load_terminals(g, tp, o);
    clock.lap("rebase");
    out << to_string(geometric_wiener(g, tp, terminals)) << '\n';
    clock.lap("wiener");
}

EsRelations load_es(const Options& o) {
    return close_es(read_event_structure_file(o.graph),
                    o.strict ? ConflictMode::reject : ConflictMode::complete);
}

void cmd_esmedian(const Options& o, std::ostream& out, Clock& clock) {
    EsRelations rel = load_es(o);
    WeightedConfigurations wc = read_configurations_file(o.second);
    clock.lap("read");
    out << config_text(median_configuration(rel, wc)) << '\n';
    if (o.pair) {
        auto dc = diametral_configurations(rel, wc);
        out << "pair " << config_text(dc.first) << " | " << config_text(dc.second) << '\n';
        out << "distance " << dc.egalitarian.size() << '\n';
    }
    clock.lap("median");
}

void cmd_esdomain(const Options& o, std::ostream& out, Clock& clock) {
    EsRelations rel = load_es(o);
    clock.lap("read");
    Domain d = domain_of_es(rel, o.cap ? o.cap : kDefaultDomainCap);
    clock.lap("domain");
    write_graph(out, d.graph);
    for (Vertex v = 0; v < d.configs.size(); ++v)
        out << "# " << v << ": " << config_text(d.configs[v]) << '\n';
}

void cmd_es2sat(const Options& o, std::ostream& out, Clock&) { write_dimacs(out, es_to_2sat(load_es(o))); }

void cmd_sat2es(const Options& o, std::ostream& out, Clock&) {
    write_event_structure(out, twosat_to_es(read_dimacs_file(o.graph)));
}

void cmd_escompact(const Options& o, std::ostream& out, Clock& clock) {
    EsRelations rel = load_es(o);
    out << config_text(compact_median_bruteforce(rel, o.cap ? o.cap : kDefaultDomainCap)) << '\n';
    clock.lap("compact");
}

void cmd_gen(const Options& o, std::ostream& out, Clock& clock) {
    Graph g = testkit::generate(o.kind, o.params, o.seed);
    clock.lap("generate");
    if (o.out_path.empty()) {
        write_graph(out, g);
        return;
    }
    std::ofstream file(o.out_path);
    if (!file)
        throw InvalidInput("cannot write " + o.out_path);
    write_graph(file, g);
}

int cmd_verify(const Options& o, std::ostream& out, Clock& clock) {
    Graph g = read_graph_file(o.graph);
    auto verdict = testkit::verify_median_graph(g, o.cap ? o.cap : testkit::kDefaultVerifyCap);
    clock.lap("verify");
    if (verdict.median) {
        out << "median\n";
        return 0;
    }
    out << "not median: triple " << verdict.witness[0] << ' ' << verdict.witness[1] << ' '
        << verdict.witness[2] << " has " << verdict.intersection_size << " medians\n";
    return 3;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Median graph algorithms: Theta-classes, medians, Wiener index, cube complex "
                 "medians and event structures."};
    app.footer(kFormats);
    app.require_subcommand(1);
    Options o;
    std::function<int()> action;

    auto graph_arg = [&](CLI::App* sub) { sub->add_option("graph", o.graph, "graph file")->required(); };
    auto theta_opts = [&](CLI::App* sub) {
        sub->add_option("--v0", o.v0, "basepoint (default 0)");
        sub->add_option("--algo", o.algo, "bfs or lexbfs (default)")->check(CLI::IsMember({"bfs", "lexbfs"}));
    };
    auto add = [&](const char* name, const char* help, auto fn) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_flag("--time", o.time, "print per-phase wall time to stderr");
        sub->callback([&, fn] {
            action = [&, fn] {
                Clock clock(o.time, err);
                if constexpr (std::is_same_v<decltype(fn(o, out, clock)), int>)
                    return fn(o, out, clock);
                else {
                    fn(o, out, clock);
                    return 0;
                }
            };
        });
        return sub;
    };

    auto* theta = add("theta", "Theta-classes; one line 'class <id> root <u>-<v> d0 <dist>: u-v ...', far end second",
                      cmd_theta);
    graph_arg(theta);
    theta_opts(theta);

    auto* median = add("median", "median set: sorted vertices, then per-class balance, then optional 'pair u v'",
                       cmd_median);
    graph_arg(median);
    median->add_option("weights", o.second, "weight file")->required();
    median->add_flag("--pair", o.pair, "also print a diametral pair of the median set");
    theta_opts(median);

    auto* wiener = add("wiener", "weighted Wiener index over unordered pairs", cmd_wiener);
    graph_arg(wiener);
    wiener->add_option("weights", o.second, "weight file")->required();
    theta_opts(wiener);

    auto* dm = add("distmatrix", "all-pairs distance matrix, n lines of n integers", cmd_distmatrix);
    graph_arg(dm);
    dm->add_option("--out", o.out_path, "write to a file instead of stdout");
    dm->add_option("--cap", o.cap, "maximum vertex count (default 32768)");
    theta_opts(dm);

    auto* gm = add("gmedian",
                   "median of terminals in the cube complex: lines 'anchor | class:coord ...', '--', edges",
                   cmd_gmedian);
    graph_arg(gm);
    gm->add_option("terminals", o.second, "terminal file")->required();
    gm->add_option("--select", o.select, "1-D median selection: quickselect (default) or sort")
        ->check(CLI::IsMember({"quickselect", "sort"}));
    theta_opts(gm);

    auto* gw = add("gwiener", "Wiener index of terminals in the cube complex", cmd_gwiener);
    graph_arg(gw);
    gw->add_option("terminals", o.second, "terminal file")->required();
    theta_opts(gw);

    auto* esm = add("esmedian", "majority configuration; with --pair a diametral pair and its distance",
                    cmd_esmedian);
    esm->add_option("es", o.graph, "event structure file")->required();
    esm->add_option("configs", o.second, "configuration file")->required();
    esm->add_flag("--pair", o.pair, "also print two median configurations at maximum distance");
    esm->add_flag("--strict", o.strict, "reject missing inherited conflicts instead of adding them");

    auto* esd = add("esdomain", "domain of configurations as a graph file, configurations as comments",
                    cmd_esdomain);
    esd->add_option("es", o.graph, "event structure file")->required();
    esd->add_option("--cap", o.cap, "maximum configuration count");
    esd->add_flag("--strict", o.strict, "reject missing inherited conflicts");

    auto* e2s = add("es2sat", "2-SAT formula whose solutions are the configurations", cmd_es2sat);
    e2s->add_option("es", o.graph, "event structure file")->required();
    e2s->add_flag("--strict", o.strict, "reject missing inherited conflicts");

    auto* s2e = add("sat2es", "event structure whose configurations are the solutions", cmd_sat2es);
    s2e->add_option("formula", o.graph, "DIMACS 2-SAT file")->required();

    auto* esc = add("escompact", "configuration closest in total to the whole domain (exhaustive)",
                    cmd_escompact);
    esc->add_option("es", o.graph, "event structure file")->required();
    esc->add_option("--cap", o.cap, "maximum configuration count");
    esc->add_flag("--strict", o.strict, "reject missing inherited conflicts");

    auto* gen = add("gen", "generate a median graph: path N | cycle N | hypercube D | grid R C | "
                           "product L1 L2 ... | random-tree N | random-median D S",
                    cmd_gen);
    gen->add_option("kind", o.kind, "generator")->required();
    gen->add_option("params", o.params, "generator parameters");
    gen->add_option("--seed", o.seed, "random seed (default 1)");
    gen->add_option("--out", o.out_path, "write to a file instead of stdout");

    auto* verify = add("verify", "check that every triple has a unique median (exit 3 otherwise)", cmd_verify);
    graph_arg(verify);
    verify->add_option("--cap", o.cap, "maximum vertex count (default 300)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }
    try {
        return action ? action() : 1;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const NotMedianGraph& e) {
        err << "error: not a median graph: " << e.what() << '\n';
        return 3;
    }
}

} // namespace medgraph
