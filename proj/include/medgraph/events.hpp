#pragma once

// Finite event structures, their domains of configurations, medians of
// configuration sets, and the translation to and from 2-SAT.

#include "medgraph/graph.hpp"
#include "medgraph/theta.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace medgraph {

using Event = std::uint32_t;
using Configuration = std::vector<Event>; ///< sorted event ids

/// Events 0..events-1 with generating order pairs (a <= b) and conflict
/// pairs. Neither relation needs to be closed.
struct EventStructure {
    std::size_t events = 0;
    std::vector<std::pair<Event, Event>> order;
    std::vector<std::pair<Event, Event>> conflict;
};

/// Square bit matrix.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

    std::size_t size() const noexcept { return n_; }
    bool test(std::size_t i, std::size_t j) const {
        return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
    }
    void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
    /// row dst |= row src
    void merge_row(std::size_t dst, std::size_t src) {
        for (std::size_t w = 0; w < words_; ++w)
            bits_[dst * words_ + w] |= bits_[src * words_ + w];
    }

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Closed relations of a valid event structure.
struct EsRelations {
    std::size_t events = 0;
    BitMatrix leq;      ///< reflexive-transitive closure, leq.test(a, b) iff a <= b
    BitMatrix conflict; ///< symmetric, inherited
    std::vector<std::vector<Event>> below;     ///< strict predecessors, sorted
    std::vector<std::vector<Event>> conflicts; ///< sorted
    std::vector<std::pair<Event, Event>> covers;
    std::vector<Event> topological; ///< a linear extension of <=

    /// Covers plus every conflict pair a < b.
    EventStructure structure() const;
};

enum class ConflictMode { complete, reject };

struct EsValidation {
    bool ok = false;
    std::string violation;
    EsRelations relations; ///< meaningful iff ok
};

/// Checks antisymmetry of the order, irreflexivity of conflict and conflict
/// inheritance. In complete mode missing inherited conflicts are added; in
/// reject mode the first missing one is reported.
EsValidation validate_es(const EventStructure& es, ConflictMode mode = ConflictMode::complete);

/// validate_es that throws InvalidInput with the violation.
EsRelations close_es(const EventStructure& es, ConflictMode mode = ConflictMode::complete);

bool is_configuration(const EsRelations& rel, const Configuration& c);

/// ES file: "k" then lines "le a b" and "cf a b".
EventStructure parse_event_structure(std::string_view text);
EventStructure read_event_structure_file(const std::string& path);
void write_event_structure(std::ostream& out, const EventStructure& es);

struct WeightedConfigurations {
    std::vector<Configuration> configs;
    std::vector<Rational> weights;
};

/// Configuration file: one line per configuration, "w e1 e2 ...".
WeightedConfigurations parse_configurations(std::string_view text);
WeightedConfigurations read_configurations_file(const std::string& path);

inline constexpr std::size_t kDefaultDomainCap = 1u << 20;

struct Domain {
    Graph graph;
    std::vector<Configuration> configs; ///< per vertex; vertex 0 is the empty set
};

/// All configurations ordered by (size, lexicographic), joined when they
/// differ in one event. Throws CapExceeded above cap configurations.
Domain domain_of_es(const EsRelations& rel, std::size_t cap = kDefaultDomainCap);

/// One event per class; i <= j iff class i separates class j from the
/// basepoint, conflict iff neither separates the other and they do not cross.
EventStructure es_of_pointed_graph(const Graph& g, const ThetaPartition& tp);

/// Events carried by strictly more than half of the weight. Throws
/// InvalidInput if some input is not a configuration.
Configuration median_configuration(const EsRelations& rel, const WeightedConfigurations& wc);

struct DiametralConfigurations {
    Configuration first;
    Configuration second;
    std::vector<Event> egalitarian; ///< events carried by exactly half the weight
};

/// Two median configurations at maximum distance. Throws InvalidInput on zero
/// total weight and NotMedianGraph if the conflict graph of egalitarian
/// classes is not bipartite.
DiametralConfigurations diametral_configurations(const EsRelations& rel,
                                                 const WeightedConfigurations& wc);

/// Literals are +v / -v for variables v = 1..variables.
struct TwoSatFormula {
    std::size_t variables = 0;
    std::vector<std::pair<int, int>> clauses;
};

/// DIMACS-like: "p cnf k m", then m lines "a b 0"; lines starting with 'c'
/// are comments.
TwoSatFormula parse_dimacs(std::string_view text);
TwoSatFormula read_dimacs_file(const std::string& path);
void write_dimacs(std::ostream& out, const TwoSatFormula& f);

/// Event e becomes variable e + 1; one clause per strict order pair of the
/// closure and per conflict pair.
TwoSatFormula es_to_2sat(const EsRelations& rel);

/// Inverse construction for formulas whose clauses each contain at least one
/// negative literal on two distinct variables. Throws InvalidInput on other
/// clauses, on equivalent variables and on variables false in every solution
/// that the construction can detect.
EventStructure twosat_to_es(const TwoSatFormula& f);

/// A configuration minimising the total Hamming distance to every
/// configuration of the domain; the lexicographically least one on ties.
Configuration compact_median_bruteforce(const EsRelations& rel, std::size_t cap = kDefaultDomainCap);

} // namespace medgraph
