#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "deckrecon/canonical.hpp"
#include "deckrecon/graph.hpp"

namespace deckrecon {

// The oracles here deliberately share no algorithmic code with the
// reconstruction modules: decks are built by literal vertex deletion and
// compared through canonical codes or raw permutation search.

/// Exact permutation-search isomorphism test. Order capped (default 8,
/// 8! = 40320 candidate maps).
bool brute_force_isomorphic(const Graph& a, const Graph& b, int order_limit = 8);

/// Common-card count between two decks: multiset intersection size of the
/// canonical card codes.
struct CCResult {
    std::int64_t cc = 0;
    std::int64_t n = 0;
    std::vector<std::pair<CanonicalCode, std::int64_t>> shared; // code, min multiplicity

    nlohmann::json to_json() const;
};

CCResult common_cards(const Graph& g, const Graph& h);

enum class CounterexampleFamily { star_triple, biclique, densified };
std::string to_string(CounterexampleFamily family);

/// Pair of non-isomorphic graphs of equal order built to share many cards.
struct CounterexamplePair {
    Graph g;
    Graph h;
    CounterexampleFamily family = CounterexampleFamily::star_triple;
    std::int64_t p = 0;
    std::optional<std::int64_t> predicted_cc; // pinned oracle-derived value, when known
};

/// Three disjoint stars per side: sizes (p+1, p+1, p-1) vs (p+1, p, p).
/// Both graphs have 3p+4 vertices and equal edge counts; they differ in how
/// many vertices have degree p+1. p >= 2.
CounterexamplePair star_triple_pair(std::int64_t p);

/// K_{2,p} + K_{1,p} vs K_{2,p+1} + K_{1,p-1}: equal order 2p+3, edge counts
/// differing by exactly one. p >= 2.
CounterexamplePair biclique_pair(std::int64_t p);

/// Star-triple pair with a disjoint copy of `filler` added to both sides;
/// filler must have 3p+4 vertices. Densifies the family to higher average
/// degree while keeping a linear fraction of shared cards.
CounterexamplePair densified_pair(std::int64_t p, const Graph& filler);

/// Checks, for every t, that the degree-t occurrences across the full deck
/// equal (n-1-t) d_t + (t+1) d_{t+1}, building the deck by literal deletion.
bool verify_card_degree_identity(const Graph& g);

/// For average degree at most d: at least n/2 vertices of degree <= 2d and
/// at least n/(d+1) vertices of degree <= d.
bool verify_low_degree_counts(const Graph& g, std::int64_t d);

/// Disjoint union helper used by the counterexample constructions.
Graph disjoint_union(const Graph& a, const Graph& b);

/// Star K_{1,leaves}.
Graph star_graph(int leaves);

/// Complete bipartite K_{a,b}.
Graph complete_bipartite(int a, int b);

Graph cycle_graph(int n);

} // namespace deckrecon
