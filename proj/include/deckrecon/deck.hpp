#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deckrecon/graph.hpp"
#include "deckrecon/histogram.hpp"

namespace deckrecon {

/// Clique statistics of one card: bucket counts only, no vertex identities.
struct CliqueCounts {
    std::int64_t r = 0;
    SparseHistogram counts; // clique-degree buckets over the card's vertices
    std::int64_t total = 0;

    bool operator==(const CliqueCounts& other) const {
        return r == other.r && total == other.total && counts == other.counts;
    }
};

/// Isomorphism-invariant summary of one card. This is the only view the
/// reconstruction algorithms may consume; it carries no vertex labels tying
/// the card back to the original graph or to other cards.
struct CardStats {
    std::int64_t vertex_count = 0;
    std::int64_t edge_count = 0;
    DegreeHistogram degrees;
    std::optional<CliqueCounts> cliques;

    // Degree histograms of one-vertex-deleted subgraphs of this card, for
    // its vertices above a degree threshold. Only the reference card (the
    // one with the most edges) ever carries these. Pairs (degree in card,
    // histogram of card minus that vertex). Not part of card identity.
    std::vector<std::pair<std::int64_t, DegreeHistogram>> subcards;

    bool same_stats(const CardStats& other) const {
        return vertex_count == other.vertex_count && edge_count == other.edge_count &&
               degrees == other.degrees && cliques == other.cliques;
    }
};

/// Multiset of cards plus the count of missing ones. Cards keep a stable
/// insertion order; an edge-count-descending view is available on top.
class PartialDeck {
public:
    PartialDeck(std::int64_t n, std::vector<CardStats> cards, std::int64_t missing);

    std::int64_t order() const { return n_; }       // order of the original graph
    std::int64_t missing() const { return k_; }     // number of missing cards
    std::size_t size() const { return cards_.size(); }
    const CardStats& card(std::size_t i) const { return cards_.at(i); }
    const std::vector<CardStats>& cards() const { return cards_; }

    /// Indices into cards() in edge-count-descending order; ties keep
    /// insertion order (stable).
    const std::vector<std::size_t>& by_edges_desc() const { return by_edges_; }

    /// Index of the reference card: maximum edge count, lowest insertion
    /// order among ties.
    std::size_t reference_index() const;

    std::int64_t edge_count_sum() const;

private:
    std::int64_t n_;
    std::int64_t k_;
    std::vector<CardStats> cards_;
    std::vector<std::size_t> by_edges_;
};

struct DeckBuildOptions {
    std::optional<std::int64_t> clique_r; // record clique bucket counts for this r
    bool with_subcards = false;
    // Sub-histograms are recorded for reference-card vertices with degree
    // strictly above this threshold (typically 100*d^2).
    std::int64_t subcard_degree_threshold = 0;
};

/// All n cards of g, as statistics, k = 0. Card i corresponds to deleting
/// vertex i (multiset semantics; reconstruction never uses that fact).
PartialDeck full_deck(const Graph& g, const DeckBuildOptions& options = {});

/// Statistics of the card g - v computed in O(deg(v)) by delta-updating the
/// full degree histogram. Identical to the delete_vertex + degree_histogram
/// route.
CardStats card_stats_streamed(const Graph& g, int v);
CardStats card_stats_streamed(const Graph& g, int v, const DegreeHistogram& full_histogram);

enum class RemovalPolicy { random, max_edges_first, min_edges_first, target_degrees };

RemovalPolicy removal_policy_from_string(const std::string& name);
std::string to_string(RemovalPolicy policy);

/// Removes `count` cards under the policy; deterministic given (policy,
/// seed). target_degrees needs ground truth (the implied deleted-vertex
/// degree m - |E(card)|), so it is only valid on full decks, where m is
/// recoverable.
PartialDeck remove_cards(const PartialDeck& deck, std::int64_t count, RemovalPolicy policy,
                         std::uint64_t seed,
                         const std::vector<std::int64_t>& target_degrees = {});

// Deck file format: header "deck n k", then per card a line
// "card <edge_count> <t:count,...>", optionally followed by
// "cliques <r> <t:count,...> <total>" and "subcard <t:count,...>" lines
// bound to the preceding card. ASCII, LF.
void write_deck(const PartialDeck& deck, std::ostream& out);
PartialDeck read_deck(std::istream& in);
PartialDeck load_deck(const std::string& path);
void save_deck(const PartialDeck& deck, const std::string& path);

} // namespace deckrecon
