#pragma once

// Test-only oracles. Everything here recomputes results by the most literal
// route available (vertex deletion, full enumeration) so that agreement with
// the library is meaningful evidence.

#include <algorithm>
#include <tuple>
#include <vector>

#include "deckrecon/deck.hpp"
#include "deckrecon/graph.hpp"
#include "deckrecon/prng.hpp"

namespace testing_oracles {

using namespace deckrecon;

inline CardStats naive_card_stats(const Graph& g, int v) {
    Graph card = delete_vertex(g, v);
    CardStats stats;
    stats.vertex_count = card.order();
    stats.edge_count = card.edge_count();
    stats.degrees = degree_histogram(card);
    return stats;
}

inline CliqueCounts naive_card_cliques(const Graph& g, int v, std::int64_t r) {
    Graph card = delete_vertex(g, v);
    CliqueProfile profile = clique_profile(card, r);
    CliqueCounts out;
    out.r = r;
    out.counts = profile.counts;
    out.total = profile.total;
    return out;
}

// multiset fingerprint of card statistics, for order-insensitive comparison
inline std::vector<std::string> deck_fingerprint(const PartialDeck& deck) {
    std::vector<std::string> keys;
    for (const auto& card : deck.cards()) {
        std::string key = std::to_string(card.vertex_count) + "|" +
                          std::to_string(card.edge_count) + "|" + card.degrees.serialize();
        if (card.cliques)
            key += "|r" + std::to_string(card.cliques->r) + ":" + card.cliques->counts.serialize() +
                   ":" + std::to_string(card.cliques->total);
        keys.push_back(std::move(key));
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

inline Graph random_graph(Rng& rng, int n, std::uint64_t prob_num, std::uint64_t prob_den) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (bernoulli_ratio(rng, prob_num, prob_den)) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

inline std::vector<int> random_permutation(Rng& rng, int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    shuffle_deterministic(rng, perm);
    return perm;
}

} // namespace testing_oracles
