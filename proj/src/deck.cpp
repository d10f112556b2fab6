#include "deckrecon/deck.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "deckrecon/errors.hpp"
#include "deckrecon/parallel.hpp"
#include "deckrecon/prng.hpp"

namespace deckrecon {

PartialDeck::PartialDeck(std::int64_t n, std::vector<CardStats> cards, std::int64_t missing)
    : n_(n), k_(missing), cards_(std::move(cards)) {
    if (n_ < 1) throw InputError("deck: order must be at least 1");
    if (k_ < 0) throw InputError("deck: negative missing count");
    if (k_ != n_ - static_cast<std::int64_t>(cards_.size()))
        throw InputError("deck: missing count does not match card count");
    for (const auto& c : cards_) {
        if (c.vertex_count != n_ - 1)
            throw InputError("deck: card order " + std::to_string(c.vertex_count) +
                             " does not match deck order " + std::to_string(n_));
        if (c.degrees.total() != c.vertex_count || c.degrees.weighted_sum() != 2 * c.edge_count)
            throw InputError("deck: inconsistent card statistics");
    }
    by_edges_.resize(cards_.size());
    for (std::size_t i = 0; i < cards_.size(); ++i) by_edges_[i] = i;
    std::stable_sort(by_edges_.begin(), by_edges_.end(), [this](std::size_t a, std::size_t b) {
        return cards_[a].edge_count > cards_[b].edge_count;
    });
}

std::size_t PartialDeck::reference_index() const {
    if (cards_.empty()) throw InputError("deck: no cards");
    return by_edges_.front();
}

std::int64_t PartialDeck::edge_count_sum() const {
    std::int64_t sum = 0;
    for (const auto& c : cards_) sum += c.edge_count;
    return sum;
}

CardStats card_stats_streamed(const Graph& g, int v, const DegreeHistogram& full_histogram) {
    if (v < 0 || v >= g.order()) throw InputError("card_stats_streamed: invalid vertex id");
    CardStats card;
    card.vertex_count = g.order() - 1;
    card.edge_count = g.edge_count() - g.degree(v);
    card.degrees = full_histogram;
    card.degrees.remove(g.degree(v));
    for (int u : g.neighbors(v)) {
        card.degrees.remove(g.degree(u));
        card.degrees.add(g.degree(u) - 1);
    }
    return card;
}

CardStats card_stats_streamed(const Graph& g, int v) {
    return card_stats_streamed(g, v, degree_histogram(g));
}

namespace {

// Per-card clique buckets are derived from one global enumeration: a card
// drops every clique through the deleted vertex, so each surviving vertex u
// moves from bucket c(u) to c(u) - #cliques containing both u and v.
struct CliqueDeltas {
    CliqueProfile profile;
    std::vector<std::vector<std::pair<int, std::int64_t>>> pair_counts; // per vertex: (other, shared cliques)
};

CliqueDeltas compute_clique_deltas(const Graph& g, std::int64_t r) {
    CliqueDeltas deltas;
    deltas.profile.r = r;
    deltas.profile.per_vertex.assign(static_cast<std::size_t>(g.order()), 0);
    std::unordered_map<std::int64_t, std::int64_t> pairs;
    enumerate_cliques(g, r, [&](std::span<const int> clique) {
        ++deltas.profile.total;
        for (std::size_t i = 0; i < clique.size(); ++i) {
            ++deltas.profile.per_vertex[static_cast<std::size_t>(clique[i])];
            for (std::size_t j = i + 1; j < clique.size(); ++j) {
                std::int64_t key = static_cast<std::int64_t>(clique[i]) * g.order() + clique[j];
                ++pairs[key];
            }
        }
    });
    for (auto c : deltas.profile.per_vertex) deltas.profile.counts.add(c);
    deltas.pair_counts.assign(static_cast<std::size_t>(g.order()), {});
    for (const auto& [key, count] : pairs) {
        int u = static_cast<int>(key / g.order());
        int v = static_cast<int>(key % g.order());
        deltas.pair_counts[static_cast<std::size_t>(u)].emplace_back(v, count);
        deltas.pair_counts[static_cast<std::size_t>(v)].emplace_back(u, count);
    }
    return deltas;
}

CliqueCounts card_clique_counts(const CliqueDeltas& deltas, int v) {
    CliqueCounts out;
    out.r = deltas.profile.r;
    out.counts = deltas.profile.counts;
    std::int64_t cv = deltas.profile.per_vertex[static_cast<std::size_t>(v)];
    out.counts.remove(cv);
    for (const auto& [u, shared] : deltas.pair_counts[static_cast<std::size_t>(v)]) {
        std::int64_t cu = deltas.profile.per_vertex[static_cast<std::size_t>(u)];
        out.counts.remove(cu);
        out.counts.add(cu - shared);
    }
    out.total = deltas.profile.total - cv;
    return out;
}

} // namespace

PartialDeck full_deck(const Graph& g, const DeckBuildOptions& options) {
    int n = g.order();
    if (n < 1) throw InputError("full_deck: graph must have at least one vertex");
    DegreeHistogram hist = degree_histogram(g);

    std::optional<CliqueDeltas> cliques;
    if (options.clique_r) cliques = compute_clique_deltas(g, *options.clique_r);

    std::vector<CardStats> cards(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        int v = static_cast<int>(i);
        cards[i] = card_stats_streamed(g, v, hist);
        if (cliques) cards[i].cliques = card_clique_counts(*cliques, v);
    });

    if (options.with_subcards && n >= 2) {
        // reference card = max edges = deleted vertex of minimum degree;
        // ties resolved toward the lowest vertex id (insertion order).
        int ref = 0;
        for (int v = 1; v < n; ++v)
            if (g.degree(v) < g.degree(ref)) ref = v;
        Graph card_graph = delete_vertex(g, ref);
        DegreeHistogram card_hist = degree_histogram(card_graph);
        for (int w = 0; w < card_graph.order(); ++w) {
            if (card_graph.degree(w) > options.subcard_degree_threshold) {
                CardStats sub = card_stats_streamed(card_graph, w, card_hist);
                cards[static_cast<std::size_t>(ref)].subcards.emplace_back(card_graph.degree(w),
                                                                           std::move(sub.degrees));
            }
        }
    }

    return PartialDeck(n, std::move(cards), 0);
}

RemovalPolicy removal_policy_from_string(const std::string& name) {
    if (name == "random") return RemovalPolicy::random;
    if (name == "max_edges_first") return RemovalPolicy::max_edges_first;
    if (name == "min_edges_first") return RemovalPolicy::min_edges_first;
    if (name == "target_degrees") return RemovalPolicy::target_degrees;
    throw InputError("unknown removal policy: " + name);
}

std::string to_string(RemovalPolicy policy) {
    switch (policy) {
        case RemovalPolicy::random: return "random";
        case RemovalPolicy::max_edges_first: return "max_edges_first";
        case RemovalPolicy::min_edges_first: return "min_edges_first";
        case RemovalPolicy::target_degrees: return "target_degrees";
    }
    return "?";
}

PartialDeck remove_cards(const PartialDeck& deck, std::int64_t count, RemovalPolicy policy,
                         std::uint64_t seed, const std::vector<std::int64_t>& target_degrees) {
    if (count < 0 || count > static_cast<std::int64_t>(deck.size()))
        throw InputError("remove_cards: cannot remove " + std::to_string(count) + " of " +
                         std::to_string(deck.size()) + " cards");

    std::vector<bool> removed(deck.size(), false);
    switch (policy) {
        case RemovalPolicy::random: {
            Rng rng = make_rng(seed);
            for (std::size_t i : sample_without_replacement(rng, deck.size(),
                                                            static_cast<std::size_t>(count)))
                removed[i] = true;
            break;
        }
        case RemovalPolicy::max_edges_first: {
            const auto& order = deck.by_edges_desc();
            for (std::int64_t i = 0; i < count; ++i) removed[order[static_cast<std::size_t>(i)]] = true;
            break;
        }
        case RemovalPolicy::min_edges_first: {
            std::vector<std::size_t> order(deck.size());
            for (std::size_t i = 0; i < deck.size(); ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&deck](std::size_t a, std::size_t b) {
                return deck.card(a).edge_count < deck.card(b).edge_count;
            });
            for (std::int64_t i = 0; i < count; ++i) removed[order[static_cast<std::size_t>(i)]] = true;
            break;
        }
        case RemovalPolicy::target_degrees: {
            if (deck.missing() != 0)
                throw InputError("remove_cards: target_degrees needs a full deck (simulation only)");
            if (static_cast<std::int64_t>(target_degrees.size()) != count)
                throw InputError("remove_cards: target list length must equal removal count");
            if (deck.order() < 3)
                throw InputError("remove_cards: target_degrees needs order >= 3");
            std::int64_t m = deck.edge_count_sum() / (deck.order() - 2);
            for (std::int64_t want : target_degrees) {
                bool found = false;
                for (std::size_t i = 0; i < deck.size(); ++i) {
                    if (!removed[i] && m - deck.card(i).edge_count == want) {
                        removed[i] = true;
                        found = true;
                        break;
                    }
                }
                if (!found)
                    throw InputError("remove_cards: no remaining card with deleted degree " +
                                     std::to_string(want));
            }
            break;
        }
    }

    std::vector<CardStats> kept;
    kept.reserve(deck.size() - static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < deck.size(); ++i)
        if (!removed[i]) kept.push_back(deck.card(i));
    return PartialDeck(deck.order(), std::move(kept), deck.missing() + count);
}

void write_deck(const PartialDeck& deck, std::ostream& out) {
    out << "deck " << deck.order() << ' ' << deck.missing() << '\n';
    for (const auto& card : deck.cards()) {
        out << "card " << card.edge_count << ' ' << card.degrees.serialize() << '\n';
        if (card.cliques)
            out << "cliques " << card.cliques->r << ' ' << card.cliques->counts.serialize() << ' '
                << card.cliques->total << '\n';
        for (const auto& [deg, hist] : card.subcards) out << "subcard " << hist.serialize() << '\n';
    }
}

PartialDeck read_deck(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("deck parse error: empty file");
    std::istringstream header(line);
    std::string tag;
    std::int64_t n = -1, k = -1;
    if (!(header >> tag >> n >> k) || tag != "deck" || n < 1 || k < 0)
        throw InputError("deck parse error: bad header '" + line + "'");

    std::vector<CardStats> cards;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        row >> tag;
        auto fail = [&](const std::string& why) {
            throw InputError("deck parse error (line " + std::to_string(lineno) + "): " + why);
        };
        if (tag == "card") {
            std::int64_t edges;
            std::string hist;
            if (!(row >> edges >> hist)) fail("bad card line");
            CardStats card;
            card.vertex_count = n - 1;
            card.edge_count = edges;
            card.degrees = SparseHistogram::parse(hist);
            cards.push_back(std::move(card));
        } else if (tag == "cliques") {
            if (cards.empty()) fail("cliques line before any card");
            std::int64_t r, total;
            std::string hist;
            if (!(row >> r >> hist >> total)) fail("bad cliques line");
            CliqueCounts cc;
            cc.r = r;
            cc.counts = SparseHistogram::parse(hist);
            cc.total = total;
            cards.back().cliques = std::move(cc);
        } else if (tag == "subcard") {
            if (cards.empty()) fail("subcard line before any card");
            std::string hist;
            if (!(row >> hist)) fail("bad subcard line");
            SparseHistogram h = SparseHistogram::parse(hist);
            // the deleted vertex's in-card degree is implied by the edge drop
            std::int64_t sub_edges2 = h.weighted_sum();
            if (sub_edges2 % 2 != 0) fail("subcard histogram has odd degree sum");
            std::int64_t degree = cards.back().edge_count - sub_edges2 / 2;
            cards.back().subcards.emplace_back(degree, std::move(h));
        } else {
            fail("unknown record '" + tag + "'");
        }
    }
    try {
        return PartialDeck(n, std::move(cards), k);
    } catch (const InputError& e) {
        throw InputError(std::string("deck parse error: ") + e.what());
    }
}

PartialDeck load_deck(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open deck file: " + path);
    return read_deck(in);
}

void save_deck(const PartialDeck& deck, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write deck file: " + path);
    write_deck(deck, out);
}

} // namespace deckrecon
