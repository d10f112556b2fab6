#include "deckrecon/verification.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "deckrecon/errors.hpp"
#include "deckrecon/histogram.hpp"

namespace deckrecon {

bool brute_force_isomorphic(const Graph& a, const Graph& b, int order_limit) {
    if (a.order() != b.order()) return false;
    if (a.edge_count() != b.edge_count()) return false;
    int n = a.order();
    if (n > order_limit)
        throw UnsupportedSizeError("brute_force_isomorphic: order " + std::to_string(n) +
                                   " exceeds limit " + std::to_string(order_limit));
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool match = true;
        for (int u = 0; u < n && match; ++u) {
            for (int v : a.neighbors(u)) {
                if (v < u) continue;
                if (!b.has_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)])) {
                    match = false;
                    break;
                }
            }
        }
        if (match) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

nlohmann::json CCResult::to_json() const {
    nlohmann::json shared_json = nlohmann::json::array();
    for (const auto& [code, mult] : shared) shared_json.push_back({code.hex(), mult});
    return {{"cc", cc}, {"n", n}, {"shared", shared_json}};
}

namespace {

std::map<CanonicalCode, std::int64_t> canonical_deck(const Graph& g) {
    std::map<CanonicalCode, std::int64_t> deck;
    for (int v = 0; v < g.order(); ++v) ++deck[canonical_code(delete_vertex(g, v))];
    return deck;
}

} // namespace

CCResult common_cards(const Graph& g, const Graph& h) {
    if (g.order() != h.order()) throw InputError("common_cards: graphs must have equal order");
    CCResult result;
    result.n = g.order();
    if (g.order() == 0) return result;
    auto deck_g = canonical_deck(g);
    auto deck_h = canonical_deck(h);
    for (const auto& [code, mult_g] : deck_g) {
        auto it = deck_h.find(code);
        if (it == deck_h.end()) continue;
        std::int64_t mult = std::min(mult_g, it->second);
        result.cc += mult;
        result.shared.emplace_back(code, mult);
    }
    return result;
}

std::string to_string(CounterexampleFamily family) {
    switch (family) {
        case CounterexampleFamily::star_triple: return "star_triple";
        case CounterexampleFamily::biclique: return "biclique";
        case CounterexampleFamily::densified: return "densified";
    }
    return "?";
}

Graph star_graph(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return Graph::from_edges(leaves + 1, edges);
}

Graph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
    return Graph::from_edges(a + b, edges);
}

Graph cycle_graph(int n) {
    if (n < 3) throw InputError("cycle_graph: need at least 3 vertices");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(0, n - 1);
    return Graph::from_edges(n, edges);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<std::pair<int, int>> edges = a.edges();
    for (auto [u, v] : b.edges()) edges.emplace_back(u + a.order(), v + a.order());
    return Graph::from_edges(a.order() + b.order(), edges);
}

CounterexamplePair star_triple_pair(std::int64_t p) {
    if (p < 2) throw InputError("star_triple_pair: p must be at least 2");
    int pi = static_cast<int>(p);
    Graph g = disjoint_union(disjoint_union(star_graph(pi + 1), star_graph(pi + 1)),
                             star_graph(pi - 1));
    Graph h =
        disjoint_union(disjoint_union(star_graph(pi + 1), star_graph(pi)), star_graph(pi));
    return CounterexamplePair{std::move(g), std::move(h), CounterexampleFamily::star_triple, p,
                              2 * p};
}

CounterexamplePair biclique_pair(std::int64_t p) {
    if (p < 2) throw InputError("biclique_pair: p must be at least 2");
    int pi = static_cast<int>(p);
    Graph g = disjoint_union(complete_bipartite(2, pi), star_graph(pi));
    Graph h = disjoint_union(complete_bipartite(2, pi + 1), star_graph(pi - 1));
    return CounterexamplePair{std::move(g), std::move(h), CounterexampleFamily::biclique, p, p};
}

CounterexamplePair densified_pair(std::int64_t p, const Graph& filler) {
    CounterexamplePair base = star_triple_pair(p);
    if (filler.order() != base.g.order())
        throw InputError("densified_pair: filler must have " + std::to_string(base.g.order()) +
                         " vertices, got " + std::to_string(filler.order()));
    return CounterexamplePair{disjoint_union(base.g, filler), disjoint_union(base.h, filler),
                              CounterexampleFamily::densified, p, std::nullopt};
}

bool verify_card_degree_identity(const Graph& g) {
    int n = g.order();
    DegreeHistogram graph_hist = degree_histogram(g);
    SparseHistogram deck_sum;
    for (int v = 0; v < n; ++v) deck_sum.add_all(degree_histogram(delete_vertex(g, v)));
    for (std::int64_t t = 0; t <= n - 1; ++t) {
        std::int64_t expected =
            (n - 1 - t) * graph_hist.at(t) + (t + 1) * graph_hist.at(t + 1);
        if (deck_sum.at(t) != expected) return false;
    }
    return true;
}

bool verify_low_degree_counts(const Graph& g, std::int64_t d) {
    if (d < 1) throw InputError("verify_low_degree_counts: d must be at least 1");
    std::int64_t n = g.order();
    if (2 * g.edge_count() > d * n)
        throw InputError("verify_low_degree_counts: graph exceeds the average-degree bound");
    std::int64_t low2d = 0, lowd = 0;
    for (int v = 0; v < g.order(); ++v) {
        if (g.degree(v) <= 2 * d) ++low2d;
        if (g.degree(v) <= d) ++lowd;
    }
    return 2 * low2d >= n && (d + 1) * lowd >= n;
}

} // namespace deckrecon
