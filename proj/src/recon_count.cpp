#include "deckrecon/recon_count.hpp"

#include <algorithm>

#include "deckrecon/errors.hpp"

namespace deckrecon {

std::string to_string(Theorem theorem) {
    switch (theorem) {
        case Theorem::edge_count: return "edge_count";
        case Theorem::clique_count: return "clique_count";
        case Theorem::degree_sequence: return "degree_sequence";
        case Theorem::recognition: return "recognition";
        case Theorem::estimate_st: return "estimate_st";
    }
    return "?";
}

std::int64_t binomial_capped(std::int64_t a, std::int64_t b) {
    constexpr std::int64_t cap = INT64_MAX / 4;
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    __int128 result = 1;
    for (std::int64_t i = 1; i <= b; ++i) {
        result = result * (a - b + i) / i;
        if (result > cap) return cap;
    }
    return static_cast<std::int64_t>(result);
}

namespace {

// floor(num / den) for den > 0, correct for negative numerators.
std::int64_t floor_div(__int128 num, __int128 den) {
    __int128 q = num / den;
    if (num % den != 0 && num < 0) --q;
    if (q > INT64_MAX) return INT64_MAX;
    if (q < INT64_MIN) return INT64_MIN;
    return static_cast<std::int64_t>(q);
}

} // namespace

RegimeCheck regime_check(Theorem theorem, std::int64_t n, std::int64_t d, std::int64_t k,
                         std::optional<std::int64_t> r) {
    if (n < 1) throw InputError("regime_check: n must be at least 1");
    if (d < 1) throw InputError("regime_check: d must be at least 1");
    if (k < 0) throw InputError("regime_check: negative k");
    RegimeCheck rc;
    rc.theorem = theorem;
    rc.n = n;
    rc.d = d;
    rc.k = k;
    rc.r = r;
    switch (theorem) {
        case Theorem::edge_count: {
            // floor(n/(4d+6) - d - 5)
            __int128 den = 4 * static_cast<__int128>(d) + 6;
            rc.max_k = floor_div(static_cast<__int128>(n) - (d + 5) * den, den);
            rc.satisfied = k <= rc.max_k;
            break;
        }
        case Theorem::clique_count: {
            if (!r) throw InputError("regime_check: clique_count needs r");
            // floor((n/2 - 1)/(1 + C(2(d+1), r-1)) - d - 5)
            __int128 den = 2 * (static_cast<__int128>(1) + binomial_capped(2 * (d + 1), *r - 1));
            rc.max_k = floor_div(static_cast<__int128>(n) - 2 - (d + 5) * den, den);
            rc.satisfied = k <= rc.max_k;
            break;
        }
        case Theorem::degree_sequence: {
            __int128 den = static_cast<__int128>(10000) * d * d * d;
            rc.max_k = floor_div(n, den);
            rc.satisfied = k <= rc.max_k && n >= 3;
            break;
        }
        case Theorem::recognition: {
            rc.max_k = n / 4;
            rc.satisfied = k <= rc.max_k && n >= 8;
            break;
        }
        case Theorem::estimate_st: {
            __int128 den = static_cast<__int128>(1100) * d * d;
            rc.max_k = floor_div(n, den);
            rc.satisfied = k <= rc.max_k &&
                           static_cast<__int128>(n) >= static_cast<__int128>(10000) * d * d * d;
            break;
        }
    }
    return rc;
}

EdgeEstimate estimate_edges(const PartialDeck& deck) {
    std::int64_t n = deck.order();
    std::int64_t k = deck.missing();
    if (n - 2 - k <= 0)
        throw RegimeError("estimate_edges: degenerate denominator n-2-k = " +
                          std::to_string(n - 2 - k));
    EdgeEstimate est;
    est.k = k;
    est.m_tilde = Rational(deck.edge_count_sum(), n - 2 - k);
    est.d_tilde = Rational(2, n) * est.m_tilde;
    est.slack_bound = Rational(k * (n - 1), n - 2 - k);
    return est;
}

EdgeEstimate recognize_avg_degree(const PartialDeck& deck) {
    std::int64_t n = deck.order();
    std::int64_t k = deck.missing();
    if (n < 8) throw RegimeError("recognize_avg_degree: requires n >= 8, got n = " + std::to_string(n));
    if (4 * k > n)
        throw RegimeError("recognize_avg_degree: requires k <= n/4, got k = " + std::to_string(k) +
                          ", n = " + std::to_string(n));
    return estimate_edges(deck);
}

std::int64_t infer_degree_bound(const PartialDeck& deck) {
    return std::max<std::int64_t>(1, recognize_avg_degree(deck).d_tilde.floor() + 1);
}

nlohmann::json ReconTrace::to_json() const {
    nlohmann::json out{
        {"theorem", theorem}, {"n", n}, {"k", k}, {"d", d}, {"value", value},
        {"in_regime", in_regime},
    };
    out["r"] = r ? nlohmann::json(*r) : nlohmann::json(nullptr);
    out["t"] = t ? nlohmann::json(*t) : nlohmann::json(nullptr);
    out["j"] = j ? nlohmann::json(*j) : nlohmann::json(nullptr);
    out["slack_bound"] = slack_bound ? nlohmann::json(slack_bound->str()) : nlohmann::json(nullptr);
    out["identity_path"] = identity_path;
    return out;
}

namespace {

// Consistency check available whenever the recognition lemma applies: an
// honest average-degree bound d forces d_tilde < d + 1.
void cross_check_degree_bound(const PartialDeck& deck, std::int64_t d) {
    std::int64_t n = deck.order();
    std::int64_t k = deck.missing();
    if (n < 8 || 4 * k > n) return;
    EdgeEstimate est = estimate_edges(deck);
    if (est.d_tilde >= Rational(d + 1))
        throw RegimeError("average degree estimate " + est.d_tilde.str() +
                          " is inconsistent with the claimed bound d = " + std::to_string(d));
}

} // namespace

CountResult reconstruct_edge_count(const PartialDeck& deck, std::int64_t d) {
    if (d < 1) throw InputError("reconstruct_edge_count: d must be at least 1");
    std::int64_t n = deck.order();
    std::int64_t k = deck.missing();
    if (deck.size() == 0) throw InputError("reconstruct_edge_count: no cards given");

    CountResult result;
    result.trace.theorem = to_string(Theorem::edge_count);
    result.trace.n = n;
    result.trace.k = k;
    result.trace.d = d;

    if (n == 1) { // single empty card, no edges
        result.value = 0;
        result.trace.identity_path = true;
        result.trace.in_regime = true;
        return result;
    }
    if (n == 2)
        throw RegimeError("decks of order-2 graphs do not determine the edge count");

    if (k == 0) {
        std::int64_t sum = deck.edge_count_sum();
        if (sum % (n - 2) != 0)
            throw InputError("full deck with edge-count sum not divisible by n-2; deck corrupt");
        result.value = sum / (n - 2);
        result.trace.value = result.value;
        result.trace.identity_path = true;
        result.trace.in_regime = true;
        return result;
    }

    cross_check_degree_bound(deck, d);
    RegimeCheck rc = regime_check(Theorem::edge_count, n, d, k);
    result.trace.slack_bound = estimate_edges(deck).slack_bound;

    const CardStats& ref = deck.card(deck.reference_index());
    std::int64_t threshold = ceil_div(n - 2, 4 * d + 6);
    std::optional<std::int64_t> chosen_t;
    for (std::int64_t t = 0; t <= 2 * (d + 1); ++t) {
        if (ref.degrees.at(t) >= threshold) {
            chosen_t = t;
            break;
        }
    }
    if (!chosen_t)
        throw RegimeError("no degree bucket in [0, 2(d+1)] reaches the pigeonhole threshold; "
                          "the average-degree bound is likely violated");
    if (rc.satisfied && ref.degrees.at(*chosen_t) < k + d + 4)
        throw RegimeError("in-regime invariant failed: selected bucket smaller than k+d+4");

    std::int64_t j = ref.degrees.below(*chosen_t);
    std::size_t index = static_cast<std::size_t>(j) + 1; // (j+2)-nd card, 0-based
    if (j < 0 || index >= deck.size())
        throw RegimeError("sorted card index j+2 = " + std::to_string(j + 2) +
                          " exceeds the number of given cards");

    const CardStats& witness = deck.card(deck.by_edges_desc()[index]);
    result.value = witness.edge_count + *chosen_t;
    result.trace.t = chosen_t;
    result.trace.j = j;
    result.trace.in_regime = rc.satisfied;
    result.trace.value = result.value;
    return result;
}

CountResult reconstruct_clique_count(const PartialDeck& deck, std::int64_t d, std::int64_t r) {
    if (d < 1) throw InputError("reconstruct_clique_count: d must be at least 1");
    if (r < 2) throw InputError("reconstruct_clique_count: r must be at least 2");
    std::int64_t n = deck.order();
    std::int64_t k = deck.missing();
    if (deck.size() == 0) throw InputError("reconstruct_clique_count: no cards given");
    for (const auto& card : deck.cards())
        if (!card.cliques || card.cliques->r != r)
            throw InputError("deck cards lack clique counts for r = " + std::to_string(r) +
                             "; rebuild the deck with clique statistics");

    CountResult result;
    result.trace.theorem = to_string(Theorem::clique_count);
    result.trace.n = n;
    result.trace.k = k;
    result.trace.d = d;
    result.trace.r = r;

    if (n < r) { // no clique fits
        result.value = 0;
        result.trace.identity_path = true;
        result.trace.in_regime = true;
        return result;
    }
    if (n == r) {
        // Every card shows all but one vertex; a single incomplete card rules
        // the clique out. All-complete cards are only conclusive for k <= 1.
        bool all_complete = true;
        for (const auto& card : deck.cards())
            if (card.edge_count != (n - 1) * (n - 2) / 2) all_complete = false;
        if (!all_complete) {
            result.value = 0;
            result.trace.identity_path = true;
            result.trace.in_regime = true;
            return result;
        }
        if (k <= 1) {
            result.value = 1;
            result.trace.identity_path = true;
            result.trace.in_regime = true;
            return result;
        }
        throw RegimeError("clique size equals graph order with several cards missing");
    }

    if (k == 0) {
        std::int64_t sum = 0;
        for (const auto& card : deck.cards()) sum += card.cliques->total;
        if (sum % (n - r) != 0)
            throw InputError("full deck with clique-count sum not divisible by n-r; deck corrupt");
        result.value = sum / (n - r);
        result.trace.value = result.value;
        result.trace.identity_path = true;
        result.trace.in_regime = true;
        return result;
    }

    cross_check_degree_bound(deck, d);
    RegimeCheck rc = regime_check(Theorem::clique_count, n, d, k, r);
    result.trace.slack_bound = estimate_edges(deck).slack_bound;

    const CardStats& ref = deck.card(deck.reference_index());
    std::int64_t buckets = binomial_capped(2 * (d + 1), r - 1);
    std::int64_t threshold = ceil_div(n - 2, 2 * (1 + buckets));
    std::optional<std::int64_t> chosen_t;
    for (std::int64_t t = 0; t <= buckets; ++t) {
        if (ref.cliques->counts.at(t) >= threshold) {
            chosen_t = t;
            break;
        }
    }
    if (!chosen_t)
        throw RegimeError("no clique-degree bucket reaches the pigeonhole threshold; "
                          "the average-degree bound is likely violated");
    if (rc.satisfied && ref.cliques->counts.at(*chosen_t) < k + d + 4)
        throw RegimeError("in-regime invariant failed: selected bucket smaller than k+d+4");

    std::int64_t j = ref.cliques->counts.below(*chosen_t);
    std::size_t index = static_cast<std::size_t>(j) + 1;
    if (j < 0 || index >= deck.size())
        throw RegimeError("sorted card index j+2 = " + std::to_string(j + 2) +
                          " exceeds the number of given cards");

    // indexing runs over cards sorted by clique count, most cliques first
    std::vector<std::size_t> order(deck.size());
    for (std::size_t i = 0; i < deck.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&deck](std::size_t a, std::size_t b) {
        return deck.card(a).cliques->total > deck.card(b).cliques->total;
    });

    result.value = deck.card(order[index]).cliques->total + *chosen_t;
    result.trace.t = chosen_t;
    result.trace.j = j;
    result.trace.in_regime = rc.satisfied;
    result.trace.value = result.value;
    return result;
}

} // namespace deckrecon
