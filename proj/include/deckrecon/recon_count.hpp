#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "deckrecon/deck.hpp"
#include "deckrecon/rational.hpp"

namespace deckrecon {

enum class Theorem { edge_count, clique_count, degree_sequence, recognition, estimate_st };

std::string to_string(Theorem theorem);

/// Whether (n, d, k, r) sits inside the parameter range where the named
/// result guarantees exact reconstruction. max_k is computed with integer
/// arithmetic and may be negative.
struct RegimeCheck {
    Theorem theorem = Theorem::edge_count;
    std::int64_t n = 0;
    std::int64_t d = 0;
    std::int64_t k = 0;
    std::optional<std::int64_t> r;
    std::int64_t max_k = 0;
    bool satisfied = false;
};

RegimeCheck regime_check(Theorem theorem, std::int64_t n, std::int64_t d, std::int64_t k,
                         std::optional<std::int64_t> r = std::nullopt);

/// Edge-count estimate from the surviving cards. All values exact rationals.
struct EdgeEstimate {
    Rational m_tilde;     // estimated edge count; overshoots by at most slack_bound
    Rational d_tilde;     // 2 * m_tilde / n
    std::int64_t k = 0;   // missing cards
    Rational slack_bound; // k(n-1)/(n-2-k)
};

/// m_tilde = (sum of given card edge counts) / (n-2-k). The true m satisfies
/// 0 <= m_tilde - m <= slack_bound. Requires n-2-k > 0.
EdgeEstimate estimate_edges(const PartialDeck& deck);

/// As estimate_edges, plus the average-degree guarantee d* <= d_tilde < d*+1.
/// Requires n >= 8 and k <= n/4.
EdgeEstimate recognize_avg_degree(const PartialDeck& deck);

/// Smallest integer upper bound on the average degree derivable from the
/// deck alone: floor(d_tilde) + 1 (at least 1).
std::int64_t infer_degree_bound(const PartialDeck& deck);

struct ReconTrace {
    std::string theorem;
    std::int64_t n = 0;
    std::int64_t k = 0;
    std::int64_t d = 0;
    std::optional<std::int64_t> r;
    std::optional<std::int64_t> t; // selected degree / clique-degree bucket
    std::optional<std::int64_t> j; // prefix count below the bucket
    std::int64_t value = 0;
    bool in_regime = false; // the returned value carries an exactness guarantee
    std::optional<Rational> slack_bound;
    bool identity_path = false; // full-deck division shortcut was used

    nlohmann::json to_json() const;
};

struct CountResult {
    std::int64_t value = 0;
    ReconTrace trace;
};

/// Exact edge count of the deck's graph when the parameters sit inside the
/// regime (k <= n/(4d+6) - d - 5); best-effort value with in_regime=false
/// otherwise. d is the caller's integer bound on the average degree.
CountResult reconstruct_edge_count(const PartialDeck& deck, std::int64_t d);

/// Exact r-clique count in regime. Cards must carry clique bucket counts for
/// this r. The bucket is selected on the max-edge reference card; the
/// answering card is indexed in clique-count-descending order.
CountResult reconstruct_clique_count(const PartialDeck& deck, std::int64_t d, std::int64_t r);

/// C(a, b), clamped to a large sentinel instead of overflowing.
std::int64_t binomial_capped(std::int64_t a, std::int64_t b);

} // namespace deckrecon
