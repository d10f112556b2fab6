#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "deckrecon/deck.hpp"
#include "deckrecon/rational.hpp"

namespace deckrecon {

/// Split of the n deck positions used by the degree-occurrence estimator:
/// high-degree vertices are read off the reference card's sub-histograms,
/// low-degree positions off their own cards, and the remainder (missing
/// cards plus reference-card neighbors) is approximated by the reference
/// card itself.
struct CardPartition {
    std::int64_t threshold = 0;  // degree cutoff, 100 * d^2
    std::size_t reference = 0;   // index of the reference card in the deck
    std::vector<std::pair<std::int64_t, DegreeHistogram>> high_degree;
    std::vector<std::size_t> low_degree_cards;
    std::int64_t remainder = 0; // n - |high| - |low|, clamped at 0
    bool remainder_clamped = false;

    // aggregates so each estimate evaluates in O(log) lookups
    SparseHistogram high_sum;
    SparseHistogram low_sum;
    DegreeHistogram reference_hist;

    std::int64_t size_high() const { return static_cast<std::int64_t>(high_degree.size()); }
    std::int64_t size_low() const { return static_cast<std::int64_t>(low_degree_cards.size()); }
};

/// Requires the known edge count m. The reference card must carry
/// sub-histograms covering every vertex of degree > 100*d^2 (build the deck
/// with subcards enabled), otherwise InputError.
CardPartition build_partition(const PartialDeck& deck, std::int64_t m, std::int64_t d);

/// Estimated number of degree-t vertex occurrences across the *full* deck
/// (missing cards included), reconstructed from the surviving cards.
/// t must lie in [0, n].
std::int64_t estimate_st(const PartialDeck& deck, const CardPartition& partition, std::int64_t t);

/// Smallest t0 in [ceil(n/4), floor(3n/4)] such that at least two given
/// cards carry no vertex of degree t0 or t0-1; this certifies that the
/// graph has no vertex of degree t0. Throws RegimeError if none exists.
std::int64_t find_zero_window(const PartialDeck& deck);

enum class DegProvenance { zero_window, swept_down, swept_up, fast_path };
const char* to_string(DegProvenance p);

struct DegSeqState {
    std::int64_t n = 0;
    std::int64_t k = 0;
    std::int64_t d = 0;
    std::int64_t m = 0;
    std::optional<std::int64_t> t0;
    DegreeHistogram reconstructed;
    // provenance for every degree with a nonzero count, plus the window
    std::vector<std::pair<std::int64_t, DegProvenance>> provenance;
    bool in_regime = false;
    bool consistency_ok = true;      // sum checks against n and 2m
    bool rounding_violation = false; // an in-regime rounding distance reached 1/2
    bool ambiguous = false;          // one-missing fallback had several consistent edge counts
    std::vector<std::int64_t> clamped; // degrees whose negative estimate was clamped to 0
    Rational max_rounding_distance{0};
    std::string mode; // "full-deck" | "one-missing" | "general"

    nlohmann::json to_json() const;
};

/// Reconstructs the degree histogram of the deck's graph.
///   k = 0: degrees read directly off the edge counts.
///   k = 1: n-1 degrees off the cards, the last from the handshake identity;
///          the edge count comes from the in-regime reconstruction or, out
///          of regime, from a consistency search over the estimator window.
///   else:  edge count, partition, zero-degree window, then the downward and
///          upward rounding sweeps.
/// If d is omitted it is inferred from the deck. force_general runs the
/// general pipeline even when a fast path applies.
DegSeqState reconstruct_degree_sequence(const PartialDeck& deck,
                                        std::optional<std::int64_t> d = std::nullopt,
                                        bool force_general = false);

} // namespace deckrecon
