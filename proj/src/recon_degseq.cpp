#include "deckrecon/recon_degseq.hpp"

#include <algorithm>

#include "deckrecon/errors.hpp"
#include "deckrecon/recon_count.hpp"

namespace deckrecon {

const char* to_string(DegProvenance p) {
    switch (p) {
        case DegProvenance::zero_window: return "zero-window";
        case DegProvenance::swept_down: return "rounded-down";
        case DegProvenance::swept_up: return "rounded-up";
        case DegProvenance::fast_path: return "fast-path";
    }
    return "?";
}

CardPartition build_partition(const PartialDeck& deck, std::int64_t m, std::int64_t d) {
    if (d < 1) throw InputError("build_partition: d must be at least 1");
    if (deck.size() == 0) throw InputError("build_partition: no cards given");

    CardPartition part;
    part.threshold = 100 * d * d;
    part.reference = deck.reference_index();
    const CardStats& ref = deck.card(part.reference);
    part.reference_hist = ref.degrees;

    std::int64_t needed = 0;
    for (const auto& [degree, count] : ref.degrees.entries())
        if (degree > part.threshold) needed += count;
    for (const auto& entry : ref.subcards)
        if (entry.first > part.threshold) part.high_degree.push_back(entry);
    if (static_cast<std::int64_t>(part.high_degree.size()) != needed)
        throw InputError("reference card lacks sub-card histograms above degree " +
                         std::to_string(part.threshold) +
                         "; rebuild the deck with subcards enabled");

    for (std::size_t i = 0; i < deck.size(); ++i)
        if (m - deck.card(i).edge_count <= part.threshold) part.low_degree_cards.push_back(i);

    part.remainder = deck.order() - part.size_high() - part.size_low();
    if (part.remainder < 0) { // only possible when m is wrong (out of regime)
        part.remainder = 0;
        part.remainder_clamped = true;
    }

    for (const auto& [degree, hist] : part.high_degree) part.high_sum.add_all(hist);
    for (std::size_t i : part.low_degree_cards) part.low_sum.add_all(deck.card(i).degrees);
    return part;
}

std::int64_t estimate_st(const PartialDeck& deck, const CardPartition& partition, std::int64_t t) {
    if (t < 0 || t > deck.order())
        throw InputError("estimate_st: t = " + std::to_string(t) + " outside [0, n]");
    return partition.high_sum.at(t) + partition.low_sum.at(t) +
           partition.remainder * partition.reference_hist.at(t);
}

std::int64_t find_zero_window(const PartialDeck& deck) {
    std::int64_t n = deck.order();
    std::int64_t lo = ceil_div(n, 4);
    std::int64_t hi = (3 * n) / 4;
    if (lo > hi) throw RegimeError("find_zero_window: empty candidate range");

    // blocked[t0-lo] = number of given cards showing a vertex of degree t0 or
    // t0-1. A card with degree D present blocks candidates D and D+1.
    std::vector<std::int64_t> blocked(static_cast<std::size_t>(hi - lo + 1), 0);
    std::vector<std::int64_t> hits;
    for (const auto& card : deck.cards()) {
        hits.clear();
        for (const auto& [degree, count] : card.degrees.entries()) {
            for (std::int64_t t0 : {degree, degree + 1})
                if (t0 >= lo && t0 <= hi) hits.push_back(t0);
        }
        std::sort(hits.begin(), hits.end());
        hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
        for (std::int64_t t0 : hits) ++blocked[static_cast<std::size_t>(t0 - lo)];
    }

    std::int64_t given = static_cast<std::int64_t>(deck.size());
    for (std::int64_t t0 = lo; t0 <= hi; ++t0) {
        if (given - blocked[static_cast<std::size_t>(t0 - lo)] >= 2) return t0;
    }
    throw RegimeError("no zero-degree window in [n/4, 3n/4]; parameters out of regime");
}

nlohmann::json DegSeqState::to_json() const {
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& [degree, count] : reconstructed.entries())
        hist.push_back({degree, count});
    nlohmann::json prov = nlohmann::json::array();
    for (const auto& [degree, p] : provenance) prov.push_back({degree, to_string(p)});
    return {
        {"n", n},
        {"k", k},
        {"d", d},
        {"m", m},
        {"t0", t0 ? nlohmann::json(*t0) : nlohmann::json(nullptr)},
        {"histogram", hist},
        {"flags",
         {{"mode", mode},
          {"consistency_ok", consistency_ok},
          {"rounding_violation", rounding_violation},
          {"ambiguous", ambiguous},
          {"clamped", clamped},
          {"provenance", prov}}},
        {"in_regime", in_regime},
        {"max_rounding_distance", max_rounding_distance.str()},
    };
}

namespace {

void finalize_histogram(DegSeqState& state) {
    state.consistency_ok = state.reconstructed.total() == state.n &&
                           state.reconstructed.weighted_sum() == 2 * state.m &&
                           state.reconstructed.all_non_negative();
}

// Degrees of the one-missing-card path. The edge count is either the
// in-regime reconstruction or the unique value consistent with the
// estimator window, the handshake identity and the per-degree deck
// identity.
struct OneMissing {
    std::int64_t m = 0;
    bool guaranteed = false;
    bool ambiguous = false;
};

OneMissing solve_one_missing(const PartialDeck& deck, std::int64_t d) {
    std::int64_t n = deck.order();
    OneMissing out;

    RegimeCheck rc = regime_check(Theorem::edge_count, n, d, 1);
    if (rc.satisfied) {
        out.m = reconstruct_edge_count(deck, d).value;
        out.guaranteed = true;
        return out;
    }

    if (n < 4) throw RegimeError("one-missing fallback needs n >= 4");
    EdgeEstimate est = estimate_edges(deck);
    std::int64_t lo = std::max<std::int64_t>(0, (est.m_tilde - est.slack_bound).ceil());
    std::int64_t hi = est.m_tilde.floor();
    std::int64_t sum = deck.edge_count_sum();

    SparseHistogram card_sum; // degree occurrences over the given cards
    for (const auto& card : deck.cards()) card_sum.add_all(card.degrees);

    std::vector<std::int64_t> survivors;
    for (std::int64_t m = lo; m <= hi; ++m) {
        std::int64_t missing_degree = sum - (n - 3) * m;
        if (missing_degree < 0 || missing_degree > n - 1) continue;
        SparseHistogram hist;
        bool ok = true;
        for (const auto& card : deck.cards()) {
            std::int64_t degree = m - card.edge_count;
            if (degree < 0 || degree > n - 1) { ok = false; break; }
            hist.add(degree);
        }
        if (!ok) continue;
        hist.add(missing_degree);

        // the unseen card's histogram implied by the deck identity must be a
        // valid histogram on n-1 vertices with the right degree sum
        std::vector<std::int64_t> keys;
        for (const auto& [degree, count] : hist.entries()) {
            keys.push_back(degree);
            if (degree > 0) keys.push_back(degree - 1);
        }
        for (const auto& [degree, count] : card_sum.entries()) keys.push_back(degree);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        std::int64_t total = 0, weighted = 0;
        for (std::int64_t t : keys) {
            std::int64_t implied =
                (n - 1 - t) * hist.at(t) + (t + 1) * hist.at(t + 1) - card_sum.at(t);
            if (implied < 0) { ok = false; break; }
            total += implied;
            weighted += t * implied;
        }
        if (!ok) continue;
        if (total != n - 1 || weighted != 2 * (m - missing_degree)) continue;
        survivors.push_back(m);
    }

    if (survivors.empty())
        throw InputError("one-missing deck admits no consistent edge count; deck corrupt");
    out.m = survivors.front();
    out.guaranteed = survivors.size() == 1;
    out.ambiguous = survivors.size() > 1;
    return out;
}

} // namespace

DegSeqState reconstruct_degree_sequence(const PartialDeck& deck, std::optional<std::int64_t> d,
                                        bool force_general) {
    std::int64_t n = deck.order();
    std::int64_t k = deck.missing();
    if (deck.size() == 0) throw InputError("reconstruct_degree_sequence: no cards given");

    DegSeqState state;
    state.n = n;
    state.k = k;

    if (n == 1) {
        state.m = 0;
        state.d = 1;
        state.reconstructed.add(0);
        state.provenance.emplace_back(0, DegProvenance::fast_path);
        state.mode = "full-deck";
        state.in_regime = true;
        finalize_histogram(state);
        return state;
    }
    if (n == 2)
        throw RegimeError("decks of order-2 graphs do not determine the degree sequence");

    if (k == 0 && !force_general) {
        std::int64_t sum = deck.edge_count_sum();
        if (sum % (n - 2) != 0)
            throw InputError("full deck with edge-count sum not divisible by n-2; deck corrupt");
        state.m = sum / (n - 2);
        for (const auto& card : deck.cards()) {
            std::int64_t degree = state.m - card.edge_count;
            if (degree < 0 || degree > n - 1) throw InputError("full deck implies an invalid degree");
            state.reconstructed.add(degree);
        }
        state.d = std::max<std::int64_t>(1, Rational(2 * state.m, n).ceil());
        state.mode = "full-deck";
        state.in_regime = true;
        for (const auto& [degree, count] : state.reconstructed.entries())
            state.provenance.emplace_back(degree, DegProvenance::fast_path);
        finalize_histogram(state);
        return state;
    }

    std::int64_t d_bound = d ? *d : infer_degree_bound(deck);
    if (d_bound < 1) throw InputError("degree bound must be at least 1");

    if (k == 1 && !force_general) {
        OneMissing solved = solve_one_missing(deck, d_bound);
        state.m = solved.m;
        state.ambiguous = solved.ambiguous;
        std::int64_t seen = 0;
        for (const auto& card : deck.cards()) {
            std::int64_t degree = state.m - card.edge_count;
            state.reconstructed.add(degree);
            seen += degree;
        }
        std::int64_t last = 2 * state.m - seen; // handshake identity
        state.reconstructed.add(last);
        state.d = std::max<std::int64_t>(1, Rational(2 * state.m, n).ceil());
        state.mode = "one-missing";
        state.in_regime = solved.guaranteed &&
                          regime_check(Theorem::degree_sequence, n, state.d, k).satisfied;
        for (const auto& [degree, count] : state.reconstructed.entries())
            state.provenance.emplace_back(degree, DegProvenance::fast_path);
        finalize_histogram(state);
        return state;
    }

    // general pipeline
    state.m = reconstruct_edge_count(deck, d_bound).value;
    state.d = std::max<std::int64_t>(1, Rational(2 * state.m, n).ceil());
    RegimeCheck rc = regime_check(Theorem::degree_sequence, n, state.d, k);
    CardPartition partition = build_partition(deck, state.m, state.d);
    std::int64_t t0 = find_zero_window(deck);
    state.t0 = t0;
    state.mode = "general";
    state.in_regime = rc.satisfied;

    std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
    auto round_tracked = [&state](std::int64_t numer, std::int64_t denom) {
        Rational raw(numer, denom);
        std::int64_t value = raw.round_half_up();
        Rational distance = (raw - Rational(value)).abs();
        if (distance > state.max_rounding_distance) state.max_rounding_distance = distance;
        return value;
    };
    auto clamp_negative = [&state](std::int64_t t, std::int64_t value) {
        if (value < 0) {
            state.clamped.push_back(t);
            return std::int64_t{0};
        }
        return value;
    };

    counts[static_cast<std::size_t>(t0)] = 0;
    for (std::int64_t t = t0 - 1; t >= 0; --t) {
        std::int64_t st = estimate_st(deck, partition, t);
        std::int64_t next = counts[static_cast<std::size_t>(t + 1)];
        std::int64_t value = round_tracked(st - (t + 1) * next, n - 1 - t);
        counts[static_cast<std::size_t>(t)] = clamp_negative(t, value);
    }
    for (std::int64_t t = t0; t <= n - 2; ++t) {
        std::int64_t st = estimate_st(deck, partition, t);
        std::int64_t here = counts[static_cast<std::size_t>(t)];
        std::int64_t value = round_tracked(st - (n - 1 - t) * here, t + 1);
        counts[static_cast<std::size_t>(t + 1)] = clamp_negative(t + 1, value);
    }

    for (std::int64_t t = 0; t < n; ++t)
        if (counts[static_cast<std::size_t>(t)] != 0)
            state.reconstructed.add(t, counts[static_cast<std::size_t>(t)]);
    for (const auto& [degree, count] : state.reconstructed.entries())
        state.provenance.emplace_back(degree, DegProvenance::swept_up);
    for (auto& [degree, p] : state.provenance)
        if (degree < t0) p = DegProvenance::swept_down;
    state.provenance.emplace_back(t0, DegProvenance::zero_window);
    std::sort(state.provenance.begin(), state.provenance.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    state.rounding_violation =
        state.in_regime && state.max_rounding_distance >= Rational(1, 2);
    finalize_histogram(state);
    return state;
}

} // namespace deckrecon
