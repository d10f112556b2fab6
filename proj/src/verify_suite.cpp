#include "deckrecon/verify_suite.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "deckrecon/canonical.hpp"
#include "deckrecon/deck.hpp"
#include "deckrecon/errors.hpp"
#include "deckrecon/generators.hpp"
#include "deckrecon/graph.hpp"
#include "deckrecon/parallel.hpp"
#include "deckrecon/prng.hpp"
#include "deckrecon/recon_count.hpp"
#include "deckrecon/recon_degseq.hpp"
#include "deckrecon/verification.hpp"

namespace deckrecon {

namespace {

Graph random_graph(Rng& rng, int n, std::uint64_t prob_num, std::uint64_t prob_den) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (bernoulli_ratio(rng, prob_num, prob_den)) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

std::vector<int> random_permutation(Rng& rng, int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    shuffle_deterministic(rng, perm);
    return perm;
}

std::vector<std::int64_t> top_degrees(const DegreeHistogram& hist, std::int64_t k) {
    std::vector<std::int64_t> out;
    for (auto it = hist.entries().rbegin(); it != hist.entries().rend() && k > 0; ++it)
        for (std::int64_t i = 0; i < it->second && k > 0; ++i, --k) out.push_back(it->first);
    return out;
}

std::int64_t deck_degree_total(const DegreeHistogram& hist, std::int64_t n, std::int64_t t) {
    // occurrences of degree t across the whole deck, from ground truth
    return (n - 1 - t) * hist.at(t) + (t + 1) * hist.at(t + 1);
}

struct Check {
    std::int64_t violations = 0;
    std::int64_t checks = 0;
    std::ostringstream note;

    void expect(bool ok, const std::function<std::string()>& describe) {
        ++checks;
        if (!ok) {
            if (violations < 5) note << (violations ? "; " : "") << describe();
            ++violations;
        }
    }
    void expect(bool ok, const std::string& label) {
        expect(ok, [&label] { return label; });
    }
};

// 1. degree-occurrence identity over full decks of random graphs
void run_deck_identity(Check& check, bool fast) {
    Rng rng = make_rng(101);
    std::int64_t graphs = fast ? 200 : 1000;
    for (std::int64_t i = 0; i < graphs; ++i) {
        int n = 3 + static_cast<int>(bounded(rng, 10)); // 3..12
        std::uint64_t density = 5 + bounded(rng, 91);
        Graph g = random_graph(rng, n, density, 100);
        check.expect(verify_card_degree_identity(g),
                     [&] { return "identity failed on graph " + std::to_string(i); });
    }
}

// 2. estimator sandwich, random small decks plus adversarial removals
void run_estimator_sandwich(Check& check, bool fast) {
    Rng rng = make_rng(202);
    std::int64_t graphs = fast ? 100 : 500;
    std::int64_t subsets = fast ? 30 : 100;
    for (std::int64_t i = 0; i < graphs; ++i) {
        int n = 3 + static_cast<int>(bounded(rng, 7)); // 3..9
        Graph g = random_graph(rng, n, 10 + bounded(rng, 86), 100);
        PartialDeck deck = full_deck(g);
        std::int64_t m = g.edge_count();
        for (std::int64_t s = 0; s < subsets; ++s) {
            std::int64_t k = static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(n / 4 + 1)));
            PartialDeck partial = remove_cards(deck, k, RemovalPolicy::random, rng());
            EdgeEstimate est = estimate_edges(partial);
            Rational gap = est.m_tilde - Rational(m);
            check.expect(gap >= Rational(0) && gap <= est.slack_bound, [&] {
                return "sandwich failed: n=" + std::to_string(n) + " k=" + std::to_string(k) +
                       " gap=" + gap.str();
            });
        }
    }
    std::vector<std::int64_t> sizes = fast ? std::vector<std::int64_t>{100}
                                           : std::vector<std::int64_t>{100, 1000};
    for (std::int64_t n : sizes) {
        for (int family = 0; family < 2; ++family) {
            GenSpec spec;
            spec.family = family == 0 ? GenFamily::matching : GenFamily::erdos_renyi_capped;
            spec.n = n;
            spec.d = family == 0 ? 1 : 3;
            spec.seed = 77 + static_cast<std::uint64_t>(n);
            Generated gen = generate(spec);
            PartialDeck deck = full_deck(gen.graph);
            std::int64_t k = n / 4;
            for (RemovalPolicy policy : {RemovalPolicy::max_edges_first,
                                         RemovalPolicy::min_edges_first, RemovalPolicy::random,
                                         RemovalPolicy::target_degrees}) {
                std::vector<std::int64_t> targets;
                if (policy == RemovalPolicy::target_degrees)
                    targets = top_degrees(gen.truth.histogram, k);
                PartialDeck partial = remove_cards(deck, k, policy, 5, targets);
                EdgeEstimate est = estimate_edges(partial);
                Rational gap = est.m_tilde - Rational(gen.truth.m);
                check.expect(gap >= Rational(0) && gap <= est.slack_bound, [&] {
                    return "adversarial sandwich failed: n=" + std::to_string(n) + " policy=" +
                           to_string(policy);
                });
            }
        }
    }
}

// 3. exact edge counts inside the regime
void run_edge_exactness(Check& check, bool fast) {
    struct Family {
        GenSpec spec;
        std::int64_t k;
        std::int64_t graphs;
    };
    GenSpec matching;
    matching.family = GenFamily::matching;
    matching.n = 100;
    matching.d = 1;
    GenSpec forest;
    forest.family = GenFamily::random_forest;
    forest.n = 140;
    forest.d = 2;
    std::int64_t random_trials = fast ? 20 : 200;
    for (Family family : {Family{matching, 4, 1}, Family{forest, 3, 10}}) {
        std::int64_t per_graph = random_trials / family.graphs;
        for (std::int64_t g = 0; g < family.graphs; ++g) {
            GenSpec spec = family.spec;
            spec.seed = 300 + static_cast<std::uint64_t>(g);
            Generated gen = generate(spec);
            PartialDeck deck = full_deck(gen.graph);
            auto try_one = [&](const PartialDeck& partial, const std::string& label) {
                CountResult res = reconstruct_edge_count(partial, family.spec.d);
                check.expect(res.value == gen.truth.m && res.trace.in_regime, [&] {
                    return label + ": got " + std::to_string(res.value) + ", want " +
                           std::to_string(gen.truth.m);
                });
            };
            for (std::int64_t s = 0; s < per_graph; ++s)
                try_one(remove_cards(deck, family.k, RemovalPolicy::random,
                                     static_cast<std::uint64_t>(1000 + s)),
                        "random removal");
            try_one(remove_cards(deck, family.k, RemovalPolicy::max_edges_first, 0), "max_edges");
            try_one(remove_cards(deck, family.k, RemovalPolicy::min_edges_first, 0), "min_edges");
            try_one(remove_cards(deck, family.k, RemovalPolicy::target_degrees, 0,
                                 top_degrees(gen.truth.histogram, family.k)),
                    "target_degrees");
        }
    }
}

// 4. exact triangle counts for 100 disjoint triangles
void run_clique_exactness(Check& check, bool fast) {
    GenSpec spec;
    spec.family = GenFamily::disjoint_triangles;
    spec.n = 300;
    spec.d = 2;
    Generated gen = generate(spec);
    DeckBuildOptions options;
    options.clique_r = 3;
    PartialDeck deck = full_deck(gen.graph, options);
    std::int64_t trials = fast ? 10 : 100;
    for (std::int64_t s = 0; s < trials; ++s) {
        PartialDeck partial =
            remove_cards(deck, 2, RemovalPolicy::random, static_cast<std::uint64_t>(s));
        CountResult res = reconstruct_clique_count(partial, 2, 3);
        check.expect(res.value == 100 && res.trace.in_regime, [&] {
            return "triangle count " + std::to_string(res.value) + " != 100 (seed " +
                   std::to_string(s) + ")";
        });
    }
}

DeckBuildOptions degseq_options(const GroundTruth& truth) {
    DeckBuildOptions options;
    options.with_subcards = true;
    std::int64_t d = std::max<std::int64_t>(1, Rational(2 * truth.m, truth.n).ceil());
    options.subcard_degree_threshold = 100 * d * d;
    return options;
}

// 5. degree-occurrence estimator error bound at n = 10^4
void run_estimate_bound(Check& check, bool fast) {
    std::int64_t seeds = fast ? 2 : 20;
    std::vector<std::string> failures(static_cast<std::size_t>(seeds * 2));
    parallel_for(static_cast<std::size_t>(seeds * 2), [&](std::size_t index) {
        std::int64_t seed = static_cast<std::int64_t>(index) / 2;
        bool use_matching = index % 2 == 0;
        GenSpec spec;
        spec.family = use_matching ? GenFamily::matching : GenFamily::random_forest;
        spec.n = 10000;
        spec.d = 1;
        spec.seed = 500 + static_cast<std::uint64_t>(seed);
        Generated gen = generate(spec);
        PartialDeck deck = full_deck(gen.graph, degseq_options(gen.truth));
        std::int64_t k = seed % 10; // <= 9 = floor(n/1100)
        PartialDeck partial =
            remove_cards(deck, k, RemovalPolicy::random, static_cast<std::uint64_t>(index));
        CardPartition partition = build_partition(partial, gen.truth.m, 1);
        for (std::int64_t t = 0; t <= 10; ++t) {
            std::int64_t estimate = estimate_st(partial, partition, t);
            std::int64_t truth = deck_degree_total(gen.truth.histogram, spec.n, t);
            if (std::abs(estimate - truth) * 8 >= spec.n) {
                failures[index] = "estimate off by " + std::to_string(estimate - truth) +
                                  " at t=" + std::to_string(t) + " seed=" + std::to_string(seed);
                return;
            }
        }
    });
    for (const auto& failure : failures)
        check.expect(failure.empty(), failure.empty() ? "ok" : failure);
}

// 6. end-to-end degree sequences at n = 10^4 and 3*10^4
void run_degseq_end_to_end(Check& check, bool fast) {
    std::int64_t seeds = fast ? 1 : 20;
    std::int64_t forest_n = fast ? 10000 : 30000;
    std::int64_t forest_edges = fast ? 4700 : 14000;
    std::vector<std::string> failures(static_cast<std::size_t>(seeds * 2));
    parallel_for(static_cast<std::size_t>(seeds * 2), [&](std::size_t index) {
        std::int64_t seed = static_cast<std::int64_t>(index) / 2;
        bool use_matching = index % 2 == 0;
        GenSpec spec;
        if (use_matching) {
            spec.family = GenFamily::matching;
            spec.n = 10000;
        } else {
            spec.family = GenFamily::random_forest;
            spec.n = forest_n;
            spec.edges = forest_edges;
        }
        spec.d = 1;
        spec.seed = 600 + static_cast<std::uint64_t>(seed);
        Generated gen = generate(spec);
        PartialDeck deck = full_deck(gen.graph, degseq_options(gen.truth));
        std::int64_t k = use_matching ? 1 : 3;
        PartialDeck partial =
            remove_cards(deck, k, RemovalPolicy::random, static_cast<std::uint64_t>(index));
        DegSeqState state = reconstruct_degree_sequence(partial, 1, /*force_general=*/use_matching);
        if (!(state.reconstructed == gen.truth.histogram)) {
            failures[index] = "histogram mismatch at seed " + std::to_string(seed) +
                              (use_matching ? " (matching)" : " (forest)");
        } else if (state.max_rounding_distance >= Rational(1, 2) || state.rounding_violation) {
            failures[index] = "rounding distance " + state.max_rounding_distance.str() +
                              " reached 1/2 at seed " + std::to_string(seed);
        } else if (!state.in_regime || !state.consistency_ok) {
            failures[index] = "regime/consistency flags unexpectedly off at seed " +
                              std::to_string(seed);
        }
    });
    for (const auto& failure : failures)
        check.expect(failure.empty(), failure.empty() ? "ok" : failure);
}

// 7. one-missing fast path agrees with the general pipeline
void run_fastpath_equivalence(Check& check, bool fast) {
    std::int64_t instances = fast ? 5 : 50;
    std::vector<std::string> failures(static_cast<std::size_t>(instances));
    parallel_for(static_cast<std::size_t>(instances), [&](std::size_t index) {
        GenSpec spec;
        spec.family = index % 2 == 0 ? GenFamily::matching : GenFamily::random_forest;
        spec.n = 10000;
        spec.d = 1;
        spec.seed = 700 + static_cast<std::uint64_t>(index);
        Generated gen = generate(spec);
        PartialDeck deck = full_deck(gen.graph, degseq_options(gen.truth));
        PartialDeck partial =
            remove_cards(deck, 1, RemovalPolicy::random, static_cast<std::uint64_t>(index));
        DegSeqState fast_path = reconstruct_degree_sequence(partial, 1, false);
        DegSeqState general = reconstruct_degree_sequence(partial, 1, true);
        if (!(fast_path.reconstructed == general.reconstructed))
            failures[index] = "paths disagree at instance " + std::to_string(index);
        else if (!(fast_path.reconstructed == gen.truth.histogram))
            failures[index] = "paths agree but are wrong at instance " + std::to_string(index);
    });
    for (const auto& failure : failures)
        check.expect(failure.empty(), failure.empty() ? "ok" : failure);
}

// 8. counterexample families against the brute-force card oracle
void run_counterexample_oracle(Check& check, bool fast) {
    std::int64_t max_p = fast ? 5 : 8;
    for (std::int64_t p = 2; p <= max_p; ++p) {
        CounterexamplePair stars = star_triple_pair(p);
        CCResult cc_stars = common_cards(stars.g, stars.h);
        check.expect(cc_stars.cc == 2 * p, [&] {
            return "star triple p=" + std::to_string(p) + ": cc=" + std::to_string(cc_stars.cc) +
                   ", want " + std::to_string(2 * p);
        });
        check.expect(stars.g.edge_count() == stars.h.edge_count(),
                     "star triple edge counts differ at p=" + std::to_string(p));
        check.expect(canonical_code(stars.g) != canonical_code(stars.h),
                     "star triple pair isomorphic at p=" + std::to_string(p));

        CounterexamplePair bicliques = biclique_pair(p);
        CCResult cc_bi = common_cards(bicliques.g, bicliques.h);
        check.expect(cc_bi.cc == p, [&] {
            return "biclique p=" + std::to_string(p) + ": cc=" + std::to_string(cc_bi.cc) +
                   ", want " + std::to_string(p);
        });
        check.expect(std::abs(bicliques.g.edge_count() - bicliques.h.edge_count()) == 1,
                     "biclique edge counts should differ by 1 at p=" + std::to_string(p));
        check.expect(canonical_code(bicliques.g) != canonical_code(bicliques.h),
                     "biclique pair isomorphic at p=" + std::to_string(p));
    }
}

// 9. canonical codes: relabeling invariance and agreement with brute force
void run_canonical_soundness(Check& check, bool fast) {
    Rng rng = make_rng(909);
    std::int64_t graphs = fast ? 50 : 200;
    std::int64_t relabelings = 50;
    for (std::int64_t i = 0; i < graphs; ++i) {
        int n = 2 + static_cast<int>(bounded(rng, 6)); // 2..7
        Graph g = random_graph(rng, n, 10 + bounded(rng, 86), 100);
        CanonicalCode code = canonical_code(g);
        for (std::int64_t s = 0; s < relabelings; ++s) {
            std::vector<int> perm = random_permutation(rng, n);
            if (canonical_code(permute(g, perm)) != code) {
                check.expect(false, "relabeling changed the code (graph " + std::to_string(i) + ")");
                break;
            }
        }
        check.expect(true, "ok");
    }
    std::int64_t pairs = fast ? 100 : 500;
    for (std::int64_t i = 0; i < pairs; ++i) {
        int n = 2 + static_cast<int>(bounded(rng, 6));
        Graph a = random_graph(rng, n, 10 + bounded(rng, 86), 100);
        Graph b = bounded(rng, 2) == 0 ? permute(a, random_permutation(rng, n))
                                       : random_graph(rng, n, 10 + bounded(rng, 86), 100);
        bool by_code = canonical_code(a) == canonical_code(b);
        bool by_force = brute_force_isomorphic(a, b);
        check.expect(by_code == by_force, [&] {
            return "oracle disagreement on pair " + std::to_string(i) + " (code says " +
                   (by_code ? "iso" : "non-iso") + ")";
        });
    }
}

// 10. low-degree vertex counts under an average-degree bound
void run_low_degree_counts(Check& check, bool fast) {
    Rng rng = make_rng(1010);
    std::int64_t graphs = fast ? 120 : 500;
    for (std::int64_t i = 0; i < graphs; ++i) {
        std::int64_t d = 1 + static_cast<std::int64_t>(bounded(rng, 3));
        GenSpec spec;
        spec.n = 30 + static_cast<std::int64_t>(bounded(rng, 200));
        spec.d = d;
        spec.seed = rng();
        switch (bounded(rng, 3)) {
            case 0: spec.family = d >= 2 ? GenFamily::cycle : GenFamily::matching; break;
            case 1: spec.family = GenFamily::random_forest; break;
            default: spec.family = GenFamily::erdos_renyi_capped; break;
        }
        if (spec.family == GenFamily::cycle && spec.n < 3) spec.n = 3;
        Generated gen = generate(spec);
        check.expect(verify_low_degree_counts(gen.graph, d), [&] {
            return "low-degree counts failed: family " + to_string(spec.family) + ", d=" +
                   std::to_string(d);
        });
    }
}

} // namespace

std::vector<CriterionResult> run_verify_suite(VerifyLevel level, std::ostream& out) {
    bool fast = level == VerifyLevel::fast;
    struct Entry {
        int id;
        std::string name;
        std::int64_t budget_ms;
        bool reduced_in_fast;
        std::function<void(Check&, bool)> body;
    };
    const std::vector<Entry> entries = {
        {1, "deck degree identity", 30000, false, run_deck_identity},
        {2, "edge estimator sandwich", 120000, false, run_estimator_sandwich},
        {3, "edge count exact in regime", 60000, false, run_edge_exactness},
        {4, "triangle count exact in regime", 60000, false, run_clique_exactness},
        {5, "degree occurrence estimate bound", 300000, true, run_estimate_bound},
        {6, "degree sequence end to end", 600000, true, run_degseq_end_to_end},
        {7, "one-missing fast path equivalence", 300000, true, run_fastpath_equivalence},
        {8, "counterexample card oracle", 60000, false, run_counterexample_oracle},
        {9, "canonical code soundness", 120000, false, run_canonical_soundness},
        {10, "low degree counts", 60000, false, run_low_degree_counts},
    };

    std::vector<CriterionResult> results;
    for (const auto& entry : entries) {
        CriterionResult result;
        result.id = entry.id;
        result.name = entry.name;
        if (fast && entry.reduced_in_fast) result.name += " (reduced)";
        result.budget_ms = entry.budget_ms;
        Check check;
        auto started = std::chrono::steady_clock::now();
        try {
            entry.body(check, fast);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        result.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - started)
                            .count();
        bool in_budget = result.millis <= entry.budget_ms;
        result.passed = check.violations == 0 && in_budget;
        std::ostringstream detail;
        detail << check.checks << " checks";
        if (check.violations > 0) detail << ", " << check.violations << " violations: " << check.note.str();
        if (!in_budget) detail << ", over budget (" << result.millis << "ms > " << entry.budget_ms << "ms)";
        result.detail = detail.str();
        out << (result.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << result.id << ". "
            << std::left << std::setw(42) << result.name << std::right << std::setw(8)
            << result.millis << " ms  " << result.detail << '\n'
            << std::flush;
        results.push_back(std::move(result));
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& result : results)
        if (!result.passed) return false;
    return !results.empty();
}

} // namespace deckrecon
