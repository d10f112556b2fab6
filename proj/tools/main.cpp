#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "deckrecon/canonical.hpp"
#include "deckrecon/deck.hpp"
#include "deckrecon/errors.hpp"
#include "deckrecon/experiment.hpp"
#include "deckrecon/generators.hpp"
#include "deckrecon/graph.hpp"
#include "deckrecon/recon_count.hpp"
#include "deckrecon/recon_degseq.hpp"
#include "deckrecon/verification.hpp"
#include "deckrecon/verify_suite.hpp"

namespace {

using namespace deckrecon;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitRegime = 3;

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        if (payload.empty() || payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write output file: " + path);
    out << payload;
}

struct GenArgs {
    std::string family = "matching";
    std::int64_t n = 100;
    std::int64_t d = 1;
    std::uint64_t seed = 0;
    std::int64_t edges = -1;
    std::int64_t prob_num = -1;
    std::int64_t prob_den = -1;
    std::vector<std::int64_t> stars;
    std::int64_t isolated = 0;
    std::string path;
    std::string out;
    std::string truth_path;
};

int run_gen(const GenArgs& args) {
    GenSpec spec;
    spec.family = gen_family_from_string(args.family);
    spec.n = args.n;
    spec.d = args.d;
    spec.seed = args.seed;
    if (args.edges >= 0) spec.edges = args.edges;
    if (args.prob_num >= 0) spec.prob_num = args.prob_num;
    if (args.prob_den >= 0) spec.prob_den = args.prob_den;
    spec.stars = args.stars;
    spec.isolated = args.isolated;
    spec.path = args.path;
    Generated gen = generate(spec);
    if (args.out.empty()) {
        write_edge_list(gen.graph, std::cout);
    } else {
        save_edge_list(gen.graph, args.out);
    }
    if (!args.truth_path.empty()) write_output(args.truth_path, gen.truth.to_json().dump(2));
    return kExitOk;
}

int run_deck_build(const std::string& graph_path, const std::string& out, std::int64_t clique_r,
                   bool subcards, std::int64_t d) {
    Graph g = load_edge_list(graph_path);
    DeckBuildOptions options;
    if (clique_r > 0) options.clique_r = clique_r;
    if (subcards) {
        std::int64_t bound = d > 0 ? d
                                   : std::max<std::int64_t>(1, g.average_degree().ceil());
        options.with_subcards = true;
        options.subcard_degree_threshold = 100 * bound * bound;
    }
    PartialDeck deck = full_deck(g, options);
    if (out.empty()) write_deck(deck, std::cout);
    else save_deck(deck, out);
    return kExitOk;
}

int run_deck_remove(const std::string& deck_path, std::int64_t k, const std::string& policy,
                    std::uint64_t seed, const std::vector<std::int64_t>& targets,
                    const std::string& out) {
    PartialDeck deck = load_deck(deck_path);
    PartialDeck result = remove_cards(deck, k, removal_policy_from_string(policy), seed, targets);
    if (out.empty()) write_deck(result, std::cout);
    else save_deck(result, out);
    return kExitOk;
}

int finish_recon(const nlohmann::json& payload, bool in_regime, bool strict,
                 const std::string& format, const std::string& output) {
    if (format == "text") {
        std::ostringstream os;
        for (const auto& [key, value] : payload.items())
            os << std::left << std::setw(24) << key << value.dump() << '\n';
        write_output(output, os.str());
    } else {
        write_output(output, payload.dump(2));
    }
    if (strict && !in_regime) {
        std::cerr << "regime error: parameters outside the proven range (value is best-effort)\n";
        return kExitRegime;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph deck simulation and reconstruction toolkit"};
    app.require_subcommand(1);

    // gen
    GenArgs gen_args;
    auto* gen_cmd = app.add_subcommand("gen", "generate a graph with ground truth");
    gen_cmd->add_option("--family", gen_args.family,
                        "matching|cycle|random_forest|erdos_renyi_capped|disjoint_triangles|"
                        "star_union|from_file");
    gen_cmd->add_option("--n", gen_args.n, "vertex count");
    gen_cmd->add_option("--d", gen_args.d, "average degree cap");
    gen_cmd->add_option("--seed", gen_args.seed, "rng seed");
    gen_cmd->add_option("--edges", gen_args.edges, "random_forest: edge target");
    gen_cmd->add_option("--prob-num", gen_args.prob_num, "erdos_renyi: probability numerator");
    gen_cmd->add_option("--prob-den", gen_args.prob_den, "erdos_renyi: probability denominator");
    gen_cmd->add_option("--stars", gen_args.stars, "star_union: leaf counts")->delimiter(',');
    gen_cmd->add_option("--isolated", gen_args.isolated, "star_union: isolated vertices");
    gen_cmd->add_option("--path", gen_args.path, "from_file: edge list path");
    gen_cmd->add_option("--out", gen_args.out, "edge list output (default stdout)");
    gen_cmd->add_option("--truth", gen_args.truth_path, "ground-truth JSON output");

    // deck build / deck remove
    auto* deck_cmd = app.add_subcommand("deck", "build or thin decks");
    deck_cmd->require_subcommand(1);
    std::string deck_graph, deck_out;
    std::int64_t deck_clique_r = 0, deck_d = 0;
    bool deck_subcards = false;
    auto* build_cmd = deck_cmd->add_subcommand("build", "full deck of a graph");
    build_cmd->add_option("--graph", deck_graph, "edge list input")->required();
    build_cmd->add_option("--out", deck_out, "deck output (default stdout)");
    build_cmd->add_option("--cliques", deck_clique_r, "record clique counts for this r");
    build_cmd->add_flag("--subcards", deck_subcards, "record reference-card sub-histograms");
    build_cmd->add_option("--d", deck_d, "degree bound for the subcard threshold 100*d^2");

    std::string rm_deck, rm_policy = "random", rm_out;
    std::int64_t rm_k = 0;
    std::uint64_t rm_seed = 0;
    std::vector<std::int64_t> rm_targets;
    auto* remove_cmd = deck_cmd->add_subcommand("remove", "remove cards under a policy");
    remove_cmd->add_option("--deck", rm_deck, "deck input")->required();
    remove_cmd->add_option("--k", rm_k, "cards to remove")->required();
    remove_cmd->add_option("--policy", rm_policy,
                           "random|max_edges_first|min_edges_first|target_degrees");
    remove_cmd->add_option("--seed", rm_seed, "rng seed");
    remove_cmd->add_option("--targets", rm_targets, "target_degrees: degree list")->delimiter(',');
    remove_cmd->add_option("--out", rm_out, "deck output (default stdout)");

    // recon edges|cliques|degseq
    auto* recon_cmd = app.add_subcommand("recon", "reconstruct invariants from a deck");
    recon_cmd->require_subcommand(1);
    std::string recon_deck, recon_format = "json", recon_output;
    std::int64_t recon_d = 0, recon_r = 3;
    bool recon_strict = false, recon_force_general = false;
    auto add_common = [&](CLI::App* cmd, bool with_r) {
        cmd->add_option("--deck", recon_deck, "deck input")->required();
        cmd->add_option("--d", recon_d, "average degree bound (0 = infer from the deck)");
        cmd->add_option("--format", recon_format, "json|text");
        cmd->add_option("--output", recon_output, "output path (default stdout)");
        cmd->add_flag("--strict", recon_strict, "exit 3 when outside the proven regime");
        if (with_r) cmd->add_option("--r", recon_r, "clique size");
    };
    auto* recon_edges = recon_cmd->add_subcommand("edges", "edge count");
    add_common(recon_edges, false);
    auto* recon_cliques = recon_cmd->add_subcommand("cliques", "r-clique count");
    add_common(recon_cliques, true);
    auto* recon_degseq = recon_cmd->add_subcommand("degseq", "degree sequence");
    add_common(recon_degseq, false);
    recon_degseq->add_flag("--force-general", recon_force_general,
                           "run the general pipeline even when k <= 1");

    // oracle cc|identity
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force verification oracles");
    oracle_cmd->require_subcommand(1);
    std::string oracle_a, oracle_b, oracle_graph, oracle_output;
    auto* cc_cmd = oracle_cmd->add_subcommand("cc", "common-card count of two graphs");
    cc_cmd->add_option("--a", oracle_a, "first edge list")->required();
    cc_cmd->add_option("--b", oracle_b, "second edge list")->required();
    cc_cmd->add_option("--output", oracle_output, "output path (default stdout)");
    auto* identity_cmd = oracle_cmd->add_subcommand("identity", "deck degree identity check");
    identity_cmd->add_option("--graph", oracle_graph, "edge list")->required();

    // counterexample star|biclique|densified
    auto* ce_cmd = app.add_subcommand("counterexample", "extremal shared-card families");
    ce_cmd->require_subcommand(1);
    std::int64_t ce_p = 3;
    std::string ce_out_a, ce_out_b, ce_filler;
    bool ce_cc = false;
    auto add_ce = [&](const std::string& name, const std::string& help, bool with_filler) {
        auto* cmd = ce_cmd->add_subcommand(name, help);
        cmd->add_option("--p", ce_p, "family parameter (p >= 2)");
        cmd->add_option("--out-a", ce_out_a, "first graph output");
        cmd->add_option("--out-b", ce_out_b, "second graph output");
        cmd->add_flag("--cc", ce_cc, "also compute the exact common-card count");
        if (with_filler)
            cmd->add_option("--filler", ce_filler, "edge list on 3p+4 vertices (default: empty)");
        return cmd;
    };
    auto* star_cmd = add_ce("star", "three disjoint stars per side", false);
    auto* biclique_cmd = add_ce("biclique", "biclique plus star per side", false);
    auto* densified_cmd = add_ce("densified", "star triples with a filler graph", true);

    // experiment run
    auto* exp_cmd = app.add_subcommand("experiment", "reproducible reconstruction experiments");
    exp_cmd->require_subcommand(1);
    std::string exp_config;
    auto* exp_run = exp_cmd->add_subcommand("run", "run an experiment config");
    exp_run->add_option("--config", exp_config, "config file")->required();

    // verify
    std::string verify_level = "fast", verify_deck;
    auto* verify_cmd = app.add_subcommand("verify", "oracle and invariant suites");
    verify_cmd->add_option("--level", verify_level, "fast|full");
    verify_cmd->add_option("--deck", verify_deck, "also parse-check this deck file");

    // thresholds
    std::int64_t thr_n = 0, thr_d = 0, thr_r = 0;
    auto* thr_cmd = app.add_subcommand("thresholds", "max missing cards per theorem");
    thr_cmd->add_option("--n", thr_n, "vertex count")->required();
    thr_cmd->add_option("--d", thr_d, "average degree bound")->required();
    thr_cmd->add_option("--r", thr_r, "clique size (optional)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_cmd) return run_gen(gen_args);
        if (*build_cmd) return run_deck_build(deck_graph, deck_out, deck_clique_r, deck_subcards, deck_d);
        if (*remove_cmd) return run_deck_remove(rm_deck, rm_k, rm_policy, rm_seed, rm_targets, rm_out);

        if (*recon_edges || *recon_cliques || *recon_degseq) {
            PartialDeck deck = load_deck(recon_deck);
            std::optional<std::int64_t> d;
            if (recon_d > 0) d = recon_d;
            if (*recon_edges || *recon_cliques) {
                std::int64_t d_bound = d ? *d : infer_degree_bound(deck);
                CountResult res = *recon_edges ? reconstruct_edge_count(deck, d_bound)
                                               : reconstruct_clique_count(deck, d_bound, recon_r);
                return finish_recon(res.trace.to_json(), res.trace.in_regime, recon_strict,
                                    recon_format, recon_output);
            }
            DegSeqState state = reconstruct_degree_sequence(deck, d, recon_force_general);
            return finish_recon(state.to_json(), state.in_regime, recon_strict, recon_format,
                                recon_output);
        }

        if (*cc_cmd) {
            CCResult result = common_cards(load_edge_list(oracle_a), load_edge_list(oracle_b));
            write_output(oracle_output, result.to_json().dump(2));
            return kExitOk;
        }
        if (*identity_cmd) {
            bool ok = verify_card_degree_identity(load_edge_list(oracle_graph));
            std::cout << (ok ? "identity holds\n" : "identity VIOLATED\n");
            return ok ? kExitOk : kExitViolation;
        }

        if (*star_cmd || *biclique_cmd || *densified_cmd) {
            CounterexamplePair pair = [&] {
                if (*star_cmd) return star_triple_pair(ce_p);
                if (*biclique_cmd) return biclique_pair(ce_p);
                Graph filler = ce_filler.empty()
                                   ? Graph(static_cast<int>(3 * ce_p + 4))
                                   : load_edge_list(ce_filler);
                return densified_pair(ce_p, filler);
            }();
            if (!ce_out_a.empty()) save_edge_list(pair.g, ce_out_a);
            if (!ce_out_b.empty()) save_edge_list(pair.h, ce_out_b);
            nlohmann::json info{{"family", to_string(pair.family)},
                                {"p", pair.p},
                                {"order", pair.g.order()},
                                {"edges_a", pair.g.edge_count()},
                                {"edges_b", pair.h.edge_count()}};
            info["predicted_cc"] =
                pair.predicted_cc ? nlohmann::json(*pair.predicted_cc) : nlohmann::json(nullptr);
            if (ce_cc) info["cc"] = common_cards(pair.g, pair.h).cc;
            std::cout << info.dump(2) << '\n';
            return kExitOk;
        }

        if (*exp_run) {
            ExperimentConfig config = load_experiment_config(exp_config);
            ReconReport report = run_experiment(config);
            std::string payload = config.format == "text"  ? report.to_text()
                                  : config.format == "csv" ? report.to_csv()
                                                           : report.to_json().dump(2);
            write_output(config.output_path, payload);
            return kExitOk;
        }

        if (*verify_cmd) {
            if (!verify_deck.empty()) {
                PartialDeck deck = load_deck(verify_deck);
                std::cout << "deck ok: n=" << deck.order() << " cards=" << deck.size()
                          << " missing=" << deck.missing() << '\n';
            }
            VerifyLevel level;
            if (verify_level == "fast") level = VerifyLevel::fast;
            else if (verify_level == "full") level = VerifyLevel::full;
            else throw InputError("verify: level must be fast or full");
            auto results = run_verify_suite(level, std::cout);
            return all_passed(results) ? kExitOk : kExitViolation;
        }

        if (*thr_cmd) {
            std::optional<std::int64_t> r;
            if (thr_r > 0) r = thr_r;
            std::cout << std::left << std::setw(18) << "theorem" << std::setw(10) << "max_k"
                      << "side conditions\n";
            for (const RegimeCheck& row : thresholds_table(thr_n, thr_d, r)) {
                std::string side;
                if (row.theorem == Theorem::recognition) side = "n >= 8";
                if (row.theorem == Theorem::estimate_st) side = "n >= 10^4 d^3";
                if (row.theorem == Theorem::degree_sequence) side = "n >= 3";
                std::cout << std::left << std::setw(18) << to_string(row.theorem) << std::setw(10)
                          << row.max_k << side << '\n';
            }
            return kExitOk;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const UnsupportedSizeError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const RegimeError& e) {
        std::cerr << "regime error: " << e.what() << '\n';
        return kExitRegime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}
