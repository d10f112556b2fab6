#include "deckrecon/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "deckrecon/errors.hpp"
#include "deckrecon/parallel.hpp"
#include "deckrecon/recon_degseq.hpp"

namespace deckrecon {

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

Rational parse_decimal_rational(const std::string& text) {
    std::size_t dot = text.find('.');
    try {
        if (dot == std::string::npos) return Rational(std::stoll(text));
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (frac.empty() || frac.size() > 15) throw InputError("bad decimal: " + text);
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        std::int64_t num = (whole.empty() ? 0 : std::stoll(whole)) * den + std::stoll(frac);
        return Rational(num, den);
    } catch (const std::logic_error&) {
        throw InputError("bad decimal: " + text);
    }
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stoll(item));
        } catch (const std::logic_error&) {
            throw InputError("bad integer list entry: '" + item + "'");
        }
    }
    return out;
}

std::int64_t parse_int(const std::string& value, const std::string& key) {
    try {
        return std::stoll(value);
    } catch (const std::logic_error&) {
        throw InputError("config: bad integer for " + key + ": '" + value + "'");
    }
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw InputError("config: bad boolean for " + key + ": '" + value + "'");
}

} // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig config;
    std::ostringstream raw;
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        raw << line << '\n';
        std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        if (text.front() == '[' && text.back() == ']') {
            section = text.substr(1, text.size() - 2);
            continue;
        }
        std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw InputError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        std::string qualified = section + "." + key;

        if (section == "gen") {
            if (key == "family") config.gen.family = gen_family_from_string(value);
            else if (key == "n") config.gen.n = parse_int(value, qualified);
            else if (key == "d") config.gen.d = parse_int(value, qualified);
            else if (key == "seed") config.gen.seed = static_cast<std::uint64_t>(parse_int(value, qualified));
            else if (key == "edges") config.gen.edges = parse_int(value, qualified);
            else if (key == "prob_num") config.gen.prob_num = parse_int(value, qualified);
            else if (key == "prob_den") config.gen.prob_den = parse_int(value, qualified);
            else if (key == "stars") config.gen.stars = parse_int_list(value);
            else if (key == "isolated") config.gen.isolated = parse_int(value, qualified);
            else if (key == "path") config.gen.path = value;
            else throw InputError("config: unknown key " + qualified);
        } else if (section == "removal") {
            if (key == "policy") config.removal.policy = removal_policy_from_string(value);
            else if (key == "k") config.removal.k = parse_int(value, qualified);
            else if (key == "k_fraction") config.removal.k_fraction = parse_decimal_rational(value);
            else if (key == "targets") config.removal.targets = parse_int_list(value);
            else if (key == "trials") config.removal.trials = parse_int(value, qualified);
            else if (key == "seed") config.removal.seed = static_cast<std::uint64_t>(parse_int(value, qualified));
            else throw InputError("config: unknown key " + qualified);
        } else if (section == "tasks") {
            if (key == "edges") config.tasks.edges = parse_bool(value, qualified);
            else if (key == "cliques") {
                std::int64_t r = parse_int(value, qualified);
                if (r > 0) config.tasks.clique_r = r;
            } else if (key == "degseq") config.tasks.degseq = parse_bool(value, qualified);
            else if (key == "force_general") config.tasks.force_general = parse_bool(value, qualified);
            else throw InputError("config: unknown key " + qualified);
        } else if (section == "recon") {
            if (key == "d_override") config.d_override = parse_int(value, qualified);
            else throw InputError("config: unknown key " + qualified);
        } else if (section == "output") {
            if (key == "path") config.output_path = value;
            else if (key == "format") config.format = value;
            else throw InputError("config: unknown key " + qualified);
        } else {
            throw InputError("config: unknown section [" + section + "]");
        }
    }
    if (config.removal.trials < 1) throw InputError("config: trials must be at least 1");
    if (config.format != "json" && config.format != "text" && config.format != "csv")
        throw InputError("config: format must be json, text or csv");
    config.raw_text = raw.str();
    return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path);
    return parse_experiment_config(in);
}

namespace {

std::int64_t resolve_k(const RemovalSpec& removal, std::int64_t n) {
    std::int64_t k = 0;
    if (removal.k) k = *removal.k;
    else if (removal.k_fraction) k = (*removal.k_fraction * Rational(n)).floor();
    if (k < 0 || k > n) throw InputError("removal count " + std::to_string(k) + " outside [0, n]");
    return k;
}

std::vector<std::int64_t> top_degrees(const DegreeHistogram& hist, std::int64_t k) {
    std::vector<std::int64_t> out;
    for (auto it = hist.entries().rbegin(); it != hist.entries().rend() && k > 0; ++it) {
        for (std::int64_t i = 0; i < it->second && k > 0; ++i, --k) out.push_back(it->first);
    }
    return out;
}

nlohmann::json histogram_json(const DegreeHistogram& hist) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [degree, count] : hist.entries()) out.push_back({degree, count});
    return out;
}

double histogram_distance(const DegreeHistogram& a, const DegreeHistogram& b) {
    double worst = 0;
    for (const auto& [degree, count] : a.entries())
        worst = std::max(worst, static_cast<double>(std::abs(count - b.at(degree))));
    for (const auto& [degree, count] : b.entries())
        worst = std::max(worst, static_cast<double>(std::abs(count - a.at(degree))));
    return worst;
}

} // namespace

ReconReport run_experiment(const ExperimentConfig& config) {
    auto started = std::chrono::steady_clock::now();
    ReconReport report;
    report.config_hash = [&] {
        std::ostringstream os;
        os << std::hex << std::setw(16) << std::setfill('0') << fnv1a_hash(config.raw_text);
        return os.str();
    }();
    report.gen_seed = config.gen.seed;
    report.removal_seed = config.removal.seed;

    std::int64_t trials = config.removal.trials;
    std::vector<std::vector<TrialRecord>> per_trial(static_cast<std::size_t>(trials));

    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t index) {
        std::int64_t trial = static_cast<std::int64_t>(index);
        std::vector<TrialRecord>& records = per_trial[index];
        auto record_error = [&](const std::string& task, const std::string& what) {
            TrialRecord rec;
            rec.trial = trial;
            rec.task = task;
            rec.error = what;
            records.push_back(std::move(rec));
        };
        Generated gen;
        try {
            GenSpec spec = config.gen;
            spec.seed = config.gen.seed + static_cast<std::uint64_t>(trial);
            gen = generate(spec);
        } catch (const std::exception& e) {
            record_error("generate", e.what());
            return;
        }
        std::int64_t d_task = config.d_override.value_or(config.gen.d);
        std::int64_t d_true =
            std::max<std::int64_t>(1, Rational(2 * gen.truth.m, std::max<std::int64_t>(1, gen.truth.n)).ceil());

        try {
            DeckBuildOptions options;
            options.clique_r = config.tasks.clique_r;
            if (config.tasks.degseq) {
                options.with_subcards = true;
                options.subcard_degree_threshold = 100 * d_true * d_true;
            }
            PartialDeck deck = full_deck(gen.graph, options);

            std::int64_t k = resolve_k(config.removal, deck.order());
            std::vector<std::int64_t> targets = config.removal.targets;
            if (config.removal.policy == RemovalPolicy::target_degrees && targets.empty())
                targets = top_degrees(gen.truth.histogram, k);
            PartialDeck partial =
                remove_cards(deck, k, config.removal.policy,
                             config.removal.seed + static_cast<std::uint64_t>(trial), targets);

            if (config.tasks.edges) {
                TrialRecord rec;
                rec.trial = trial;
                rec.task = "edges";
                try {
                    CountResult res = reconstruct_edge_count(partial, d_task);
                    rec.value = res.value;
                    rec.ground_truth = gen.truth.m;
                    rec.exact = res.value == gen.truth.m;
                    rec.in_regime = res.trace.in_regime;
                    rec.trace = res.trace.to_json();
                    rec.error_magnitude = static_cast<double>(std::abs(res.value - gen.truth.m));
                } catch (const std::exception& e) {
                    rec.error = e.what();
                }
                records.push_back(std::move(rec));
            }
            if (config.tasks.clique_r) {
                TrialRecord rec;
                rec.trial = trial;
                rec.task = "cliques";
                try {
                    std::int64_t r = *config.tasks.clique_r;
                    std::int64_t truth = r == 3 ? gen.truth.triangle_count
                                                : clique_profile(gen.graph, r).total;
                    CountResult res = reconstruct_clique_count(partial, d_task, r);
                    rec.value = res.value;
                    rec.ground_truth = truth;
                    rec.exact = res.value == truth;
                    rec.in_regime = res.trace.in_regime;
                    rec.trace = res.trace.to_json();
                    rec.error_magnitude = static_cast<double>(std::abs(res.value - truth));
                } catch (const std::exception& e) {
                    rec.error = e.what();
                }
                records.push_back(std::move(rec));
            }
            if (config.tasks.degseq) {
                TrialRecord rec;
                rec.trial = trial;
                rec.task = "degseq";
                try {
                    DegSeqState state =
                        reconstruct_degree_sequence(partial, d_task, config.tasks.force_general);
                    rec.value = histogram_json(state.reconstructed);
                    rec.ground_truth = histogram_json(gen.truth.histogram);
                    rec.exact = state.reconstructed == gen.truth.histogram;
                    rec.in_regime = state.in_regime;
                    rec.trace = state.to_json();
                    rec.error_magnitude = histogram_distance(state.reconstructed, gen.truth.histogram);
                } catch (const std::exception& e) {
                    rec.error = e.what();
                }
                records.push_back(std::move(rec));
            }
        } catch (const std::exception& e) {
            record_error("deck", e.what());
        }
    });

    std::int64_t exact = 0;
    for (auto& trial_records : per_trial) {
        for (auto& rec : trial_records) {
            if (rec.exact) ++exact;
            report.max_error = std::max(report.max_error, rec.error_magnitude);
            report.records.push_back(std::move(rec));
        }
    }
    if (!report.records.empty())
        report.success_rate = static_cast<double>(exact) / static_cast<double>(report.records.size());
    report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - started)
                            .count();
    return report;
}

nlohmann::json ReconReport::to_json() const {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& rec : records) {
        recs.push_back({{"trial", rec.trial},
                        {"task", rec.task},
                        {"value", rec.value},
                        {"ground_truth", rec.ground_truth},
                        {"exact", rec.exact},
                        {"in_regime", rec.in_regime},
                        {"trace", rec.trace},
                        {"error", rec.error},
                        {"error_magnitude", rec.error_magnitude}});
    }
    return {{"records", recs},
            {"aggregate",
             {{"success_rate", success_rate}, {"max_error", max_error}, {"runtime_ms", runtime_ms}}},
            {"provenance",
             {{"config_hash", config_hash},
              {"gen_seed", gen_seed},
              {"removal_seed", removal_seed},
              {"artifact_version", version}}}};
}

std::string ReconReport::to_text() const {
    std::ostringstream os;
    os << std::left << std::setw(7) << "trial" << std::setw(9) << "task" << std::setw(12)
       << "exact" << std::setw(11) << "in_regime" << "note\n";
    for (const auto& rec : records) {
        os << std::left << std::setw(7) << rec.trial << std::setw(9) << rec.task << std::setw(12)
           << (rec.error.empty() ? (rec.exact ? "yes" : "no") : "error") << std::setw(11)
           << (rec.in_regime ? "yes" : "no");
        if (!rec.error.empty()) os << rec.error;
        else if (!rec.exact) os << "off by " << rec.error_magnitude;
        os << '\n';
    }
    os << "success_rate " << success_rate << "  max_error " << max_error << "  runtime_ms "
       << runtime_ms << "  config " << config_hash << '\n';
    return os.str();
}

std::string ReconReport::to_csv() const {
    std::ostringstream os;
    os << "trial,task,exact,in_regime,error_magnitude,error\n";
    for (const auto& rec : records) {
        std::string sanitized = rec.error;
        std::replace(sanitized.begin(), sanitized.end(), ',', ';');
        os << rec.trial << ',' << rec.task << ',' << (rec.exact ? 1 : 0) << ','
           << (rec.in_regime ? 1 : 0) << ',' << rec.error_magnitude << ',' << sanitized << '\n';
    }
    os << "# success_rate=" << success_rate << " max_error=" << max_error
       << " runtime_ms=" << runtime_ms << " config=" << config_hash << '\n';
    return os.str();
}

std::vector<RegimeCheck> thresholds_table(std::int64_t n, std::int64_t d,
                                          std::optional<std::int64_t> r) {
    std::vector<RegimeCheck> rows;
    rows.push_back(regime_check(Theorem::edge_count, n, d, 0));
    if (r) rows.push_back(regime_check(Theorem::clique_count, n, d, 0, r));
    rows.push_back(regime_check(Theorem::degree_sequence, n, d, 0));
    rows.push_back(regime_check(Theorem::recognition, n, d, 0));
    rows.push_back(regime_check(Theorem::estimate_st, n, d, 0));
    return rows;
}

} // namespace deckrecon
