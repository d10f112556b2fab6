#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "deckrecon/deck.hpp"
#include "deckrecon/generators.hpp"
#include "deckrecon/rational.hpp"
#include "deckrecon/recon_count.hpp"

namespace deckrecon {

inline constexpr const char* kVersion = "0.1.0";

struct RemovalSpec {
    RemovalPolicy policy = RemovalPolicy::random;
    std::optional<std::int64_t> k;
    std::optional<Rational> k_fraction; // resolves to floor(fraction * n)
    std::vector<std::int64_t> targets;  // target_degrees policy; empty = top-k true degrees
    std::int64_t trials = 1;
    std::uint64_t seed = 0;
};

struct TaskSpec {
    bool edges = false;
    std::optional<std::int64_t> clique_r;
    bool degseq = false;
    bool force_general = false; // degseq: skip the k<=1 fast paths
};

struct ExperimentConfig {
    GenSpec gen;
    RemovalSpec removal;
    TaskSpec tasks;
    std::optional<std::int64_t> d_override;
    std::string output_path; // empty = stdout
    std::string format = "json";
    std::string raw_text; // verbatim config, hashed for provenance
};

/// Flat TOML-like sections of `key = value` lines; see README for the keys.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::string& path);

struct TrialRecord {
    std::int64_t trial = 0;
    std::string task;
    nlohmann::json value;
    nlohmann::json ground_truth;
    bool exact = false;
    bool in_regime = false;
    nlohmann::json trace;
    std::string error; // nonempty when the task failed; failures are recorded, not fatal
    double error_magnitude = 0.0;
};

struct ReconReport {
    std::vector<TrialRecord> records;
    double success_rate = 0.0;
    double max_error = 0.0;
    std::int64_t runtime_ms = 0;
    std::string config_hash;
    std::uint64_t gen_seed = 0;
    std::uint64_t removal_seed = 0;
    std::string version = kVersion;

    nlohmann::json to_json() const;
    std::string to_text() const;
    std::string to_csv() const;
};

/// One generate / deck / remove / reconstruct / compare cycle per trial,
/// deterministic given the config. Trials run on a worker pool; records come
/// back in trial order. Ground truth is only touched by the comparator and
/// the removal simulation, never by the reconstruction calls.
ReconReport run_experiment(const ExperimentConfig& config);

/// max_k rows for every theorem at these parameters (k set to 0).
std::vector<RegimeCheck> thresholds_table(std::int64_t n, std::int64_t d,
                                          std::optional<std::int64_t> r = std::nullopt);

std::uint64_t fnv1a_hash(const std::string& text);

/// "0.25" -> 1/4; plain integers allowed.
Rational parse_decimal_rational(const std::string& text);

} // namespace deckrecon
