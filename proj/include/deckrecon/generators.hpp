#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "deckrecon/graph.hpp"
#include "deckrecon/histogram.hpp"

namespace deckrecon {

enum class GenFamily {
    matching,
    cycle,
    random_forest,
    erdos_renyi_capped,
    disjoint_triangles,
    star_union,
    from_file,
};

GenFamily gen_family_from_string(const std::string& name);
std::string to_string(GenFamily family);

/// Experiment graph description. Every generated graph respects the
/// average-degree cap d; random families are trimmed if they exceed it.
struct GenSpec {
    GenFamily family = GenFamily::matching;
    std::int64_t n = 0;
    std::int64_t d = 1;
    std::uint64_t seed = 0;

    // family-specific knobs
    std::optional<std::int64_t> edges;          // random_forest: target edge count
    std::optional<std::int64_t> prob_num;       // erdos_renyi_capped: edge probability
    std::optional<std::int64_t> prob_den;       //   as an exact ratio (default d/(n-1))
    std::vector<std::int64_t> stars;            // star_union: leaf counts
    std::int64_t isolated = 0;                  // star_union: extra isolated vertices
    std::string path;                           // from_file: edge-list path
};

/// Ground truth retained alongside a generated graph for verification.
struct GroundTruth {
    std::int64_t n = 0;
    std::int64_t m = 0;
    DegreeHistogram histogram;
    std::int64_t triangle_count = 0;

    nlohmann::json to_json() const;
};

struct Generated {
    Graph graph;
    GroundTruth truth;
};

/// Deterministic given spec + seed: identical calls produce byte-identical
/// edge lists. Throws InputError for unsatisfiable specs.
Generated generate(const GenSpec& spec);

} // namespace deckrecon
