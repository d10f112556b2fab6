#include "deckrecon/generators.hpp"

#include <algorithm>
#include <numeric>

#include "deckrecon/errors.hpp"
#include "deckrecon/prng.hpp"

namespace deckrecon {

GenFamily gen_family_from_string(const std::string& name) {
    if (name == "matching") return GenFamily::matching;
    if (name == "cycle") return GenFamily::cycle;
    if (name == "random_forest") return GenFamily::random_forest;
    if (name == "erdos_renyi_capped") return GenFamily::erdos_renyi_capped;
    if (name == "disjoint_triangles") return GenFamily::disjoint_triangles;
    if (name == "star_union") return GenFamily::star_union;
    if (name == "from_file") return GenFamily::from_file;
    throw InputError("unknown generator family: " + name);
}

std::string to_string(GenFamily family) {
    switch (family) {
        case GenFamily::matching: return "matching";
        case GenFamily::cycle: return "cycle";
        case GenFamily::random_forest: return "random_forest";
        case GenFamily::erdos_renyi_capped: return "erdos_renyi_capped";
        case GenFamily::disjoint_triangles: return "disjoint_triangles";
        case GenFamily::star_union: return "star_union";
        case GenFamily::from_file: return "from_file";
    }
    return "?";
}

nlohmann::json GroundTruth::to_json() const {
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& [degree, count] : histogram.entries()) hist.push_back({degree, count});
    return {{"n", n}, {"m", m}, {"histogram", hist}, {"triangle_count", triangle_count}};
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::int64_t n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(a)] = b;
        return true;
    }
};

std::vector<std::pair<int, int>> matching_edges(std::int64_t n) {
    std::vector<std::pair<int, int>> edges;
    for (std::int64_t i = 0; i + 1 < n; i += 2)
        edges.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
    return edges;
}

std::vector<std::pair<int, int>> forest_edges(std::int64_t n, std::int64_t target, Rng& rng) {
    if (target > n - 1)
        throw InputError("random_forest: a forest on " + std::to_string(n) +
                         " vertices has at most " + std::to_string(n - 1) + " edges");
    std::vector<std::pair<int, int>> edges;
    UnionFind uf(n);
    std::uint64_t attempts = 0;
    std::uint64_t cap = 200 * static_cast<std::uint64_t>(n) + 100000;
    while (static_cast<std::int64_t>(edges.size()) < target) {
        if (++attempts > cap) throw InputError("random_forest: sampling did not converge");
        int u = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(n)));
        int v = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(n)));
        if (u == v) continue;
        if (uf.unite(u, v)) edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    return edges;
}

std::vector<std::pair<int, int>> erdos_renyi_edges(std::int64_t n, std::uint64_t num,
                                                   std::uint64_t den, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (std::int64_t u = 0; u < n; ++u)
        for (std::int64_t v = u + 1; v < n; ++v)
            if (bernoulli_ratio(rng, num, den))
                edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    return edges;
}

// Removes edges until 2m <= d*n: repeatedly drop the edge joining the
// lowest-id maximum-degree vertex to its lowest-id maximum-degree neighbor.
void trim_to_cap(std::int64_t n, std::int64_t d, std::vector<std::pair<int, int>>& edges) {
    std::vector<std::int64_t> degree(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : edges) {
        ++degree[static_cast<std::size_t>(u)];
        ++degree[static_cast<std::size_t>(v)];
    }
    std::vector<bool> dead(edges.size(), false);
    std::int64_t live = static_cast<std::int64_t>(edges.size());
    while (2 * live > d * n) {
        int worst = -1;
        for (int v = 0; v < n; ++v)
            if (worst == -1 || degree[static_cast<std::size_t>(v)] > degree[static_cast<std::size_t>(worst)])
                worst = v;
        int partner = -1;
        std::size_t victim = edges.size();
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (dead[i]) continue;
            auto [u, v] = edges[i];
            int other = u == worst ? v : (v == worst ? u : -1);
            if (other == -1) continue;
            if (partner == -1 || degree[static_cast<std::size_t>(other)] > degree[static_cast<std::size_t>(partner)] ||
                (degree[static_cast<std::size_t>(other)] == degree[static_cast<std::size_t>(partner)] && other < partner)) {
                partner = other;
                victim = i;
            }
        }
        if (victim == edges.size()) break; // max-degree vertex isolated; cannot happen while live > 0
        dead[victim] = true;
        --live;
        --degree[static_cast<std::size_t>(edges[victim].first)];
        --degree[static_cast<std::size_t>(edges[victim].second)];
    }
    std::vector<std::pair<int, int>> kept;
    kept.reserve(static_cast<std::size_t>(live));
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (!dead[i]) kept.push_back(edges[i]);
    edges = std::move(kept);
}

} // namespace

Generated generate(const GenSpec& spec) {
    if (spec.n < 1) throw InputError("generate: n must be at least 1");
    if (spec.d < 1) throw InputError("generate: d must be at least 1");
    Rng rng = make_rng(spec.seed);

    Graph graph;
    switch (spec.family) {
        case GenFamily::matching:
            graph = Graph::from_edges(static_cast<int>(spec.n), matching_edges(spec.n));
            break;
        case GenFamily::cycle: {
            if (spec.n < 3) throw InputError("cycle: needs n >= 3");
            if (spec.d < 2) throw InputError("cycle: requires d >= 2");
            std::vector<std::pair<int, int>> edges;
            for (std::int64_t i = 0; i + 1 < spec.n; ++i)
                edges.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
            edges.emplace_back(0, static_cast<int>(spec.n - 1));
            graph = Graph::from_edges(static_cast<int>(spec.n), edges);
            break;
        }
        case GenFamily::random_forest: {
            std::int64_t target = spec.edges.value_or(std::min(spec.n - 1, spec.d * spec.n / 2));
            graph = Graph::from_edges(static_cast<int>(spec.n), forest_edges(spec.n, target, rng));
            break;
        }
        case GenFamily::erdos_renyi_capped: {
            std::int64_t num = spec.prob_num.value_or(spec.d);
            std::int64_t den = spec.prob_den.value_or(std::max<std::int64_t>(1, spec.n - 1));
            if (num < 0 || den <= 0) throw InputError("generate: bad edge probability");
            auto edges = erdos_renyi_edges(spec.n, static_cast<std::uint64_t>(num),
                                           static_cast<std::uint64_t>(den), rng);
            trim_to_cap(spec.n, spec.d, edges);
            graph = Graph::from_edges(static_cast<int>(spec.n), edges);
            break;
        }
        case GenFamily::disjoint_triangles: {
            if (spec.n % 3 != 0)
                throw InputError("disjoint_triangles: n must be divisible by 3");
            if (spec.d < 2) throw InputError("disjoint_triangles: requires d >= 2");
            std::vector<std::pair<int, int>> edges;
            for (std::int64_t base = 0; base < spec.n; base += 3) {
                int b = static_cast<int>(base);
                edges.emplace_back(b, b + 1);
                edges.emplace_back(b, b + 2);
                edges.emplace_back(b + 1, b + 2);
            }
            graph = Graph::from_edges(static_cast<int>(spec.n), edges);
            break;
        }
        case GenFamily::star_union: {
            std::vector<std::pair<int, int>> edges;
            std::int64_t next = 0;
            for (std::int64_t leaves : spec.stars) {
                if (leaves < 1) throw InputError("star_union: star sizes must be positive");
                int center = static_cast<int>(next);
                for (std::int64_t i = 1; i <= leaves; ++i)
                    edges.emplace_back(center, static_cast<int>(next + i));
                next += leaves + 1;
            }
            next += spec.isolated;
            if (next != spec.n)
                throw InputError("star_union: stars + isolated vertices add up to " +
                                 std::to_string(next) + ", not n = " + std::to_string(spec.n));
            graph = Graph::from_edges(static_cast<int>(spec.n), edges);
            break;
        }
        case GenFamily::from_file: {
            graph = load_edge_list(spec.path);
            if (graph.order() != spec.n)
                throw InputError("from_file: file has order " + std::to_string(graph.order()) +
                                 ", spec says " + std::to_string(spec.n));
            break;
        }
    }

    if (2 * graph.edge_count() > spec.d * spec.n)
        throw InputError("generate: " + to_string(spec.family) +
                         " output exceeds the average-degree cap d = " + std::to_string(spec.d));

    Generated out{std::move(graph), {}};
    out.truth.n = out.graph.order();
    out.truth.m = out.graph.edge_count();
    out.truth.histogram = degree_histogram(out.graph);
    out.truth.triangle_count = out.graph.order() >= 3 ? clique_profile(out.graph, 3).total : 0;
    return out;
}

} // namespace deckrecon
