#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "deckrecon/histogram.hpp"
#include "deckrecon/rational.hpp"

namespace deckrecon {

/// Simple undirected graph: no loops, no multi-edges, adjacency symmetric.
/// Immutable after construction; safe to share across threads.
class Graph {
public:
    explicit Graph(int n = 0) : adj_(static_cast<std::size_t>(n)), edge_count_(0) {
        if (n < 0) throw InputError("Graph: negative order");
    }

    /// Builds from an edge list; rejects loops, duplicates, out-of-range ids.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int order() const { return static_cast<int>(adj_.size()); }
    std::int64_t edge_count() const { return edge_count_; }
    int degree(int v) const { return static_cast<int>(adj_[check(v)].size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[check(v)]; }
    bool has_edge(int u, int v) const;

    /// 2m/n as an exact rational. Zero for the empty graph.
    Rational average_degree() const {
        return order() == 0 ? Rational(0) : Rational(2 * edge_count_, order());
    }

    std::vector<std::pair<int, int>> edges() const;

private:
    std::size_t check(int v) const {
        if (v < 0 || v >= order()) throw InputError("invalid vertex id " + std::to_string(v));
        return static_cast<std::size_t>(v);
    }

    std::vector<std::vector<int>> adj_; // sorted neighbor lists
    std::int64_t edge_count_;
};

DegreeHistogram degree_histogram(const Graph& g);

/// Card G - v: the graph on n-1 vertices with v and its incident edges
/// removed. Remaining vertices keep their relative order.
Graph delete_vertex(const Graph& g, int v);

/// Relabels g by perm: vertex v becomes perm[v]. perm must be a permutation.
Graph permute(const Graph& g, std::span<const int> perm);

/// Per-vertex clique membership counts for cliques of a fixed size.
struct CliqueProfile {
    std::int64_t r = 0;
    std::vector<std::int64_t> per_vertex; // c(v), indexed by vertex id
    SparseHistogram counts;               // bucket histogram over c(v) values
    std::int64_t total = 0;               // number of r-cliques

    std::int64_t per_vertex_sum() const {
        std::int64_t s = 0;
        for (auto c : per_vertex) s += c;
        return s;
    }
};

/// Exact r-clique counts via ordered enumeration along a degeneracy order.
/// Each clique is visited exactly once. r >= 2.
CliqueProfile clique_profile(const Graph& g, std::int64_t r);

/// Calls visit(clique) once per r-clique; members are vertex ids.
void enumerate_cliques(const Graph& g, std::int64_t r,
                       const std::function<void(std::span<const int>)>& visit);

std::vector<int> degeneracy_order(const Graph& g);

// Edge-list interchange format: first line "n m", then one "u v" line per
// edge, 0-indexed with u < v, ASCII, LF-terminated.
Graph read_edge_list(std::istream& in);
void write_edge_list(const Graph& g, std::ostream& out);
Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);

} // namespace deckrecon
