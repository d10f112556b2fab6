#include "deckrecon/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace deckrecon {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw InputError("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        g.adj_[static_cast<std::size_t>(u)].push_back(v);
        g.adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nbrs : g.adj_) {
        std::sort(nbrs.begin(), nbrs.end());
        if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
            throw InputError("duplicate edge");
    }
    g.edge_count_ = static_cast<std::int64_t>(edges.size());
    return g;
}

bool Graph::has_edge(int u, int v) const {
    const auto& nbrs = adj_[check(u)];
    check(v);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < order(); ++u)
        for (int v : adj_[static_cast<std::size_t>(u)])
            if (u < v) out.emplace_back(u, v);
    return out;
}

DegreeHistogram degree_histogram(const Graph& g) {
    DegreeHistogram h;
    for (int v = 0; v < g.order(); ++v) h.add(g.degree(v));
    return h;
}

Graph delete_vertex(const Graph& g, int v) {
    if (v < 0 || v >= g.order()) throw InputError("delete_vertex: invalid vertex id");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(g.edge_count()));
    auto remap = [v](int u) { return u > v ? u - 1 : u; };
    for (auto [a, b] : g.edges())
        if (a != v && b != v) edges.emplace_back(remap(a), remap(b));
    return Graph::from_edges(g.order() - 1, edges);
}

Graph permute(const Graph& g, std::span<const int> perm) {
    if (static_cast<int>(perm.size()) != g.order()) throw InputError("permute: size mismatch");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(g.edge_count()));
    for (auto [a, b] : g.edges()) {
        int pa = perm[static_cast<std::size_t>(a)];
        int pb = perm[static_cast<std::size_t>(b)];
        edges.emplace_back(std::min(pa, pb), std::max(pa, pb));
    }
    return Graph::from_edges(g.order(), edges);
}

std::vector<int> degeneracy_order(const Graph& g) {
    int n = g.order();
    std::vector<int> deg(static_cast<std::size_t>(n));
    int maxdeg = 0;
    for (int v = 0; v < n; ++v) {
        deg[static_cast<std::size_t>(v)] = g.degree(v);
        maxdeg = std::max(maxdeg, g.degree(v));
    }
    // bucket queue over current degrees
    std::vector<std::vector<int>> buckets(static_cast<std::size_t>(maxdeg) + 1);
    for (int v = 0; v < n; ++v) buckets[static_cast<std::size_t>(deg[static_cast<std::size_t>(v)])].push_back(v);
    std::vector<bool> removed(static_cast<std::size_t>(n), false);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    int cursor = 0;
    for (int iter = 0; iter < n; ++iter) {
        if (cursor > maxdeg) break;
        while (cursor <= maxdeg) {
            auto& b = buckets[static_cast<std::size_t>(cursor)];
            while (!b.empty() &&
                   (removed[static_cast<std::size_t>(b.back())] ||
                    deg[static_cast<std::size_t>(b.back())] != cursor))
                b.pop_back();
            if (!b.empty()) break;
            ++cursor;
        }
        if (cursor > maxdeg) break;
        int v = buckets[static_cast<std::size_t>(cursor)].back();
        buckets[static_cast<std::size_t>(cursor)].pop_back();
        removed[static_cast<std::size_t>(v)] = true;
        order.push_back(v);
        for (int u : g.neighbors(v)) {
            auto ui = static_cast<std::size_t>(u);
            if (!removed[ui]) {
                --deg[ui];
                buckets[static_cast<std::size_t>(deg[ui])].push_back(u);
                if (deg[ui] < cursor) cursor = deg[ui];
            }
        }
    }
    return order;
}

namespace {

void extend_clique(const Graph& g, std::int64_t r, const std::vector<int>& pos,
                   std::vector<int>& current, std::vector<int>& cand,
                   const std::function<void(std::span<const int>)>& visit) {
    if (static_cast<std::int64_t>(current.size()) == r) {
        visit(std::span<const int>(current.data(), current.size()));
        return;
    }
    std::int64_t need = r - static_cast<std::int64_t>(current.size());
    if (static_cast<std::int64_t>(cand.size()) < need) return;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        int u = cand[i];
        std::vector<int> next;
        for (std::size_t j = i + 1; j < cand.size(); ++j)
            if (g.has_edge(u, cand[j])) next.push_back(cand[j]);
        current.push_back(u);
        extend_clique(g, r, pos, current, next, visit);
        current.pop_back();
    }
}

} // namespace

void enumerate_cliques(const Graph& g, std::int64_t r,
                       const std::function<void(std::span<const int>)>& visit) {
    if (r < 2) throw InputError("clique size must be at least 2");
    if (r > g.order()) return;
    std::vector<int> order = degeneracy_order(g);
    std::vector<int> pos(static_cast<std::size_t>(g.order()));
    for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    std::vector<int> current, cand;
    for (int v : order) {
        current.assign(1, v);
        cand.clear();
        for (int u : g.neighbors(v))
            if (pos[static_cast<std::size_t>(u)] > pos[static_cast<std::size_t>(v)]) cand.push_back(u);
        // keep candidate order deterministic: sort by position in the peel order
        std::sort(cand.begin(), cand.end(), [&pos](int a, int b) {
            return pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(b)];
        });
        extend_clique(g, r, pos, current, cand, visit);
    }
}

CliqueProfile clique_profile(const Graph& g, std::int64_t r) {
    if (r < 2) throw InputError("clique size must be at least 2");
    CliqueProfile profile;
    profile.r = r;
    profile.per_vertex.assign(static_cast<std::size_t>(g.order()), 0);
    enumerate_cliques(g, r, [&profile](std::span<const int> clique) {
        ++profile.total;
        for (int v : clique) ++profile.per_vertex[static_cast<std::size_t>(v)];
    });
    for (auto c : profile.per_vertex) profile.counts.add(c);
    return profile;
}

Graph read_edge_list(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("edge list: missing header line");
    std::istringstream header(line);
    long long n = -1, m = -1;
    if (!(header >> n >> m) || n < 0 || m < 0) throw InputError("edge list: bad header '" + line + "'");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!std::getline(in, line)) throw InputError("edge list: truncated after " + std::to_string(i) + " edges");
        std::istringstream row(line);
        long long u, v;
        if (!(row >> u >> v)) throw InputError("edge list: bad edge line '" + line + "'");
        if (u >= v) throw InputError("edge list: expected u < v, got '" + line + "'");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return Graph::from_edges(static_cast<int>(n), edges);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << g.order() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file: " + path);
    return read_edge_list(in);
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write graph file: " + path);
    write_edge_list(g, out);
}

} // namespace deckrecon
