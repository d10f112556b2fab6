#include "deckrecon/canonical.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <map>

#include "deckrecon/errors.hpp"

namespace deckrecon {

std::string CanonicalCode::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

namespace {

using Cells = std::vector<std::vector<int>>;

constexpr long long kNodeCap = 4'000'000;
constexpr int kNoJump = INT_MAX;

// Individualization-refinement search. Runs in two phases:
//   1. automorphism harvest: DFS that only compares leaves against the first
//      leaf; a match yields a verified automorphism and a backjump to the
//      point where the two paths diverged.
//   2. canonical minimum: DFS pruned by orbits of the pointwise stabilizer
//      of the current base within the discovered group. A pruned candidate
//      v = sigma(u) with sigma fixing the base leads to a subtree whose leaf
//      codes duplicate subtree(u), so the minimum is preserved exactly.
struct Searcher {
    int n;
    std::vector<std::uint64_t> rows; // adjacency bitrows

    bool have_first = false;
    std::vector<std::uint64_t> first_code, best_code;
    std::vector<int> first_lab, best_lab; // position -> vertex
    std::vector<int> first_base;
    std::vector<std::vector<int>> generators; // automorphism perms (vertex -> vertex)
    long long nodes = 0;
    bool harvesting = true;

    explicit Searcher(const Graph& g) : n(g.order()), rows(static_cast<std::size_t>(g.order()), 0) {
        for (int v = 0; v < n; ++v)
            for (int u : g.neighbors(v))
                rows[static_cast<std::size_t>(v)] |= (std::uint64_t{1} << u);
    }

    // Splits every cell by adjacency counts against all current cells until
    // the partition is equitable. Deterministic and equivariant: relabeling
    // the graph relabels the resulting cells the same way.
    void refine(Cells& cells) const {
        bool again = true;
        while (again) {
            again = false;
            std::vector<std::uint64_t> masks(cells.size(), 0);
            for (std::size_t i = 0; i < cells.size(); ++i)
                for (int v : cells[i]) masks[i] |= (std::uint64_t{1} << v);
            Cells next;
            next.reserve(cells.size());
            for (const auto& cell : cells) {
                if (cell.size() == 1) {
                    next.push_back(cell);
                    continue;
                }
                std::map<std::vector<int>, std::vector<int>> groups;
                std::vector<int> key(masks.size());
                for (int v : cell) {
                    for (std::size_t i = 0; i < masks.size(); ++i)
                        key[i] = std::popcount(rows[static_cast<std::size_t>(v)] & masks[i]);
                    groups[key].push_back(v);
                }
                if (groups.size() > 1) again = true;
                for (auto& [k, vs] : groups) next.push_back(std::move(vs));
            }
            cells = std::move(next);
        }
    }

    std::vector<std::uint64_t> make_code(const std::vector<int>& lab) const {
        std::vector<int> pos(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p) pos[static_cast<std::size_t>(lab[static_cast<std::size_t>(p)])] = p;
        std::vector<std::uint64_t> code(static_cast<std::size_t>(n), 0);
        for (int p = 0; p < n; ++p) {
            std::uint64_t row = rows[static_cast<std::size_t>(lab[static_cast<std::size_t>(p)])];
            std::uint64_t packed = 0;
            while (row) {
                int v = std::countr_zero(row);
                row &= row - 1;
                packed |= std::uint64_t{1} << (63 - pos[static_cast<std::size_t>(v)]);
            }
            code[static_cast<std::size_t>(p)] = packed;
        }
        return code;
    }

    bool is_automorphism(const std::vector<int>& perm) const {
        for (int v = 0; v < n; ++v) {
            std::uint64_t mapped = 0;
            std::uint64_t row = rows[static_cast<std::size_t>(v)];
            while (row) {
                int u = std::countr_zero(row);
                row &= row - 1;
                mapped |= std::uint64_t{1} << perm[static_cast<std::size_t>(u)];
            }
            if (mapped != rows[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])]) return false;
        }
        return true;
    }

    void record_automorphism(const std::vector<int>& lab_a, const std::vector<int>& lab_b) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p)
            perm[static_cast<std::size_t>(lab_a[static_cast<std::size_t>(p)])] =
                lab_b[static_cast<std::size_t>(p)];
        bool identity = true;
        for (int v = 0; v < n; ++v)
            if (perm[static_cast<std::size_t>(v)] != v) { identity = false; break; }
        if (identity || !is_automorphism(perm)) return;
        generators.push_back(std::move(perm));
    }

    // Orbits of the subgroup generated by known automorphisms that fix
    // `base` pointwise, as a representative array.
    std::vector<int> stabilizer_orbits(const std::vector<int>& base) const {
        std::vector<int> parent(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) parent[static_cast<std::size_t>(v)] = v;
        auto find = [&parent](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) {
                parent[static_cast<std::size_t>(x)] =
                    parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
                x = parent[static_cast<std::size_t>(x)];
            }
            return x;
        };
        for (const auto& perm : generators) {
            bool fixes = true;
            for (int b : base)
                if (perm[static_cast<std::size_t>(b)] != b) { fixes = false; break; }
            if (!fixes) continue;
            for (int v = 0; v < n; ++v) {
                int a = find(v), b = find(perm[static_cast<std::size_t>(v)]);
                if (a != b) parent[static_cast<std::size_t>(a)] = b;
            }
        }
        for (int v = 0; v < n; ++v) parent[static_cast<std::size_t>(v)] = find(v);
        return parent;
    }

    int handle_terminal(const Cells& cells, const std::vector<int>& base) {
        std::vector<int> lab;
        lab.reserve(static_cast<std::size_t>(n));
        for (const auto& cell : cells) lab.push_back(cell.front());
        auto code = make_code(lab);
        if (!have_first) {
            have_first = true;
            first_code = code;
            first_lab = lab;
            first_base = base;
            best_code = std::move(code);
            best_lab = std::move(lab);
            return kNoJump;
        }
        if (code == first_code) {
            record_automorphism(first_lab, lab);
            if (harvesting) {
                std::size_t common = 0;
                while (common < base.size() && common < first_base.size() &&
                       base[common] == first_base[common])
                    ++common;
                return static_cast<int>(common);
            }
            return kNoJump;
        }
        if (harvesting) return kNoJump;
        if (code < best_code) {
            best_code = std::move(code);
            best_lab = std::move(lab);
        } else if (code == best_code) {
            record_automorphism(best_lab, lab);
        }
        return kNoJump;
    }

    int search(Cells cells, std::vector<int>& base) {
        refine(cells);
        if (++nodes > kNodeCap)
            throw UnsupportedSizeError("canonical form search exceeded node budget");
        std::size_t target = cells.size();
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i].size() > 1) { target = i; break; }
        if (target == cells.size()) return handle_terminal(cells, base);

        const std::vector<int> candidates = cells[target];
        std::vector<int> tried;
        std::vector<int> orbits = stabilizer_orbits(base);
        std::size_t orbit_gen_count = generators.size();
        for (int v : candidates) {
            if (generators.size() != orbit_gen_count) {
                orbits = stabilizer_orbits(base);
                orbit_gen_count = generators.size();
            }
            bool seen = false;
            for (int u : tried)
                if (orbits[static_cast<std::size_t>(u)] == orbits[static_cast<std::size_t>(v)]) {
                    seen = true;
                    break;
                }
            if (seen) continue;
            tried.push_back(v);

            Cells child;
            child.reserve(cells.size() + 1);
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i != target) {
                    child.push_back(cells[i]);
                    continue;
                }
                child.push_back({v});
                std::vector<int> rest;
                rest.reserve(cells[i].size() - 1);
                for (int u : cells[i])
                    if (u != v) rest.push_back(u);
                child.push_back(std::move(rest));
            }
            base.push_back(v);
            int jump = search(std::move(child), base);
            base.pop_back();
            if (jump < static_cast<int>(base.size())) return jump;
        }
        return kNoJump;
    }

    void run() {
        Cells unit{std::vector<int>(static_cast<std::size_t>(n))};
        for (int v = 0; v < n; ++v) unit[0][static_cast<std::size_t>(v)] = v;
        std::vector<int> base;
        harvesting = true;
        search(unit, base);
        harvesting = false;
        base.clear();
        search(std::move(unit), base);
    }
};

std::vector<std::vector<int>> connected_components(const Graph& g) {
    int n = g.order();
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> out;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] != -1) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        stack.push_back(s);
        comp[static_cast<std::size_t>(s)] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out[static_cast<std::size_t>(id)].push_back(v);
            for (int u : g.neighbors(v)) {
                if (comp[static_cast<std::size_t>(u)] == -1) {
                    comp[static_cast<std::size_t>(u)] = id;
                    stack.push_back(u);
                }
            }
        }
        std::sort(out[static_cast<std::size_t>(id)].begin(), out[static_cast<std::size_t>(id)].end());
    }
    return out;
}

struct ComponentForm {
    int n = 0;
    std::vector<std::uint64_t> code; // canonical adjacency rows, local labels
    std::vector<int> vertices;       // position -> original vertex id

    bool operator<(const ComponentForm& other) const {
        if (n != other.n) return n < other.n;
        return code < other.code;
    }
};

} // namespace

// Canonical form of a disjoint union: components are canonicalized
// independently and concatenated in sorted order of their (order, code)
// keys. Ties are isomorphic components, so the stitched matrix does not
// depend on how they are broken.
CanonicalCode canonical_code(const Graph& g, int order_limit) {
    int n = g.order();
    int limit = std::min(order_limit, kCanonicalOrderLimit);
    if (n > limit)
        throw UnsupportedSizeError("canonical_code: order " + std::to_string(n) +
                                   " exceeds limit " + std::to_string(limit));
    CanonicalCode out;
    out.bytes.push_back(static_cast<std::uint8_t>(n));
    if (n == 0) return out;

    std::vector<ComponentForm> forms;
    for (const auto& members : connected_components(g)) {
        ComponentForm form;
        form.n = static_cast<int>(members.size());
        std::vector<int> local(static_cast<std::size_t>(n), -1);
        for (std::size_t i = 0; i < members.size(); ++i)
            local[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
        std::vector<std::pair<int, int>> edges;
        for (int v : members)
            for (int u : g.neighbors(v))
                if (v < u)
                    edges.emplace_back(local[static_cast<std::size_t>(v)],
                                       local[static_cast<std::size_t>(u)]);
        Graph sub = Graph::from_edges(form.n, edges);
        Searcher searcher(sub);
        searcher.run();
        form.code = searcher.best_code;
        form.vertices.resize(members.size());
        for (int p = 0; p < form.n; ++p)
            form.vertices[static_cast<std::size_t>(p)] =
                members[static_cast<std::size_t>(searcher.best_lab[static_cast<std::size_t>(p)])];
        forms.push_back(std::move(form));
    }
    std::sort(forms.begin(), forms.end());

    // Stitch the global labeling and pack the upper adjacency triangle.
    std::vector<int> lab;
    lab.reserve(static_cast<std::size_t>(n));
    for (const auto& form : forms)
        for (int v : form.vertices) lab.push_back(v);
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) pos[static_cast<std::size_t>(lab[static_cast<std::size_t>(p)])] = p;

    std::size_t bits = static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) - 1) / 2;
    std::vector<std::uint8_t> tri((bits + 7) / 8, 0);
    for (int p = 0; p < n; ++p) {
        int vp = lab[static_cast<std::size_t>(p)];
        for (int u : g.neighbors(vp)) {
            int q = pos[static_cast<std::size_t>(u)];
            if (q <= p) continue;
            std::size_t idx = static_cast<std::size_t>(p) * static_cast<std::size_t>(n) -
                              static_cast<std::size_t>(p) * (static_cast<std::size_t>(p) + 1) / 2 +
                              static_cast<std::size_t>(q - p - 1);
            tri[idx / 8] |= static_cast<std::uint8_t>(1u << (idx % 8));
        }
    }
    out.bytes.insert(out.bytes.end(), tri.begin(), tri.end());
    return out;
}

} // namespace deckrecon
