#include "doctest.h"

#include "deckrecon/canonical.hpp"
#include "deckrecon/errors.hpp"
#include "deckrecon/verification.hpp"
#include "oracles.hpp"

using namespace deckrecon;
using namespace testing_oracles;

TEST_CASE("relabeled paths share a code, path and triangle differ") {
    Graph path_a = Graph::from_edges(3, {{0, 1}, {1, 2}});
    Graph path_b = Graph::from_edges(3, {{0, 1}, {0, 2}}); // center relabeled
    Graph triangle = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(canonical_code(path_a) == canonical_code(path_b));
    CHECK(canonical_code(path_a) != canonical_code(triangle));
}

TEST_CASE("code bytes are sized by the order and hex round-trips") {
    Graph g = Graph::from_edges(5, {{0, 1}, {2, 3}});
    CanonicalCode code = canonical_code(g);
    CHECK(code.bytes.size() == 1 + (5 * 4 / 2 + 7) / 8);
    CHECK(code.hex().size() == 2 * code.bytes.size());
    CHECK(canonical_code(Graph(0)).bytes.size() == 1);
    CHECK(canonical_code(Graph(1)) == canonical_code(Graph(1)));
}

TEST_CASE("codes of random 7-vertex graphs are relabeling invariant and match brute force") {
    Rng rng = make_rng(1234);
    int disagreements = 0;
    for (int round = 0; round < 100; ++round) {
        int n = 7;
        Graph g = random_graph(rng, n, 20 + bounded(rng, 61), 100);
        CanonicalCode code = canonical_code(g);
        for (int s = 0; s < 10; ++s) {
            Graph h = permute(g, random_permutation(rng, n));
            if (canonical_code(h) != code) ++disagreements;
        }
        Graph other = random_graph(rng, n, 20 + bounded(rng, 61), 100);
        bool same_code = canonical_code(other) == code;
        bool isomorphic = brute_force_isomorphic(g, other);
        if (same_code != isomorphic) ++disagreements;
    }
    CHECK(disagreements == 0);
}

TEST_CASE("codes stay constant under 50 random relabelings of structured graphs") {
    Rng rng = make_rng(77);
    std::vector<Graph> zoo;
    zoo.push_back(star_graph(9));
    zoo.push_back(disjoint_union(star_graph(6), star_graph(6)));
    zoo.push_back(disjoint_union(complete_bipartite(2, 7), star_graph(5)));
    zoo.push_back(cycle_graph(13));
    zoo.push_back(disjoint_union(disjoint_union(star_graph(9), star_graph(9)), star_graph(7)));
    zoo.push_back(Graph(20)); // twenty isolated vertices
    for (const Graph& g : zoo) {
        CanonicalCode code = canonical_code(g);
        for (int s = 0; s < 50; ++s) {
            Graph h = permute(g, random_permutation(rng, g.order()));
            REQUIRE(canonical_code(h) == code);
        }
    }
}

TEST_CASE("component order does not leak into the code") {
    Graph a = disjoint_union(star_graph(3), cycle_graph(5));
    Graph b = disjoint_union(cycle_graph(5), star_graph(3));
    CHECK(canonical_code(a) == canonical_code(b));
    // same piece counts but different wiring must differ
    Graph c = disjoint_union(star_graph(4), cycle_graph(4));
    CHECK(canonical_code(a) != canonical_code(c));
}

TEST_CASE("order limit is enforced") {
    CHECK_THROWS_AS(canonical_code(Graph(65)), UnsupportedSizeError);
    CHECK_THROWS_AS(canonical_code(Graph(30), 16), UnsupportedSizeError);
    CHECK_NOTHROW(canonical_code(Graph(64)));
}
