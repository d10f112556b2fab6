#include "doctest.h"

#include <sstream>

#include "deckrecon/errors.hpp"
#include "deckrecon/graph.hpp"
#include "oracles.hpp"

using namespace deckrecon;
using namespace testing_oracles;

namespace {

Graph path3() { return Graph::from_edges(3, {{0, 1}, {1, 2}}); }
Graph k4() { return Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
Graph star(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return Graph::from_edges(leaves + 1, edges);
}

} // namespace

TEST_CASE("graph construction validates input") {
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), InputError);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), InputError);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), InputError);
    Graph g = path3();
    CHECK(g.order() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK(!g.has_edge(0, 2));
    CHECK_THROWS_AS(g.degree(5), InputError);
    CHECK(g.average_degree() == Rational(4, 3));
}

TEST_CASE("degree histograms of named graphs") {
    DegreeHistogram p3 = degree_histogram(path3());
    CHECK(p3.at(1) == 2);
    CHECK(p3.at(2) == 1);
    CHECK(p3.total() == 3);

    DegreeHistogram h4 = degree_histogram(k4());
    CHECK(h4.at(3) == 4);
    CHECK(h4.support_size() == 1);

    DegreeHistogram s5 = degree_histogram(star(5));
    CHECK(s5.at(1) == 5);
    CHECK(s5.at(5) == 1);
    CHECK(s5.weighted_sum() == 10);
}

TEST_CASE("delete_vertex matches the definition") {
    Graph c4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    Graph card = delete_vertex(c4, 0);
    CHECK(card.order() == 3);
    CHECK(card.edge_count() == 2); // path on 3 vertices
    CHECK(degree_histogram(card).at(1) == 2);

    Graph k3 = delete_vertex(k4(), 2);
    CHECK(k3.order() == 3);
    CHECK(k3.edge_count() == 3);

    Graph centerless = delete_vertex(star(3), 0);
    CHECK(centerless.edge_count() == 0);
    CHECK(degree_histogram(centerless).at(0) == 3);

    CHECK_THROWS_AS(delete_vertex(c4, 4), InputError);
    CHECK_THROWS_AS(delete_vertex(c4, -1), InputError);
}

TEST_CASE("card histogram equals the delta transform of the graph histogram") {
    Rng rng = make_rng(42);
    for (int round = 0; round < 60; ++round) {
        int n = 3 + static_cast<int>(bounded(rng, 10));
        Graph g = random_graph(rng, n, 40, 100);
        DegreeHistogram whole = degree_histogram(g);
        for (int v = 0; v < n; ++v) {
            DegreeHistogram expected = whole;
            expected.remove(g.degree(v));
            for (int u : g.neighbors(v)) {
                expected.remove(g.degree(u));
                expected.add(g.degree(u) - 1);
            }
            CHECK(degree_histogram(delete_vertex(g, v)) == expected);
        }
    }
}

TEST_CASE("edge counts over all cards satisfy the (n-2)m identity") {
    Rng rng = make_rng(7);
    for (int round = 0; round < 80; ++round) {
        int n = 2 + static_cast<int>(bounded(rng, 11));
        Graph g = random_graph(rng, n, 30 + bounded(rng, 60), 100);
        std::int64_t sum = 0;
        for (int v = 0; v < n; ++v) sum += delete_vertex(g, v).edge_count();
        CHECK(sum == (n - 2) * g.edge_count());
    }
}

TEST_CASE("clique profiles of named graphs") {
    CliqueProfile k4r3 = clique_profile(k4(), 3);
    CHECK(k4r3.total == 4);
    for (auto c : k4r3.per_vertex) CHECK(c == 3);
    CHECK(k4r3.per_vertex_sum() == 3 * k4r3.total);

    Graph c5 = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    CliqueProfile c5r3 = clique_profile(c5, 3);
    CHECK(c5r3.total == 0);
    for (auto c : c5r3.per_vertex) CHECK(c == 0);

    std::vector<std::pair<int, int>> k5_edges;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) k5_edges.emplace_back(i, j);
    CliqueProfile k5r3 = clique_profile(Graph::from_edges(5, k5_edges), 3);
    CHECK(k5r3.total == 10);
    for (auto c : k5r3.per_vertex) CHECK(c == 6);

    CHECK_THROWS_AS(clique_profile(k4(), 1), InputError);
}

TEST_CASE("2-clique profile recovers degrees and the edge count") {
    Rng rng = make_rng(99);
    for (int round = 0; round < 40; ++round) {
        int n = 2 + static_cast<int>(bounded(rng, 10));
        Graph g = random_graph(rng, n, 50, 100);
        CliqueProfile pairs = clique_profile(g, 2);
        CHECK(pairs.total == g.edge_count());
        for (int v = 0; v < n; ++v) CHECK(pairs.per_vertex[static_cast<std::size_t>(v)] == g.degree(v));
        CHECK(pairs.per_vertex_sum() == 2 * pairs.total);
    }
}

TEST_CASE("permute preserves structure invariants") {
    Rng rng = make_rng(5);
    Graph g = random_graph(rng, 9, 45, 100);
    std::vector<int> perm = random_permutation(rng, 9);
    Graph h = permute(g, perm);
    CHECK(h.edge_count() == g.edge_count());
    CHECK(degree_histogram(h) == degree_histogram(g));
    for (int u = 0; u < 9; ++u)
        for (int v : g.neighbors(u))
            CHECK(h.has_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]));
}

TEST_CASE("edge list round trip and parse failures") {
    Rng rng = make_rng(31);
    Graph g = random_graph(rng, 12, 40, 100);
    std::ostringstream out;
    write_edge_list(g, out);
    std::istringstream in(out.str());
    Graph back = read_edge_list(in);
    CHECK(back.order() == g.order());
    CHECK(back.edge_count() == g.edge_count());
    CHECK(back.edges() == g.edges());

    std::istringstream bad_header("oops\n");
    CHECK_THROWS_AS(read_edge_list(bad_header), InputError);
    std::istringstream reversed("2 1\n1 0\n");
    CHECK_THROWS_AS(read_edge_list(reversed), InputError);
    std::istringstream truncated("4 3\n0 1\n");
    CHECK_THROWS_AS(read_edge_list(truncated), InputError);
    std::istringstream loop("2 1\n1 1\n");
    CHECK_THROWS_AS(read_edge_list(loop), InputError);
}

TEST_CASE("degeneracy order peels minimum degree first") {
    Graph s = star(4);
    std::vector<int> order = degeneracy_order(s);
    CHECK(order.size() == 5);
    CHECK(order.back() == 0); // the center survives to the end
}
