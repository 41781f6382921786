#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "giantwalk/claims.hpp"
#include "giantwalk/graph.hpp"

using namespace giantwalk;

TEST_CASE("csr build and degrees") {
    Graph g = Graph::build(3, {{0, 1}, {1, 2}});
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 2);
    auto nb = g.neighbors(1);
    CHECK(nb.size() == 2);
    CHECK(nb[0] == 0);
    CHECK(nb[1] == 2);
    auto es = g.edges();
    REQUIRE(es.size() == 2);
    CHECK(es[0] == std::pair<VertexId, VertexId>{0, 1});
}

TEST_CASE("build rejects malformed input") {
    CHECK_THROWS_AS(Graph::build(2, {{0, 0}}), SelfLoop);
    CHECK_THROWS_AS(Graph::build(2, {{0, 2}}), DanglingVertexId);
    CHECK_THROWS_AS(Graph::build(2, {{0, 1}, {0, 1}}), DuplicateEdge);
    CHECK_THROWS_AS(Graph::build(2, {{0, 1}, {1, 0}}), DuplicateEdge);
}

TEST_CASE("bfs distances") {
    Graph g = path_graph(5);
    auto f = bfs_distances(g, {0});
    CHECK(f.dist[4] == 4);
    CHECK(f.max_finite() == 4);
    auto multi = bfs_distances(g, {0, 4});
    CHECK(multi.dist[2] == 2);
    CHECK(multi.dist[3] == 1);
    CHECK_THROWS_AS(bfs_distances(g, {}), EmptySourceSet);

    Graph split = Graph::build(4, {{0, 1}, {2, 3}});
    auto f2 = bfs_distances(split, {0});
    CHECK(f2.dist[2] == kInfDist);
    CHECK(!is_connected(split));
    CHECK(is_connected(g));
}

TEST_CASE("diameter exact and sampled agree on C6") {
    Graph c6 = cycle_graph(6);
    auto exact = diameter(c6);
    CHECK(exact.exact);
    CHECK(exact.value == 3);
    auto sampled = diameter(c6, 2, 6); // force the sampled path
    CHECK(!sampled.exact);
    CHECK(sampled.value == 3);
}

TEST_CASE("star and path diameters") {
    Graph star = Graph::build(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(diameter(star).value == 2);
    CHECK(diameter(path_graph(7)).value == 6);
}

TEST_CASE("graph text format round trip is byte exact") {
    Graph g = Graph::build(4, {{0, 1}, {0, 2}, {1, 3}},
                           {Role::kernel, Role::path, Role::tree, Role::tree});
    std::ostringstream out1;
    write_graph(out1, g);
    std::istringstream in(out1.str());
    Graph g2 = read_graph(in);
    std::ostringstream out2;
    write_graph(out2, g2);
    CHECK(out1.str() == out2.str());
    CHECK(g2.role(1) == Role::path);
    CHECK(g2.edge_count() == 3);
}

TEST_CASE("graph reader rejects garbage") {
    std::istringstream bad1("not a header\n");
    CHECK_THROWS_AS(read_graph(bad1), ParseError);
    std::istringstream bad2("#giantwalk-graph v1 n=2 m=1\nE 0 1\nX 1 2\n");
    CHECK_THROWS_AS(read_graph(bad2), ParseError);
    std::istringstream bad3("#giantwalk-graph v1 n=2 m=2\nE 0 1\n");
    CHECK_THROWS_AS(read_graph(bad3), ParseError);
}

TEST_CASE("random connected graph helper is connected and simple") {
    Rng rng = make_rng(7, "graph-test");
    for (int i = 0; i < 20; ++i) {
        Graph g = random_connected_graph(30, 15, rng);
        CHECK(is_connected(g));
        CHECK(g.edge_count() >= 29);
    }
}
