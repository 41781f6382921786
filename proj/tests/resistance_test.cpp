#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "giantwalk/claims.hpp"
#include "giantwalk/resistance.hpp"

using namespace giantwalk;

TEST_CASE("series, parallel, and complete-graph values") {
    CHECK(effective_resistance(path_graph(3), 0, 2) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(effective_resistance(cycle_graph(3), 0, 1) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(effective_resistance(complete_graph(4), 0, 1) ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK(effective_resistance(cycle_graph(4), 0, 2) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(effective_resistance(path_graph(3), 1, 1) == 0.0);
    Graph split = Graph::build(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(effective_resistance(split, 0, 2), Disconnected);
}

TEST_CASE("hitting times on P3") {
    auto h = hitting_times_exact(path_graph(3), 2);
    CHECK(h[0] == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(h[1] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(h[2] == 0.0);
}

TEST_CASE("commute identity with and without the factor 2") {
    CommuteCheck c = commute_identity_check(path_graph(3), 0, 2);
    CHECK(c.tau_vw == doctest::Approx(4.0));
    CHECK(c.tau_wv == doctest::Approx(4.0));
    CHECK(c.reff == doctest::Approx(2.0));
    CHECK(c.relative_residual < 1e-10);
    // dropping the factor 2 leaves a 100% residual; kept visible on purpose
    CHECK(c.residual_without_factor2 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("commute identity on random graphs") {
    Rng rng = make_rng(31, "commute");
    for (int g = 0; g < 25; ++g) {
        std::uniform_int_distribution<std::size_t> nd(4, 40);
        std::size_t n = nd(rng);
        std::uniform_int_distribution<std::size_t> ed(0, n);
        Graph graph = random_connected_graph(n, ed(rng), rng);
        std::uniform_int_distribution<VertexId> vd(0, static_cast<VertexId>(n - 1));
        VertexId v = vd(rng), w = vd(rng);
        if (v == w) continue;
        CHECK(commute_identity_check(graph, v, w).relative_residual < 1e-8);
    }
}

TEST_CASE("resistance is a metric dominated by graph distance") {
    Rng rng = make_rng(37, "metric");
    for (int g = 0; g < 10; ++g) {
        Graph graph = random_connected_graph(25, 12, rng);
        GroundedSolver solver(graph, 0);
        std::uniform_int_distribution<VertexId> vd(0, 24);
        for (int t = 0; t < 10; ++t) {
            VertexId u = vd(rng), v = vd(rng), w = vd(rng);
            double ruv = effective_resistance(solver, u, v);
            double rvw = effective_resistance(solver, v, w);
            double ruw = effective_resistance(solver, u, w);
            CHECK(ruw <= ruv + rvw + 1e-9);                    // triangle inequality
            CHECK(ruv >= -1e-12);
            auto df = bfs_distances(graph, {u});
            CHECK(ruv <= static_cast<double>(df.dist[v]) + 1e-9);
        }
    }
}

TEST_CASE("rayleigh monotonicity: extra edges cannot raise resistance") {
    Rng rng = make_rng(41, "rayleigh");
    for (int g = 0; g < 10; ++g) {
        Graph base = random_connected_graph(20, 5, rng);
        auto edges = base.edges();
        // add a fresh edge
        std::uniform_int_distribution<VertexId> vd(0, 19);
        VertexId a = vd(rng), b = vd(rng);
        bool exists = a == b;
        for (auto [u, v] : edges)
            if ((u == std::min(a, b)) && (v == std::max(a, b))) exists = true;
        if (exists) continue;
        edges.emplace_back(a, b);
        Graph denser = Graph::build(20, edges);
        for (int t = 0; t < 5; ++t) {
            VertexId u = vd(rng), v = vd(rng);
            if (u == v) continue;
            CHECK(effective_resistance(denser, u, v) <=
                  effective_resistance(base, u, v) + 1e-9);
        }
    }
}

TEST_CASE("direct and iterative solvers agree") {
    Rng rng = make_rng(43, "solvers");
    Graph g = random_connected_graph(3000, 1500, rng);
    GroundedSolver direct(g, 0, 1e-10, 5000);
    GroundedSolver iterative(g, 0, 1e-10, 10);
    CHECK(direct.direct());
    CHECK(!iterative.direct());
    std::uniform_int_distribution<VertexId> vd(0, 2999);
    for (int t = 0; t < 5; ++t) {
        VertexId v = vd(rng), w = vd(rng);
        if (v == w) continue;
        double rd = effective_resistance(direct, v, w);
        double ri = effective_resistance(iterative, v, w);
        CHECK(rd == doctest::Approx(ri).epsilon(1e-6));
        CHECK(iterative.last_residual() < 1e-7);
    }
}

TEST_CASE("resistance report carries distances and residuals") {
    Graph g = path_graph(6);
    auto rows = resistance_report(g, {{0, 5}, {1, 3}});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].reff == doctest::Approx(5.0));
    CHECK(rows[0].dist == 5);
    CHECK(rows[1].reff == doctest::Approx(2.0));
    CHECK(rows[1].dist == 2);
    CHECK(rows[0].residual < 1e-8);
    CHECK(rows[0].direct);
}
