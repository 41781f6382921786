#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "giantwalk/claims.hpp"
#include "giantwalk/cover.hpp"

using namespace giantwalk;

TEST_CASE("exact cover oracle on tiny graphs") {
    CHECK(exact_cover_small(path_graph(2), 0) == doctest::Approx(1.0));
    CHECK(exact_cover_small(path_graph(3), 0) == doctest::Approx(4.0));
    CHECK(exact_cover_small(path_graph(3), 1) == doctest::Approx(5.0));
    CHECK(exact_cover_small(cycle_graph(3), 0) == doctest::Approx(3.0));
    // symmetric starts agree
    CHECK(exact_cover_small(cycle_graph(5), 0) == doctest::Approx(exact_cover_small(cycle_graph(5), 2)));
    CHECK_THROWS_AS(exact_cover_small(path_graph(20), 0), TooLarge);
    Graph split = Graph::build(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(exact_cover_small(split, 0), Disconnected);
}

TEST_CASE("single edge covers in exactly one step") {
    Rng rng = make_rng(3, "cover-edge");
    CoverStats cs = simulate_cover(path_graph(2), 0, 100, rng);
    CHECK(cs.mean == doctest::Approx(1.0));
    CHECK(cs.se == doctest::Approx(0.0));
}

TEST_CASE("monte carlo matches the exact oracle") {
    Rng rng = make_rng(5, "cover-mc");
    for (int g = 0; g < 12; ++g) {
        std::uniform_int_distribution<std::size_t> nd(3, 10);
        std::size_t n = nd(rng);
        std::uniform_int_distribution<std::size_t> ed(0, n);
        Graph graph = random_connected_graph(n, ed(rng), rng);
        std::uniform_int_distribution<VertexId> vd(0, static_cast<VertexId>(n - 1));
        VertexId start = vd(rng);
        double exact = exact_cover_small(graph, start);
        CoverStats cs = simulate_cover(graph, start, 4000, rng);
        CHECK(std::abs(cs.mean - exact) < 4.0 * std::max(cs.se, 1e-9));
        CHECK(cs.mean >= static_cast<double>(n) - 1.0); // at least n-1 steps
        CHECK(cs.steps.size() == 4000);
    }
}

TEST_CASE("replica floor and step cap") {
    Rng rng = make_rng(7, "cover-cap");
    CHECK_THROWS_AS(simulate_cover(path_graph(3), 0, 5, rng), ConfigInvalid);
    CHECK_THROWS_AS(cover_walk(path_graph(8), 0, rng, 2), StepBudgetExceeded);
    CHECK(default_step_cap(path_graph(100)) > 1000000);
}

TEST_CASE("predictor stack ordering") {
    PredictorStack p = predict_cover(100, 50.0, 300.0, 2.5, 0.4);
    CHECK(p.dlp_lo <= p.em2);
    CHECK(p.em2 <= p.dlp_hi);
    CHECK(p.zhai_lo <= p.em2);
    CHECK(p.em2 <= p.zhai_hi);
    CHECK(p.feige_lo == doctest::Approx(100.0 * std::log(100.0)));
    CHECK(p.feige_hi == doctest::Approx(4.0 / 27.0 * 1e6));
    CHECK(p.headline == doctest::Approx(100.0 * std::log(50.0) * std::log(50.0)));
    CHECK(p.em2 == doctest::Approx(300.0 * 2.5 * 2.5));
}
