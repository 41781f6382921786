#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "giantwalk/gw.hpp"
#include "giantwalk/model.hpp"

using namespace giantwalk;

TEST_CASE("survival recursion closed forms") {
    double mu = 0.7;
    SurvivalCurve c = survival_prob_exact(mu, 5);
    CHECK(c.p[0] == 1.0);
    CHECK(c.p[1] == doctest::Approx(1.0 - std::exp(-mu)).epsilon(1e-12));
    CHECK(c.p[2] == doctest::Approx(1.0 - std::exp(-mu * c.p[1])).epsilon(1e-12));
    // monotone decreasing
    for (std::size_t k = 1; k < c.p.size(); ++k) CHECK(c.p[k] <= c.p[k - 1]);
    CHECK_THROWS_AS(survival_prob_exact(1.0, 5), MuOutOfRange);
    CHECK_THROWS_AS(survival_prob_exact(-0.1, 5), MuOutOfRange);
}

TEST_CASE("subcritical survival bound p_k <= 10/k") {
    for (double mu : {0.5, 0.9, 0.99, 0.999}) {
        SurvivalCurve c = survival_prob_exact(mu, 2000);
        for (std::size_t k = 1; k < c.p.size(); ++k)
            CHECK(c.p[k] <= 10.0 / static_cast<double>(k));
    }
}

TEST_CASE("mu = 0 gives a bare root") {
    Rng rng = make_rng(3, "gw0");
    GwTree t = sample_pgw_tree(0.0, 100, rng);
    CHECK(t.size() == 1);
    CHECK(t.depth_max == 0);
    CHECK(!t.truncated);
    SurvivalCurve c = survival_prob_exact(0.0, 3);
    CHECK(c.p[1] == 0.0);
}

TEST_CASE("sampled trees match the recursion and the size formula") {
    double mu = 0.8;
    Rng rng = make_rng(17, "gw-mc");
    const std::size_t reps = 20000;
    const std::uint32_t probe_depth = 3;
    SurvivalCurve c = survival_prob_exact(mu, probe_depth);
    std::size_t reached = 0;
    std::uint64_t total_size = 0;
    for (std::size_t r = 0; r < reps; ++r) {
        GwTree t = sample_pgw_tree(mu, 1u << 16, rng);
        total_size += t.size();
        if (t.depth_max >= probe_depth) ++reached;
        // parent map is well-formed
        CHECK(t.parent[0] == 0);
        for (std::size_t v = 1; v < t.size(); ++v) {
            CHECK(t.parent[v] < v);
            CHECK(t.depth[v] == t.depth[t.parent[v]] + 1);
        }
    }
    double frac = static_cast<double>(reached) / static_cast<double>(reps);
    double se = std::sqrt(c.p[probe_depth] * (1.0 - c.p[probe_depth]) / reps);
    CHECK(std::abs(frac - c.p[probe_depth]) < 4.0 * se);
    double mean_size = static_cast<double>(total_size) / static_cast<double>(reps);
    CHECK(mean_size == doctest::Approx(1.0 / (1.0 - mu)).epsilon(0.1));
}

TEST_CASE("depth cap truncates and flags") {
    double mu = 0.95;
    Rng rng = make_rng(23, "gw-cap");
    bool saw_truncated = false;
    for (int r = 0; r < 3000; ++r) {
        GwTree t = sample_pgw_tree(mu, 2, rng);
        CHECK(t.depth_max <= 3); // cap stops expansion at depth 2; leaves sit at <= 3
        if (t.truncated) saw_truncated = true;
    }
    CHECK(saw_truncated);
}
