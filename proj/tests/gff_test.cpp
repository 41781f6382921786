#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "giantwalk/claims.hpp"
#include "giantwalk/gff.hpp"

using namespace giantwalk;

TEST_CASE("sampler variances equal effective resistance to the pin") {
    Graph p3 = path_graph(3);
    GffSampler s(p3, 0);
    CHECK(s.variance(0) == 0.0);
    CHECK(s.variance(1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(s.variance(2) == doctest::Approx(2.0).epsilon(1e-10));
    Rng rng = make_rng(3, "gff-var");
    Graph g = random_connected_graph(30, 20, rng);
    GffSampler gs(g, 5);
    for (VertexId v : {0u, 7u, 12u, 29u})
        CHECK(gs.variance(v) == doctest::Approx(effective_resistance(g, v, 5)).epsilon(1e-8));
}

TEST_CASE("pin is exactly zero in every sample") {
    Rng rng = make_rng(5, "gff-pin");
    Graph g = cycle_graph(5);
    GffSampler s(g, 3);
    for (int r = 0; r < 50; ++r) {
        GffSample smp = s.sample(rng);
        CHECK(smp.eta[3] == 0.0);
        CHECK(smp.eta.size() == 5);
    }
}

TEST_CASE("empirical covariance on P3 matches the inverse grounded laplacian") {
    Rng rng = make_rng(7, "gff-cov");
    GffSampler s(path_graph(3), 0);
    const std::size_t reps = 40000;
    double vb = 0, vc = 0, cbc = 0;
    for (std::size_t r = 0; r < reps; ++r) {
        GffSample smp = s.sample(rng);
        vb += smp.eta[1] * smp.eta[1];
        vc += smp.eta[2] * smp.eta[2];
        cbc += smp.eta[1] * smp.eta[2];
    }
    CHECK(vb / reps == doctest::Approx(1.0).epsilon(0.05));
    CHECK(vc / reps == doctest::Approx(2.0).epsilon(0.05));
    CHECK(cbc / reps == doctest::Approx(1.0).epsilon(0.08));
}

TEST_CASE("single-edge maximum is half-normal") {
    Rng rng = make_rng(11, "gff-edge");
    MEstimate e = estimate_M(path_graph(2), 0, 20000, rng);
    double target = 1.0 / std::sqrt(2.0 * M_PI);
    CHECK(std::abs(e.mean_max - target) < 4.0 * e.se);
    CHECK(e.sigma2 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(e.radius > 0.0);
    CHECK(e.sigma2 <= e.sigma2_diam_bound + 1e-9);
    CHECK_THROWS_AS(estimate_M(path_graph(2), 0, 50, rng), ConfigInvalid);
}

TEST_CASE("iid max expansion and union bound") {
    CHECK(expected_max_iid_normals(10000) == doctest::Approx(3.8729).epsilon(5e-4));
    CHECK(expected_max_iid_normals(1) == 0.0);
    // increasing in s, and below the union bound at unit variance
    double prev = expected_max_iid_normals(10);
    for (std::size_t s : {100u, 1000u, 10000u, 100000u}) {
        double cur = expected_max_iid_normals(s);
        CHECK(cur > prev);
        CHECK(cur < union_bound_max(1.0, s));
        prev = cur;
    }
}

TEST_CASE("gaussian comparison: equal and dominated cases") {
    Rng rng = make_rng(13, "slepian");
    Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(4, 4);
    SlepianReport same = slepian_check(cov, cov, 20000, rng);
    CHECK(same.holds);
    // Y with doubled increments should have the larger expected max
    SlepianReport dom = slepian_check(cov, 4.0 * cov, 20000, rng);
    CHECK(dom.holds);
    CHECK(dom.mean_max_y > dom.mean_max_x);
    CHECK_THROWS_AS(slepian_check(4.0 * cov, cov, 100, rng), DominationViolated);
    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 2.0, 2.0, 1.0; // indefinite
    Eigen::MatrixXd wide(2, 2);
    wide << 9.0, 2.0, 2.0, 9.0;
    CHECK_THROWS_AS(slepian_check(bad, wide, 100, rng), NotPSD);
}
