#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "giantwalk/model.hpp"
#include "giantwalk/skeleton.hpp"

using namespace giantwalk;

namespace {

// Two kernel vertices joined by an edge; a hand-built depth-4 tree on vertex 0.
//   0 - 2 - {3, 4}; 3 - 5 - 6   (depths 1, 2, 2, 3, 4)
GiantSample synthetic_tree_sample() {
    GiantSample gs;
    gs.params = ModelParams(1000, 0.6); // kappa = 2, l0 = 1
    gs.k1_count = 2;
    gs.k2_count = 2;
    gs.k2_edge_count = 1;
    gs.graph = Graph::build(
        7, {{0, 1}, {0, 2}, {2, 3}, {2, 4}, {3, 5}, {5, 6}},
        {Role::kernel, Role::kernel, Role::tree, Role::tree, Role::tree, Role::tree,
         Role::tree});
    gs.parent = {0, 1, 0, 2, 2, 3, 5};
    gs.depth = {0, 0, 1, 2, 2, 3, 4};
    gs.tree_root = {0, 1, 0, 0, 0, 0, 0};
    gs.tree_depth = {4, 0};
    PathRecord rec;
    rec.from = 0;
    rec.to = 1;
    rec.length = 1;
    gs.path_records = {rec};
    return gs;
}

// A single kernel edge subdivided into a length-4 path (interior 2, 3, 4).
GiantSample synthetic_path_sample() {
    GiantSample gs;
    gs.params = ModelParams(1000, 0.6);
    gs.k1_count = 2;
    gs.k2_count = 5;
    gs.k2_edge_count = 4;
    gs.graph = Graph::build(5, {{0, 2}, {2, 3}, {3, 4}, {1, 4}},
                            {Role::kernel, Role::kernel, Role::path, Role::path, Role::path});
    gs.parent = {0, 1, 2, 3, 4};
    gs.depth = {0, 0, 0, 0, 0};
    gs.tree_root = {0, 1, 2, 3, 4};
    gs.tree_depth = {0, 0, 0, 0, 0};
    PathRecord rec;
    rec.from = 0;
    rec.to = 1;
    rec.length = 4;
    rec.interior = {2, 3, 4};
    gs.path_records = {rec};
    return gs;
}

} // namespace

TEST_CASE("hand-traced hierarchy") {
    GiantSample gs = synthetic_tree_sample();
    SkeletonHierarchy h = build_hierarchy(gs);
    CHECK(h.kappa == 2);
    CHECK(h.l0 == 1);
    CHECK(h.max_below[2] == 4);
    CHECK(h.max_below[4] == 2);
    CHECK(h.max_below[0] == 4);
    REQUIRE(h.J.size() == 2);
    CHECK(h.J[0].size() == 5);
    REQUIRE(h.J[1].size() == 2);
    CHECK(h.J[1][0] == std::pair<VertexId, VertexId>{0, 3});
    CHECK(h.J[1][1] == std::pair<VertexId, VertexId>{3, 6});
    REQUIRE(h.U.size() == 12); // j_max = ceil(2 ln 216) = 11
    CHECK(h.U[1] == std::vector<VertexId>{3});
    CHECK(h.U[2] == std::vector<VertexId>{6});
    CHECK(h.w_sizes == std::vector<std::size_t>{7, 5});
    CHECK(h.phi(2) == 0);
    CHECK(h.phi(3) == 1);
    CHECK(h.phi(0) == 1);
    CHECK(h.psi(3) == 1);
    CHECK(h.psi(4) == 0);
    CHECK(h.ancestor(6, 4) == 0);
}

TEST_CASE("hand-traced chains and properties") {
    GiantSample gs = synthetic_tree_sample();
    SkeletonHierarchy h = build_hierarchy(gs);
    PropertyReport pr = verify_properties(h);
    CHECK(pr.all_ok());
    CHECK(pr.violations == 0);

    ChainDecomposition c4 = chain_decompose(h, 4);
    CHECK(c4.alpha == 0);
    REQUIRE(c4.links.size() == 3);
    CHECK(c4.links[0] == std::pair<VertexId, VertexId>{4, 2});
    CHECK(c4.links[1] == std::pair<VertexId, VertexId>{2, 3});
    CHECK(c4.links[2] == std::pair<VertexId, VertexId>{0, 3});
    CHECK(c4.m[0] == 2);
    CHECK(c4.m[1] == 1);

    ChainDecomposition c6 = chain_decompose(h, 6);
    CHECK(c6.alpha == 3);
    REQUIRE(c6.links.size() == 1);
    CHECK(c6.links[0] == std::pair<VertexId, VertexId>{3, 6});

    ChainDecomposition c2 = chain_decompose(h, 2);
    CHECK(c2.alpha == 0);
    CHECK(c2.links.size() == 1);

    ChainDecomposition ck2 = chain_decompose(h, 1);
    CHECK(ck2.links.empty()); // K2 vertices carry no chain

    BudgetReport br = verify_budgets(h);
    CHECK(br.vertices_checked == 5);
    CHECK(br.budget_violations == 0);
    CHECK(br.alpha_mismatches == 0);
    CHECK(br.j_sizes == std::vector<std::size_t>{5, 2});
}

TEST_CASE("vacuous hierarchy without trees") {
    GiantSample gs = synthetic_path_sample();
    SkeletonHierarchy h = build_hierarchy(gs);
    CHECK(h.J[0].empty());
    CHECK(verify_properties(h).all_ok());
    BudgetReport br = verify_budgets(h);
    CHECK(br.vertices_checked == 0);
    CHECK(br.budget_violations == 0);
}

TEST_CASE("dyadic pairs on a length-4 path") {
    GiantSample gs = synthetic_path_sample();
    DyadicPairs dp = dyadic_k2_pairs(gs);
    REQUIRE(dp.I.size() == 2);
    REQUIRE(dp.I[0].size() == 2);
    CHECK(dp.I[0][0] == std::pair<VertexId, VertexId>{0, 2});
    CHECK(dp.I[0][1] == std::pair<VertexId, VertexId>{1, 4});
    REQUIRE(dp.I[1].size() == 1);
    CHECK(dp.I[1][0] == std::pair<VertexId, VertexId>{0, 3});
    CHECK(dp.bound_violations == 0);
    CHECK(dp.i0_edges_ok);
    CHECK(dp.walk_reuse_violations == 0);
}

TEST_CASE("sampled hierarchy passes all deterministic checks") {
    ModelParams p(100000, 0.2);
    GiantSample gs = sample_giant(p, 77);
    SkeletonHierarchy h = build_hierarchy(gs);
    CHECK(h.kappa == 8); // 1/0.2 = 5 -> next power of 2
    PropertyReport pr = verify_properties(h);
    CHECK(pr.violations == 0);
    BudgetReport br = verify_budgets(h);
    CHECK(br.budget_violations == 0);
    CHECK(br.alpha_mismatches == 0);
    CHECK(br.vertices_checked == gs.graph.vertex_count() - gs.k2_count);
    DyadicPairs dp = dyadic_k2_pairs(gs);
    CHECK(dp.bound_violations == 0);
    CHECK(dp.i0_edges_ok);
    CHECK(dp.walk_reuse_violations == 0);
    // decay diagnostics: both tables shrink
    CHECK(br.u_decay_slope < 0.0);
    CHECK(br.j_decay_slope < 0.0);
}

TEST_CASE("bound evaluators at the canonical grid point") {
    ModelParams p(1000000, 0.1); // N = 1000
    BoundEvaluation b = bound_evaluators(p);
    CHECK(b.delta == doctest::Approx(0.525073).epsilon(1e-4));
    CHECK(b.t_delta == doctest::Approx(26.115).epsilon(1e-3));
    CHECK(b.lower_bound_value == doctest::Approx(15.4463).epsilon(1e-4));
    CHECK(b.chain_sum >= b.chain_sum_last10); // only 8 dyadic terms at N = 1000
    CHECK(b.chain_sum_last10 > 0.0);
    CHECK_THROWS_AS(bound_evaluators(ModelParams(1000, 0.1)), ConfigInvalid); // N too small
}
