#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/IterativeLinearSolvers>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "giantwalk/error.hpp"
#include "giantwalk/graph.hpp"
#include "giantwalk/rng.hpp"

namespace giantwalk {

using SparseMat = Eigen::SparseMatrix<double>;

// L = D - A restricted to the complement of the grounded vertex. SPD for a
// connected graph.
inline SparseMat grounded_laplacian(const Graph& g, VertexId ground) {
    const std::size_t n = g.vertex_count();
    auto idx = [&](VertexId v) -> Eigen::Index {
        return static_cast<Eigen::Index>(v < ground ? v : v - 1);
    };
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(2 * g.edge_count() + n);
    for (VertexId v = 0; v < n; ++v) {
        if (v == ground) continue;
        trips.emplace_back(idx(v), idx(v), static_cast<double>(g.degree(v)));
        for (VertexId w : g.neighbors(v))
            if (w != ground) trips.emplace_back(idx(v), idx(w), -1.0);
    }
    SparseMat L(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n - 1));
    L.setFromTriplets(trips.begin(), trips.end());
    return L;
}

// Solves L_g x = b for the grounded Laplacian. Direct sparse Cholesky below
// the threshold, diagonally preconditioned CG above.
class GroundedSolver {
public:
    GroundedSolver(const Graph& g, VertexId ground, double tol = 1e-9,
                   std::size_t direct_threshold = 2000)
        : ground_(ground), tol_(tol), L_(grounded_laplacian(g, ground)) {
        direct_ = g.vertex_count() <= direct_threshold;
        if (direct_) {
            llt_.compute(L_);
            if (llt_.info() != Eigen::Success) throw FactorizationFailed();
        } else {
            cg_.setTolerance(tol);
            cg_.setMaxIterations(static_cast<Eigen::Index>(
                10.0 * std::sqrt(static_cast<double>(g.vertex_count()))));
            cg_.compute(L_);
            if (cg_.info() != Eigen::Success) throw FactorizationFailed();
        }
    }

    Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
        Eigen::VectorXd x = direct_ ? llt_.solve(b).eval() : cg_.solve(b).eval();
        double bn = b.norm();
        double res = bn > 0 ? (L_ * x - b).norm() / bn : 0.0;
        if (!direct_ && cg_.info() != Eigen::Success && res > tol_ * 100)
            throw SolveDiverged("CG residual " + std::to_string(res));
        last_residual_ = res;
        return x;
    }

    Eigen::Index grounded_index(VertexId v) const {
        return static_cast<Eigen::Index>(v < ground_ ? v : v - 1);
    }
    VertexId ground() const { return ground_; }
    bool direct() const { return direct_; }
    double last_residual() const { return last_residual_; }
    Eigen::Index dim() const { return L_.rows(); }

private:
    VertexId ground_;
    double tol_;
    SparseMat L_;
    bool direct_ = true;
    Eigen::SimplicialLLT<SparseMat> llt_;
    Eigen::ConjugateGradient<SparseMat, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>> cg_;
    mutable double last_residual_ = 0.0;
};

inline double effective_resistance(const GroundedSolver& solver, VertexId v, VertexId w) {
    if (v == w) return 0.0;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(solver.dim());
    double rv = 0.0, rw = 0.0;
    if (v != solver.ground()) b[solver.grounded_index(v)] += 1.0;
    if (w != solver.ground()) b[solver.grounded_index(w)] -= 1.0;
    Eigen::VectorXd x = solver.solve(b);
    if (v != solver.ground()) rv = x[solver.grounded_index(v)];
    if (w != solver.ground()) rw = x[solver.grounded_index(w)];
    return rv - rw;
}

inline double effective_resistance(const Graph& g, VertexId v, VertexId w, double tol = 1e-9) {
    if (v == w) return 0.0;
    if (!is_connected(g)) throw Disconnected();
    GroundedSolver solver(g, w, tol);
    return effective_resistance(solver, v, w);
}

// Exact expected hitting times to `target` via the first-step equations
// L_g h = deg (grounded at the target).
inline std::vector<double> hitting_times_exact(const Graph& g, VertexId target,
                                               std::size_t max_vertices = 10000) {
    if (g.vertex_count() > max_vertices) throw TooLarge("hitting_times_exact size limit");
    if (!is_connected(g)) throw Disconnected();
    GroundedSolver solver(g, target);
    Eigen::VectorXd b(solver.dim());
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (v != target) b[solver.grounded_index(v)] = static_cast<double>(g.degree(v));
    Eigen::VectorXd h = solver.solve(b);
    std::vector<double> out(g.vertex_count(), 0.0);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (v != target) out[v] = h[solver.grounded_index(v)];
    return out;
}

struct CommuteCheck {
    double tau_vw = 0.0;
    double tau_wv = 0.0;
    double reff = 0.0;
    double relative_residual = 0.0;       // vs 2|E| R_eff (standard identity)
    double residual_without_factor2 = 0.0; // vs |E| R_eff, reported for transparency
};

inline CommuteCheck commute_identity_check(const Graph& g, VertexId v, VertexId w) {
    CommuteCheck c;
    c.tau_vw = hitting_times_exact(g, w)[v];
    c.tau_wv = hitting_times_exact(g, v)[w];
    c.reff = effective_resistance(g, v, w);
    double m = static_cast<double>(g.edge_count());
    double sum = c.tau_vw + c.tau_wv;
    c.relative_residual = std::abs(sum - 2.0 * m * c.reff) / (2.0 * m * c.reff);
    c.residual_without_factor2 = std::abs(sum - m * c.reff) / (m * c.reff);
    return c;
}

struct PairResistance {
    VertexId v = 0, w = 0;
    std::uint32_t dist = 0;
    double reff = 0.0;
    double residual = 0.0;
    bool direct = false;
};

inline std::vector<PairResistance> resistance_report(
    const Graph& g, const std::vector<std::pair<VertexId, VertexId>>& pairs,
    double tol = 1e-9) {
    if (!is_connected(g)) throw Disconnected();
    std::vector<PairResistance> out;
    if (pairs.empty()) return out;
    GroundedSolver solver(g, 0, tol);
    for (auto [v, w] : pairs) {
        PairResistance pr;
        pr.v = v;
        pr.w = w;
        pr.reff = effective_resistance(solver, v, w);
        pr.residual = solver.last_residual();
        pr.direct = solver.direct();
        auto df = bfs_distances(g, {v});
        pr.dist = df.dist[w];
        out.push_back(pr);
    }
    return out;
}

struct MaxResistanceEstimate {
    double max_k2 = 0.0;           // max R_eff over sampled K2 pairs
    double max_h = 0.0;            // max over sampled H pairs
    double k2_times_eps = 0.0;     // max_k2 * eps (Lemma: O(1) scale)
    double h_scaled = 0.0;         // max_h * eps / ln N
    std::size_t pairs_checked = 0;
};

// Max over random pairs plus a greedy far-pair heuristic (BFS-extremal vertices).
template <typename SampleT>
inline MaxResistanceEstimate max_resistance_estimate(const SampleT& gs, std::size_t pair_budget,
                                                     Rng& rng, double tol = 1e-7) {
    const Graph& g = gs.graph;
    GroundedSolver solver(g, 0, tol);
    MaxResistanceEstimate est;
    auto consider = [&](VertexId v, VertexId w) {
        if (v == w) return;
        double r = effective_resistance(solver, v, w);
        ++est.pairs_checked;
        if (gs.in_k2(v) && gs.in_k2(w)) est.max_k2 = std::max(est.max_k2, r);
        est.max_h = std::max(est.max_h, r);
    };
    std::uniform_int_distribution<VertexId> any(0, static_cast<VertexId>(g.vertex_count() - 1));
    std::uniform_int_distribution<VertexId> k2(0, static_cast<VertexId>(gs.k2_count - 1));
    for (std::size_t i = 0; i < pair_budget; ++i) {
        consider(any(rng), any(rng));
        consider(k2(rng), k2(rng));
    }
    // far pair: double sweep endpoints
    auto f0 = bfs_distances(g, {0});
    VertexId a = static_cast<VertexId>(
        std::max_element(f0.dist.begin(), f0.dist.end()) - f0.dist.begin());
    auto f1 = bfs_distances(g, {a});
    VertexId b = static_cast<VertexId>(
        std::max_element(f1.dist.begin(), f1.dist.end()) - f1.dist.begin());
    consider(a, b);
    est.k2_times_eps = est.max_k2 * gs.params.eps;
    est.h_scaled = est.max_h * gs.params.eps / std::log(gs.params.N);
    return est;
}

} // namespace giantwalk
