#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <vector>

#include "giantwalk/error.hpp"
#include "giantwalk/graph.hpp"
#include "giantwalk/rng.hpp"

namespace giantwalk {

// One cover-time replica: uniform-neighbor walk until every vertex is visited.
inline std::uint64_t cover_walk(const Graph& g, VertexId start, Rng& rng,
                                std::uint64_t step_cap) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint8_t> visited(n, 0);
    std::size_t unvisited = n - 1;
    visited[start] = 1;
    VertexId v = start;
    std::uint64_t steps = 0;
    while (unvisited > 0) {
        if (steps >= step_cap) throw StepBudgetExceeded();
        auto nb = g.neighbors(v);
        std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
        v = nb[pick(rng)];
        ++steps;
        if (!visited[v]) {
            visited[v] = 1;
            --unvisited;
        }
    }
    return steps;
}

struct CoverStats {
    VertexId start = 0;
    std::size_t replicas = 0;
    double mean = 0.0;
    double se = 0.0;
    std::vector<std::uint64_t> steps; // per replica
};

inline std::uint64_t default_step_cap(const Graph& g) {
    return static_cast<std::uint64_t>(
        1e4 * static_cast<double>(g.edge_count()) *
        std::log(static_cast<double>(std::max<std::size_t>(g.vertex_count(), 2))));
}

inline CoverStats simulate_cover(const Graph& g, VertexId start, std::size_t replicas, Rng& rng,
                                 std::uint64_t step_cap = 0) {
    if (replicas < 10) throw ConfigInvalid("simulate_cover needs >= 10 replicas");
    if (!is_connected(g)) throw Disconnected();
    if (step_cap == 0) step_cap = default_step_cap(g);
    CoverStats cs;
    cs.start = start;
    cs.replicas = replicas;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t r = 0; r < replicas; ++r) {
        std::uint64_t s = cover_walk(g, start, rng, step_cap);
        cs.steps.push_back(s);
        sum += static_cast<double>(s);
        sumsq += static_cast<double>(s) * static_cast<double>(s);
    }
    double n = static_cast<double>(replicas);
    cs.mean = sum / n;
    cs.se = std::sqrt(std::max(0.0, (sumsq - sum * sum / n) / (n - 1)) / n);
    return cs;
}

// Exact expected cover time by bitmask DP over (current vertex, visited set).
// For each visited set, solves the linear system coupling same-set states.
inline double exact_cover_small(const Graph& g, VertexId start, std::size_t max_vertices = 14) {
    const std::size_t n = g.vertex_count();
    if (n > max_vertices) throw TooLarge("exact_cover_small size limit");
    if (!is_connected(g)) throw Disconnected();
    const std::uint32_t full = (1u << n) - 1;
    std::vector<double> E(n << n, 0.0); // E[v + n*S]
    auto at = [&](std::size_t v, std::uint32_t S) -> double& {
        return E[v + static_cast<std::size_t>(S) * n];
    };
    // visit sets in decreasing popcount so supersets are already solved
    std::vector<std::uint32_t> sets;
    for (std::uint32_t S = 0; S <= full; ++S) sets.push_back(S);
    std::sort(sets.begin(), sets.end(), [](std::uint32_t a, std::uint32_t b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa > pb : a < b;
    });
    for (std::uint32_t S : sets) {
        if (S == full) continue;
        std::vector<int> members;
        for (std::size_t v = 0; v < n; ++v)
            if (S & (1u << v)) members.push_back(static_cast<int>(v));
        if (members.empty()) continue;
        const int k = static_cast<int>(members.size());
        Eigen::MatrixXd A = Eigen::MatrixXd::Identity(k, k);
        Eigen::VectorXd b = Eigen::VectorXd::Ones(k);
        std::vector<int> pos(n, -1);
        for (int i = 0; i < k; ++i) pos[members[i]] = i;
        for (int i = 0; i < k; ++i) {
            VertexId v = static_cast<VertexId>(members[i]);
            double invdeg = 1.0 / static_cast<double>(g.degree(v));
            for (VertexId u : g.neighbors(v)) {
                std::uint32_t S2 = S | (1u << u);
                if (S2 == S)
                    A(i, pos[u]) -= invdeg; // same set, coupled unknown
                else if (S2 == full)
                    ; // E[., full] = 0
                else
                    b[i] += invdeg * at(u, S2);
            }
        }
        Eigen::VectorXd x = A.partialPivLu().solve(b);
        for (int i = 0; i < k; ++i) at(members[i], S) = x[i];
    }
    return at(start, 1u << start);
}

struct PredictorStack {
    double headline = 0.0;           // n * ln^2(N)
    double em2 = 0.0;                // |E| * M^2
    double dlp_lo = 0.0, dlp_hi = 0.0; // [c1 |E| M^2, c2 |E| M^2]
    double zhai_lo = 0.0, zhai_hi = 0.0; // |E| M^2 -+ |E| (sqrt(lambda R) M + lambda R)
    double feige_lo = 0.0, feige_hi = 0.0; // [n ln n, (4/27) n^3]
};

inline PredictorStack predict_cover(std::size_t n, double N, double edge_count, double M,
                                    double R, double c1 = 0.25, double c2 = 4.0,
                                    double lambda = 10.0) {
    PredictorStack p;
    double lnN = std::log(N);
    p.headline = static_cast<double>(n) * lnN * lnN;
    p.em2 = edge_count * M * M;
    p.dlp_lo = c1 * p.em2;
    p.dlp_hi = c2 * p.em2;
    double band = edge_count * (std::sqrt(lambda * R) * M + lambda * R);
    p.zhai_lo = p.em2 - band;
    p.zhai_hi = p.em2 + band;
    double dn = static_cast<double>(n);
    p.feige_lo = dn * std::log(dn);
    p.feige_hi = 4.0 / 27.0 * dn * dn * dn;
    return p;
}

} // namespace giantwalk
