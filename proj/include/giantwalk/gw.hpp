#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "giantwalk/error.hpp"
#include "giantwalk/rng.hpp"

namespace giantwalk {

// Galton-Watson tree with Poisson(mu) offspring, stored as a parent map.
// Vertex 0 is the root; children always have larger indices (BFS generation order).
struct GwTree {
    std::vector<std::uint32_t> parent; // parent[0] == 0
    std::vector<std::uint32_t> depth;
    std::uint32_t depth_max = 0;
    bool truncated = false;

    std::size_t size() const { return parent.size(); }
};

struct SurvivalCurve {
    double mu = 0.0;
    std::vector<double> p; // p[k] = Pr(level k nonempty)
};

// p[0] = 1, p[k] = 1 - exp(-mu * p[k-1]).
inline SurvivalCurve survival_prob_exact(double mu, std::size_t k_max) {
    if (!(mu >= 0.0 && mu < 1.0)) throw MuOutOfRange("mu must be in [0,1)");
    SurvivalCurve c;
    c.mu = mu;
    c.p.resize(k_max + 1);
    c.p[0] = 1.0;
    for (std::size_t k = 1; k <= k_max; ++k) c.p[k] = 1.0 - std::exp(-mu * c.p[k - 1]);
    return c;
}

inline GwTree sample_pgw_tree(double mu, std::uint32_t depth_cap, Rng& rng) {
    if (!(mu >= 0.0 && mu < 1.0)) throw MuOutOfRange("mu must be in [0,1)");
    GwTree t;
    t.parent = {0};
    t.depth = {0};
    std::poisson_distribution<std::uint32_t> offspring(mu);
    for (std::size_t v = 0; v < t.parent.size(); ++v) {
        if (t.depth[v] >= depth_cap) {
            t.truncated = true;
            continue;
        }
        std::uint32_t c = mu > 0.0 ? offspring(rng) : 0;
        for (std::uint32_t i = 0; i < c; ++i) {
            t.parent.push_back(static_cast<std::uint32_t>(v));
            t.depth.push_back(t.depth[v] + 1);
            t.depth_max = std::max(t.depth_max, t.depth.back());
        }
    }
    return t;
}

} // namespace giantwalk
