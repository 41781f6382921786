#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "giantwalk/error.hpp"
#include "giantwalk/graph.hpp"
#include "giantwalk/model.hpp"

namespace giantwalk {

// Dyadic chaining hierarchy over the trees of a GiantSample:
//   kappa     smallest power of 2 >= 1/eps, l0 = log2(kappa)
//   U^j       chosen kappa-descendants of kappa-survivors at level kappa(j-1)
//   W_k       vertices whose distance to K2 is divisible by k
//   J_i       pairings (2^i-ancestor, chosen 2^i-descendant) inside W_{2^i}
struct SkeletonHierarchy {
    const GiantSample* sample = nullptr;
    std::uint32_t kappa = 1;
    std::uint32_t l0 = 0;
    std::size_t j_max = 0;                          // ceil(2 ln N)
    std::vector<std::uint32_t> max_below;           // deepest descendant depth per vertex
    std::vector<std::vector<VertexId>> U;           // U[0] empty marker; K2 is U^0
    std::size_t u_overflow = 0;                     // vertices deeper than kappa*j_max
    std::vector<std::size_t> w_sizes;               // |W_{2^i}| for i = 0..l0
    std::vector<std::vector<std::pair<VertexId, VertexId>>> J; // J[i], i = 0..l0
    std::vector<std::unordered_map<VertexId, VertexId>> pair_of;  // per i: pi2 -> pi1
    std::vector<std::unordered_map<VertexId, VertexId>> chosen_x; // per i: v0 -> x(v0) in J_{i+1}

    std::uint32_t depth(VertexId v) const { return sample->depth[v]; }

    bool in_w(VertexId v, std::uint32_t k) const { return depth(v) % k == 0; }

    bool is_survivor(VertexId v, std::uint32_t d) const {
        return max_below[v] >= depth(v) + d;
    }

    VertexId ancestor(VertexId v, std::uint32_t steps) const {
        for (std::uint32_t s = 0; s < steps; ++s) v = sample->parent[v];
        return v;
    }

    // phi: largest i <= l0 with 2^i | depth(v); l0 for K2 vertices.
    std::uint32_t phi(VertexId v) const {
        std::uint32_t d = depth(v);
        if (d == 0) return l0;
        std::uint32_t i = 0;
        while (i < l0 && d % (2u << i) == 0) ++i;
        return i;
    }

    std::uint32_t psi(VertexId v) const {
        std::uint32_t p = phi(v);
        for (std::uint32_t i = p + 1; i-- > 0;)
            if (pair_of[i].count(v)) return i;
        throw RecursionStuck("vertex missing from every pi2(J_i)");
    }
};

inline SkeletonHierarchy build_hierarchy(const GiantSample& gs) {
    if (gs.parent.size() != gs.graph.vertex_count() || gs.depth.size() != gs.graph.vertex_count())
        throw MissingProvenance();
    SkeletonHierarchy h;
    h.sample = &gs;
    while (h.kappa < 1.0 / gs.params.eps) {
        h.kappa *= 2;
        ++h.l0;
    }
    h.j_max = static_cast<std::size_t>(std::ceil(2.0 * std::log(std::max(gs.params.N, 2.0))));

    const std::size_t total = gs.graph.vertex_count();
    h.max_below.resize(total);
    for (std::size_t v = 0; v < total; ++v) h.max_below[v] = gs.depth[v];
    for (std::size_t v = total; v-- > gs.k2_count;) {
        VertexId p = gs.parent[v];
        h.max_below[p] = std::max(h.max_below[p], h.max_below[v]);
    }

    // U^j: every vertex at depth kappa*j with j >= 1 is a kappa-descendant; keep
    // the lowest-id one per kappa-ancestor.
    h.U.assign(h.j_max + 1, {});
    std::unordered_map<VertexId, VertexId> u_choice; // survivor -> chosen descendant
    for (VertexId v = 0; v < total; ++v) {
        std::uint32_t d = gs.depth[v];
        if (d == 0 || d % h.kappa != 0) continue;
        VertexId anc = h.ancestor(v, h.kappa);
        auto [it, inserted] = u_choice.try_emplace(anc, v);
        if (!inserted && v < it->second) it->second = v;
    }
    for (const auto& [anc, x] : u_choice) {
        std::size_t j = gs.depth[x] / h.kappa;
        if (j > h.j_max) {
            ++h.u_overflow;
            j = h.j_max;
        }
        h.U[j].push_back(x);
    }
    for (auto& level : h.U) std::sort(level.begin(), level.end());

    h.w_sizes.assign(h.l0 + 1, 0);
    for (VertexId v = 0; v < total; ++v)
        for (std::uint32_t i = 0; i <= h.l0; ++i)
            if (gs.depth[v] % (1u << i) == 0) ++h.w_sizes[i];

    // J_0: every H-edge outside K2, ordered (parent, child).
    h.J.resize(h.l0 + 1);
    h.pair_of.resize(h.l0 + 1);
    h.chosen_x.resize(h.l0 + 1);
    for (VertexId v = static_cast<VertexId>(gs.k2_count); v < total; ++v) {
        h.J[0].emplace_back(gs.parent[v], v);
        h.pair_of[0].emplace(v, gs.parent[v]);
    }
    // J_{i+1} from J_i: promote each v0 in W_{2^i} \ W_{2^{i+1}} that heads a
    // J_i pair, choosing x(v0) as the lowest-id partner; pair it with its
    // 2^{i+1}-ancestor. Reusing the J_i partner keeps pi2 nested.
    for (std::uint32_t i = 0; i < h.l0; ++i) {
        const std::uint32_t step = 1u << i;
        for (const auto& [a, b] : h.J[i]) {
            if (gs.depth[a] % (2 * step) != step) continue;
            auto [it, inserted] = h.chosen_x[i].try_emplace(a, b);
            if (!inserted && b < it->second) it->second = b;
        }
        for (const auto& [v0, x] : h.chosen_x[i]) {
            VertexId v1 = h.ancestor(x, 2 * step);
            h.J[i + 1].emplace_back(v1, x);
            h.pair_of[i + 1].emplace(x, v1);
        }
        std::sort(h.J[i + 1].begin(), h.J[i + 1].end());
    }
    return h;
}

// Independent validator for Properties A-D; does not trust the builder's maps.
struct PropertyReport {
    bool a_ok = true, b_ok = true, c_ok = true, d_ok = true;
    std::size_t violations = 0;
    bool all_ok() const { return a_ok && b_ok && c_ok && d_ok; }
};

inline PropertyReport verify_properties(const SkeletonHierarchy& h) {
    const GiantSample& gs = *h.sample;
    PropertyReport rep;
    // A: both endpoints in W_{2^i}; pi2 is a 2^i-descendant of pi1
    for (std::uint32_t i = 0; i <= h.l0; ++i) {
        const std::uint32_t step = 1u << i;
        for (const auto& [v1, v2] : h.J[i]) {
            bool ok = h.in_w(v1, step) && h.in_w(v2, step) &&
                      gs.depth[v2] == gs.depth[v1] + step && h.ancestor(v2, step) == v1;
            if (!ok) {
                rep.a_ok = false;
                ++rep.violations;
            }
        }
    }
    // B: J_0 is exactly the set of H-edges outside K2
    std::size_t tree_edges = gs.graph.vertex_count() - gs.k2_count;
    if (h.J[0].size() != tree_edges) {
        rep.b_ok = false;
        ++rep.violations;
    }
    for (const auto& [v1, v2] : h.J[0])
        if (gs.in_k2(v2) || gs.parent[v2] != v1) {
            rep.b_ok = false;
            ++rep.violations;
        }
    // C: each 2^i-survivor in W_{2^i} \ W_{2^{i+1}} has exactly one
    // 2^i-descendant appearing in pi2(J_{i+1})
    for (std::uint32_t i = 0; i < h.l0; ++i) {
        const std::uint32_t step = 1u << i;
        std::unordered_map<VertexId, std::size_t> hits;
        for (const auto& [v1, v2] : h.J[i + 1]) hits[h.ancestor(v2, step)] += 1;
        for (VertexId v = 0; v < gs.graph.vertex_count(); ++v) {
            if (gs.depth[v] % (2 * step) != step) continue;
            if (!h.is_survivor(v, step)) continue;
            auto it = hits.find(v);
            if (it == hits.end() || it->second != 1) {
                rep.c_ok = false;
                ++rep.violations;
            }
        }
    }
    // D: pi2(J_{i+1}) subset of pi2(J_i)
    for (std::uint32_t i = 0; i < h.l0; ++i) {
        std::unordered_set<VertexId> pi2;
        for (const auto& pr : h.J[i]) pi2.insert(pr.second);
        for (const auto& pr : h.J[i + 1])
            if (!pi2.count(pr.second)) {
                rep.d_ok = false;
                ++rep.violations;
            }
    }
    return rep;
}

struct ChainDecomposition {
    VertexId vertex = 0;
    VertexId alpha = 0;
    std::vector<std::pair<VertexId, VertexId>> links;
    std::vector<std::uint32_t> link_level;        // J-bar index per link
    std::vector<std::size_t> m;                   // m[i] = links in J-bar_i
};

// Chain from v to alpha(v), its nearest proper ancestor whose depth is
// divisible by kappa. Case 1 climbs a J_{phi} link; Case 2 reroutes through
// the promoted sibling, spending two links at level psi.
inline ChainDecomposition chain_decompose(const SkeletonHierarchy& h, VertexId v) {
    const GiantSample& gs = *h.sample;
    ChainDecomposition c;
    c.vertex = v;
    c.alpha = v;
    c.m.assign(h.l0 + 1, 0);
    if (gs.in_k2(v)) return c; // empty chain
    std::uint32_t d = gs.depth[v];
    std::uint32_t target = d % h.kappa == 0 ? d - h.kappa : d - d % h.kappa;
    VertexId cur = v;
    auto push = [&](VertexId a, VertexId b, std::uint32_t lvl) {
        c.links.emplace_back(a, b);
        c.link_level.push_back(lvl);
        ++c.m[lvl];
    };
    std::size_t guard = 0;
    while (gs.depth[cur] != target) {
        if (++guard > 8ull * (h.l0 + 1) * (h.l0 + 2))
            throw RecursionStuck("chain did not terminate");
        std::uint32_t i = h.phi(cur);
        std::uint32_t j = h.psi(cur);
        if (j == i) {
            auto it = h.pair_of[i].find(cur);
            if (it == h.pair_of[i].end()) throw RecursionStuck();
            push(it->second, cur, i);
            cur = it->second;
        } else {
            VertexId z = h.pair_of[j].at(cur);
            auto cx = h.chosen_x[j].find(z);
            if (cx == h.chosen_x[j].end()) throw RecursionStuck();
            VertexId a = cx->second;
            auto back = h.pair_of[j].find(a);
            if (back == h.pair_of[j].end() || back->second != z) throw RecursionStuck();
            push(cur, z, j);
            push(z, a, j);
            cur = a;
        }
    }
    c.alpha = cur;
    return c;
}

struct BudgetReport {
    std::size_t vertices_checked = 0;
    std::size_t budget_violations = 0;
    std::size_t alpha_mismatches = 0;
    std::vector<std::size_t> u_sizes;  // |U^j|
    std::vector<std::size_t> j_sizes;  // |J_i|
    double u_decay_slope = 0.0;        // fitted slope of log|U^j| vs j
    double u_decay_target = 0.0;       // -eps * kappa
    double j_decay_slope = 0.0;        // fitted slope of log|J_i| vs i
    double j_decay_target = 0.0;       // -2 ln 2
};

inline double fit_log_slope(const std::vector<std::size_t>& sizes) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < sizes.size(); ++i)
        if (sizes[i] > 0) pts.emplace_back(static_cast<double>(i), std::log(static_cast<double>(sizes[i])));
    if (pts.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(pts.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Exhaustive chain-budget check: m_i <= 1 + 2(l0 - i) for every vertex, plus
// decay-rate diagnostics on |U^j| and |J_i|.
inline BudgetReport verify_budgets(const SkeletonHierarchy& h) {
    const GiantSample& gs = *h.sample;
    BudgetReport rep;
    for (VertexId v = 0; v < gs.graph.vertex_count(); ++v) {
        if (gs.in_k2(v)) continue;
        ChainDecomposition c = chain_decompose(h, v);
        ++rep.vertices_checked;
        for (std::uint32_t i = 0; i <= h.l0; ++i)
            if (c.m[i] > 1 + 2 * (h.l0 - i)) ++rep.budget_violations;
        // alpha cross-check by direct parent walk
        std::uint32_t d = gs.depth[v];
        std::uint32_t target = d % h.kappa == 0 ? d - h.kappa : d - d % h.kappa;
        if (c.alpha != h.ancestor(v, d - target)) ++rep.alpha_mismatches;
    }
    for (std::size_t j = 1; j < h.U.size(); ++j) rep.u_sizes.push_back(h.U[j].size());
    for (const auto& ji : h.J) rep.j_sizes.push_back(ji.size());
    rep.u_decay_slope = fit_log_slope(rep.u_sizes);
    rep.u_decay_target = -gs.params.eps * static_cast<double>(h.kappa);
    rep.j_decay_slope = fit_log_slope(rep.j_sizes);
    rep.j_decay_target = -2.0 * std::log(2.0);
    return rep;
}

struct DyadicPairs {
    std::vector<std::vector<std::pair<VertexId, VertexId>>> I; // I[i] pairs (u,v)
    std::vector<double> bound;                                 // 3 eps^2 n / 2^i
    std::size_t bound_violations = 0;
    bool i0_edges_ok = true;        // every I_0 pair is a K2 edge
    std::size_t walk_reuse_violations = 0; // dyadic walk using some I_i twice
};

// For each K2 vertex v at distance D >= 1 from K1: one pair (u,v) in I_i where
// 2^i is the largest power of 2 dividing D and u lies 2^i closer to K1 along
// v's path (toward the nearer endpoint; ties toward `from`).
inline DyadicPairs dyadic_k2_pairs(const GiantSample& gs) {
    DyadicPairs dp;
    auto level_of = [](std::uint32_t d) {
        std::uint32_t i = 0;
        while (d % 2 == 0) {
            d /= 2;
            ++i;
        }
        return i;
    };
    std::unordered_map<VertexId, std::pair<VertexId, std::uint32_t>> pair_for; // v -> (u, i)
    for (const auto& rec : gs.path_records) {
        const std::uint32_t len = rec.length;
        auto vertex_at = [&](std::uint32_t pos) -> VertexId {
            if (pos == 0) return rec.from;
            if (pos == len) return rec.to;
            return rec.interior[pos - 1];
        };
        for (std::uint32_t p = 1; p < len; ++p) {
            VertexId v = rec.interior[p - 1];
            std::uint32_t D = std::min(p, len - p);
            std::uint32_t i = level_of(D);
            std::uint32_t step = 1u << i;
            std::uint32_t upos = p <= len - p ? p - step : p + step;
            VertexId u = vertex_at(upos);
            if (dp.I.size() <= i) dp.I.resize(i + 1);
            dp.I[i].emplace_back(u, v);
            pair_for[v] = {u, i};
        }
    }
    const double e2n = gs.params.eps * gs.params.eps * static_cast<double>(gs.params.n);
    for (std::size_t i = 0; i < dp.I.size(); ++i) {
        dp.bound.push_back(3.0 * e2n / static_cast<double>(1u << i));
        if (static_cast<double>(dp.I[i].size()) > dp.bound[i]) ++dp.bound_violations;
    }
    if (!dp.I.empty()) {
        std::unordered_set<std::uint64_t> k2_edges;
        for (auto [u, v] : gs.graph.edges())
            if (gs.in_k2(u) && gs.in_k2(v))
                k2_edges.insert((static_cast<std::uint64_t>(std::min(u, v)) << 32) |
                                std::max(u, v));
        for (auto [u, v] : dp.I[0])
            if (!k2_edges.count((static_cast<std::uint64_t>(std::min(u, v)) << 32) |
                                std::max(u, v)))
                dp.i0_edges_ok = false;
    }
    // greedy dyadic walk from each path vertex: level indices must strictly increase
    for (const auto& [v, uv] : pair_for) {
        VertexId cur = v;
        std::uint32_t last_level = 0;
        bool first = true;
        while (true) {
            auto it = pair_for.find(cur);
            if (it == pair_for.end()) break; // reached K1
            auto [u, i] = it->second;
            if (!first && i <= last_level) ++dp.walk_reuse_violations;
            last_level = i;
            first = false;
            cur = u;
        }
    }
    return dp;
}

struct BoundEvaluation {
    double delta = 0.0;       // (ln N)^{-1/3}
    double t_delta = 0.0;     // e^delta ln N / sqrt(2 eps)
    double chain_sum = 0.0;   // sqrt(2) * sum_i sqrt(2^i ln(3 eps^2 n / 2^i))
    double chain_sum_last10 = 0.0;
    double lower_bound_value = 0.0; // sqrt(2 g(1-g)) ln N / sqrt(eps) at g = 1/2
};

inline BoundEvaluation bound_evaluators(const ModelParams& p, double gamma = 0.5) {
    if (!(p.N > std::exp(1.0))) throw ConfigInvalid("need N > e");
    BoundEvaluation b;
    double lnN = std::log(p.N);
    b.delta = std::pow(lnN, -1.0 / 3.0);
    b.t_delta = std::exp(b.delta) * lnN / std::sqrt(2.0 * p.eps);
    double e2n = 3.0 * p.eps * p.eps * static_cast<double>(p.n);
    int i_max = static_cast<int>(std::floor(std::log2(2.0 * lnN / p.eps)));
    std::vector<double> terms;
    for (int i = 0; i <= i_max; ++i) {
        double pow2 = std::pow(2.0, i);
        double arg = e2n / pow2;
        if (arg <= 1.0) break;
        terms.push_back(std::sqrt(pow2 * std::log(arg)));
    }
    for (double t : terms) b.chain_sum += t;
    for (std::size_t k = terms.size() >= 10 ? terms.size() - 10 : 0; k < terms.size(); ++k)
        b.chain_sum_last10 += terms[k];
    b.chain_sum *= std::sqrt(2.0);
    b.chain_sum_last10 *= std::sqrt(2.0);
    b.lower_bound_value = std::sqrt(2.0 * gamma * (1.0 - gamma)) * lnN / std::sqrt(p.eps);
    return b;
}

} // namespace giantwalk
