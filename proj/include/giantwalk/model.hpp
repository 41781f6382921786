#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "giantwalk/error.hpp"
#include "giantwalk/graph.hpp"
#include "giantwalk/gw.hpp"
#include "giantwalk/rng.hpp"

namespace giantwalk {

// Solves mu * e^{-mu} = (1+eps) * e^{-(1+eps)} on (0,1) by bisection.
inline double solve_mu(double eps, double residual_tol = 1e-12) {
    if (!(eps > 0.0)) throw NonPositiveEpsilon();
    const double target = (1.0 + eps) * std::exp(-(1.0 + eps));
    auto f = [](double x) { return x * std::exp(-x); };
    double lo = 0.0, hi = 1.0;
    // f is strictly increasing on (0,1), f(0)=0 < target < f(1)=1/e
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (std::abs(f(mid) - target) < residual_tol) return mid;
        (f(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct ModelParams {
    std::size_t n = 0;
    double eps = 0.0;
    double mu = 0.0;
    double N = 0.0; // eps^3 * n

    ModelParams() = default;
    ModelParams(std::size_t n_, double eps_, double sanity_c = 2.0) : n(n_), eps(eps_) {
        if (!(eps > 0.0 && eps < 1.0)) throw ConfigInvalid("eps must be in (0,1)");
        mu = solve_mu(eps);
        N = eps * eps * eps * static_cast<double>(n);
        if (eps <= 0.2) {
            double lo = eps * (1.0 - sanity_c * eps), hi = eps * (1.0 + sanity_c * eps);
            if (!(1.0 - mu >= lo && 1.0 - mu <= hi))
                throw ConfigInvalid("1-mu outside sanity band");
        }
    }

    double log_N() const { return std::log(N); }
};

struct DegreeSample {
    double lambda = 0.0;
    std::vector<std::uint32_t> degrees;   // D_u for u in [n]
    std::vector<std::size_t> census;      // census[k] = #{u : D_u = k}
    std::size_t n_ge3 = 0;
    std::size_t resample_count = 0;       // parity rejections
    std::size_t lambda_redraws = 0;       // Lambda <= 0 redraws

    std::vector<std::uint32_t> restricted_degrees() const {
        std::vector<std::uint32_t> d;
        d.reserve(n_ge3);
        for (auto k : degrees)
            if (k >= 3) d.push_back(k);
        return d;
    }
};

inline DegreeSample sample_degrees(const ModelParams& p, Rng& rng,
                                   std::size_t max_attempts = 10000) {
    DegreeSample ds;
    std::normal_distribution<double> lam_dist(1.0 + p.eps - p.mu,
                                              std::sqrt(1.0 / (p.eps * static_cast<double>(p.n))));
    ds.lambda = lam_dist(rng);
    while (ds.lambda <= 0.0) {
        ds.lambda = lam_dist(rng);
        ++ds.lambda_redraws;
    }
    std::poisson_distribution<std::uint32_t> deg_dist(ds.lambda);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        ds.degrees.resize(p.n);
        std::uint64_t restricted_sum = 0;
        for (auto& d : ds.degrees) {
            d = deg_dist(rng);
            if (d >= 3) restricted_sum += d;
        }
        if (restricted_sum % 2 == 0) {
            ds.census.clear();
            for (auto d : ds.degrees) {
                if (d >= ds.census.size()) ds.census.resize(d + 1, 0);
                ++ds.census[d];
            }
            ds.n_ge3 = 0;
            for (std::size_t k = 3; k < ds.census.size(); ++k) ds.n_ge3 += ds.census[k];
            return ds;
        }
        ++ds.resample_count;
    }
    throw RngExhausted("degree parity not met");
}

// Erdos-Gallai feasibility for a degree sequence (sum must also be even).
inline bool degree_sequence_feasible(std::vector<std::uint32_t> d) {
    std::sort(d.rbegin(), d.rend());
    std::uint64_t sum = std::accumulate(d.begin(), d.end(), std::uint64_t{0});
    if (sum % 2 != 0) return false;
    std::vector<std::uint64_t> prefix(d.size() + 1, 0);
    for (std::size_t i = 0; i < d.size(); ++i) prefix[i + 1] = prefix[i] + d[i];
    for (std::size_t k = 1; k <= d.size(); ++k) {
        std::uint64_t rhs = static_cast<std::uint64_t>(k) * (k - 1);
        for (std::size_t i = k; i < d.size(); ++i) rhs += std::min<std::uint64_t>(d[i], k);
        if (prefix[k] > rhs) return false;
    }
    return true;
}

struct KernelSample {
    Graph graph;
    std::size_t pairing_attempts = 0;
};

// Configuration-model pairing with whole-pairing rejection until simple.
// Conditioned on simplicity this is uniform over graphs with the given degrees.
inline KernelSample sample_kernel(const std::vector<std::uint32_t>& degrees, Rng& rng,
                                  std::size_t max_attempts = 100000) {
    if (degrees.size() < 4) throw InfeasibleDegreeSequence("need at least 4 kernel vertices");
    if (!degree_sequence_feasible(degrees)) throw InfeasibleDegreeSequence();
    std::vector<VertexId> stubs;
    for (VertexId v = 0; v < degrees.size(); ++v)
        for (std::uint32_t i = 0; i < degrees[v]; ++i) stubs.push_back(v);
    KernelSample ks;
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
        ks.pairing_attempts = attempt;
        std::shuffle(stubs.begin(), stubs.end(), rng);
        edges.clear();
        seen.clear();
        bool simple = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            VertexId u = stubs[i], v = stubs[i + 1];
            if (u == v) {
                simple = false;
                break;
            }
            std::uint64_t key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
            if (!seen.insert(key).second) {
                simple = false;
                break;
            }
            edges.emplace_back(u, v);
        }
        if (simple) {
            ks.graph = Graph::build(degrees.size(), edges,
                                    std::vector<Role>(degrees.size(), Role::kernel));
            return ks;
        }
    }
    throw PairingBudgetExceeded();
}

struct PathRecord {
    VertexId from = 0, to = 0;          // kernel endpoints (H vertex ids)
    std::uint32_t length = 1;           // number of edges; 1 means the K1 edge was kept
    std::vector<VertexId> interior;     // internal path vertex ids, ordered from -> to
};

struct GiantSample {
    Graph graph;                                // H
    ModelParams params;
    std::uint64_t seed = 0;
    std::size_t k1_count = 0;                   // ids [0, k1_count) are kernel vertices
    std::size_t k2_count = 0;                   // ids [0, k2_count) are K2 vertices
    std::size_t k2_edge_count = 0;
    std::vector<PathRecord> path_records;
    std::vector<VertexId> parent;               // tree parent; K2 vertices map to themselves
    std::vector<std::uint32_t> depth;           // distance to K2 (0 on K2)
    std::vector<VertexId> tree_root;            // owning K2 root (self for K2 vertices)
    std::vector<std::uint32_t> tree_depth;      // per-K2-vertex max depth of attached tree
    std::size_t depth_cap_hits = 0;
    std::size_t pairing_attempts = 0;
    std::size_t resample_count = 0;

    bool in_k1(VertexId v) const { return v < k1_count; }
    bool in_k2(VertexId v) const { return v < k2_count; }
};

struct K2Build {
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<PathRecord> records;
    std::size_t vertex_count = 0;
};

// Step 2: replace every kernel edge by a path of length Geom(1-mu), support {1,2,...}.
inline K2Build subdivide(const Graph& k1, double mu, Rng& rng) {
    K2Build b;
    b.vertex_count = k1.vertex_count();
    std::geometric_distribution<std::uint32_t> geom(1.0 - mu); // support {0,1,...}
    for (auto [u, v] : k1.edges()) {
        PathRecord rec;
        rec.from = u;
        rec.to = v;
        rec.length = mu > 0.0 ? geom(rng) + 1 : 1;
        VertexId prev = u;
        for (std::uint32_t i = 1; i < rec.length; ++i) {
            VertexId mid = static_cast<VertexId>(b.vertex_count++);
            rec.interior.push_back(mid);
            b.edges.emplace_back(prev, mid);
            prev = mid;
        }
        b.edges.emplace_back(prev, v);
        b.records.push_back(std::move(rec));
    }
    return b;
}

// Steps 1-3. Deterministic function of (params, seed).
inline GiantSample sample_giant(const ModelParams& params, std::uint64_t seed,
                                bool* small_n_warning = nullptr) {
    if (small_n_warning) *small_n_warning = params.N < 64.0;
    Rng rng = make_rng(seed, "giant");
    GiantSample gs;
    gs.params = params;
    gs.seed = seed;

    DegreeSample ds = sample_degrees(params, rng);
    gs.resample_count = ds.resample_count;
    KernelSample ks = sample_kernel(ds.restricted_degrees(), rng);
    gs.pairing_attempts = ks.pairing_attempts;
    gs.k1_count = ks.graph.vertex_count();

    K2Build k2 = subdivide(ks.graph, params.mu, rng);
    gs.k2_count = k2.vertex_count;
    gs.k2_edge_count = k2.edges.size();
    gs.path_records = std::move(k2.records);

    // Step 3: one PGW(mu) tree per K2 vertex, root identified with the vertex.
    const std::uint32_t depth_cap = static_cast<std::uint32_t>(
        std::ceil(10.0 * std::log(std::max(params.N, 2.0)) / params.eps));
    std::size_t total = gs.k2_count;
    auto edges = std::move(k2.edges);
    gs.parent.resize(gs.k2_count);
    gs.depth.assign(gs.k2_count, 0);
    gs.tree_root.resize(gs.k2_count);
    gs.tree_depth.assign(gs.k2_count, 0);
    for (VertexId v = 0; v < gs.k2_count; ++v) {
        gs.parent[v] = v;
        gs.tree_root[v] = v;
    }
    for (VertexId root = 0; root < gs.k2_count; ++root) {
        GwTree t = sample_pgw_tree(params.mu, depth_cap, rng);
        if (t.truncated) ++gs.depth_cap_hits;
        gs.tree_depth[root] = t.depth_max;
        if (t.size() == 1) continue;
        std::vector<VertexId> ids(t.size());
        ids[0] = root;
        for (std::size_t i = 1; i < t.size(); ++i) {
            ids[i] = static_cast<VertexId>(total++);
            gs.parent.push_back(ids[t.parent[i]]);
            gs.depth.push_back(t.depth[i]);
            gs.tree_root.push_back(root);
            edges.emplace_back(ids[t.parent[i]], ids[i]);
        }
    }

    std::vector<Role> roles(total, Role::tree);
    for (VertexId v = 0; v < gs.k1_count; ++v) roles[v] = Role::kernel;
    for (std::size_t v = gs.k1_count; v < gs.k2_count; ++v) roles[v] = Role::path;
    gs.graph = Graph::build(total, edges, std::move(roles));
    if (!is_connected(gs.graph)) throw Disconnected("sampled H is disconnected");
    return gs;
}

struct DepthCensus {
    std::uint32_t threshold = 0;   // floor(gamma * ln(N) / eps)
    std::size_t count = 0;         // trees with depth >= threshold
    double band_lo = 0.0;          // 0.5*c1*N^{1-gamma+C*eps}
    double band_hi = 0.0;          // 2*c2*N^{1-gamma-C*eps}
};

inline DepthCensus depth_census(const GiantSample& gs, double gamma, double c1 = 0.1,
                                double c2 = 10.0, double c_eps = 1.0) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw GammaOutOfRange();
    DepthCensus dc;
    const double eps = gs.params.eps;
    dc.threshold =
        static_cast<std::uint32_t>(std::floor(gamma * std::log(gs.params.N) / eps));
    for (VertexId v = 0; v < gs.k2_count; ++v)
        if (gs.tree_depth[v] >= dc.threshold) ++dc.count;
    dc.band_lo = 0.5 * c1 * std::pow(gs.params.N, 1.0 - gamma + c_eps * eps);
    dc.band_hi = 2.0 * c2 * std::pow(gs.params.N, 1.0 - gamma - c_eps * eps);
    return dc;
}

struct ApohReport {
    double v_k1_ratio = 0.0;   // |V(K1)| / (4N/3)
    double e_k1_ratio = 0.0;   // |E(K1)| / (2N)
    double v_k2_ratio = 0.0;   // |V(K2)| / (2 eps^2 n)
    double e_k2_ratio = 0.0;   // |E(K2)| / (2 eps^2 n)
    double v_h_ratio = 0.0;    // |V(H)| / (2 eps n)
    double e_h_ratio = 0.0;    // |E(H)| / (2 eps n)
    std::size_t max_tree_depth = 0;
    DepthCensus census_half;   // gamma = 1/2; empty when mu = 0
    bool has_trees = false;
};

inline ApohReport apoh_report(const GiantSample& gs) {
    ApohReport r;
    const double n = static_cast<double>(gs.params.n);
    const double eps = gs.params.eps;
    const double N = gs.params.N;
    r.v_k1_ratio = static_cast<double>(gs.k1_count) / (4.0 * N / 3.0);
    r.e_k1_ratio = static_cast<double>(gs.path_records.size()) / (2.0 * N);
    r.v_k2_ratio = static_cast<double>(gs.k2_count) / (2.0 * eps * eps * n);
    r.e_k2_ratio = static_cast<double>(gs.k2_edge_count) / (2.0 * eps * eps * n);
    r.v_h_ratio = static_cast<double>(gs.graph.vertex_count()) / (2.0 * eps * n);
    r.e_h_ratio = static_cast<double>(gs.graph.edge_count()) / (2.0 * eps * n);
    for (VertexId v = 0; v < gs.k2_count; ++v)
        r.max_tree_depth = std::max<std::size_t>(r.max_tree_depth, gs.tree_depth[v]);
    r.has_trees = gs.graph.vertex_count() > gs.k2_count;
    if (r.has_trees) r.census_half = depth_census(gs, 0.5);
    return r;
}

// Sidecar provenance format: `#giantwalk-prov v1`, `P <vertex> <parent|-> <role> <record-id>`.
inline void write_provenance(std::ostream& os, const GiantSample& gs) {
    os << "#giantwalk-prov v1 n=" << gs.graph.vertex_count() << " k1=" << gs.k1_count
       << " k2=" << gs.k2_count << " seed=" << gs.seed << " model_n=" << gs.params.n
       << " eps=" << gs.params.eps << "\n";
    // record-id: kernel index for kernel vertices, path-record index for path
    // vertices, owning K2 root for tree vertices.
    std::vector<std::size_t> record_id(gs.graph.vertex_count(), 0);
    for (std::size_t i = 0; i < gs.path_records.size(); ++i)
        for (VertexId v : gs.path_records[i].interior) record_id[v] = i;
    for (VertexId v = 0; v < gs.graph.vertex_count(); ++v) {
        os << "P " << v << " ";
        if (gs.in_k2(v))
            os << "-";
        else
            os << gs.parent[v];
        os << " " << role_name(gs.graph.role(v)) << " ";
        if (gs.in_k1(v))
            os << v;
        else if (gs.in_k2(v))
            os << record_id[v];
        else
            os << gs.tree_root[v];
        os << "\n";
    }
}

// Rebuilds a GiantSample from a graph file plus its provenance sidecar.
inline GiantSample read_provenance(Graph graph, std::istream& is) {
    GiantSample gs;
    std::string header;
    if (!std::getline(is, header)) throw ParseError("empty provenance file");
    std::size_t total = 0;
    double eps = 0.0;
    unsigned long long seed = 0, model_n = 0;
    if (std::sscanf(header.c_str(), "#giantwalk-prov v1 n=%zu k1=%zu k2=%zu seed=%llu model_n=%llu eps=%lf",
                    &total, &gs.k1_count, &gs.k2_count, &seed, &model_n, &eps) != 6)
        throw ParseError("bad provenance header: " + header);
    if (total != graph.vertex_count()) throw MissingProvenance("vertex count mismatch");
    gs.seed = seed;
    gs.params = ModelParams(static_cast<std::size_t>(model_n), eps);
    gs.graph = std::move(graph);
    gs.parent.assign(total, 0);
    gs.tree_root.assign(total, 0);
    std::vector<std::size_t> record_id(total, 0);
    std::string line;
    std::size_t seen = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        char tag;
        std::string parent_s, role_s;
        VertexId v;
        std::size_t rec;
        ls >> tag >> v >> parent_s >> role_s >> rec;
        if (tag != 'P' || !ls) throw ParseError("bad provenance line: " + line);
        if (v >= total) throw MissingProvenance("vertex id out of range");
        gs.parent[v] = parent_s == "-" ? v : static_cast<VertexId>(std::stoul(parent_s));
        gs.tree_root[v] = gs.in_k2(v) ? v : static_cast<VertexId>(rec);
        record_id[v] = rec;
        ++seen;
    }
    if (seen != total) throw MissingProvenance("provenance lines missing");
    // depth by parent-following (tree vertices always have id > parent id)
    gs.depth.assign(total, 0);
    for (VertexId v = static_cast<VertexId>(gs.k2_count); v < total; ++v)
        gs.depth[v] = gs.depth[gs.parent[v]] + 1;
    gs.tree_depth.assign(gs.k2_count, 0);
    for (VertexId v = static_cast<VertexId>(gs.k2_count); v < total; ++v) {
        VertexId r = gs.tree_root[v];
        gs.tree_depth[r] = std::max(gs.tree_depth[r], gs.depth[v]);
    }
    for (auto [u, v] : gs.graph.edges())
        if (gs.in_k2(u) && gs.in_k2(v)) ++gs.k2_edge_count;
    // path records with interior vertices; ids are consecutive along each path
    std::size_t max_rec = 0;
    for (std::size_t v = gs.k1_count; v < gs.k2_count; ++v)
        max_rec = std::max(max_rec, record_id[v] + 1);
    std::vector<PathRecord> recs(max_rec);
    for (std::size_t v = gs.k1_count; v < gs.k2_count; ++v)
        recs[record_id[v]].interior.push_back(static_cast<VertexId>(v));
    for (auto& rec : recs) {
        if (rec.interior.empty()) continue;
        std::sort(rec.interior.begin(), rec.interior.end());
        auto kernel_neighbor = [&](VertexId x, VertexId skip) {
            for (VertexId w : gs.graph.neighbors(x))
                if (gs.in_k1(w) && w != skip) return w;
            throw MissingProvenance("path endpoint not found");
        };
        rec.from = kernel_neighbor(rec.interior.front(), kInfDist);
        rec.to = rec.interior.size() == 1 ? kernel_neighbor(rec.interior.front(), rec.from)
                                          : kernel_neighbor(rec.interior.back(), kInfDist);
        rec.length = static_cast<std::uint32_t>(rec.interior.size() + 1);
        gs.path_records.push_back(std::move(rec));
    }
    return gs;
}

} // namespace giantwalk
