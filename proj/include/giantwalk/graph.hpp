#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "giantwalk/error.hpp"

namespace giantwalk {

using VertexId = std::uint32_t;

enum class Role : std::uint8_t { kernel = 0, path = 1, tree = 2 };

inline const char* role_name(Role r) {
    switch (r) {
        case Role::kernel: return "kernel";
        case Role::path: return "path";
        case Role::tree: return "tree";
    }
    return "?";
}

inline Role role_from_name(const std::string& s) {
    if (s == "kernel") return Role::kernel;
    if (s == "path") return Role::path;
    if (s == "tree") return Role::tree;
    throw ParseError("unknown role: " + s);
}

constexpr std::uint32_t kInfDist = std::numeric_limits<std::uint32_t>::max();

// Immutable undirected simple graph in CSR form, with a per-vertex role tag.
class Graph {
public:
    Graph() = default;

    static Graph build(std::size_t vertex_count,
                       const std::vector<std::pair<VertexId, VertexId>>& edges,
                       std::vector<Role> roles = {}) {
        if (roles.empty()) roles.assign(vertex_count, Role::kernel);
        if (roles.size() != vertex_count) throw DanglingVertexId("roles size mismatch");
        std::vector<std::uint32_t> deg(vertex_count, 0);
        for (auto [u, v] : edges) {
            if (u == v) throw SelfLoop("self-loop at vertex " + std::to_string(u));
            if (u >= vertex_count || v >= vertex_count)
                throw DanglingVertexId("edge endpoint out of range");
            ++deg[u];
            ++deg[v];
        }
        Graph g;
        g.offsets_.resize(vertex_count + 1, 0);
        for (std::size_t v = 0; v < vertex_count; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
        g.neighbors_.resize(g.offsets_.back());
        std::vector<std::uint32_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
        for (auto [u, v] : edges) {
            g.neighbors_[fill[u]++] = v;
            g.neighbors_[fill[v]++] = u;
        }
        for (std::size_t v = 0; v < vertex_count; ++v) {
            auto beg = g.neighbors_.begin() + g.offsets_[v];
            auto end = g.neighbors_.begin() + g.offsets_[v + 1];
            std::sort(beg, end);
            if (std::adjacent_find(beg, end) != end)
                throw DuplicateEdge("duplicate edge at vertex " + std::to_string(v));
        }
        g.roles_ = std::move(roles);
        g.edge_count_ = edges.size();
        return g;
    }

    std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return edge_count_; }

    std::span<const VertexId> neighbors(VertexId v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    std::uint32_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
    Role role(VertexId v) const { return roles_[v]; }
    const std::vector<Role>& roles() const { return roles_; }

    std::vector<std::pair<VertexId, VertexId>> edges() const {
        std::vector<std::pair<VertexId, VertexId>> es;
        es.reserve(edge_count_);
        for (VertexId v = 0; v < vertex_count(); ++v)
            for (VertexId w : neighbors(v))
                if (v < w) es.emplace_back(v, w);
        return es;
    }

private:
    std::vector<std::uint32_t> offsets_;
    std::vector<VertexId> neighbors_;
    std::vector<Role> roles_;
    std::size_t edge_count_ = 0;
};

struct DistanceField {
    std::vector<VertexId> sources;
    std::vector<std::uint32_t> dist; // kInfDist for unreachable

    std::uint32_t max_finite() const {
        std::uint32_t m = 0;
        for (auto d : dist)
            if (d != kInfDist) m = std::max(m, d);
        return m;
    }
};

inline DistanceField bfs_distances(const Graph& g, const std::vector<VertexId>& sources) {
    if (sources.empty()) throw EmptySourceSet();
    DistanceField f;
    f.sources = sources;
    f.dist.assign(g.vertex_count(), kInfDist);
    std::deque<VertexId> queue;
    for (VertexId s : sources) {
        if (s >= g.vertex_count()) throw DanglingVertexId("bfs source out of range");
        if (f.dist[s] == 0 && !queue.empty()) continue;
        f.dist[s] = 0;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (VertexId w : g.neighbors(v)) {
            if (f.dist[w] == kInfDist) {
                f.dist[w] = f.dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return f;
}

inline bool is_connected(const Graph& g) {
    if (g.vertex_count() == 0) return true;
    auto f = bfs_distances(g, {0});
    for (auto d : f.dist)
        if (d == kInfDist) return false;
    return true;
}

struct DiameterResult {
    std::uint32_t value = 0;
    bool exact = true; // false: double-sweep + sampled eccentricities (a lower bound)
};

// Exact all-pairs BFS up to the threshold; beyond it, double-sweep lower bound
// plus eccentricities from a deterministic vertex sample.
inline DiameterResult diameter(const Graph& g, std::size_t exact_threshold = 200000,
                               std::size_t sample_count = 64) {
    const std::size_t n = g.vertex_count();
    if (n == 0) return {0, true};
    if (!is_connected(g)) throw Disconnected();
    DiameterResult r;
    if (n <= exact_threshold) {
        r.exact = true;
        for (VertexId v = 0; v < n; ++v)
            r.value = std::max(r.value, bfs_distances(g, {v}).max_finite());
        return r;
    }
    r.exact = false;
    // double sweep: BFS from 0, then from the farthest vertex found
    auto f0 = bfs_distances(g, {0});
    VertexId far = static_cast<VertexId>(
        std::max_element(f0.dist.begin(), f0.dist.end()) - f0.dist.begin());
    auto f1 = bfs_distances(g, {far});
    r.value = f1.max_finite();
    VertexId far2 = static_cast<VertexId>(
        std::max_element(f1.dist.begin(), f1.dist.end()) - f1.dist.begin());
    r.value = std::max(r.value, bfs_distances(g, {far2}).max_finite());
    std::uint64_t stride = std::max<std::uint64_t>(1, n / sample_count);
    for (std::uint64_t v = 0; v < n; v += stride)
        r.value = std::max(r.value, bfs_distances(g, {static_cast<VertexId>(v)}).max_finite());
    return r;
}

// Text format: `#giantwalk-graph v1 n=<n> m=<m>`, `V <id> <role>`, `E <u> <v>` (u<v).
inline void write_graph(std::ostream& os, const Graph& g) {
    os << "#giantwalk-graph v1 n=" << g.vertex_count() << " m=" << g.edge_count() << "\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        os << "V " << v << " " << role_name(g.role(v)) << "\n";
    for (auto [u, v] : g.edges()) os << "E " << u << " " << v << "\n";
}

inline Graph read_graph(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw ParseError("empty graph file");
    std::size_t n = 0, m = 0;
    if (std::sscanf(header.c_str(), "#giantwalk-graph v1 n=%zu m=%zu", &n, &m) != 2)
        throw ParseError("bad graph header: " + header);
    std::vector<Role> roles(n, Role::kernel);
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(m);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        char tag;
        ls >> tag;
        if (tag == 'V') {
            VertexId id;
            std::string role;
            ls >> id >> role;
            if (id >= n) throw ParseError("vertex id out of range: " + line);
            roles[id] = role_from_name(role);
        } else if (tag == 'E') {
            VertexId u, v;
            ls >> u >> v;
            edges.emplace_back(u, v);
        } else {
            throw ParseError("bad line: " + line);
        }
    }
    if (edges.size() != m) throw ParseError("edge count mismatch");
    return Graph::build(n, edges, std::move(roles));
}

} // namespace giantwalk
