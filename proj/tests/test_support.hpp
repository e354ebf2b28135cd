#pragma once

// Shared fixtures and independent brute-force oracles for the test suites.
// Everything here is deliberately naive: triple loops, bitmask subsets,
// dense BFS. The oracles must stay independent of the library kernels they
// check.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "two5k/graph.hpp"
#include "two5k/jdd.hpp"
#include "two5k/rng.hpp"

namespace two5k::testing {

inline Graph complete_graph(NodeId n) {
    Graph g(n);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

// center 0 with n-1 leaves
inline Graph star_graph(NodeId n) {
    Graph g(n);
    for (NodeId v = 1; v < n; ++v) g.add_edge(0, v);
    return g;
}

inline Graph path_graph(NodeId n) {
    Graph g(n);
    for (NodeId v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline Graph cycle_graph(NodeId n) {
    Graph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

inline Graph k4_minus_edge() {
    Graph g = complete_graph(4);
    g.remove_edge(2, 3);
    return g;
}

inline Graph gnp_graph(NodeId n, double p, std::uint64_t seed) {
    Graph g(n);
    Rng rng(seed);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.add_edge(u, v);
    return g;
}

// all labeled graphs on n nodes, indexed by the bitmask over the
// (u < v) edge slots
inline Graph graph_from_mask(int n, std::uint64_t mask) {
    Graph g(n);
    int bit = 0;
    for (NodeId u = 0; u < static_cast<NodeId>(n); ++u)
        for (NodeId v = u + 1; v < static_cast<NodeId>(n); ++v, ++bit)
            if (mask >> bit & 1) g.add_edge(u, v);
    return g;
}

inline std::uint64_t mask_count(int n) { return 1ULL << (n * (n - 1) / 2); }

// --- oracles ---

inline std::vector<std::int64_t> oracle_triangles(const Graph& g) {
    const NodeId n = g.num_nodes();
    std::vector<std::int64_t> t(n, 0);
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b)
            for (NodeId c = b + 1; c < n; ++c)
                if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
                    ++t[a];
                    ++t[b];
                    ++t[c];
                }
    return t;
}

inline double oracle_node_clustering(const Graph& g, NodeId v) {
    auto t = oracle_triangles(g);
    const double k = g.degree(v);
    return 2.0 * static_cast<double>(t[v]) / (k * (k - 1));
}

inline DegreeClustering oracle_degree_clustering(const Graph& g) {
    auto t = oracle_triangles(g);
    std::map<int, double> sum;
    std::map<int, int> cnt;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        int k = g.degree(v);
        if (k < 2) continue;
        sum[k] += 2.0 * static_cast<double>(t[v]) / (static_cast<double>(k) * (k - 1));
        ++cnt[k];
    }
    DegreeClustering ck;
    for (auto& [k, s] : sum) ck[k] = s / cnt[k];
    return ck;
}

inline JddMatrix oracle_jdd(const Graph& g) {
    JddMatrix jdd;
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (NodeId v = u + 1; v < g.num_nodes(); ++v)
            if (g.has_edge(u, v)) jdd.add(g.degree(u), g.degree(v), 1.0);
    return jdd;
}

inline std::map<int, std::uint64_t> oracle_esp(const Graph& g) {
    std::map<int, std::uint64_t> hist;
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (NodeId v = u + 1; v < g.num_nodes(); ++v) {
            if (!g.has_edge(u, v)) continue;
            int sp = 0;
            for (NodeId w = 0; w < g.num_nodes(); ++w)
                if (w != u && w != v && g.has_edge(u, w) && g.has_edge(v, w)) ++sp;
            ++hist[sp];
        }
    return hist;
}

// all-pairs hop histogram over the largest component (ordered pairs)
inline std::map<int, std::uint64_t> oracle_hops(const Graph& g) {
    const NodeId n = g.num_nodes();
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    for (NodeId s = 0; s < n; ++s) {
        std::vector<NodeId> q{s};
        dist[s][s] = 0;
        std::size_t head = 0;
        while (head < q.size()) {
            NodeId u = q[head++];
            for (NodeId v : g.neighbors(u))
                if (dist[s][v] < 0) {
                    dist[s][v] = dist[s][u] + 1;
                    q.push_back(v);
                }
        }
    }
    // restrict to the largest component
    std::vector<std::vector<NodeId>> comps = connected_components(g);
    const auto& comp = *std::max_element(
        comps.begin(), comps.end(),
        [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::map<int, std::uint64_t> hist;
    for (NodeId s : comp)
        for (NodeId t : comp)
            if (s != t && dist[s][t] > 0) ++hist[dist[s][t]];
    return hist;
}

// maximal cliques by subset enumeration (n <= 20)
inline std::map<int, std::uint64_t> oracle_cliques(const Graph& g) {
    const int n = g.num_nodes();
    std::vector<std::uint32_t> adj(n, 0);
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (NodeId v : g.neighbors(u)) adj[u] |= 1u << v;
    std::map<int, std::uint64_t> hist;
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        bool clique = true;
        for (int v = 0; v < n && clique; ++v)
            if (s >> v & 1)
                if ((s & ~(1u << v)) & ~adj[v]) clique = false;
        if (!clique) continue;
        bool maximal = true;
        for (int w = 0; w < n && maximal; ++w)
            if (!(s >> w & 1) && (s & adj[w]) == s) maximal = false;
        if (maximal) ++hist[std::popcount(s)];
    }
    return hist;
}

inline std::uint64_t oracle_cycle_rank(const Graph& g) {
    return g.num_edges() + connected_components(g).size() - g.num_nodes();
}

// NMAE over union keys, straight from the definition
template <typename K>
double oracle_nmae(const std::map<K, double>& est, const std::map<K, double>& ref) {
    double mass = 0.0, err = 0.0;
    std::map<K, double> all = ref;
    for (const auto& [k, v] : est) all.try_emplace(k, 0.0);
    for (const auto& [k, unused] : all) {
        auto e = est.find(k);
        auto r = ref.find(k);
        err += std::abs((e == est.end() ? 0.0 : e->second) - (r == ref.end() ? 0.0 : r->second));
    }
    for (const auto& [k, v] : ref) mass += v;
    return err / mass;
}

// optional real datasets, activated by dropping edge lists into ./data
inline std::optional<std::string> dataset_path(const std::string& name) {
    for (const std::string dir : {"data/", "../data/", "../../data/"}) {
        std::string p = dir + name;
        if (std::filesystem::exists(p)) return p;
    }
    return std::nullopt;
}

inline std::map<int, double> to_real_map(const std::map<int, std::uint64_t>& m) {
    std::map<int, double> out;
    for (const auto& [k, v] : m) out[k] = static_cast<double>(v);
    return out;
}

}  // namespace two5k::testing
