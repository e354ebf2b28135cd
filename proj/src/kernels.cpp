#include "two5k/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <queue>

namespace two5k::kernels {

std::int64_t intersection_size(std::span<const NodeId> a, std::span<const NodeId> b) {
    std::int64_t count = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (a[i] > b[j])
            ++j;
        else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

Csr build_csr(const Graph& g) {
    Csr csr;
    const NodeId n = g.num_nodes();
    csr.offsets.resize(n + 1, 0);
    for (NodeId v = 0; v < n; ++v) csr.offsets[v + 1] = csr.offsets[v] + g.neighbors(v).size();
    csr.targets.resize(csr.offsets[n]);
    for (NodeId v = 0; v < n; ++v) {
        auto nb = g.neighbors(v);
        std::copy(nb.begin(), nb.end(), csr.targets.begin() + csr.offsets[v]);
    }
    return csr;
}

// T_v for one node: half the sum of shared partners with each neighbor.
static std::int64_t node_triangles(const Graph& g, NodeId v) {
    std::int64_t sp_sum = 0;
    auto nv = g.neighbors(v);
    for (NodeId b : nv) sp_sum += intersection_size(nv, g.neighbors(b));
    return sp_sum / 2;
}

namespace serial {

std::vector<std::int64_t> triangle_counts(const Graph& g) {
    std::vector<std::int64_t> t(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) t[v] = node_triangles(g, v);
    return t;
}

JddMatrix exact_jdd(const Graph& g) {
    JddMatrix jdd;
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (NodeId v : g.neighbors(u))
            if (u < v) jdd.add(g.degree(u), g.degree(v), 1.0);
    return jdd;
}

std::map<int, std::uint64_t> esp_histogram(const Graph& g) {
    std::map<int, std::uint64_t> hist;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        auto nu = g.neighbors(u);
        for (NodeId v : nu)
            if (u < v) ++hist[static_cast<int>(intersection_size(nu, g.neighbors(v)))];
    }
    return hist;
}

std::map<int, double> avg_neighbor_degree(const Graph& g) {
    std::map<int, double> sum;
    std::map<int, std::uint64_t> count;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        auto nb = g.neighbors(v);
        if (nb.empty()) continue;
        double s = 0.0;
        for (NodeId u : nb) s += g.degree(u);
        sum[g.degree(v)] += s / static_cast<double>(nb.size());
        ++count[g.degree(v)];
    }
    std::map<int, double> knn;
    for (const auto& [k, s] : sum) knn[k] = s / static_cast<double>(count[k]);
    return knn;
}

// One BFS; appends into the accumulator.
static void bfs_one(const Graph& g, NodeId src, std::vector<int>& dist,
                    std::vector<NodeId>& frontier, BfsAccum& acc) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    frontier.clear();
    frontier.push_back(src);
    std::size_t head = 0;
    while (head < frontier.size()) {
        NodeId u = frontier[head++];
        for (NodeId v : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                frontier.push_back(v);
            }
        }
    }
    for (NodeId v : frontier) {
        if (v == src) continue;
        int d = dist[v];
        if (static_cast<std::size_t>(d) >= acc.hop_hist.size()) acc.hop_hist.resize(d + 1, 0);
        ++acc.hop_hist[d];
        acc.dist_sum[v] += static_cast<std::uint64_t>(d);
        ++acc.reach_count[v];
        ++acc.pairs;
    }
}

BfsAccum bfs_stats(const Graph& g, std::span<const NodeId> sources) {
    BfsAccum acc;
    acc.dist_sum.assign(g.num_nodes(), 0);
    acc.reach_count.assign(g.num_nodes(), 0);
    std::vector<int> dist(g.num_nodes());
    std::vector<NodeId> frontier;
    frontier.reserve(g.num_nodes());
    for (NodeId s : sources) bfs_one(g, s, dist, frontier, acc);
    return acc;
}

void spmv(const Csr& a, const double* x, double* y) {
    const std::size_t n = a.offsets.size() - 1;
    for (std::size_t v = 0; v < n; ++v) {
        double s = 0.0;
        for (std::uint64_t i = a.offsets[v]; i < a.offsets[v + 1]; ++i) s += x[a.targets[i]];
        y[v] = s;
    }
}

}  // namespace serial

namespace parallel {

std::vector<std::int64_t> triangle_counts(const Graph& g) {
    std::vector<std::int64_t> t(g.num_nodes());
    const std::int64_t n = g.num_nodes();
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t v = 0; v < n; ++v) t[v] = node_triangles(g, static_cast<NodeId>(v));
    return t;
}

JddMatrix exact_jdd(const Graph& g) {
    const std::int64_t n = g.num_nodes();
    JddMatrix jdd;
#pragma omp parallel
    {
        JddMatrix local;
#pragma omp for schedule(dynamic, 256) nowait
        for (std::int64_t u = 0; u < n; ++u)
            for (NodeId v : g.neighbors(static_cast<NodeId>(u)))
                if (static_cast<NodeId>(u) < v)
                    local.add(g.degree(static_cast<NodeId>(u)), g.degree(v), 1.0);
#pragma omp critical
        for (const auto& e : local.sorted_entries()) jdd.add(e.k, e.l, e.count);
    }
    return jdd;
}

std::map<int, std::uint64_t> esp_histogram(const Graph& g) {
    const std::int64_t n = g.num_nodes();
    std::map<int, std::uint64_t> hist;
#pragma omp parallel
    {
        std::map<int, std::uint64_t> local;
#pragma omp for schedule(dynamic, 64) nowait
        for (std::int64_t u = 0; u < n; ++u) {
            auto nu = g.neighbors(static_cast<NodeId>(u));
            for (NodeId v : nu)
                if (static_cast<NodeId>(u) < v)
                    ++local[static_cast<int>(intersection_size(nu, g.neighbors(v)))];
        }
#pragma omp critical
        for (const auto& [k, c] : local) hist[k] += c;
    }
    return hist;
}

std::map<int, double> avg_neighbor_degree(const Graph& g) {
    const std::int64_t n = g.num_nodes();
    std::map<int, double> sum;
    std::map<int, std::uint64_t> count;
#pragma omp parallel
    {
        std::map<int, double> lsum;
        std::map<int, std::uint64_t> lcount;
#pragma omp for schedule(static) nowait
        for (std::int64_t v = 0; v < n; ++v) {
            auto nb = g.neighbors(static_cast<NodeId>(v));
            if (nb.empty()) continue;
            double s = 0.0;
            for (NodeId u : nb) s += g.degree(u);
            lsum[g.degree(static_cast<NodeId>(v))] += s / static_cast<double>(nb.size());
            ++lcount[g.degree(static_cast<NodeId>(v))];
        }
#pragma omp critical
        {
            for (const auto& [k, s] : lsum) sum[k] += s;
            for (const auto& [k, c] : lcount) count[k] += c;
        }
    }
    std::map<int, double> knn;
    for (const auto& [k, s] : sum) knn[k] = s / static_cast<double>(count[k]);
    return knn;
}

BfsAccum bfs_stats(const Graph& g, std::span<const NodeId> sources) {
    BfsAccum acc;
    acc.dist_sum.assign(g.num_nodes(), 0);
    acc.reach_count.assign(g.num_nodes(), 0);
    const std::int64_t m = static_cast<std::int64_t>(sources.size());
#pragma omp parallel
    {
        BfsAccum local;
        local.dist_sum.assign(g.num_nodes(), 0);
        local.reach_count.assign(g.num_nodes(), 0);
        std::vector<int> dist(g.num_nodes());
        std::vector<NodeId> frontier;
        frontier.reserve(g.num_nodes());
#pragma omp for schedule(dynamic) nowait
        for (std::int64_t i = 0; i < m; ++i) {
            // same per-source routine as the serial reference
            std::fill(dist.begin(), dist.end(), -1);
            NodeId src = sources[i];
            dist[src] = 0;
            frontier.clear();
            frontier.push_back(src);
            std::size_t head = 0;
            while (head < frontier.size()) {
                NodeId u = frontier[head++];
                for (NodeId v : g.neighbors(u)) {
                    if (dist[v] < 0) {
                        dist[v] = dist[u] + 1;
                        frontier.push_back(v);
                    }
                }
            }
            for (NodeId v : frontier) {
                if (v == src) continue;
                int d = dist[v];
                if (static_cast<std::size_t>(d) >= local.hop_hist.size())
                    local.hop_hist.resize(d + 1, 0);
                ++local.hop_hist[d];
                local.dist_sum[v] += static_cast<std::uint64_t>(d);
                ++local.reach_count[v];
                ++local.pairs;
            }
        }
#pragma omp critical
        {
            if (local.hop_hist.size() > acc.hop_hist.size()) acc.hop_hist.resize(local.hop_hist.size(), 0);
            for (std::size_t d = 0; d < local.hop_hist.size(); ++d) acc.hop_hist[d] += local.hop_hist[d];
            for (NodeId v = 0; v < g.num_nodes(); ++v) {
                acc.dist_sum[v] += local.dist_sum[v];
                acc.reach_count[v] += local.reach_count[v];
            }
            acc.pairs += local.pairs;
        }
    }
    return acc;
}

void spmv(const Csr& a, const double* x, double* y) {
    const std::int64_t n = static_cast<std::int64_t>(a.offsets.size()) - 1;
#pragma omp parallel for schedule(static)
    for (std::int64_t v = 0; v < n; ++v) {
        double s = 0.0;
        for (std::uint64_t i = a.offsets[v]; i < a.offsets[v + 1]; ++i) s += x[a.targets[i]];
        y[v] = s;
    }
}

}  // namespace parallel

}  // namespace two5k::kernels
