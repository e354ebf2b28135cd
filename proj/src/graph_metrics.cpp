#include "two5k/graph_metrics.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

#include "two5k/kernels.hpp"

namespace two5k {

std::int64_t shared_partners(const Graph& g, NodeId a, NodeId b) {
    if (!g.valid_node(a) || !g.valid_node(b) || a == b)
        throw std::invalid_argument("shared_partners: invalid node pair");
    return kernels::intersection_size(g.neighbors(a), g.neighbors(b));
}

static double clustering_from_triangles(std::int64_t t, int deg) {
    return 2.0 * static_cast<double>(t) / (static_cast<double>(deg) * (deg - 1));
}

double node_clustering(const Graph& g, NodeId v) {
    if (!g.valid_node(v)) throw std::invalid_argument("node_clustering: invalid node");
    const int deg = g.degree(v);
    if (deg < 2) throw std::invalid_argument("node_clustering: undefined for degree < 2");
    std::int64_t sp_sum = 0;
    for (NodeId b : g.neighbors(v)) sp_sum += shared_partners(g, v, b);
    return clustering_from_triangles(sp_sum / 2, deg);
}

DegreeClustering degree_clustering(const Graph& g) {
    if (g.num_nodes() == 0) throw std::invalid_argument("degree_clustering: empty graph");
    auto triangles = kernels::triangle_counts(g);
    std::map<int, double> sum;
    std::map<int, std::uint64_t> count;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        const int deg = g.degree(v);
        if (deg < 2) continue;
        sum[deg] += clustering_from_triangles(triangles[v], deg);
        ++count[deg];
    }
    DegreeClustering ck;
    for (const auto& [k, s] : sum) ck[k] = s / static_cast<double>(count[k]);
    return ck;
}

double mean_clustering(const Graph& g) {
    if (g.num_nodes() == 0) throw std::invalid_argument("mean_clustering: empty graph");
    auto triangles = kernels::triangle_counts(g);
    double sum = 0.0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        const int deg = g.degree(v);
        if (deg >= 2) sum += clustering_from_triangles(triangles[v], deg);
    }
    return sum / static_cast<double>(g.num_nodes());
}

JddMatrix exact_jdd(const Graph& g) {
    if (g.num_nodes() == 0) throw std::invalid_argument("exact_jdd: empty graph");
    return kernels::exact_jdd(g);
}

std::int64_t triangle_count_total(const Graph& g) {
    auto triangles = kernels::triangle_counts(g);
    return std::accumulate(triangles.begin(), triangles.end(), std::int64_t{0});
}

}  // namespace two5k
