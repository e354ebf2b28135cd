#include "two5k/synthetic.hpp"

#include <stdexcept>
#include <vector>

#include "two5k/rng.hpp"

namespace two5k {

Graph ring_lattice(NodeId n, int k) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("ring_lattice: k must be even and >= 2");
    if (n <= static_cast<NodeId>(k)) throw std::invalid_argument("ring_lattice: need n > k");
    Graph g(n);
    for (NodeId v = 0; v < n; ++v)
        for (int d = 1; d <= k / 2; ++d) g.add_edge(v, (v + d) % n);
    return g;
}

Graph watts_strogatz(NodeId n, int k, double p, std::uint64_t seed) {
    Graph g = ring_lattice(n, k);
    Rng rng(seed);
    for (NodeId u = 0; u < n; ++u) {
        for (int d = 1; d <= k / 2; ++d) {
            NodeId v = (u + d) % n;
            if (!rng.bernoulli(p)) continue;
            if (!g.has_edge(u, v)) continue;  // already rewired away
            for (int tries = 0; tries < 32; ++tries) {
                NodeId w = rng.below32(n);
                if (w == u || g.has_edge(u, w)) continue;
                g.remove_edge(u, v);
                g.add_edge(u, w);
                break;
            }
        }
    }
    return g;
}

Graph powerlaw_cluster(NodeId n, int m, double p_triad, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("powerlaw_cluster: m must be >= 1");
    if (n < static_cast<NodeId>(m + 1))
        throw std::invalid_argument("powerlaw_cluster: need n > m");
    Graph g(n);
    Rng rng(seed);
    // endpoint pool for preferential attachment
    std::vector<NodeId> pool;
    pool.reserve(2 * static_cast<std::size_t>(n) * m);

    // seed star over the first m+1 nodes
    for (NodeId v = 1; v <= static_cast<NodeId>(m); ++v) {
        g.add_edge(0, v);
        pool.push_back(0);
        pool.push_back(v);
    }

    for (NodeId v = m + 1; v < n; ++v) {
        NodeId last_target = 0;
        int added = 0;
        int guard = 0;
        while (added < m && ++guard < 64 * m) {
            NodeId target;
            if (added > 0 && rng.bernoulli(p_triad)) {
                // triad step: neighbor of the previous target
                auto nb = g.neighbors(last_target);
                target = nb[rng.below(nb.size())];
            } else {
                target = pool[rng.below(pool.size())];
            }
            if (target == v || g.has_edge(v, target)) continue;
            g.add_edge(v, target);
            pool.push_back(v);
            pool.push_back(target);
            last_target = target;
            ++added;
        }
        if (added == 0) {  // degenerate fallback keeps the graph connected
            NodeId target = pool[rng.below(pool.size())];
            if (target != v && g.add_edge(v, target)) {
                pool.push_back(v);
                pool.push_back(target);
            }
        }
    }
    return g;
}

}  // namespace two5k
