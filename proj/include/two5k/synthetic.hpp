#pragma once

#include <cstdint>

#include "two5k/graph.hpp"

namespace two5k {

// k-regular ring lattice (k even): each node linked to its k/2 nearest
// neighbors on both sides.
Graph ring_lattice(NodeId n, int k);

// Ring lattice with each clockwise edge rewired to a random endpoint with
// probability p; high clustering for small p.
Graph watts_strogatz(NodeId n, int k, double p, std::uint64_t seed);

// Growing graph with preferential attachment and triad formation: each new
// node attaches m edges; after the first, each subsequent edge closes a
// triangle with probability p_triad. Power-law-ish degrees, tunable
// clustering, connected by construction.
Graph powerlaw_cluster(NodeId n, int m, double p_triad, std::uint64_t seed);

}  // namespace two5k
