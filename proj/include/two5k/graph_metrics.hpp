#pragma once

#include <cstdint>

#include "two5k/graph.hpp"
#include "two5k/jdd.hpp"

namespace two5k {

// |N(a) ∩ N(b)| via sorted-set intersection.
std::int64_t shared_partners(const Graph& g, NodeId a, NodeId b);

// 2*T_v / (deg(v) * (deg(v)-1)). Throws std::invalid_argument when deg(v) < 2.
double node_clustering(const Graph& g, NodeId v);

// Mean of node_clustering per degree k >= 2; degrees below 2 are excluded.
DegreeClustering degree_clustering(const Graph& g);

// (1/N) * sum_v c_v, with deg(v) < 2 contributing 0.
double mean_clustering(const Graph& g);

// One count per edge, keyed by the unordered degree pair of its endpoints.
JddMatrix exact_jdd(const Graph& g);

// Sum over all v of T_v; every triangle counted three times.
std::int64_t triangle_count_total(const Graph& g);

}  // namespace two5k
