#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "two5k/graph.hpp"
#include "two5k/jdd.hpp"

// Data-parallel inner loops, each in two variants: a serial reference and an
// OpenMP version. The serial variants are kept as oracles for the tests and
// for the kernel benchmark; library code calls the dispatchers at the bottom.
namespace two5k::kernels {

// Flat CSR view of the adjacency, for the matvec kernel.
struct Csr {
    std::vector<std::uint64_t> offsets;  // size N+1
    std::vector<NodeId> targets;         // size 2|E|
};
Csr build_csr(const Graph& g);

// Aggregate results of breadth-first searches from a set of sources.
struct BfsAccum {
    // hop_hist[d] = number of (source, target) pairs at distance d (d >= 1)
    std::vector<std::uint64_t> hop_hist;
    // per target node: sum of distances from the sources that reached it,
    // and how many sources reached it (sources themselves excluded)
    std::vector<std::uint64_t> dist_sum;
    std::vector<std::uint32_t> reach_count;
    std::uint64_t pairs = 0;
};

namespace serial {
std::vector<std::int64_t> triangle_counts(const Graph& g);
JddMatrix exact_jdd(const Graph& g);
std::map<int, std::uint64_t> esp_histogram(const Graph& g);
std::map<int, double> avg_neighbor_degree(const Graph& g);
BfsAccum bfs_stats(const Graph& g, std::span<const NodeId> sources);
void spmv(const Csr& a, const double* x, double* y);
}  // namespace serial

namespace parallel {
std::vector<std::int64_t> triangle_counts(const Graph& g);
JddMatrix exact_jdd(const Graph& g);
std::map<int, std::uint64_t> esp_histogram(const Graph& g);
std::map<int, double> avg_neighbor_degree(const Graph& g);
BfsAccum bfs_stats(const Graph& g, std::span<const NodeId> sources);
void spmv(const Csr& a, const double* x, double* y);
}  // namespace parallel

// Dispatchers used by the rest of the library (OpenMP variants).
inline std::vector<std::int64_t> triangle_counts(const Graph& g) { return parallel::triangle_counts(g); }
inline JddMatrix exact_jdd(const Graph& g) { return parallel::exact_jdd(g); }
inline std::map<int, std::uint64_t> esp_histogram(const Graph& g) { return parallel::esp_histogram(g); }
inline std::map<int, double> avg_neighbor_degree(const Graph& g) { return parallel::avg_neighbor_degree(g); }
inline BfsAccum bfs_stats(const Graph& g, std::span<const NodeId> sources) { return parallel::bfs_stats(g, sources); }
inline void spmv(const Csr& a, const double* x, double* y) { parallel::spmv(a, x, y); }

// Sorted-array intersection size; the shared-partner primitive.
std::int64_t intersection_size(std::span<const NodeId> a, std::span<const NodeId> b);

}  // namespace two5k::kernels
