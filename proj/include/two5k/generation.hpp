#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "two5k/graph.hpp"
#include "two5k/jdd.hpp"
#include "two5k/postprocess.hpp"

namespace two5k {

struct ConstructionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mutable state of the triangle-rich construction. Degree pairs are tracked
// as dense class-index cells; a cell never exceeds its target.
struct ConstructionState {
    Graph graph;
    std::vector<int> target_degree;   // per node
    std::vector<double> coordinate;   // ring coordinate r_v, set by greedy_local_edges

    std::vector<int> class_degree;    // class id -> degree value
    std::vector<int> node_class;      // per node
    std::vector<std::vector<NodeId>> class_nodes;
    std::vector<std::int64_t> target_cells;   // canonical (ci <= cj) dense matrix
    std::vector<std::int64_t> current_cells;
    std::int64_t total_deficit = 0;

    // unsaturated = current degree below target
    std::vector<std::vector<NodeId>> unsat;
    std::vector<std::uint32_t> unsat_pos;

    std::uint64_t seed = 0;

    std::size_t cell_index(int ci, int cj) const {
        if (ci > cj) std::swap(ci, cj);
        return static_cast<std::size_t>(ci) * class_degree.size() + cj;
    }
    std::int64_t deficit(int ci, int cj) const {
        return target_cells[cell_index(ci, cj)] - current_cells[cell_index(ci, cj)];
    }
    JddMatrix current_jdd() const;
    JddMatrix target_jdd() const;
};

// Step 1: N nodes, exactly D(k) of them with target degree k; assignment
// order randomized by the seed.
ConstructionState assign_degrees(const TargetSpec& spec, std::uint64_t seed);

// Adds one edge while keeping cells, deficit and saturation lists in sync.
// The cell must be below target. Exposed for building partial states.
void construction_add_edge(ConstructionState& st, NodeId u, NodeId v);

// Step 2: place nodes on a ring with random coordinates and greedily add the
// closest admissible pairs. Pairs are emitted lazily in exact increasing
// ring distance through a heap of per-node expanding windows, which gives
// the same processing order as sorting all O(N^2) pairs.
void greedy_local_edges(ConstructionState& state);

// Step 3: rewiring transformations until every cell matches its target.
// max_rounds = 0 picks a budget from the remaining deficit.
void complete_jdd(ConstructionState& state, std::int64_t max_rounds = 0);

// Steps 1-3; exact target JDD, deliberately triangle-rich.
Graph construct_2kt(const TargetSpec& spec, std::uint64_t seed);

// Degree-pair stub matching with rejection and local repair swaps; exact
// target JDD, triangle-poor.
Graph construct_2k_baseline(const TargetSpec& spec, std::uint64_t seed);

enum class McmcVariant { plain, improved };

struct McmcProgress {
    std::uint64_t swaps = 0;
    std::uint64_t proposals = 0;
    double elapsed_ms = 0.0;
    double nmae = 0.0;
    double mean_clustering = 0.0;
};

struct McmcConfig {
    McmcVariant variant = McmcVariant::improved;
    double nmae_stop = 0.02;
    std::uint64_t max_swaps = 0;      // 0 -> 500 * |E|
    std::uint64_t max_proposals = 0;  // 0 -> 40 * max_swaps
    double time_budget_s = 0.0;       // 0 -> unbounded
    std::uint64_t seed = 0;
    std::uint64_t progress_interval = 0;  // proposals between callbacks; 0 -> auto
    // improved variant: probability of drawing the first edge from the
    // preferred triangle bucket (above/below the mean per-edge count)
    double bucket_bias = 0.8;
    std::function<void(const McmcProgress&)> on_progress;
};

struct McmcResult {
    bool converged = false;
    std::uint64_t swaps = 0;
    std::uint64_t proposals = 0;
    double final_nmae = 0.0;
    double elapsed_s = 0.0;
    std::vector<McmcProgress> trace;
};

// 2K-preserving double-edge swaps targeting c̄(k); a swap is rejected when it
// would create a self-loop or multi-edge or when sum_k |target - current|
// increases. Per-node triangle counts are maintained incrementally.
McmcResult mcmc_target_ck(Graph& g, const DegreeClustering& target_ck, const McmcConfig& cfg);

struct GenerateResult {
    Graph graph;
    bool converged = false;
    double construction_s = 0.0;
    double clustering_before_mcmc = 0.0;
    McmcResult mcmc;
};

// 2K-T construction followed by the targeting MCMC.
GenerateResult generate_25k(const TargetSpec& spec, const McmcConfig& cfg);

// Baseline pairing: stub-matched 2K construction followed by the same MCMC.
GenerateResult generate_2k_mcmc(const TargetSpec& spec, const McmcConfig& cfg);

}  // namespace two5k
