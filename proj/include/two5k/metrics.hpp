#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "two5k/graph.hpp"
#include "two5k/jdd.hpp"

namespace two5k {

// Sum over the union of keys of |est - ref|, divided by the reference mass.
// Throws when the reference mass is not positive.
double nmae(const std::map<int, double>& est, const std::map<int, double>& ref);
double nmae(const std::map<double, double>& est, const std::map<double, double>& ref);
double nmae_jdd(const JddMatrix& est, const JddMatrix& ref);
// Index-aligned vectors; denominator is the sum of |ref| values.
double nmae_vector(const std::vector<double>& est, const std::vector<double>& ref);

std::map<int, std::uint64_t> degree_distribution(const Graph& g);
std::map<int, double> avg_neighbor_degree(const Graph& g);  // Knn
std::map<int, std::uint64_t> edgewise_shared_partners(const Graph& g);

struct HopHistogram {
    std::map<int, std::uint64_t> hops;
    std::uint64_t pairs = 0;       // evaluated (source, target) pairs
    std::size_t sources_used = 0;
    bool exact = false;            // every component node served as a source
};
// BFS hop-distance histogram over the largest component; exact when the
// source budget covers it, sampled sources otherwise.
HopHistogram shortest_path_histogram(const Graph& g, std::size_t source_budget,
                                     std::uint64_t seed = 0);

struct CliqueHistogram {
    std::map<int, std::uint64_t> sizes;
    bool complete = true;  // false when the timeout cut enumeration short
};
// Bron-Kerbosch with pivoting; maximal-clique size frequencies.
CliqueHistogram maximal_cliques(const Graph& g, double timeout_s = 120.0);

struct CycleBasisHistogram {
    std::map<int, std::uint64_t> lengths;
    std::uint64_t basis_size = 0;
    bool computed = false;  // false when the candidate budget was exceeded
};
// Minimal cycle basis via shortest-path candidate cycles plus GF(2)
// independence selection; basis cardinality is |E| - |V| + components.
CycleBasisHistogram cycle_basis_distribution(const Graph& g,
                                             std::uint64_t candidate_budget = 200000);

// `count` largest-magnitude adjacency eigenvalues, sorted by |value|
// descending. Dense solve below ~1k nodes, otherwise Lanczos with full
// reorthogonalization and deflation; relative residual <= 1e-6 each.
std::vector<double> spectrum_top(const Graph& g, int count = 20, bool force_iterative = false);

// Per-node closeness over the largest component; source-sampled above the
// budget, exact otherwise.
std::vector<double> closeness_values(const Graph& g, std::size_t source_budget,
                                     std::uint64_t seed = 0);

struct BinnedPair {
    double lo = 0.0, hi = 0.0;
    double ref = 0.0, gen = 0.0;
};

struct MetricRow {
    std::string name;
    double nmae = 0.0;
    std::string status = "ok";  // ok | skipped | partial
    double ref_ms = 0.0;
    double gen_ms = 0.0;
    std::vector<BinnedPair> bins;
};

struct CompareBudgets {
    // 0 -> exact up to 5000 nodes, then 1000 sampled sources
    std::size_t source_budget = 0;
    std::uint64_t cycle_candidates = 200000;
    double clique_timeout_s = 120.0;
    int spectrum_count = 20;
    int bins = 30;
    std::uint64_t seed = 0;
};

struct ComparisonReport {
    std::vector<MetricRow> metrics;
    NodeId ref_isolated = 0;
    NodeId gen_isolated = 0;

    const MetricRow* find(const std::string& name) const;
};

// All nine paper metrics plus closeness, each scored by NMAE against the
// reference graph.
ComparisonReport compare(const Graph& g_ref, const Graph& g_gen, const CompareBudgets& budgets = {});

// report.txt (table), report.csv, and per-metric binned distribution CSVs.
void write_report(const ComparisonReport& report, const std::string& dir);

}  // namespace two5k
