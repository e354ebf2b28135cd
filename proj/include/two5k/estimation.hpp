#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "two5k/jdd.hpp"
#include "two5k/sampling.hpp"

namespace two5k {

enum class RwEstimator { hybrid, induced, traversed };

struct EstimatorConfig {
    int margin = 50;                            // RW induced-edge safety margin M
    std::optional<double> hybrid_threshold;     // average degree; estimated from the trace when absent
    std::optional<std::uint64_t> known_nodes;   // |V| when known
    std::optional<std::uint64_t> known_edges;   // |E| when known
    RwEstimator rw = RwEstimator::hybrid;
};

struct EstimateDiagnostics {
    std::map<int, std::uint64_t> records_per_degree;
    std::vector<int> ck_omitted_degrees;  // zero denominator
    std::uint64_t clamped = 0;            // c(k) values clamped into [0,1]
    std::vector<std::string> notes;
};

struct EstimateBundle {
    JddMatrix jdd;
    DegreeClustering ck;
    std::map<int, double> vk;  // estimated node count per degree
    EstimateDiagnostics diagnostics;
};

DegreeClustering estimate_ck_uis(const SampleTrace& trace, EstimateDiagnostics* diag = nullptr);
DegreeClustering estimate_ck_wis(const SampleTrace& trace, EstimateDiagnostics* diag = nullptr);
DegreeClustering estimate_ck_rw_induced(const SampleTrace& trace, int margin,
                                        EstimateDiagnostics* diag = nullptr);
DegreeClustering estimate_ck_rw_traversed(const SampleTrace& trace,
                                          EstimateDiagnostics* diag = nullptr);

JddMatrix estimate_jdd_uis(const SampleTrace& trace, std::uint64_t known_nodes);
JddMatrix estimate_jdd_wis(const SampleTrace& trace, std::uint64_t known_nodes);
JddMatrix estimate_jdd_rw_induced(const SampleTrace& trace, int margin, std::uint64_t known_nodes);
JddMatrix estimate_jdd_rw_traversed(const SampleTrace& trace, std::optional<std::uint64_t> known_edges,
                                    std::optional<std::uint64_t> known_nodes);

// k̄ from a degree-biased trace: |S| / sum(1/deg(s)); harmonic-mean debiasing.
double harmonic_mean_degree(const SampleTrace& trace);

// Per-degree node-count estimates |V_k|, debiased per the trace's method.
std::map<int, double> estimate_vk(const SampleTrace& trace, std::uint64_t known_nodes);

// Traversed-edge estimate for small degrees, induced-edge estimate for large
// ones; switch at the average degree (k for c(k), k+l vs 2k̄ for the JDD).
EstimateBundle estimate_hybrid(const SampleTrace& trace, const EstimatorConfig& cfg);

// Dispatch on the trace's sampling method.
EstimateBundle estimate_bundle(const SampleTrace& trace, const EstimatorConfig& cfg);

void save_bundle(const EstimateBundle& b, const std::string& dir);
EstimateBundle load_bundle(const std::string& dir);

}  // namespace two5k
