#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "two5k/estimation.hpp"
#include "two5k/graph.hpp"
#include "two5k/jdd.hpp"

namespace two5k {

// 2-D Gaussian kernel smoothing over the dense degree grid spanned by the
// observed entries. Bandwidth per dimension follows Scott's rule for
// two-dimensional data, h = sigma * m^(-1/6) with m the total edge mass.
// Total mass is preserved (renormalized to within 1e-6 relative) and
// symmetry is preserved. Mass below degree 1 is reflected back.
JddMatrix smooth_jdd(const JddMatrix& jdd);

// Each entry x -> floor(x) + Bernoulli(x - floor(x)); expectation preserved.
JddMatrix stochastic_round(const JddMatrix& jdd, std::uint64_t seed);

struct RealizabilityCheck {
    bool pass = true;
    std::vector<std::string> violations;
};

// The five conditions under which some simple graph realizes the matrix:
// (i) integral counts, (ii) integral D(k), (iii) JDD(k,l) <= D(k)*D(l),
// (iv) JDD(k,k) <= C(D(k),2), (v) even diagonal under ordered-pair counting
// (automatic under single-count storage; checked via row parity).
RealizabilityCheck verify_realizability(const JddMatrix& jdd);

// Realizable integer JDD plus the clustering target and derived node counts;
// the complete generator input.
struct TargetSpec {
    JddMatrix jdd;
    DegreeClustering ck;
    std::uint64_t n_nodes = 0;
    std::map<int, std::int64_t> degree_nodes;  // D(k)
};

struct RepairFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RepairResult {
    TargetSpec spec;               // ck left empty; see attach_ck
    std::int64_t units_changed = 0;  // sum over cells of |out - in|
};

// Perturbs an integer JDD until all five conditions hold: stochastically
// rounds each row's node count, rebalances row volumes on entries with
// slack, caps overfull entries, and escalates node counts when a row is
// fully capped. Throws RepairFailure when no realizable neighbor is found
// within the adjustment budget.
RepairResult repair_realizability(const JddMatrix& jdd, std::uint64_t seed);

// Attaches a clustering target, dropping degrees absent from the repaired
// matrix; dropped keys are reported.
std::vector<int> attach_ck(TargetSpec& spec, const DegreeClustering& ck);

struct PostprocessOptions {
    bool smooth = true;
    // Scott's rule is meaningless for a handful of points; grids with at
    // most this many distinct degrees skip smoothing.
    int min_degrees_for_smoothing = 10;
    std::uint64_t seed = 0;
};

struct PostprocessReport {
    bool smoothed = false;
    std::int64_t units_changed = 0;
    double mass_before = 0.0;
    std::vector<int> dropped_ck_degrees;
};

// smooth (optional) -> stochastic round -> repair -> attach ck.
TargetSpec build_target(const EstimateBundle& bundle, const PostprocessOptions& opts,
                        PostprocessReport* report = nullptr);

// Full-knowledge target: exact JDD and exact c̄(k) of a known graph.
TargetSpec target_from_graph(const Graph& g);

// TargetSpec file: "N <count>" header, then a JDD triple section and a CK
// pair section.
void save_target(const TargetSpec& spec, const std::string& path);
TargetSpec load_target(const std::string& path);

}  // namespace two5k
