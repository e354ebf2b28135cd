#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "two5k/graph.hpp"

namespace two5k {

enum class SampleMethod { UIS, WIS, RW };

std::string to_string(SampleMethod m);
SampleMethod sample_method_from_string(const std::string& s);

// One visited node together with the full neighbor list revealed at visit
// time, i.e. what a crawler learns per request.
struct SampleRecord {
    NodeId node = 0;
    int degree = 0;
    std::vector<NodeId> neighbors;

    bool operator==(const SampleRecord&) const = default;
};

struct SampleTrace {
    SampleMethod method = SampleMethod::UIS;
    std::uint64_t seed = 0;
    std::vector<SampleRecord> records;
    // set when the walk was confined to the start node's component
    bool disconnected_warning = false;

    bool operator==(const SampleTrace& o) const {
        return method == o.method && seed == o.seed && records == o.records;
    }
};

// n nodes drawn with replacement, each with probability 1/N.
SampleTrace sample_uis(const Graph& g, std::size_t n, std::uint64_t seed);

// n nodes drawn with replacement, probability deg(v)/2|E|.
SampleTrace sample_wis(const Graph& g, std::size_t n, std::uint64_t seed);

struct RwOptions {
    std::optional<NodeId> start;  // uniform random when absent
    std::size_t burnin = 0;       // steps discarded before recording
};

// Simple random walk of n recorded visits.
SampleTrace sample_rw(const Graph& g, std::size_t n, std::uint64_t seed, RwOptions opts = {});

// Trace file: header "method seed n", then one record per line
// "node degree neighbor,neighbor,...". Bit-exact round trip.
void save_trace(const SampleTrace& t, const std::string& path);
SampleTrace load_trace(const std::string& path);

// Sample length as a percentage of |V|: n = ceil(pct * N / 100).
std::size_t sample_size_from_pct(const Graph& g, double pct);

}  // namespace two5k
