#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace two5k {

using NodeId = std::uint32_t;

// Undirected simple graph over contiguous node ids 0..N-1.
// Adjacency is kept as a sorted neighbor array per node; no self-loops,
// no multi-edges.
class Graph {
public:
    Graph() = default;
    explicit Graph(NodeId n) : adjacency_(n) {}

    NodeId num_nodes() const { return static_cast<NodeId>(adjacency_.size()); }
    std::uint64_t num_edges() const { return edge_count_; }

    int degree(NodeId v) const { return static_cast<int>(adjacency_[v].size()); }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {adjacency_[v].data(), adjacency_[v].size()};
    }

    bool has_edge(NodeId u, NodeId v) const;

    // Returns false (and leaves the graph unchanged) for self-loops and
    // edges already present.
    bool add_edge(NodeId u, NodeId v);
    bool remove_edge(NodeId u, NodeId v);

    bool valid_node(NodeId v) const { return v < num_nodes(); }

    // Every edge once, u < v, lexicographic order.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    std::uint64_t max_degree() const;
    NodeId isolated_count() const;

    bool operator==(const Graph& other) const = default;

private:
    std::vector<std::vector<NodeId>> adjacency_;
    std::uint64_t edge_count_ = 0;
};

struct LoadReport {
    std::uint64_t lines = 0;
    std::uint64_t self_loops_dropped = 0;
    std::uint64_t duplicates_dropped = 0;
    std::uint64_t original_ids = 0;  // distinct ids before remapping
    bool relabeled = false;          // ids were not already contiguous 0..N-1
};

// UTF-8 text, one edge per line, two whitespace-separated non-negative
// integer ids; lines starting with '#' are ignored. Duplicate edges and
// self-loops are dropped and counted in the report. Non-contiguous ids are
// remapped to 0..N-1 in sorted order of the original ids.
Graph load_edge_list(const std::string& path, LoadReport* report = nullptr);
void save_edge_list(const Graph& g, const std::string& path);

std::vector<std::vector<NodeId>> connected_components(const Graph& g);
bool is_connected(const Graph& g);

// Extracts the largest connected component, relabeling its nodes to
// 0..M-1 in increasing original-id order. When `back_map` is given it
// receives, per new id, the original id.
Graph largest_component(const Graph& g, std::vector<NodeId>* back_map = nullptr);

}  // namespace two5k
