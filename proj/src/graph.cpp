#include "two5k/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace two5k {

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u == v) return false;
    // probe the smaller adjacency
    const auto& a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
    NodeId needle = adjacency_[u].size() <= adjacency_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), needle);
}

bool Graph::add_edge(NodeId u, NodeId v) {
    if (u == v) return false;
    auto& au = adjacency_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v) return false;
    au.insert(it, v);
    auto& av = adjacency_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++edge_count_;
    return true;
}

bool Graph::remove_edge(NodeId u, NodeId v) {
    if (u == v) return false;
    auto& au = adjacency_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it == au.end() || *it != v) return false;
    au.erase(it);
    auto& av = adjacency_[v];
    av.erase(std::lower_bound(av.begin(), av.end(), u));
    --edge_count_;
    return true;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < num_nodes(); ++u)
        for (NodeId v : adjacency_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::uint64_t Graph::max_degree() const {
    std::uint64_t m = 0;
    for (const auto& a : adjacency_) m = std::max<std::uint64_t>(m, a.size());
    return m;
}

NodeId Graph::isolated_count() const {
    NodeId c = 0;
    for (const auto& a : adjacency_)
        if (a.empty()) ++c;
    return c;
}

Graph load_edge_list(const std::string& path, LoadReport* report) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);

    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
    LoadReport rep;
    std::string line;
    while (std::getline(in, line)) {
        ++rep.lines;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        std::istringstream ls(line);
        std::uint64_t a, b;
        if (!(ls >> a >> b)) throw std::runtime_error("malformed edge line " + std::to_string(rep.lines) + " in " + path);
        raw.emplace_back(a, b);
    }

    std::set<std::uint64_t> ids;
    for (auto [a, b] : raw) {
        ids.insert(a);
        ids.insert(b);
    }
    rep.original_ids = ids.size();
    std::map<std::uint64_t, NodeId> remap;
    NodeId next = 0;
    for (std::uint64_t id : ids) remap[id] = next++;
    rep.relabeled = !ids.empty() && (*ids.rbegin() != ids.size() - 1 || *ids.begin() != 0);

    Graph g(next);
    for (auto [a, b] : raw) {
        if (a == b) {
            ++rep.self_loops_dropped;
            continue;
        }
        if (!g.add_edge(remap[a], remap[b])) ++rep.duplicates_dropped;
    }
    if (report) *report = rep;
    return g;
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write edge list: " + path);
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (NodeId v : g.neighbors(u))
            if (u < v) out << u << ' ' << v << '\n';
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
    const NodeId n = g.num_nodes();
    std::vector<std::vector<NodeId>> comps;
    std::vector<bool> seen(n, false);
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<NodeId> comp;
        stack.push_back(s);
        seen[s] = true;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (NodeId v : g.neighbors(u)) {
                if (!seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_connected(const Graph& g) {
    if (g.num_nodes() == 0) return true;
    return connected_components(g).size() == 1;
}

Graph largest_component(const Graph& g, std::vector<NodeId>* back_map) {
    auto comps = connected_components(g);
    if (comps.empty()) return Graph();
    const auto& best =
        *std::max_element(comps.begin(), comps.end(),
                          [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<NodeId> fwd(g.num_nodes(), 0);
    for (NodeId i = 0; i < best.size(); ++i) fwd[best[i]] = i;
    Graph out(static_cast<NodeId>(best.size()));
    for (NodeId old_u : best)
        for (NodeId old_v : g.neighbors(old_u))
            if (old_u < old_v) out.add_edge(fwd[old_u], fwd[old_v]);
    if (back_map) *back_map = best;
    return out;
}

}  // namespace two5k
