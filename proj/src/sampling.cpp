#include "two5k/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "two5k/rng.hpp"

namespace two5k {

std::string to_string(SampleMethod m) {
    switch (m) {
        case SampleMethod::UIS: return "UIS";
        case SampleMethod::WIS: return "WIS";
        case SampleMethod::RW: return "RW";
    }
    return "?";
}

SampleMethod sample_method_from_string(const std::string& s) {
    std::string u = s;
    std::transform(u.begin(), u.end(), u.begin(), ::toupper);
    if (u == "UIS") return SampleMethod::UIS;
    if (u == "WIS") return SampleMethod::WIS;
    if (u == "RW") return SampleMethod::RW;
    throw std::invalid_argument("unknown sample method: " + s);
}

static SampleRecord make_record(const Graph& g, NodeId v) {
    auto nb = g.neighbors(v);
    return SampleRecord{v, g.degree(v), {nb.begin(), nb.end()}};
}

SampleTrace sample_uis(const Graph& g, std::size_t n, std::uint64_t seed) {
    if (g.num_nodes() == 0) throw std::invalid_argument("sample_uis: empty graph");
    if (n == 0) throw std::invalid_argument("sample_uis: n must be >= 1");
    Rng rng(seed);
    SampleTrace trace{SampleMethod::UIS, seed, {}, false};
    trace.records.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        trace.records.push_back(make_record(g, rng.below32(g.num_nodes())));
    return trace;
}

SampleTrace sample_wis(const Graph& g, std::size_t n, std::uint64_t seed) {
    if (g.num_nodes() == 0 || g.num_edges() == 0)
        throw std::invalid_argument("sample_wis: graph must have at least one edge");
    if (n == 0) throw std::invalid_argument("sample_wis: n must be >= 1");
    // cumulative degree table; draw a position in [0, 2|E|)
    std::vector<std::uint64_t> cum(g.num_nodes() + 1, 0);
    for (NodeId v = 0; v < g.num_nodes(); ++v) cum[v + 1] = cum[v] + g.degree(v);
    Rng rng(seed);
    SampleTrace trace{SampleMethod::WIS, seed, {}, false};
    trace.records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t x = rng.below(cum.back());
        auto it = std::upper_bound(cum.begin(), cum.end(), x);
        NodeId v = static_cast<NodeId>((it - cum.begin()) - 1);
        trace.records.push_back(make_record(g, v));
    }
    return trace;
}

SampleTrace sample_rw(const Graph& g, std::size_t n, std::uint64_t seed, RwOptions opts) {
    if (g.num_nodes() == 0) throw std::invalid_argument("sample_rw: empty graph");
    if (n == 0) throw std::invalid_argument("sample_rw: n must be >= 1");
    Rng rng(seed);
    NodeId cur;
    if (opts.start) {
        cur = *opts.start;
        if (!g.valid_node(cur)) throw std::invalid_argument("sample_rw: invalid start node");
    } else {
        cur = rng.below32(g.num_nodes());
        // retry a few times to land on a non-isolated start
        for (int tries = 0; g.degree(cur) == 0 && tries < 64; ++tries)
            cur = rng.below32(g.num_nodes());
    }
    if (g.degree(cur) == 0) throw std::invalid_argument("sample_rw: start node has degree 0");

    SampleTrace trace{SampleMethod::RW, seed, {}, !is_connected(g)};
    trace.records.reserve(n);
    for (std::size_t step = 0; step < opts.burnin + n; ++step) {
        if (step >= opts.burnin) trace.records.push_back(make_record(g, cur));
        auto nb = g.neighbors(cur);
        cur = nb[rng.below(nb.size())];
    }
    return trace;
}

void save_trace(const SampleTrace& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace: " + path);
    out << to_string(t.method) << ' ' << t.seed << ' ' << t.records.size() << '\n';
    for (const auto& r : t.records) {
        out << r.node << ' ' << r.degree;
        for (std::size_t i = 0; i < r.neighbors.size(); ++i)
            out << (i == 0 ? " " : ",") << r.neighbors[i];
        out << '\n';
    }
}

SampleTrace load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace: " + path);
    std::string method;
    std::uint64_t seed;
    std::size_t n;
    if (!(in >> method >> seed >> n)) throw std::runtime_error("malformed trace header in " + path);
    std::string rest;
    std::getline(in, rest);
    SampleTrace t{sample_method_from_string(method), seed, {}, false};
    t.records.reserve(n);
    std::string line;
    while (t.records.size() < n && std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        SampleRecord r;
        if (!(ls >> r.node >> r.degree)) throw std::runtime_error("malformed trace record: " + line);
        std::string nbrs;
        if (ls >> nbrs) {
            std::istringstream ns(nbrs);
            std::string tok;
            while (std::getline(ns, tok, ',')) r.neighbors.push_back(static_cast<NodeId>(std::stoul(tok)));
        }
        if (static_cast<int>(r.neighbors.size()) != r.degree)
            throw std::runtime_error("trace record degree mismatch: " + line);
        t.records.push_back(std::move(r));
    }
    if (t.records.size() != n) throw std::runtime_error("trace truncated: " + path);
    return t;
}

std::size_t sample_size_from_pct(const Graph& g, double pct) {
    if (pct <= 0.0 || pct > 100.0) throw std::invalid_argument("sample percentage must be in (0, 100]");
    return static_cast<std::size_t>(std::ceil(pct * static_cast<double>(g.num_nodes()) / 100.0));
}

}  // namespace two5k
