#include "two5k/generation.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "two5k/graph_metrics.hpp"
#include "two5k/kernels.hpp"
#include "two5k/rng.hpp"

namespace two5k {

namespace {

constexpr std::uint32_t kNoPos = std::numeric_limits<std::uint32_t>::max();

std::uint64_t edge_key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

void unsat_remove(ConstructionState& st, NodeId v) {
    std::uint32_t pos = st.unsat_pos[v];
    if (pos == kNoPos) return;
    auto& list = st.unsat[st.node_class[v]];
    NodeId last = list.back();
    list[pos] = last;
    st.unsat_pos[last] = pos;
    list.pop_back();
    st.unsat_pos[v] = kNoPos;
}

void unsat_add(ConstructionState& st, NodeId v) {
    if (st.unsat_pos[v] != kNoPos) return;
    auto& list = st.unsat[st.node_class[v]];
    st.unsat_pos[v] = static_cast<std::uint32_t>(list.size());
    list.push_back(v);
}

void sync_saturation(ConstructionState& st, NodeId v) {
    if (st.graph.degree(v) < st.target_degree[v])
        unsat_add(st, v);
    else
        unsat_remove(st, v);
}

}  // namespace

// Every construction add lands in a cell that is below target.
void construction_add_edge(ConstructionState& st, NodeId u, NodeId v) {
    std::size_t idx = st.cell_index(st.node_class[u], st.node_class[v]);
    if (st.current_cells[idx] >= st.target_cells[idx])
        throw std::logic_error("construction would overfill a degree cell");
    if (!st.graph.add_edge(u, v)) throw std::logic_error("construction re-added an edge");
    ++st.current_cells[idx];
    --st.total_deficit;
    sync_saturation(st, u);
    sync_saturation(st, v);
}

namespace {

void construction_remove_edge(ConstructionState& st, NodeId u, NodeId v) {
    if (!st.graph.remove_edge(u, v)) throw std::logic_error("construction removed a missing edge");
    std::size_t idx = st.cell_index(st.node_class[u], st.node_class[v]);
    --st.current_cells[idx];
    ++st.total_deficit;
    sync_saturation(st, u);
    sync_saturation(st, v);
}

// iterate `vec` from a random offset until f returns true
template <typename F>
bool scan_from(Rng& rng, const std::vector<NodeId>& vec, F&& f) {
    if (vec.empty()) return false;
    const std::size_t start = rng.below(vec.size());
    for (std::size_t i = 0; i < vec.size(); ++i)
        if (f(vec[(start + i) % vec.size()])) return true;
    return false;
}

}  // namespace

JddMatrix ConstructionState::current_jdd() const {
    JddMatrix out;
    const int c = static_cast<int>(class_degree.size());
    for (int i = 0; i < c; ++i)
        for (int j = i; j < c; ++j)
            if (std::int64_t v = current_cells[cell_index(i, j)]; v > 0)
                out.set(class_degree[i], class_degree[j], static_cast<double>(v));
    return out;
}

JddMatrix ConstructionState::target_jdd() const {
    JddMatrix out;
    const int c = static_cast<int>(class_degree.size());
    for (int i = 0; i < c; ++i)
        for (int j = i; j < c; ++j)
            if (std::int64_t v = target_cells[cell_index(i, j)]; v > 0)
                out.set(class_degree[i], class_degree[j], static_cast<double>(v));
    return out;
}

ConstructionState assign_degrees(const TargetSpec& spec, std::uint64_t seed) {
    ConstructionState st;
    st.seed = seed;
    const NodeId n = static_cast<NodeId>(spec.n_nodes);
    st.graph = Graph(n);
    st.target_degree.resize(n, 0);
    st.coordinate.resize(n, 0.0);

    std::map<int, int> class_of;
    for (const auto& [k, d] : spec.degree_nodes) {
        (void)d;
        class_of[k] = static_cast<int>(st.class_degree.size());
        st.class_degree.push_back(k);
    }
    st.node_class.resize(n, 0);
    st.class_nodes.resize(st.class_degree.size());
    st.unsat.resize(st.class_degree.size());
    st.unsat_pos.assign(n, kNoPos);

    std::vector<NodeId> ids(n);
    for (NodeId v = 0; v < n; ++v) ids[v] = v;
    Rng rng(derive_seed(seed, 1));
    rng.shuffle(ids);
    std::size_t cursor = 0;
    for (const auto& [k, d] : spec.degree_nodes) {
        for (std::int64_t i = 0; i < d; ++i) {
            NodeId v = ids[cursor++];
            st.target_degree[v] = k;
            st.node_class[v] = class_of[k];
        }
    }
    for (NodeId v = 0; v < n; ++v) {
        st.class_nodes[st.node_class[v]].push_back(v);
        if (st.target_degree[v] > 0) unsat_add(st, v);
    }

    const std::size_t c = st.class_degree.size();
    st.target_cells.assign(c * c, 0);
    st.current_cells.assign(c * c, 0);
    st.total_deficit = 0;
    for (const auto& e : spec.jdd.sorted_entries()) {
        std::int64_t cnt = static_cast<std::int64_t>(std::llround(e.count));
        st.target_cells[st.cell_index(class_of.at(e.k), class_of.at(e.l))] = cnt;
        st.total_deficit += cnt;
    }
    return st;
}

void greedy_local_edges(ConstructionState& st) {
    const NodeId n = st.graph.num_nodes();
    if (n < 2 || st.total_deficit == 0) return;
    Rng rng(derive_seed(st.seed, 2));
    for (NodeId v = 0; v < n; ++v) st.coordinate[v] = rng.canonical();

    // nodes in ring order
    std::vector<NodeId> order(n);
    for (NodeId v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](NodeId a, NodeId b) { return st.coordinate[a] < st.coordinate[b]; });

    // One expanding window per ring position; each unordered pair belongs to
    // exactly one window (the side whose clockwise arc is at most 1/2), and
    // within a window the arc grows monotonically, so a min-heap over the
    // windows emits all pairs in increasing ring distance.
    struct Item {
        double arc;
        std::uint32_t pos;
        std::uint32_t offset;
        bool operator>(const Item& o) const {
            return arc != o.arc ? arc > o.arc : pos > o.pos;
        }
    };
    auto arc_of = [&](std::uint32_t pos, std::uint32_t offset) {
        const NodeId a = order[pos];
        const NodeId b = order[(pos + offset) % n];
        double d = st.coordinate[b] - st.coordinate[a];
        if (d < 0.0) d += 1.0;
        return d;
    };
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    for (std::uint32_t p = 0; p < n; ++p) {
        double a = arc_of(p, 1);
        if (a <= 0.5) heap.push({a, p, 1});
    }

    std::uint64_t unsat_total = 0;
    for (const auto& list : st.unsat) unsat_total += list.size();

    while (!heap.empty() && st.total_deficit > 0 && unsat_total > 1) {
        Item item = heap.top();
        heap.pop();
        const NodeId u = order[item.pos];
        if (st.unsat_pos[u] == kNoPos) continue;  // stream dead: u can never gain edges
        const NodeId v = order[(item.pos + item.offset) % n];
        if (st.unsat_pos[v] != kNoPos &&
            st.deficit(st.node_class[u], st.node_class[v]) > 0 && !st.graph.has_edge(u, v)) {
            construction_add_edge(st, u, v);
            if (st.unsat_pos[u] == kNoPos) --unsat_total;
            if (st.unsat_pos[v] == kNoPos) --unsat_total;
        }
        if (item.offset + 1 < n) {
            double a = arc_of(item.pos, item.offset + 1);
            if (a <= 0.5) heap.push({a, item.pos, item.offset + 1});
        }
    }
}

namespace {

bool try_direct(ConstructionState& st, Rng& rng, int ci, int cj) {
    const auto& a_list = st.unsat[ci];
    const auto& b_list = st.unsat[cj];
    if (a_list.empty() || b_list.empty()) return false;
    for (int t = 0; t < 32; ++t) {
        NodeId a = a_list[rng.below(a_list.size())];
        NodeId b = b_list[rng.below(b_list.size())];
        if (a == b || st.graph.has_edge(a, b)) continue;
        construction_add_edge(st, a, b);
        return true;
    }
    // bounded deterministic sweep for small frontier sets
    const std::size_t lim_a = std::min<std::size_t>(a_list.size(), 64);
    const std::size_t lim_b = std::min<std::size_t>(b_list.size(), 64);
    for (std::size_t i = 0; i < lim_a; ++i)
        for (std::size_t j = 0; j < lim_b; ++j) {
            NodeId a = a_list[i], b = b_list[j];
            if (a == b || st.graph.has_edge(a, b)) continue;
            construction_add_edge(st, a, b);
            return true;
        }
    return false;
}

// add (a,c), rewire (c,d) -> (b,d): fills the deficit cell and leaves every
// other cell and every degree unchanged. The helper c sits in b's class so
// the removed and re-added edges share the cell (class_b, class_d).
bool try_rewire_pair(ConstructionState& st, Rng& rng, int ci, int cj) {
    if (st.unsat[ci].empty() || st.unsat[cj].empty()) return false;
    NodeId a = st.unsat[ci][rng.below(st.unsat[ci].size())];
    NodeId b = st.unsat[cj][rng.below(st.unsat[cj].size())];
    if (a == b) {
        if (st.unsat[ci].size() < 2 && st.unsat[cj].size() < 2) return false;
        for (int t = 0; t < 16 && a == b; ++t) b = st.unsat[cj][rng.below(st.unsat[cj].size())];
        if (a == b) return false;
    }
    struct Role {
        NodeId a, b;
        int helper_class;
    };
    for (const Role& role : {Role{a, b, cj}, Role{b, a, ci}}) {
        bool done = scan_from(rng, st.class_nodes[role.helper_class], [&](NodeId c) {
            if (c == role.a || c == role.b || st.graph.has_edge(role.a, c)) return false;
            auto nb = st.graph.neighbors(c);
            std::vector<NodeId> candidates(nb.begin(), nb.end());
            return scan_from(rng, candidates, [&](NodeId d) {
                if (d == role.a || d == role.b || st.graph.has_edge(role.b, d)) return false;
                construction_add_edge(st, role.a, c);
                construction_remove_edge(st, c, d);
                construction_add_edge(st, role.b, d);
                return true;
            });
        });
        if (done) return true;
    }
    return false;
}

// add (a,c) and drop one edge of c without reconnecting it: the deficit
// moves to the cell of the dropped edge.
bool try_relocate(ConstructionState& st, Rng& rng, int ci, int cj) {
    struct Role {
        int own, other;
    };
    for (const Role& role : {Role{ci, cj}, Role{cj, ci}}) {
        if (st.unsat[role.own].empty()) continue;
        NodeId a = st.unsat[role.own][rng.below(st.unsat[role.own].size())];
        bool done = scan_from(rng, st.class_nodes[role.other], [&](NodeId c) {
            if (c == a || st.graph.has_edge(a, c)) return false;
            auto nb = st.graph.neighbors(c);
            std::vector<NodeId> candidates(nb.begin(), nb.end());
            return scan_from(rng, candidates, [&](NodeId d) {
                if (d == a) return false;
                construction_add_edge(st, a, c);
                construction_remove_edge(st, c, d);
                return true;
            });
        });
        if (done) return true;
    }
    return false;
}

// connect two saturated nodes across the deficit cell and delete one edge at
// each; two smaller deficits remain to be processed.
bool try_saturated_bridge(ConstructionState& st, Rng& rng, int ci, int cj) {
    return scan_from(rng, st.class_nodes[ci], [&](NodeId c) {
        if (st.graph.degree(c) != st.target_degree[c]) return false;
        return scan_from(rng, st.class_nodes[cj], [&](NodeId e) {
            if (e == c || st.graph.degree(e) != st.target_degree[e]) return false;
            if (st.graph.has_edge(c, e)) return false;
            auto nbc = st.graph.neighbors(c);
            std::vector<NodeId> cand_c(nbc.begin(), nbc.end());
            NodeId c_drop = kNoPos;
            scan_from(rng, cand_c, [&](NodeId w) {
                if (w == e) return false;
                c_drop = w;
                return true;
            });
            if (c_drop == kNoPos) return false;
            auto nbe = st.graph.neighbors(e);
            std::vector<NodeId> cand_e(nbe.begin(), nbe.end());
            NodeId e_drop = kNoPos;
            scan_from(rng, cand_e, [&](NodeId w) {
                if (w == c) return false;
                e_drop = w;
                return true;
            });
            if (e_drop == kNoPos) return false;
            construction_add_edge(st, c, e);
            construction_remove_edge(st, c, c_drop);
            construction_remove_edge(st, e, e_drop);
            return true;
        });
    });
}

std::string construction_dump(const ConstructionState& st) {
    std::ostringstream out;
    out << "deficit=" << st.total_deficit << " cells:";
    const int c = static_cast<int>(st.class_degree.size());
    int listed = 0;
    for (int i = 0; i < c && listed < 8; ++i)
        for (int j = i; j < c && listed < 8; ++j)
            if (std::int64_t d = st.deficit(i, j); d != 0) {
                out << " (" << st.class_degree[i] << "," << st.class_degree[j] << "):" << d;
                ++listed;
            }
    return out.str();
}

}  // namespace

void complete_jdd(ConstructionState& st, std::int64_t max_rounds) {
    if (st.total_deficit == 0) return;
    Rng rng(derive_seed(st.seed, 3));
    const std::int64_t initial = st.total_deficit;
    if (max_rounds == 0)
        max_rounds = 10000 + 200 * initial + 4 * static_cast<std::int64_t>(st.graph.num_nodes());
    const std::int64_t stall_limit = 1000 + 20 * initial;

    std::int64_t best = st.total_deficit;
    std::int64_t stall = 0;
    const int c = static_cast<int>(st.class_degree.size());
    std::vector<std::pair<int, int>> deficit_cells;

    for (std::int64_t round = 0; round < max_rounds; ++round) {
        if (st.total_deficit == 0) break;
        deficit_cells.clear();
        for (int i = 0; i < c; ++i)
            for (int j = i; j < c; ++j)
                if (st.deficit(i, j) > 0) deficit_cells.push_back({i, j});
        if (deficit_cells.empty())
            throw std::logic_error("construction: positive deficit without a deficit cell");
        auto [ci, cj] = deficit_cells[rng.below(deficit_cells.size())];

        bool progressed = try_direct(st, rng, ci, cj) || try_rewire_pair(st, rng, ci, cj) ||
                          try_relocate(st, rng, ci, cj) || try_saturated_bridge(st, rng, ci, cj);
        (void)progressed;
        if (st.total_deficit < best) {
            best = st.total_deficit;
            stall = 0;
        } else if (++stall > stall_limit) {
            throw ConstructionFailure("no progress after " + std::to_string(stall) + " rounds; " +
                                      construction_dump(st));
        }
    }
    if (st.total_deficit != 0)
        throw ConstructionFailure("transformation budget exceeded; " + construction_dump(st));
    for (NodeId v = 0; v < st.graph.num_nodes(); ++v)
        if (st.graph.degree(v) != st.target_degree[v])
            throw std::logic_error("construction finished with an unsaturated node");
}

Graph construct_2kt(const TargetSpec& spec, std::uint64_t seed) {
    ConstructionState st = assign_degrees(spec, seed);
    greedy_local_edges(st);
    complete_jdd(st);
    return std::move(st.graph);
}

Graph construct_2k_baseline(const TargetSpec& spec, std::uint64_t seed) {
    ConstructionState st = assign_degrees(spec, derive_seed(seed, 5));
    Rng rng(derive_seed(seed, 6));
    const int c = static_cast<int>(st.class_degree.size());

    // one stub per missing endpoint, shared across the row's cells
    std::vector<std::vector<NodeId>> stubs(c);
    for (NodeId v = 0; v < st.graph.num_nodes(); ++v)
        for (int i = 0; i < st.target_degree[v]; ++i) stubs[st.node_class[v]].push_back(v);
    for (auto& s : stubs) rng.shuffle(s);

    auto pop_stub = [&](int cls, std::size_t idx) {
        auto& s = stubs[cls];
        s[idx] = s.back();
        s.pop_back();
    };

    for (int ci = 0; ci < c; ++ci) {
        for (int cj = ci; cj < c; ++cj) {
            std::int64_t want = st.target_cells[st.cell_index(ci, cj)];
            if (want == 0) continue;
            std::vector<std::pair<NodeId, NodeId>> cell_edges;
            cell_edges.reserve(want);
            for (std::int64_t t = 0; t < want; ++t) {
                bool placed = false;
                for (int tries = 0; tries < 64 && !placed; ++tries) {
                    if (stubs[ci].empty() || stubs[cj].empty())
                        throw ConstructionFailure("2k baseline ran out of stubs");
                    std::size_t iu = rng.below(stubs[ci].size());
                    std::size_t iv = rng.below(stubs[cj].size());
                    if (ci == cj && iu == iv) continue;
                    NodeId u = stubs[ci][iu], v = stubs[cj][iv];
                    if (u == v || st.graph.has_edge(u, v)) continue;
                    construction_add_edge(st, u, v);
                    cell_edges.push_back({u, v});
                    if (ci == cj) {
                        pop_stub(ci, std::max(iu, iv));
                        pop_stub(ci, std::min(iu, iv));
                    } else {
                        pop_stub(ci, iu);
                        pop_stub(cj, iv);
                    }
                    placed = true;
                }
                if (placed) continue;

                // collisions dominate: rewire an existing cell edge so the
                // remaining stubs can attach
                bool repaired = false;
                for (int tries = 0; tries < 256 && !repaired; ++tries) {
                    if (cell_edges.empty()) break;
                    if (ci == cj && stubs[ci].size() < 2)
                        throw ConstructionFailure("2k baseline stub accounting broke");
                    std::size_t iu = rng.below(stubs[ci].size());
                    std::size_t iv = rng.below(stubs[cj].size());
                    if (ci == cj && iu == iv) continue;
                    NodeId u = stubs[ci][iu], v = stubs[cj][iv];
                    std::size_t ie = rng.below(cell_edges.size());
                    auto [x, y] = cell_edges[ie];
                    // entries can go stale after a stub transfer
                    if (!st.graph.has_edge(x, y)) {
                        cell_edges[ie] = cell_edges.back();
                        cell_edges.pop_back();
                        continue;
                    }
                    if (u == v) {
                        // both stubs on one node (diagonal): split (x,y) onto u
                        if (x == u || y == u) continue;
                        if (st.graph.has_edge(u, x) || st.graph.has_edge(u, y)) continue;
                        construction_remove_edge(st, x, y);
                        construction_add_edge(st, u, x);
                        construction_add_edge(st, u, y);
                        cell_edges[ie] = {u, x};
                        cell_edges.push_back({u, y});
                        if (ci == cj) {
                            pop_stub(ci, std::max(iu, iv));
                            pop_stub(ci, std::min(iu, iv));
                        } else {
                            pop_stub(ci, iu);
                            pop_stub(cj, iv);
                        }
                        repaired = true;
                    } else {
                        if (x == u || x == v || y == u || y == v) continue;
                        if (st.graph.has_edge(u, y) || st.graph.has_edge(x, v)) continue;
                        construction_remove_edge(st, x, y);
                        construction_add_edge(st, u, y);
                        construction_add_edge(st, x, v);
                        cell_edges[ie] = {u, y};
                        cell_edges.push_back({x, v});
                        if (ci == cj) {
                            pop_stub(ci, std::max(iu, iv));
                            pop_stub(ci, std::min(iu, iv));
                        } else {
                            pop_stub(ci, iu);
                            pop_stub(cj, iv);
                        }
                        repaired = true;
                    }
                }
                // every free-stub holder on one side may already be adjacent
                // to the other side; move a free stub onto a node that is not
                if (!repaired) {
                    for (int tries = 0; tries < 512 && !repaired; ++tries) {
                        NodeId u = stubs[ci][rng.below(stubs[ci].size())];
                        NodeId v = stubs[cj][rng.below(stubs[cj].size())];
                        if (u == v || !st.graph.has_edge(u, v)) continue;
                        struct Side {
                            NodeId holder, partner;
                            int cls;
                        };
                        for (const Side& side : {Side{u, v, ci}, Side{v, u, cj}}) {
                            const auto& pool = st.class_nodes[side.cls];
                            NodeId x = pool[rng.below(pool.size())];
                            if (x == side.holder || x == side.partner) continue;
                            if (st.graph.has_edge(x, side.partner)) continue;
                            auto nb = st.graph.neighbors(x);
                            if (nb.empty()) continue;
                            NodeId w = nb[rng.below(nb.size())];
                            if (w == side.partner || w == side.holder) continue;
                            if (st.graph.has_edge(side.holder, w)) continue;
                            // transfer one of x's edges to the stub holder,
                            // then give x the blocked slot
                            construction_remove_edge(st, x, w);
                            construction_add_edge(st, side.holder, w);
                            construction_add_edge(st, x, side.partner);
                            cell_edges.push_back(side.cls == ci
                                                     ? std::pair<NodeId, NodeId>{x, side.partner}
                                                     : std::pair<NodeId, NodeId>{side.partner, x});
                            // stubs: holder and partner each consumed one
                            std::size_t ih = 0, ip = 0;
                            auto& hs = stubs[ci];
                            auto& ps = stubs[cj];
                            NodeId holder_in_ci = side.cls == ci ? side.holder : side.partner;
                            NodeId partner_in_cj = side.cls == ci ? side.partner : side.holder;
                            while (hs[ih] != holder_in_ci) ++ih;
                            hs[ih] = hs.back();
                            hs.pop_back();
                            while (ps[ip] != partner_in_cj) ++ip;
                            ps[ip] = ps.back();
                            ps.pop_back();
                            repaired = true;
                            break;
                        }
                    }
                }
                if (!repaired)
                    throw ConstructionFailure("2k baseline stalled at cell (" +
                                              std::to_string(st.class_degree[ci]) + "," +
                                              std::to_string(st.class_degree[cj]) + ")");
            }
        }
    }
    if (st.total_deficit != 0) throw ConstructionFailure("2k baseline left a deficit");
    return std::move(st.graph);
}

namespace {

class McmcEngine {
public:
    McmcEngine(Graph& g, const DegreeClustering& target, const McmcConfig& cfg)
        : g_(g), cfg_(cfg), rng_(derive_seed(cfg.seed, 11)) {
        const NodeId n = g.num_nodes();
        deg_.resize(n);
        int max_deg = 0;
        for (NodeId v = 0; v < n; ++v) {
            deg_[v] = g.degree(v);
            max_deg = std::max(max_deg, deg_[v]);
        }
        nodes_by_degree_.resize(max_deg + 1);
        count_by_degree_.assign(max_deg + 1, 0);
        for (NodeId v = 0; v < n; ++v) {
            nodes_by_degree_[deg_[v]].push_back(v);
            ++count_by_degree_[deg_[v]];
        }
        tri_ = kernels::triangle_counts(g);
        sumc_.assign(max_deg + 1, 0.0);
        sumc_total_ = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            if (deg_[v] < 2) continue;
            double cv = clustering_of(v);
            sumc_[deg_[v]] += cv;
            sumc_total_ += cv;
        }
        target_.assign(max_deg + 1, 0.0);
        in_objective_.assign(max_deg + 1, false);
        target_sum_ = 0.0;
        for (const auto& [k, t] : target) {
            if (k > max_deg || count_by_degree_[k] == 0) continue;
            target_[k] = t;
            in_objective_[k] = true;
            target_sum_ += t;
        }
        f_ = 0.0;
        for (int k = 0; k <= max_deg; ++k)
            if (in_objective_[k]) f_ += std::abs(target_[k] - sumc_[k] / count_by_degree_[k]);

        edges_ = g.edges();
        edge_pos_.reserve(edges_.size() * 2);
        for (std::uint32_t i = 0; i < edges_.size(); ++i)
            edge_pos_[edge_key(edges_[i].first, edges_[i].second)] = i;

        if (cfg_.variant == McmcVariant::improved) {
            tri_edge_.reserve(edges_.size() * 2);
            for (const auto& [u, v] : edges_)
                tri_edge_[edge_key(u, v)] = static_cast<std::int32_t>(
                    kernels::intersection_size(g.neighbors(u), g.neighbors(v)));
            rebucket();
        }
    }

    McmcResult run() {
        McmcResult result;
        const auto start = std::chrono::steady_clock::now();
        auto elapsed_s = [&]() {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        };
        const std::uint64_t max_swaps =
            cfg_.max_swaps ? cfg_.max_swaps : 500 * std::max<std::uint64_t>(edges_.size(), 1);
        const std::uint64_t max_proposals =
            cfg_.max_proposals ? cfg_.max_proposals : 40 * max_swaps;
        const std::uint64_t progress_every =
            cfg_.progress_interval ? cfg_.progress_interval
                                   : std::max<std::uint64_t>(1000, edges_.size() / 10);
        const std::uint64_t rebucket_every = std::max<std::uint64_t>(1024, edges_.size() / 4);

        std::uint64_t proposals = 0, swaps = 0;
        auto nmae = [&]() {
            return target_sum_ > 0.0 ? f_ / target_sum_ : (f_ > 1e-12 ? 1e30 : 0.0);
        };
        auto emit_progress = [&]() {
            McmcProgress p{swaps, proposals, elapsed_s() * 1000.0, nmae(),
                           g_.num_nodes() ? sumc_total_ / g_.num_nodes() : 0.0};
            result.trace.push_back(p);
            if (cfg_.on_progress) cfg_.on_progress(p);
        };

        emit_progress();
        bool converged = nmae() < cfg_.nmae_stop;
        while (!converged && proposals < max_proposals && swaps < max_swaps) {
            if (edges_.size() < 2) break;
            ++proposals;
            if (propose()) {
                ++swaps;
                converged = nmae() < cfg_.nmae_stop;
            }
            if (proposals % progress_every == 0) emit_progress();
            if (cfg_.variant == McmcVariant::improved && proposals % rebucket_every == 0) rebucket();
            if (cfg_.time_budget_s > 0.0 && proposals % 1024 == 0 &&
                elapsed_s() > cfg_.time_budget_s)
                break;
        }
        emit_progress();
        result.converged = converged;
        result.swaps = swaps;
        result.proposals = proposals;
        result.final_nmae = nmae();
        result.elapsed_s = elapsed_s();
        return result;
    }

    double objective() const { return f_; }

private:
    double clustering_of(NodeId v) const {
        return 2.0 * static_cast<double>(tri_[v]) /
               (static_cast<double>(deg_[v]) * (deg_[v] - 1));
    }

    // one edge mutation with incremental triangle maintenance
    void edge_op(bool add, NodeId a, NodeId b) {
        auto na = g_.neighbors(a);
        auto nb = g_.neighbors(b);
        common_.clear();
        std::size_t i = 0, j = 0;
        while (i < na.size() && j < nb.size()) {
            if (na[i] < nb[j])
                ++i;
            else if (na[i] > nb[j])
                ++j;
            else {
                common_.push_back(na[i]);
                ++i;
                ++j;
            }
        }
        const std::int64_t d = add ? 1 : -1;
        const std::int64_t w_count = static_cast<std::int64_t>(common_.size());
        for (NodeId w : common_) {
            tri_[w] += d;
            touch(w, d);
            if (cfg_.variant == McmcVariant::improved) {
                tri_edge_[edge_key(a, w)] += static_cast<std::int32_t>(d);
                tri_edge_[edge_key(b, w)] += static_cast<std::int32_t>(d);
            }
        }
        tri_[a] += d * w_count;
        tri_[b] += d * w_count;
        touch(a, d * w_count);
        touch(b, d * w_count);

        const std::uint64_t key = edge_key(a, b);
        if (add) {
            g_.add_edge(a, b);
            edge_pos_[key] = static_cast<std::uint32_t>(edges_.size());
            edges_.push_back({std::min(a, b), std::max(a, b)});
            if (cfg_.variant == McmcVariant::improved)
                tri_edge_[key] = static_cast<std::int32_t>(w_count);
        } else {
            g_.remove_edge(a, b);
            std::uint32_t pos = edge_pos_.at(key);
            std::uint64_t last_key = edge_key(edges_.back().first, edges_.back().second);
            edges_[pos] = edges_.back();
            edge_pos_[last_key] = pos;
            edges_.pop_back();
            edge_pos_.erase(key);
            if (cfg_.variant == McmcVariant::improved) tri_edge_.erase(key);
        }
    }

    // record a pending per-node triangle delta for the class sums
    void touch(NodeId v, std::int64_t dt) {
        if (dt == 0 || deg_[v] < 2) return;
        pending_.push_back({v, dt});
    }

    bool propose() {
        NodeId u, v;
        if (cfg_.variant == McmcVariant::improved) {
            pick_edge_biased(u, v);
        } else {
            const auto& e = edges_[rng_.below(edges_.size())];
            u = e.first;
            v = e.second;
        }
        if (rng_.bernoulli(0.5)) std::swap(u, v);
        const auto& pool = nodes_by_degree_[deg_[u]];
        NodeId x = pool[rng_.below(pool.size())];
        if (x == u || x == v) return false;
        auto nx = g_.neighbors(x);
        NodeId y = nx[rng_.below(nx.size())];
        if (y == u || y == v) return false;
        if (g_.has_edge(u, y) || g_.has_edge(x, v)) return false;

        pending_.clear();
        touched_.clear();
        edge_op(false, u, v);
        edge_op(false, x, y);
        edge_op(true, u, y);
        edge_op(true, x, v);

        // fold pending triangle deltas into the per-degree clustering sums
        double df = 0.0;
        for (const auto& [node, dt] : pending_) {
            const int k = deg_[node];
            bool seen = false;
            for (auto& [cls, old] : touched_)
                if (cls == k) {
                    seen = true;
                    break;
                }
            if (!seen) touched_.push_back({k, sumc_[k]});
            const double dc = 2.0 * static_cast<double>(dt) /
                              (static_cast<double>(k) * (k - 1));
            sumc_[k] += dc;
            sumc_total_ += dc;
        }
        for (const auto& [k, old] : touched_) {
            if (!in_objective_[k]) continue;
            const double cnt = static_cast<double>(count_by_degree_[k]);
            df += std::abs(target_[k] - sumc_[k] / cnt) - std::abs(target_[k] - old / cnt);
        }

        if (df > 1e-15) {
            // undo: inverse ops in reverse order, then restore the sums exactly
            for (const auto& [k, old] : touched_) {
                sumc_total_ -= sumc_[k] - old;
                sumc_[k] = old;
            }
            pending_.clear();
            edge_op(false, x, v);
            edge_op(false, u, y);
            edge_op(true, x, y);
            edge_op(true, u, v);
            pending_.clear();
            return false;
        }
        f_ += df;
        return true;
    }

    void rebucket() {
        bucket_low_.clear();
        bucket_high_.clear();
        std::int64_t tri_sum = 0;
        for (const auto& [u, v] : edges_) tri_sum += tri_edge_.at(edge_key(u, v));
        const double threshold =
            edges_.empty() ? 0.0 : static_cast<double>(tri_sum) / static_cast<double>(edges_.size());
        for (const auto& [u, v] : edges_) {
            std::uint64_t key = edge_key(u, v);
            (tri_edge_.at(key) > threshold ? bucket_high_ : bucket_low_).push_back(key);
        }
        double excess = 0.0;
        for (std::size_t k = 0; k < target_.size(); ++k)
            if (in_objective_[k])
                excess += sumc_[k] / count_by_degree_[k] - target_[k];
        prefer_high_ = excess > 0.0;  // overshooting: destroy triangles faster
    }

    void pick_edge_biased(NodeId& u, NodeId& v) {
        const auto& preferred = prefer_high_ ? bucket_high_ : bucket_low_;
        const auto& other = prefer_high_ ? bucket_low_ : bucket_high_;
        const auto& bucket = (!preferred.empty() && rng_.bernoulli(cfg_.bucket_bias))
                                 ? preferred
                                 : (!other.empty() ? other : preferred);
        for (int t = 0; t < 8 && !bucket.empty(); ++t) {
            std::uint64_t key = bucket[rng_.below(bucket.size())];
            auto it = edge_pos_.find(key);
            if (it == edge_pos_.end()) continue;  // stale since the last rebucket
            u = edges_[it->second].first;
            v = edges_[it->second].second;
            return;
        }
        const auto& e = edges_[rng_.below(edges_.size())];
        u = e.first;
        v = e.second;
    }

    Graph& g_;
    const McmcConfig& cfg_;
    Rng rng_;
    std::vector<int> deg_;
    std::vector<std::vector<NodeId>> nodes_by_degree_;
    std::vector<std::int64_t> count_by_degree_;
    std::vector<std::int64_t> tri_;
    std::vector<double> sumc_;
    std::vector<double> target_;
    std::vector<bool> in_objective_;
    double sumc_total_ = 0.0;
    double target_sum_ = 0.0;
    double f_ = 0.0;
    std::vector<std::pair<NodeId, NodeId>> edges_;
    std::unordered_map<std::uint64_t, std::uint32_t> edge_pos_;
    std::unordered_map<std::uint64_t, std::int32_t> tri_edge_;
    std::vector<std::uint64_t> bucket_low_, bucket_high_;
    bool prefer_high_ = true;
    std::vector<NodeId> common_;
    std::vector<std::pair<NodeId, std::int64_t>> pending_;
    std::vector<std::pair<int, double>> touched_;
};

}  // namespace

McmcResult mcmc_target_ck(Graph& g, const DegreeClustering& target_ck, const McmcConfig& cfg) {
    McmcEngine engine(g, target_ck, cfg);
    return engine.run();
}

static GenerateResult generate_with(const TargetSpec& spec, const McmcConfig& cfg, bool triangle_rich) {
    GenerateResult result;
    const auto t0 = std::chrono::steady_clock::now();
    result.graph = triangle_rich ? construct_2kt(spec, derive_seed(cfg.seed, 21))
                                 : construct_2k_baseline(spec, derive_seed(cfg.seed, 22));
    result.construction_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.clustering_before_mcmc =
        result.graph.num_nodes() ? mean_clustering(result.graph) : 0.0;
    result.mcmc = mcmc_target_ck(result.graph, spec.ck, cfg);
    result.converged = result.mcmc.converged;
    return result;
}

GenerateResult generate_25k(const TargetSpec& spec, const McmcConfig& cfg) {
    return generate_with(spec, cfg, true);
}

GenerateResult generate_2k_mcmc(const TargetSpec& spec, const McmcConfig& cfg) {
    return generate_with(spec, cfg, false);
}

}  // namespace two5k
