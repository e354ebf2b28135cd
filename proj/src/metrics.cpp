#include "two5k/metrics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "two5k/graph_metrics.hpp"
#include "two5k/kernels.hpp"
#include "two5k/rng.hpp"

namespace two5k {

namespace {

template <typename K>
double nmae_impl(const std::map<K, double>& est, const std::map<K, double>& ref) {
    double ref_mass = 0.0;
    for (const auto& [k, v] : ref) ref_mass += v;
    if (ref_mass <= 0.0) throw std::invalid_argument("nmae: reference mass must be positive");
    double err = 0.0;
    for (const auto& [k, v] : ref) {
        auto it = est.find(k);
        err += std::abs((it == est.end() ? 0.0 : it->second) - v);
    }
    for (const auto& [k, v] : est)
        if (!ref.count(k)) err += std::abs(v);
    return err / ref_mass;
}

std::map<int, double> to_real(const std::map<int, std::uint64_t>& m) {
    std::map<int, double> out;
    for (const auto& [k, v] : m) out[k] = static_cast<double>(v);
    return out;
}

}  // namespace

double nmae(const std::map<int, double>& est, const std::map<int, double>& ref) {
    return nmae_impl(est, ref);
}
double nmae(const std::map<double, double>& est, const std::map<double, double>& ref) {
    return nmae_impl(est, ref);
}

double nmae_jdd(const JddMatrix& est, const JddMatrix& ref) {
    double mass = ref.total_mass();
    if (mass <= 0.0) throw std::invalid_argument("nmae_jdd: reference mass must be positive");
    return JddMatrix::absolute_difference(est, ref) / mass;
}

double nmae_vector(const std::vector<double>& est, const std::vector<double>& ref) {
    double mass = 0.0;
    for (double v : ref) mass += std::abs(v);
    if (mass <= 0.0) throw std::invalid_argument("nmae_vector: reference mass must be positive");
    double err = 0.0;
    const std::size_t n = std::max(est.size(), ref.size());
    for (std::size_t i = 0; i < n; ++i) {
        double e = i < est.size() ? est[i] : 0.0;
        double r = i < ref.size() ? ref[i] : 0.0;
        err += std::abs(e - r);
    }
    return err / mass;
}

std::map<int, std::uint64_t> degree_distribution(const Graph& g) {
    std::map<int, std::uint64_t> dd;
    for (NodeId v = 0; v < g.num_nodes(); ++v) ++dd[g.degree(v)];
    return dd;
}

std::map<int, double> avg_neighbor_degree(const Graph& g) { return kernels::avg_neighbor_degree(g); }

std::map<int, std::uint64_t> edgewise_shared_partners(const Graph& g) {
    return kernels::esp_histogram(g);
}

namespace {

std::vector<NodeId> pick_sources(const std::vector<NodeId>& component, std::size_t budget,
                                 std::uint64_t seed) {
    if (budget == 0 || budget >= component.size()) return component;
    std::vector<NodeId> pool = component;
    Rng rng(derive_seed(seed, 7));
    rng.shuffle(pool);
    pool.resize(budget);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace

HopHistogram shortest_path_histogram(const Graph& g, std::size_t source_budget, std::uint64_t seed) {
    HopHistogram out;
    if (g.num_nodes() == 0) return out;
    auto comps = connected_components(g);
    const auto& comp = *std::max_element(
        comps.begin(), comps.end(),
        [](const auto& a, const auto& b) { return a.size() < b.size(); });
    auto sources = pick_sources(comp, source_budget, seed);
    out.sources_used = sources.size();
    out.exact = sources.size() == comp.size();
    auto acc = kernels::bfs_stats(g, sources);
    for (std::size_t d = 1; d < acc.hop_hist.size(); ++d)
        if (acc.hop_hist[d]) out.hops[static_cast<int>(d)] = acc.hop_hist[d];
    out.pairs = acc.pairs;
    return out;
}

namespace {

class BronKerbosch {
public:
    BronKerbosch(const Graph& g, double timeout_s)
        : g_(g), deadline_(std::chrono::steady_clock::now() +
                           std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                               std::chrono::duration<double>(timeout_s))) {}

    CliqueHistogram run() {
        std::vector<NodeId> p(g_.num_nodes()), x;
        std::iota(p.begin(), p.end(), 0);
        expand(0, p, x);
        return std::move(hist_);
    }

private:
    void expand(int depth, std::vector<NodeId>& p, std::vector<NodeId>& x) {
        if (!hist_.complete) return;
        if ((++steps_ & 0xfff) == 0 && std::chrono::steady_clock::now() > deadline_) {
            hist_.complete = false;
            return;
        }
        if (p.empty() && x.empty()) {
            ++hist_.sizes[depth];
            return;
        }
        // pivot: the candidate covering most of P
        NodeId pivot = 0;
        std::int64_t best = -1;
        for (const auto* side : {&p, &x}) {
            for (NodeId u : *side) {
                std::int64_t c = kernels::intersection_size(
                    {p.data(), p.size()}, g_.neighbors(u));
                if (c > best) {
                    best = c;
                    pivot = u;
                }
            }
        }
        auto piv_nb = g_.neighbors(pivot);
        std::vector<NodeId> candidates;
        for (NodeId v : p)
            if (!std::binary_search(piv_nb.begin(), piv_nb.end(), v)) candidates.push_back(v);

        for (NodeId v : candidates) {
            auto nv = g_.neighbors(v);
            std::vector<NodeId> p2, x2;
            p2.reserve(std::min(p.size(), nv.size()));
            for (NodeId u : p)
                if (std::binary_search(nv.begin(), nv.end(), u)) p2.push_back(u);
            for (NodeId u : x)
                if (std::binary_search(nv.begin(), nv.end(), u)) x2.push_back(u);
            expand(depth + 1, p2, x2);
            if (!hist_.complete) return;
            p.erase(std::find(p.begin(), p.end(), v));
            x.insert(std::lower_bound(x.begin(), x.end(), v), v);
        }
    }

    const Graph& g_;
    std::chrono::steady_clock::time_point deadline_;
    std::uint64_t steps_ = 0;
    CliqueHistogram hist_;
};

}  // namespace

CliqueHistogram maximal_cliques(const Graph& g, double timeout_s) {
    if (g.num_nodes() == 0) return {};
    return BronKerbosch(g, timeout_s).run();
}

CycleBasisHistogram cycle_basis_distribution(const Graph& g, std::uint64_t candidate_budget) {
    CycleBasisHistogram out;
    const std::uint64_t n = g.num_nodes();
    const std::uint64_t m = g.num_edges();
    auto comps = connected_components(g);
    const std::uint64_t rank = m + comps.size() - n;
    out.basis_size = rank;
    if (rank == 0) {
        out.computed = true;
        return out;
    }
    if (n * m > candidate_budget) return out;  // reported as skipped

    auto edges = g.edges();
    std::unordered_map<std::uint64_t, std::uint32_t> edge_index;
    edge_index.reserve(edges.size() * 2);
    auto ekey = [](NodeId a, NodeId b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    };
    for (std::uint32_t i = 0; i < edges.size(); ++i)
        edge_index[ekey(edges[i].first, edges[i].second)] = i;

    const std::size_t words = (m + 63) / 64;
    using Bits = std::vector<std::uint64_t>;
    auto flip = [&](Bits& b, std::uint32_t e) { b[e >> 6] ^= 1ULL << (e & 63); };
    auto test = [&](const Bits& b, std::uint32_t e) { return (b[e >> 6] >> (e & 63)) & 1ULL; };

    struct Candidate {
        int length;
        Bits bits;
    };
    std::vector<Candidate> candidates;
    std::unordered_set<std::size_t> seen;
    std::vector<int> dist(n);
    std::vector<NodeId> parent(n);

    for (NodeId root = 0; root < n; ++root) {
        // BFS shortest-path tree from the root
        std::fill(dist.begin(), dist.end(), -1);
        std::vector<NodeId> queue{root};
        dist[root] = 0;
        parent[root] = root;
        std::size_t head = 0;
        while (head < queue.size()) {
            NodeId u = queue[head++];
            for (NodeId w : g.neighbors(u))
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
        }
        auto path_xor = [&](Bits& bits, NodeId v) {
            while (v != root) {
                flip(bits, edge_index.at(ekey(v, parent[v])));
                v = parent[v];
            }
        };
        for (const auto& [a, b] : edges) {
            if (dist[a] < 0 || dist[b] < 0) continue;
            if (parent[a] == b || parent[b] == a) continue;  // tree edge
            Bits bits(words, 0);
            path_xor(bits, a);
            path_xor(bits, b);
            flip(bits, edge_index.at(ekey(a, b)));
            int len = 0;
            for (std::uint64_t w : bits) len += std::popcount(w);
            if (len < 3) continue;
            std::size_t h = 1469598103934665603ULL;
            for (std::uint64_t w : bits) h = (h ^ w) * 1099511628211ULL;
            if (seen.insert(h).second) candidates.push_back({len, std::move(bits)});
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.length < b.length; });

    // matroid greedy: shortest independent candidates form a minimal basis
    std::vector<Bits> echelon;
    std::vector<std::uint32_t> pivots;
    Bits reduced(words);
    std::uint64_t selected = 0;
    for (const auto& cand : candidates) {
        if (selected == rank) break;
        reduced = cand.bits;
        for (std::size_t r = 0; r < echelon.size(); ++r)
            if (test(reduced, pivots[r]))
                for (std::size_t w = 0; w < words; ++w) reduced[w] ^= echelon[r][w];
        std::uint32_t pivot = 0;
        bool nonzero = false;
        for (std::size_t w = 0; w < words && !nonzero; ++w)
            if (reduced[w]) {
                pivot = static_cast<std::uint32_t>(w * 64 + std::countr_zero(reduced[w]));
                nonzero = true;
            }
        if (!nonzero) continue;
        echelon.push_back(reduced);
        pivots.push_back(pivot);
        ++out.lengths[cand.length];
        ++selected;
    }
    out.computed = selected == rank;
    return out;
}

namespace {

std::vector<double> dense_spectrum(const Graph& g, int count) {
    const int n = static_cast<int>(g.num_nodes());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (NodeId v : g.neighbors(u)) a(u, v) = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    std::vector<double> eigs(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(eigs.begin(), eigs.end(),
              [](double x, double y) { return std::abs(x) > std::abs(y); });
    eigs.resize(std::min<std::size_t>(eigs.size(), count));
    return eigs;
}

// Lanczos with full reorthogonalization on the deflated operator
// A' = A - sum_i lambda_i v_i v_i^T; found eigenvalues shift to zero, so the
// extremes of A' are the not-yet-found ones.
std::vector<double> lanczos_spectrum(const Graph& g, int count) {
    const std::size_t n = g.num_nodes();
    auto csr = kernels::build_csr(g);
    const double tol = 1e-6;

    std::vector<std::pair<double, std::vector<double>>> found;
    Rng rng(12345);

    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        kernels::spmv(csr, x.data(), y.data());
        for (const auto& [lam, vec] : found) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += vec[i] * x[i];
            const double shift = lam * dot;
            for (std::size_t i = 0; i < n; ++i) y[i] -= shift * vec[i];
        }
    };

    // harvest a few extras so a slow-converging interior value cannot be
    // crowded out of the final top-|count| selection
    const int harvest = static_cast<int>(std::min<std::size_t>(count + 8, n));
    const int max_outer = 4 * harvest + 8;
    bool exhausted = false;
    for (int outer = 0; outer < max_outer && static_cast<int>(found.size()) < harvest && !exhausted;
         ++outer) {
        const int m = static_cast<int>(std::min<std::size_t>(n, 2 * count + 40));
        std::vector<std::vector<double>> q;
        q.reserve(m + 1);
        std::vector<double> alpha, beta;

        std::vector<double> v(n);
        for (auto& x : v) x = rng.canonical() - 0.5;
        auto orth = [&](std::vector<double>& x) {
            for (const auto& [lam, vec] : found) {
                (void)lam;
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += vec[i] * x[i];
                for (std::size_t i = 0; i < n; ++i) x[i] -= dot * vec[i];
            }
            for (const auto& prev : q) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += prev[i] * x[i];
                for (std::size_t i = 0; i < n; ++i) x[i] -= dot * prev[i];
            }
        };
        orth(v);
        double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        if (norm < 1e-12) continue;
        for (auto& x : v) x /= norm;
        q.push_back(v);

        std::vector<double> w(n);
        for (int j = 0; j < m; ++j) {
            apply(q[j], w);
            double a = std::inner_product(q[j].begin(), q[j].end(), w.begin(), 0.0);
            alpha.push_back(a);
            for (std::size_t i = 0; i < n; ++i) w[i] -= a * q[j][i];
            if (j > 0)
                for (std::size_t i = 0; i < n; ++i) w[i] -= beta[j - 1] * q[j - 1][i];
            orth(w);  // full reorthogonalization
            double b = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
            if (b < 1e-12) break;
            beta.push_back(b);
            if (j + 1 < m) {
                for (auto& x : w) x /= b;
                q.push_back(w);
            }
        }
        const int steps = static_cast<int>(alpha.size());
        if (steps == 0) continue;
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
        for (int i = 0; i < steps; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < steps) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
        const auto& ritz = solver.eigenvalues();
        const auto& s = solver.eigenvectors();

        std::vector<int> order(steps);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return std::abs(ritz(a)) > std::abs(ritz(b)); });

        if (std::abs(ritz(order[0])) < 1e-10) {
            // remaining spectrum is numerically zero: pad and finish
            while (static_cast<int>(found.size()) < harvest) found.push_back({0.0, {}});
            exhausted = true;
            continue;
        }
        // accept only the converged prefix of the magnitude-sorted Ritz
        // values: an unconverged value blocks everything smaller, which keeps
        // a slow interior eigenvalue from being displaced by lesser ones
        for (int oi : order) {
            if (static_cast<int>(found.size()) >= harvest) break;
            const double lam = ritz(oi);
            if (std::abs(lam) < 1e-10) break;
            std::vector<double> vec(n, 0.0);
            for (int j = 0; j < static_cast<int>(q.size()) && j < steps; ++j) {
                const double c = s(j, oi);
                for (std::size_t i = 0; i < n; ++i) vec[i] += c * q[j][i];
            }
            double vnorm = std::sqrt(std::inner_product(vec.begin(), vec.end(), vec.begin(), 0.0));
            if (vnorm < 1e-12) break;
            for (auto& x : vec) x /= vnorm;
            std::vector<double> av(n);
            apply(vec, av);
            double resid = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = av[i] - lam * vec[i];
                resid += r * r;
            }
            resid = std::sqrt(resid);
            if (resid > tol * std::max(1.0, std::abs(lam))) break;
            found.push_back({lam, std::move(vec)});
        }
    }
    if (static_cast<int>(found.size()) < count)
        throw std::runtime_error("spectrum_top: converged only " + std::to_string(found.size()) +
                                 " of " + std::to_string(count) + " eigenvalues");
    std::vector<double> eigs;
    eigs.reserve(found.size());
    for (const auto& [lam, vec] : found) {
        (void)vec;
        eigs.push_back(lam);
    }
    std::sort(eigs.begin(), eigs.end(),
              [](double x, double y) { return std::abs(x) > std::abs(y); });
    eigs.resize(count);
    return eigs;
}

}  // namespace

std::vector<double> spectrum_top(const Graph& g, int count, bool force_iterative) {
    if (g.num_nodes() == 0) throw std::invalid_argument("spectrum_top: empty graph");
    count = static_cast<int>(std::min<std::uint64_t>(count, g.num_nodes()));
    if (g.num_nodes() <= 1024 && !force_iterative) return dense_spectrum(g, count);
    return lanczos_spectrum(g, count);
}

std::vector<double> closeness_values(const Graph& g, std::size_t source_budget, std::uint64_t seed) {
    if (g.num_nodes() == 0) return {};
    auto comps = connected_components(g);
    const auto& comp = *std::max_element(
        comps.begin(), comps.end(),
        [](const auto& a, const auto& b) { return a.size() < b.size(); });
    if (comp.size() < 2) return {};
    auto sources = pick_sources(comp, source_budget, seed);
    auto acc = kernels::bfs_stats(g, sources);
    std::vector<double> out;
    out.reserve(comp.size());
    const double others = static_cast<double>(comp.size() - 1);
    for (NodeId v : comp) {
        if (acc.reach_count[v] == 0) continue;  // v was the only source
        const double est_total = static_cast<double>(acc.dist_sum[v]) * others /
                                 static_cast<double>(acc.reach_count[v]);
        out.push_back(1.0 / est_total);
    }
    return out;
}

namespace {

std::map<int, double> normalize(const std::map<int, std::uint64_t>& hist) {
    double total = 0.0;
    for (const auto& [k, v] : hist) total += static_cast<double>(v);
    std::map<int, double> out;
    if (total == 0.0) return out;
    for (const auto& [k, v] : hist) out[k] = static_cast<double>(v) / total;
    return out;
}

std::vector<BinnedPair> bin_int(const std::map<int, double>& ref, const std::map<int, double>& gen,
                                int bins) {
    std::vector<BinnedPair> out;
    if (ref.empty() && gen.empty()) return out;
    int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
    for (const auto* m : {&ref, &gen})
        for (const auto& [k, v] : *m) {
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
    const double width = std::max(1.0, static_cast<double>(hi - lo + 1) / bins);
    const int used = std::min<int>(bins, hi - lo + 1);
    out.resize(used);
    for (int b = 0; b < used; ++b) {
        out[b].lo = lo + b * width;
        out[b].hi = lo + (b + 1) * width;
    }
    auto drop = [&](const std::map<int, double>& m, bool is_ref) {
        for (const auto& [k, v] : m) {
            int b = std::min<int>(used - 1, static_cast<int>((k - lo) / width));
            (is_ref ? out[b].ref : out[b].gen) += v;
        }
    };
    drop(ref, true);
    drop(gen, false);
    return out;
}

std::vector<BinnedPair> bin_real(const std::vector<double>& ref, const std::vector<double>& gen,
                                 int bins) {
    std::vector<BinnedPair> out;
    if (ref.empty() && gen.empty()) return out;
    double lo = std::numeric_limits<double>::max(), hi = std::numeric_limits<double>::lowest();
    for (const auto* v : {&ref, &gen})
        for (double x : *v) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    if (hi <= lo) hi = lo + 1e-12;
    const double width = (hi - lo) / bins;
    out.resize(bins);
    for (int b = 0; b < bins; ++b) {
        out[b].lo = lo + b * width;
        out[b].hi = lo + (b + 1) * width;
    }
    auto drop = [&](const std::vector<double>& v, bool is_ref) {
        const double unit = v.empty() ? 0.0 : 1.0 / static_cast<double>(v.size());
        for (double x : v) {
            int b = std::min<int>(bins - 1, static_cast<int>((x - lo) / width));
            (is_ref ? out[b].ref : out[b].gen) += unit;
        }
    };
    drop(ref, true);
    drop(gen, false);
    return out;
}

double binned_nmae(const std::vector<BinnedPair>& bins) {
    double mass = 0.0, err = 0.0;
    for (const auto& b : bins) {
        mass += b.ref;
        err += std::abs(b.gen - b.ref);
    }
    return mass > 0.0 ? err / mass : 0.0;
}

class StageTimer {
public:
    double ms() const { return ms_; }
    template <typename F>
    auto time(F&& f) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = f();
        ms_ = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }

private:
    double ms_ = 0.0;
};

}  // namespace

const MetricRow* ComparisonReport::find(const std::string& name) const {
    for (const auto& m : metrics)
        if (m.name == name) return &m;
    return nullptr;
}

ComparisonReport compare(const Graph& g_ref, const Graph& g_gen, const CompareBudgets& budgets) {
    if (g_ref.num_nodes() == 0 || g_gen.num_nodes() == 0)
        throw std::invalid_argument("compare: both graphs must be nonempty");
    ComparisonReport report;
    report.ref_isolated = g_ref.isolated_count();
    report.gen_isolated = g_gen.isolated_count();

    auto budget_for = [&](const Graph& g) {
        if (budgets.source_budget > 0) return budgets.source_budget;
        return g.num_nodes() <= 5000 ? static_cast<std::size_t>(g.num_nodes())
                                     : static_cast<std::size_t>(1000);
    };

    {
        MetricRow row;
        row.name = "DD";
        StageTimer tr, tg;
        auto a = tr.time([&] { return to_real(degree_distribution(g_ref)); });
        auto b = tg.time([&] { return to_real(degree_distribution(g_gen)); });
        row.nmae = nmae(b, a);
        row.ref_ms = tr.ms();
        row.gen_ms = tg.ms();
        row.bins = bin_int(a, b, budgets.bins);
        report.metrics.push_back(std::move(row));
    }
    {
        MetricRow row;
        row.name = "Knn";
        StageTimer tr, tg;
        auto a = tr.time([&] { return avg_neighbor_degree(g_ref); });
        auto b = tg.time([&] { return avg_neighbor_degree(g_gen); });
        row.nmae = nmae(b, a);
        row.ref_ms = tr.ms();
        row.gen_ms = tg.ms();
        row.bins = bin_int(a, b, budgets.bins);
        report.metrics.push_back(std::move(row));
    }
    {
        MetricRow row;
        row.name = "JDD";
        StageTimer tr, tg;
        auto a = tr.time([&] { return exact_jdd(g_ref); });
        auto b = tg.time([&] { return exact_jdd(g_gen); });
        row.nmae = nmae_jdd(b, a);
        row.ref_ms = tr.ms();
        row.gen_ms = tg.ms();
        report.metrics.push_back(std::move(row));
    }
    {
        MetricRow row;
        row.name = "CC";
        StageTimer tr, tg;
        auto a = tr.time([&] { return degree_clustering(g_ref); });
        auto b = tg.time([&] { return degree_clustering(g_gen); });
        row.nmae = a.empty() && b.empty() ? 0.0 : nmae(b, a);
        row.ref_ms = tr.ms();
        row.gen_ms = tg.ms();
        row.bins = bin_int(a, b, budgets.bins);
        report.metrics.push_back(std::move(row));
    }
    {
        MetricRow row;
        row.name = "ESP";
        StageTimer tr, tg;
        auto a = tr.time([&] { return to_real(edgewise_shared_partners(g_ref)); });
        auto b = tg.time([&] { return to_real(edgewise_shared_partners(g_gen)); });
        row.nmae = nmae(b, a);
        row.ref_ms = tr.ms();
        row.gen_ms = tg.ms();
        row.bins = bin_int(a, b, budgets.bins);
        report.metrics.push_back(std::move(row));
    }
    {
        MetricRow row;
        row.name = "Sh.P.";
        StageTimer tr, tg;
        auto a = tr.time([&] {
            return shortest_path_histogram(g_ref, budget_for(g_ref), budgets.seed);
        });
        auto b = tg.time([&] {
            return shortest_path_histogram(g_gen, budget_for(g_gen), budgets.seed + 1);
        });
        auto pa = normalize(a.hops);
        auto pb = normalize(b.hops);
        row.nmae = nmae(pb, pa);
        if (!a.exact || !b.exact) row.status = "sampled";
        row.ref_ms = tr.ms();
        row.gen_ms = tg.ms();
        row.bins = bin_int(pa, pb, budgets.bins);
        report.metrics.push_back(std::move(row));
    }
    {
        MetricRow row;
        row.name = "Cliq.";
        StageTimer tr, tg;
        auto a = tr.time([&] { return maximal_cliques(g_ref, budgets.clique_timeout_s); });
        auto b = tg.time([&] { return maximal_cliques(g_gen, budgets.clique_timeout_s); });
        auto ra = to_real(a.sizes);
        auto rb = to_real(b.sizes);
        row.nmae = nmae(rb, ra);
        if (!a.complete || !b.complete) row.status = "partial";
        row.ref_ms = tr.ms();
        row.gen_ms = tg.ms();
        row.bins = bin_int(ra, rb, budgets.bins);
        report.metrics.push_back(std::move(row));
    }
    {
        MetricRow row;
        row.name = "Cycl.";
        StageTimer tr, tg;
        auto a = tr.time([&] { return cycle_basis_distribution(g_ref, budgets.cycle_candidates); });
        auto b = tg.time([&] { return cycle_basis_distribution(g_gen, budgets.cycle_candidates); });
        if (a.computed && b.computed) {
            auto ra = to_real(a.lengths);
            auto rb = to_real(b.lengths);
            row.nmae = ra.empty() && rb.empty() ? 0.0 : nmae(rb, ra);
            row.bins = bin_int(ra, rb, budgets.bins);
        } else {
            row.status = "skipped";
        }
        row.ref_ms = tr.ms();
        row.gen_ms = tg.ms();
        report.metrics.push_back(std::move(row));
    }
    {
        MetricRow row;
        row.name = "Spect.";
        StageTimer tr, tg;
        auto a = tr.time([&] { return spectrum_top(g_ref, budgets.spectrum_count); });
        auto b = tg.time([&] { return spectrum_top(g_gen, budgets.spectrum_count); });
        row.nmae = nmae_vector(b, a);
        row.ref_ms = tr.ms();
        row.gen_ms = tg.ms();
        std::vector<BinnedPair> bins(std::max(a.size(), b.size()));
        for (std::size_t i = 0; i < bins.size(); ++i) {
            bins[i].lo = bins[i].hi = static_cast<double>(i + 1);
            bins[i].ref = i < a.size() ? a[i] : 0.0;
            bins[i].gen = i < b.size() ? b[i] : 0.0;
        }
        row.bins = std::move(bins);
        report.metrics.push_back(std::move(row));
    }
    {
        MetricRow row;
        row.name = "Closeness";
        StageTimer tr, tg;
        auto a = tr.time([&] { return closeness_values(g_ref, budget_for(g_ref), budgets.seed); });
        auto b = tg.time([&] { return closeness_values(g_gen, budget_for(g_gen), budgets.seed + 1); });
        row.bins = bin_real(a, b, budgets.bins);
        row.nmae = binned_nmae(row.bins);
        row.ref_ms = tr.ms();
        row.gen_ms = tg.ms();
        report.metrics.push_back(std::move(row));
    }
    return report;
}

void write_report(const ComparisonReport& report, const std::string& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir + "/report.txt");
        out << "metric      nmae      status    ref_ms     gen_ms\n";
        char line[160];
        for (const auto& m : report.metrics) {
            std::snprintf(line, sizeof(line), "%-10s  %-8.4f  %-8s  %-9.1f  %-9.1f\n",
                          m.name.c_str(), m.nmae, m.status.c_str(), m.ref_ms, m.gen_ms);
            out << line;
        }
        out << "# isolated nodes: ref=" << report.ref_isolated << " gen=" << report.gen_isolated
            << '\n';
    }
    {
        std::ofstream out(dir + "/report.csv");
        out << "metric,nmae,status,ref_ms,gen_ms\n";
        for (const auto& m : report.metrics)
            out << m.name << ',' << m.nmae << ',' << m.status << ',' << m.ref_ms << ',' << m.gen_ms
                << '\n';
    }
    for (const auto& m : report.metrics) {
        if (m.bins.empty()) continue;
        std::string name = m.name;
        std::replace(name.begin(), name.end(), '.', '_');
        std::ofstream out(dir + "/dist_" + name + ".csv");
        out << "lo,hi,ref,gen\n";
        for (const auto& b : m.bins)
            out << b.lo << ',' << b.hi << ',' << b.ref << ',' << b.gen << '\n';
    }
}

}  // namespace two5k
