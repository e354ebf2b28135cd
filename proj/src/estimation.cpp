#include "two5k/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "two5k/kernels.hpp"

namespace two5k {

namespace {

// Index over a trace: distinct nodes with multiplicities and occurrence
// positions, plus per-degree record counts.
struct TraceView {
    std::vector<const SampleRecord*> rec;              // slot -> record
    std::vector<std::uint64_t> count;                  // slot -> multiplicity
    std::vector<std::vector<std::uint32_t>> positions; // slot -> sorted occurrence indices
    std::unordered_map<NodeId, std::uint32_t> slot_of;
    std::map<int, std::uint64_t> records_per_degree;   // |S_k|, with multiplicity
    std::uint64_t n = 0;
    double harmonic_sum = 0.0;                         // sum over records of 1/deg

    explicit TraceView(const SampleTrace& t) {
        n = t.records.size();
        for (std::uint32_t i = 0; i < t.records.size(); ++i) {
            const auto& r = t.records[i];
            auto [it, fresh] = slot_of.try_emplace(r.node, static_cast<std::uint32_t>(rec.size()));
            if (fresh) {
                rec.push_back(&r);
                count.push_back(0);
                positions.emplace_back();
            }
            ++count[it->second];
            positions[it->second].push_back(i);
            ++records_per_degree[r.degree];
            if (r.degree > 0) harmonic_sum += 1.0 / r.degree;
        }
    }

    std::int64_t sampled_slot(NodeId v) const {
        auto it = slot_of.find(v);
        return it == slot_of.end() ? -1 : static_cast<std::int64_t>(it->second);
    }

    std::int64_t sp(std::uint32_t a, std::uint32_t b) const {
        return kernels::intersection_size(
            {rec[a]->neighbors.data(), rec[a]->neighbors.size()},
            {rec[b]->neighbors.data(), rec[b]->neighbors.size()});
    }
};

DegreeClustering finalize_ck(std::map<int, double>& num, std::map<int, double>& den,
                             const TraceView& view, EstimateDiagnostics* diag) {
    DegreeClustering ck;
    std::set<int> seen_degrees;
    for (const auto& [k, c] : view.records_per_degree) {
        (void)c;
        if (k >= 2) seen_degrees.insert(k);
    }
    std::uint64_t clamped = 0;
    for (int k : seen_degrees) {
        auto dit = den.find(k);
        if (dit == den.end() || dit->second <= 0.0) {
            if (diag) diag->ck_omitted_degrees.push_back(k);
            continue;
        }
        double v = num[k] / dit->second / (k - 1);
        if (v < 0.0 || v > 1.0) {
            ++clamped;
            v = std::clamp(v, 0.0, 1.0);
        }
        ck[k] = v;
    }
    if (diag) {
        diag->records_per_degree = view.records_per_degree;
        diag->clamped += clamped;
    }
    return ck;
}

// Independence-sample clustering estimator; weight(b) is 1 for UIS and
// 1/deg(b) for WIS (Hansen-Hurwitz with w(v)=deg(v)).
DegreeClustering ck_independence(const SampleTrace& trace, bool degree_weighted,
                                 EstimateDiagnostics* diag) {
    TraceView view(trace);
    std::map<int, double> num, den;
    for (std::uint32_t a = 0; a < view.rec.size(); ++a) {
        const int k = view.rec[a]->degree;
        if (k < 2) continue;
        double na = 0.0, da = 0.0;
        for (NodeId nb : view.rec[a]->neighbors) {
            std::int64_t b = view.sampled_slot(nb);
            if (b < 0) continue;
            const double cb = static_cast<double>(view.count[b]);
            const double w = degree_weighted ? 1.0 / view.rec[b]->degree : 1.0;
            na += static_cast<double>(view.sp(a, static_cast<std::uint32_t>(b))) * w * cb;
            da += w * cb;
        }
        num[k] += static_cast<double>(view.count[a]) * na;
        den[k] += static_cast<double>(view.count[a]) * da;
    }
    return finalize_ck(num, den, view, diag);
}

// number of occurrences j in `pos` with |j - i| > margin
double qualifying(const std::vector<std::uint32_t>& pos, std::uint32_t i, int margin) {
    const std::int64_t lo = static_cast<std::int64_t>(i) - margin;
    const std::int64_t hi = static_cast<std::int64_t>(i) + margin;
    auto first = std::lower_bound(pos.begin(), pos.end(), std::max<std::int64_t>(lo, 0));
    auto last = std::upper_bound(pos.begin(), pos.end(), hi);
    return static_cast<double>(pos.size() - (last - first));
}

void require_rw(const SampleTrace& trace, const char* who) {
    if (trace.method != SampleMethod::RW)
        throw std::invalid_argument(std::string(who) + ": trace method must be RW");
    if (trace.records.empty()) throw std::invalid_argument(std::string(who) + ": empty trace");
}

}  // namespace

DegreeClustering estimate_ck_uis(const SampleTrace& trace, EstimateDiagnostics* diag) {
    if (trace.method != SampleMethod::UIS)
        throw std::invalid_argument("estimate_ck_uis: trace method must be UIS");
    return ck_independence(trace, false, diag);
}

DegreeClustering estimate_ck_wis(const SampleTrace& trace, EstimateDiagnostics* diag) {
    if (trace.method != SampleMethod::WIS)
        throw std::invalid_argument("estimate_ck_wis: trace method must be WIS");
    return ck_independence(trace, true, diag);
}

DegreeClustering estimate_ck_rw_induced(const SampleTrace& trace, int margin,
                                        EstimateDiagnostics* diag) {
    require_rw(trace, "estimate_ck_rw_induced");
    if (margin < 0) throw std::invalid_argument("estimate_ck_rw_induced: margin must be >= 0");
    TraceView view(trace);
    std::map<int, double> num, den;
    for (std::uint32_t a = 0; a < view.rec.size(); ++a) {
        const int k = view.rec[a]->degree;
        if (k < 2) continue;
        for (NodeId nb : view.rec[a]->neighbors) {
            std::int64_t b = view.sampled_slot(nb);
            if (b < 0) continue;
            const double sp_ab = static_cast<double>(view.sp(a, static_cast<std::uint32_t>(b)));
            const double inv_deg_b = 1.0 / view.rec[b]->degree;
            double q = 0.0;
            for (std::uint32_t i : view.positions[a])
                q += qualifying(view.positions[b], i, margin);
            if (q == 0.0) continue;
            num[k] += q * sp_ab * inv_deg_b;
            den[k] += q * inv_deg_b;
        }
    }
    return finalize_ck(num, den, view, diag);
}

DegreeClustering estimate_ck_rw_traversed(const SampleTrace& trace, EstimateDiagnostics* diag) {
    require_rw(trace, "estimate_ck_rw_traversed");
    TraceView view(trace);
    std::map<int, double> num, den;
    for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
        const auto& u = trace.records[i];
        const auto& v = trace.records[i + 1];
        const double sp_uv = static_cast<double>(
            view.sp(static_cast<std::uint32_t>(view.sampled_slot(u.node)),
                    static_cast<std::uint32_t>(view.sampled_slot(v.node))));
        for (const auto* endpoint : {&u, &v}) {
            if (endpoint->degree < 2) continue;
            num[endpoint->degree] += sp_uv;
            den[endpoint->degree] += 1.0;
        }
    }
    return finalize_ck(num, den, view, diag);
}

double harmonic_mean_degree(const SampleTrace& trace) {
    TraceView view(trace);
    if (view.harmonic_sum <= 0.0) throw std::invalid_argument("harmonic_mean_degree: no positive degrees");
    return static_cast<double>(view.n) / view.harmonic_sum;
}

std::map<int, double> estimate_vk(const SampleTrace& trace, std::uint64_t known_nodes) {
    TraceView view(trace);
    std::map<int, double> vk;
    if (trace.method == SampleMethod::UIS) {
        for (const auto& [k, c] : view.records_per_degree)
            vk[k] = static_cast<double>(known_nodes) * static_cast<double>(c) /
                    static_cast<double>(view.n);
    } else {
        // degree-biased sample: |V_k| ∝ (sum over records of 1{deg=k}/deg) / (sum of 1/deg)
        for (const auto& [k, c] : view.records_per_degree) {
            if (k == 0) continue;
            vk[k] = static_cast<double>(known_nodes) * (static_cast<double>(c) / k) /
                    view.harmonic_sum;
        }
    }
    return vk;
}

namespace {

// Shared shape of the induced-edge JDD estimators: scale the observed
// edge fraction per ordered degree pair by |V_k| * |V_l|, halving the
// diagonal to match the single-count storage convention.
JddMatrix scale_induced(const std::map<std::pair<int, int>, double>& num,
                        const std::map<std::pair<int, int>, double>& den,
                        const std::map<int, double>& vk) {
    JddMatrix jdd;
    for (const auto& [kl, cnt] : num) {
        auto [k, l] = kl;
        if (k > l) continue;  // one ordered direction carries the unordered value
        auto dit = den.find(kl);
        if (dit == den.end() || dit->second <= 0.0 || cnt <= 0.0) continue;
        auto vkit = vk.find(k);
        auto vlit = vk.find(l);
        if (vkit == vk.end() || vlit == vk.end()) continue;
        double value = vkit->second * vlit->second * cnt / dit->second;
        if (k == l) value /= 2.0;  // ordered pairs count each same-degree edge twice
        if (value > 0.0) jdd.set(k, l, value);
    }
    return jdd;
}

JddMatrix jdd_independence(const SampleTrace& trace, std::uint64_t known_nodes) {
    if (known_nodes == 0) throw std::invalid_argument("jdd estimation requires known |V| > 0");
    TraceView view(trace);
    std::map<std::pair<int, int>, double> num, den;
    for (std::uint32_t a = 0; a < view.rec.size(); ++a) {
        const int k = view.rec[a]->degree;
        for (NodeId nb : view.rec[a]->neighbors) {
            std::int64_t b = view.sampled_slot(nb);
            if (b < 0) continue;
            num[{k, view.rec[b]->degree}] +=
                static_cast<double>(view.count[a]) * static_cast<double>(view.count[b]);
        }
    }
    for (const auto& [k, ck] : view.records_per_degree)
        for (const auto& [l, cl] : view.records_per_degree)
            den[{k, l}] = static_cast<double>(ck) * static_cast<double>(cl);
    return scale_induced(num, den, estimate_vk(trace, known_nodes));
}

}  // namespace

JddMatrix estimate_jdd_uis(const SampleTrace& trace, std::uint64_t known_nodes) {
    if (trace.method != SampleMethod::UIS)
        throw std::invalid_argument("estimate_jdd_uis: trace method must be UIS");
    return jdd_independence(trace, known_nodes);
}

JddMatrix estimate_jdd_wis(const SampleTrace& trace, std::uint64_t known_nodes) {
    if (trace.method != SampleMethod::WIS)
        throw std::invalid_argument("estimate_jdd_wis: trace method must be WIS");
    return jdd_independence(trace, known_nodes);
}

JddMatrix estimate_jdd_rw_induced(const SampleTrace& trace, int margin, std::uint64_t known_nodes) {
    require_rw(trace, "estimate_jdd_rw_induced");
    if (known_nodes == 0) throw std::invalid_argument("estimate_jdd_rw_induced: requires known |V|");
    TraceView view(trace);
    const std::uint32_t n = static_cast<std::uint32_t>(view.n);

    std::map<std::pair<int, int>, double> num;
    for (std::uint32_t a = 0; a < view.rec.size(); ++a) {
        const int k = view.rec[a]->degree;
        for (NodeId nb : view.rec[a]->neighbors) {
            std::int64_t b = view.sampled_slot(nb);
            if (b < 0) continue;
            double q = 0.0;
            for (std::uint32_t i : view.positions[a])
                q += qualifying(view.positions[b], i, margin);
            if (q > 0.0) num[{k, view.rec[b]->degree}] += q;
        }
    }

    // all ordered index pairs per degree pair, minus the ones within the margin
    std::map<std::pair<int, int>, double> den;
    for (const auto& [k, ck] : view.records_per_degree)
        for (const auto& [l, cl] : view.records_per_degree) {
            double total = static_cast<double>(ck) * static_cast<double>(cl);
            if (k == l) total -= static_cast<double>(ck);  // exclude i == j
            den[{k, l}] = total;
        }
    for (std::uint32_t i = 0; i < n; ++i) {
        const int di = trace.records[i].degree;
        for (std::uint32_t j = i + 1; j < std::min<std::uint64_t>(n, i + 1 + margin); ++j) {
            const int dj = trace.records[j].degree;
            den[{di, dj}] -= 1.0;
            den[{dj, di}] -= 1.0;
        }
    }
    return scale_induced(num, den, estimate_vk(trace, known_nodes));
}

JddMatrix estimate_jdd_rw_traversed(const SampleTrace& trace, std::optional<std::uint64_t> known_edges,
                                    std::optional<std::uint64_t> known_nodes) {
    require_rw(trace, "estimate_jdd_rw_traversed");
    double edge_total;
    if (known_edges) {
        edge_total = static_cast<double>(*known_edges);
    } else if (known_nodes) {
        edge_total = static_cast<double>(*known_nodes) * harmonic_mean_degree(trace) / 2.0;
    } else {
        throw std::invalid_argument("estimate_jdd_rw_traversed: requires known |E| or known |V|");
    }
    std::map<std::pair<int, int>, double> cnt;
    const std::size_t traversed = trace.records.size() - 1;
    if (traversed == 0) return {};
    for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
        int k = trace.records[i].degree;
        int l = trace.records[i + 1].degree;
        if (k > l) std::swap(k, l);
        cnt[{k, l}] += 1.0;
    }
    JddMatrix jdd;
    for (const auto& [kl, c] : cnt)
        jdd.set(kl.first, kl.second, edge_total * c / static_cast<double>(traversed));
    return jdd;
}

EstimateBundle estimate_hybrid(const SampleTrace& trace, const EstimatorConfig& cfg) {
    require_rw(trace, "estimate_hybrid");
    if (!cfg.known_nodes)
        throw std::invalid_argument("estimate_hybrid: requires known |V| for the induced-edge JDD scale");

    EstimateBundle bundle;
    const double kbar = cfg.hybrid_threshold ? *cfg.hybrid_threshold : harmonic_mean_degree(trace);

    EstimateDiagnostics te_diag, ie_diag;
    DegreeClustering ck_te = estimate_ck_rw_traversed(trace, &te_diag);
    DegreeClustering ck_ie = estimate_ck_rw_induced(trace, cfg.margin, &ie_diag);
    bundle.diagnostics.records_per_degree = te_diag.records_per_degree;
    bundle.diagnostics.clamped = te_diag.clamped + ie_diag.clamped;

    std::set<int> ck_keys;
    for (const auto& [k, v] : ck_te) ck_keys.insert(k);
    for (const auto& [k, v] : ck_ie) ck_keys.insert(k);
    for (int k : ck_keys) {
        const bool want_te = k < kbar;
        const auto& primary = want_te ? ck_te : ck_ie;
        const auto& fallback = want_te ? ck_ie : ck_te;
        auto it = primary.find(k);
        if (it != primary.end()) {
            bundle.ck[k] = it->second;
        } else {
            auto fit = fallback.find(k);
            if (fit != fallback.end()) {
                bundle.ck[k] = fit->second;
                bundle.diagnostics.notes.push_back(
                    "ck degree " + std::to_string(k) + ": only " +
                    (want_te ? std::string("IE") : std::string("TE")) + " estimate available");
            } else {
                bundle.diagnostics.ck_omitted_degrees.push_back(k);
            }
        }
    }

    JddMatrix jdd_te = estimate_jdd_rw_traversed(trace, cfg.known_edges, cfg.known_nodes);
    JddMatrix jdd_ie = estimate_jdd_rw_induced(trace, cfg.margin, *cfg.known_nodes);
    std::set<std::pair<int, int>> cells;
    for (const auto& e : jdd_te.sorted_entries()) cells.insert({e.k, e.l});
    for (const auto& e : jdd_ie.sorted_entries()) cells.insert({e.k, e.l});
    for (const auto& [k, l] : cells) {
        const bool want_te = k + l < 2.0 * kbar;
        double v = want_te ? jdd_te.at(k, l) : jdd_ie.at(k, l);
        if (v == 0.0) v = want_te ? jdd_ie.at(k, l) : jdd_te.at(k, l);
        if (v > 0.0) bundle.jdd.set(k, l, v);
    }

    bundle.vk = estimate_vk(trace, *cfg.known_nodes);
    return bundle;
}

EstimateBundle estimate_bundle(const SampleTrace& trace, const EstimatorConfig& cfg) {
    if (trace.records.empty()) throw std::invalid_argument("estimate_bundle: empty trace");
    if (trace.method == SampleMethod::RW) {
        if (cfg.rw == RwEstimator::hybrid) return estimate_hybrid(trace, cfg);
        EstimateBundle bundle;
        if (cfg.rw == RwEstimator::induced) {
            bundle.ck = estimate_ck_rw_induced(trace, cfg.margin, &bundle.diagnostics);
            if (!cfg.known_nodes)
                throw std::invalid_argument("RW induced JDD estimation requires known |V|");
            bundle.jdd = estimate_jdd_rw_induced(trace, cfg.margin, *cfg.known_nodes);
        } else {
            bundle.ck = estimate_ck_rw_traversed(trace, &bundle.diagnostics);
            bundle.jdd = estimate_jdd_rw_traversed(trace, cfg.known_edges, cfg.known_nodes);
        }
        if (cfg.known_nodes) bundle.vk = estimate_vk(trace, *cfg.known_nodes);
        return bundle;
    }
    if (!cfg.known_nodes)
        throw std::invalid_argument("independence-sample JDD estimation requires known |V|");
    EstimateBundle bundle;
    if (trace.method == SampleMethod::UIS) {
        bundle.ck = estimate_ck_uis(trace, &bundle.diagnostics);
        bundle.jdd = estimate_jdd_uis(trace, *cfg.known_nodes);
    } else {
        bundle.ck = estimate_ck_wis(trace, &bundle.diagnostics);
        bundle.jdd = estimate_jdd_wis(trace, *cfg.known_nodes);
    }
    bundle.vk = estimate_vk(trace, *cfg.known_nodes);
    return bundle;
}

void save_bundle(const EstimateBundle& b, const std::string& dir) {
    std::filesystem::create_directories(dir);
    save_jdd(b.jdd, dir + "/jdd.txt");
    save_ck(b.ck, dir + "/ck.txt");
    {
        std::ofstream out(dir + "/vk.txt");
        for (const auto& [k, v] : b.vk) out << k << ' ' << format_count(v) << '\n';
    }
    std::ofstream out(dir + "/diagnostics.txt");
    out << "# per-degree sample support\n";
    for (const auto& [k, c] : b.diagnostics.records_per_degree) out << "support " << k << ' ' << c << '\n';
    out << "clamped " << b.diagnostics.clamped << '\n';
    for (int k : b.diagnostics.ck_omitted_degrees) out << "ck_omitted " << k << '\n';
    for (const auto& n : b.diagnostics.notes) out << "# " << n << '\n';
}

EstimateBundle load_bundle(const std::string& dir) {
    EstimateBundle b;
    b.jdd = load_jdd(dir + "/jdd.txt");
    b.ck = load_ck(dir + "/ck.txt");
    std::ifstream in(dir + "/vk.txt");
    if (in) {
        int k;
        double v;
        while (in >> k >> v) b.vk[k] = v;
    }
    return b;
}

}  // namespace two5k
