// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
// Real-dataset checks activate when edge lists are present under ./data (see
// README); without them the affected checks run on synthetic stand-ins at the
// same scale and the dataset-bound lines report SKIP.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <optional>

#include "test_support.hpp"
#include "two5k/estimation.hpp"
#include "two5k/generation.hpp"
#include "two5k/graph_metrics.hpp"
#include "two5k/kernels.hpp"
#include "two5k/metrics.hpp"
#include "two5k/postprocess.hpp"
#include "two5k/sampling.hpp"
#include "two5k/synthetic.hpp"

using namespace two5k;
using namespace two5k::testing;

namespace {

int g_failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
    std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void skip(const std::string& id, const std::string& why) {
    std::printf("[SKIP] %s: %s\n", id.c_str(), why.c_str());
    std::fflush(stdout);
}

double wall_s() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

SampleTrace full_census(const Graph& g, std::uint64_t seed) {
    std::vector<NodeId> ids(g.num_nodes());
    std::iota(ids.begin(), ids.end(), 0);
    Rng rng(seed);
    rng.shuffle(ids);
    SampleTrace t{SampleMethod::UIS, seed, {}, false};
    for (NodeId v : ids) {
        auto nb = g.neighbors(v);
        t.records.push_back({v, g.degree(v), {nb.begin(), nb.end()}});
    }
    return t;
}

McmcConfig mcmc_config(std::uint64_t seed, McmcVariant variant, double time_budget_s) {
    McmcConfig cfg;
    cfg.variant = variant;
    cfg.seed = seed;
    cfg.time_budget_s = time_budget_s;
    cfg.progress_interval = 1 << 22;
    return cfg;
}

struct NamedGraph {
    std::string name;
    Graph graph;
};

std::vector<NamedGraph> generation_corpus() {
    std::vector<NamedGraph> corpus;
    corpus.push_back({"K6", complete_graph(6)});
    corpus.push_back({"star30", star_graph(30)});
    corpus.push_back({"path50", path_graph(50)});
    corpus.push_back({"cycle40", cycle_graph(40)});
    corpus.push_back({"ws200", largest_component(watts_strogatz(200, 8, 0.05, 101))});
    corpus.push_back({"ws1000", largest_component(watts_strogatz(1000, 10, 0.05, 102))});
    corpus.push_back({"plc500", largest_component(powerlaw_cluster(500, 4, 0.7, 103))});
    corpus.push_back({"plc2000", largest_component(powerlaw_cluster(2000, 5, 0.8, 104))});
    corpus.push_back({"plc5000", largest_component(powerlaw_cluster(5000, 4, 0.6, 105))});
    return corpus;
}

std::optional<Graph> load_dataset_graph(const char* file) {
    auto path = dataset_path(file);
    if (!path) return std::nullopt;
    return largest_component(load_edge_list(*path));
}

// ---- criterion 1: exact-JDD generation ----
void criterion_1(const std::vector<NamedGraph>& corpus) {
    bool pass = true;
    std::string detail;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& [name, g] = corpus[i];
        TargetSpec spec = target_from_graph(g);
        McmcConfig cfg = mcmc_config(900 + i, McmcVariant::improved, 60.0);
        auto t0 = wall_s();
        GenerateResult r = generate_25k(spec, cfg);
        double total = wall_s() - t0;
        double diff = JddMatrix::absolute_difference(exact_jdd(r.graph), spec.jdd);
        if (diff != 0.0) {
            pass = false;
            detail += name + " JDD off by " + std::to_string(diff) + "; ";
        }
        detail += name + " " + std::to_string(total).substr(0, 5) + "s; ";
    }
    report("criterion 1 (exact-JDD generation, NMAE(JDD)=0)", pass, detail);
}

// ---- criterion 2: clustering convergence at CAIDA scale ----
void criterion_2() {
    const double budget_s = 1800.0;
    auto run = [&](const std::string& id, const Graph& g) {
        TargetSpec spec = target_from_graph(g);
        McmcConfig cfg = mcmc_config(77, McmcVariant::improved, budget_s);
        auto t0 = wall_s();
        GenerateResult r = generate_25k(spec, cfg);
        double total = wall_s() - t0;
        bool pass = r.converged && r.mcmc.final_nmae < 0.02 && total <= budget_s;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "N=%u, NMAE %.4f, construction %.1fs, MCMC %.1fs",
                      g.num_nodes(), r.mcmc.final_nmae, r.construction_s, r.mcmc.elapsed_s);
        report(id, pass, buf);
    };

    if (auto caida = load_dataset_graph("caida-as.txt")) {
        run("criterion 2 (CAIDA AS: c(k) NMAE < 0.02 within 30 min)", *caida);
    } else {
        skip("criterion 2 (CAIDA AS dataset)", "data/caida-as.txt not supplied");
        Graph standin = largest_component(powerlaw_cluster(26475, 2, 0.6, 106));
        run("criterion 2s (synthetic stand-in at CAIDA scale)", standin);
    }
}

// ---- criterion 3: generation speed ordering ----
void criterion_3_one(const std::string& id, const Graph& g, std::uint64_t seed) {
    TargetSpec spec = target_from_graph(g);

    auto timed = [&](bool rich, McmcVariant variant, double budget) {
        McmcConfig cfg = mcmc_config(seed, variant, budget);
        auto t0 = wall_s();
        GenerateResult r = rich ? generate_25k(spec, cfg) : generate_2k_mcmc(spec, cfg);
        double total = wall_s() - t0;
        return std::pair<double, bool>(total, r.converged);
    };

    auto [t_imp, ok_imp] = timed(true, McmcVariant::improved, 0.0);
    auto [t_plain, ok_plain] = timed(true, McmcVariant::plain, 0.0);
    // the triangle-poor baseline may be hopeless; censor it at a budget that
    // still decides both the ordering and the 5x factor
    double censor = std::max(60.0, 6.0 * std::max(t_imp, t_plain));
    auto [t_2k, ok_2k] = timed(false, McmcVariant::plain, censor);

    bool ordering = ok_imp && ok_plain && t_imp <= t_plain && t_plain <= t_2k;
    bool factor = t_2k >= 5.0 * t_plain;
    char buf[200];
    std::snprintf(buf, sizeof(buf), "2KT+imp %.1fs, 2KT+plain %.1fs, 2K+plain %s%.1fs",
                  t_imp, t_plain, ok_2k ? "" : ">=", t_2k);
    report(id + " ordering", ordering, buf);
    std::snprintf(buf, sizeof(buf), "2K+plain / 2KT+plain = %.1fx (need >= 5)", t_2k / t_plain);
    report(id + " 5x factor", factor, buf);
}

void criterion_3() {
    Graph synth = largest_component(powerlaw_cluster(5000, 4, 0.7, 107));
    criterion_3_one("criterion 3 (5000-node synthetic)", synth, 301);
    if (auto caida = load_dataset_graph("caida-as.txt")) {
        TargetSpec spec = target_from_graph(*caida);
        McmcConfig imp = mcmc_config(302, McmcVariant::improved, 1800.0);
        auto t0 = wall_s();
        GenerateResult ri = generate_25k(spec, imp);
        double t_imp = wall_s() - t0;
        McmcConfig plain = mcmc_config(302, McmcVariant::plain, 1800.0);
        t0 = wall_s();
        GenerateResult rp = generate_25k(spec, plain);
        double t_plain = wall_s() - t0;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "2KT+imp %.1fs, 2KT+plain %.1fs", t_imp, t_plain);
        report("criterion 3 (CAIDA ordering: improved <= plain)",
               ri.converged && rp.converged && t_imp <= t_plain, buf);
    } else {
        skip("criterion 3 (CAIDA timing rows)", "data/caida-as.txt not supplied");
    }
}

// ---- criterion 4: triangle-rich construction overshoots the target ----
void criterion_4(const std::vector<NamedGraph>& corpus) {
    bool pass = true;
    std::string detail;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& [name, g] = corpus[i];
        double source_c = mean_clustering(g);
        if (source_c < 0.1) continue;
        TargetSpec spec = target_from_graph(g);
        Graph rich = construct_2kt(spec, 400 + i);
        double got = mean_clustering(rich);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s %.3f>%.3f; ", name.c_str(), got, source_c);
        detail += buf;
        if (got <= source_c) pass = false;
    }
    report("criterion 4 (2K-T overshoots target clustering)", pass, detail);
}

// ---- criterion 5: estimator exactness at full coverage ----
void criterion_5() {
    std::vector<Graph> corpus;
    corpus.push_back(complete_graph(3));
    corpus.push_back(complete_graph(6));
    corpus.push_back(star_graph(8));
    corpus.push_back(path_graph(9));
    corpus.push_back(cycle_graph(7));
    corpus.push_back(k4_minus_edge());
    corpus.push_back(gnp_graph(20, 0.3, 501));
    corpus.push_back(gnp_graph(30, 0.2, 502));
    corpus.push_back(largest_component(watts_strogatz(30, 4, 0.2, 503)));
    bool pass = true;
    std::string detail = std::to_string(corpus.size()) + " graphs <= 30 nodes, tolerance 1e-9";
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Graph& g = corpus[i];
        auto trace = full_census(g, 510 + i);
        auto ck = estimate_ck_uis(trace);
        auto exact_ck = degree_clustering(g);
        if (ck.size() != exact_ck.size()) pass = false;
        for (const auto& [k, v] : exact_ck) {
            auto it = ck.find(k);
            if (it == ck.end() || std::abs(it->second - v) > 1e-9) pass = false;
        }
        if (g.num_edges() > 0) {
            auto jdd = estimate_jdd_uis(trace, g.num_nodes());
            if (JddMatrix::absolute_difference(jdd, exact_jdd(g)) > 1e-9) pass = false;
        }
    }
    report("criterion 5 (UIS full-coverage exactness)", pass, detail);
}

// ---- criterion 6: estimator consistency + smoothing gain ----
void criterion_6(const Graph& g, double* perturbation_out) {
    const std::vector<double> pcts{5.0, 10.0, 20.0, 40.0};
    const int seeds = 20;
    EstimatorConfig cfg;
    cfg.known_nodes = g.num_nodes();
    cfg.known_edges = g.num_edges();
    auto exact_ck = degree_clustering(g);
    auto exact_j = exact_jdd(g);

    std::vector<double> ck_curve(pcts.size(), 0.0), jdd_curve(pcts.size(), 0.0);
    double smooth_gain_base = 0.0, smooth_gain_smoothed = 0.0;
    double perturbation = 0.0;
    int perturbation_runs = 0;

    for (std::size_t pi = 0; pi < pcts.size(); ++pi) {
        for (int s = 0; s < seeds; ++s) {
            auto trace = sample_rw(g, sample_size_from_pct(g, pcts[pi]),
                                   600 + s * 7 + static_cast<std::uint64_t>(pi), {});
            auto bundle = estimate_hybrid(trace, cfg);
            ck_curve[pi] += nmae(bundle.ck, exact_ck) / seeds;
            jdd_curve[pi] += nmae_jdd(bundle.jdd, exact_j) / seeds;
            if (pcts[pi] == 20.0) {
                smooth_gain_base += nmae_jdd(bundle.jdd, exact_j) / seeds;
                smooth_gain_smoothed += nmae_jdd(smooth_jdd(bundle.jdd), exact_j) / seeds;
                PostprocessOptions opts;
                opts.seed = 600 + s;
                PostprocessReport rep;
                build_target(bundle, opts, &rep);
                perturbation += rep.units_changed / rep.mass_before;
                ++perturbation_runs;
            }
        }
    }
    *perturbation_out = perturbation / perturbation_runs;

    auto decreasing_with_one_inversion = [](const std::vector<double>& curve) {
        int inversions = 0;
        for (std::size_t i = 1; i < curve.size(); ++i)
            if (curve[i] > curve[i - 1]) ++inversions;
        return curve.back() < curve.front() && inversions <= 1;
    };

    char buf[240];
    std::snprintf(buf, sizeof(buf),
                  "ck NMAE %.3f/%.3f/%.3f/%.3f, JDD NMAE %.3f/%.3f/%.3f/%.3f at 5/10/20/40%%",
                  ck_curve[0], ck_curve[1], ck_curve[2], ck_curve[3], jdd_curve[0], jdd_curve[1],
                  jdd_curve[2], jdd_curve[3]);
    bool pass = ck_curve[2] < 0.30 && jdd_curve[2] < 0.30 &&
                decreasing_with_one_inversion(ck_curve) &&
                decreasing_with_one_inversion(jdd_curve);
    report("criterion 6 (hybrid estimator consistency)", pass, buf);

    std::snprintf(buf, sizeof(buf), "JDD NMAE %.3f raw vs %.3f smoothed at 20%%",
                  smooth_gain_base, smooth_gain_smoothed);
    report("criterion 6 (smoothing reduces JDD error)",
           smooth_gain_smoothed < smooth_gain_base, buf);
}

// ---- criterion 7: realizability property + bounded perturbation ----
void criterion_7(double pipeline_perturbation) {
    Rng rng(700);
    const int trials = 10000;
    int bad = 0;
    for (int trial = 0; trial < trials; ++trial) {
        Graph g;
        switch (rng.below(3)) {
            case 0: g = gnp_graph(10 + rng.below32(80), 0.05 + 0.25 * rng.canonical(), rng.next()); break;
            case 1: g = watts_strogatz(20 + rng.below32(80), 4, 0.3, rng.next()); break;
            default: g = powerlaw_cluster(20 + rng.below32(80), 2, 0.5, rng.next()); break;
        }
        if (g.num_edges() == 0) continue;
        auto jdd = exact_jdd(g);
        auto entries = jdd.sorted_entries();
        for (int hits = 0; hits < 8; ++hits) {
            const auto& e = entries[rng.below(entries.size())];
            double delta = static_cast<double>(rng.below(5)) - 2.0;
            jdd.set(e.k, e.l, std::max(0.0, e.count + delta));
        }
        try {
            auto r = repair_realizability(jdd, rng.next());
            if (!verify_realizability(r.spec.jdd).pass) ++bad;
        } catch (const RepairFailure&) {
            ++bad;
        }
    }
    report("criterion 7 (repair always yields a realizable matrix)", bad == 0,
           std::to_string(trials) + " perturbed matrices, " + std::to_string(bad) + " failures");

    char buf[120];
    std::snprintf(buf, sizeof(buf), "mean repair perturbation %.2f%% of edge mass (limit 5%%)",
                  100.0 * pipeline_perturbation);
    report("criterion 7 (pipeline perturbation within 5%)", pipeline_perturbation <= 0.05, buf);
}

// ---- criterion 8: metric-suite oracle checks ----
void criterion_8() {
    {
        Graph g = largest_component(watts_strogatz(150, 6, 0.1, 801));
        CompareBudgets budgets;
        budgets.source_budget = g.num_nodes();
        auto rep = compare(g, g, budgets);
        bool pass = true;
        for (const auto& m : rep.metrics)
            if (m.nmae > 1e-12) pass = false;
        report("criterion 8 (self-comparison scores zero)", pass,
               std::to_string(rep.metrics.size()) + " metrics");
    }

    std::int64_t checked = 0, bad = 0;
    for (int n = 2; n <= 7; ++n) {
        const std::int64_t masks = static_cast<std::int64_t>(mask_count(n));
#pragma omp parallel for schedule(dynamic, 4096) reduction(+ : checked, bad)
        for (std::int64_t mask = 0; mask < masks; ++mask) {
            Graph g = graph_from_mask(n, static_cast<std::uint64_t>(mask));
            ++checked;
            bool ok = true;
            ok &= kernels::serial::triangle_counts(g) == oracle_triangles(g);
            ok &= edgewise_shared_partners(g) == oracle_esp(g);
            ok &= maximal_cliques(g).sizes == oracle_cliques(g);
            auto cb = cycle_basis_distribution(g);
            ok &= cb.computed && cb.basis_size == oracle_cycle_rank(g);
            ok &= shortest_path_histogram(g, n).hops == oracle_hops(g);
            if (g.num_edges() > 0) ok &= verify_realizability(oracle_jdd(g)).pass;
            if (!ok) ++bad;
        }
    }
    report("criterion 8 (brute-force equivalence on all graphs <= 7 nodes)", bad == 0,
           std::to_string(checked) + " graphs, " + std::to_string(bad) + " mismatches");
}

// ---- criterion 9: sampled 2.5K beats sampled 2K on CC, ESP, spectrum ----
void criterion_9(const Graph& g) {
    auto trace = sample_rw(g, sample_size_from_pct(g, 20.0), 901, {});
    EstimatorConfig cfg;
    cfg.known_nodes = g.num_nodes();
    cfg.known_edges = g.num_edges();
    auto bundle = estimate_hybrid(trace, cfg);
    PostprocessOptions opts;
    opts.seed = 902;
    TargetSpec spec = build_target(bundle, opts);

    GenerateResult r25 = generate_25k(spec, mcmc_config(903, McmcVariant::improved, 300.0));
    Graph g2k = construct_2k_baseline(spec, 904);

    CompareBudgets budgets;
    budgets.source_budget = g.num_nodes();
    auto rep25 = compare(g, r25.graph, budgets);
    auto rep2k = compare(g, g2k, budgets);

    bool pass = true;
    std::string detail;
    for (const char* name : {"CC", "ESP", "Spect."}) {
        const auto* a = rep25.find(name);
        const auto* b = rep2k.find(name);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s 2.5K %.3f vs 2K %.3f; ", name, a->nmae, b->nmae);
        detail += buf;
        if (!(a->nmae < b->nmae)) pass = false;
    }
    report("criterion 9 (sampled 2.5K beats 2K on CC, ESP, spectrum)", pass, detail);

    if (auto caida = load_dataset_graph("caida-as.txt")) {
        TargetSpec full = target_from_graph(*caida);
        GenerateResult r = generate_25k(full, mcmc_config(905, McmcVariant::improved, 1800.0));
        CompareBudgets b;
        auto rep = compare(*caida, r.graph, b);
        struct Cell {
            const char* name;
            double expect;
        };
        // full-knowledge 2.5K row for this dataset
        const Cell cells[] = {{"CC", 0.02}, {"ESP", 0.03}, {"Sh.P.", 0.08}, {"Spect.", 0.04}};
        bool ok = true;
        std::string detail2;
        for (const auto& cell : cells) {
            const auto* m = rep.find(cell.name);
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%s %.3f (expect %.2f +- 0.05); ", cell.name, m->nmae,
                          cell.expect);
            detail2 += buf;
            if (std::abs(m->nmae - cell.expect) > 0.05) ok = false;
        }
        report("criterion 9 (CAIDA full-knowledge 2.5K row)", ok, detail2);
    } else {
        skip("criterion 9 (full-table dataset rows)", "datasets not supplied");
    }
}

}  // namespace

int main() {
    std::printf("acceptance suite, %d threads\n", omp_get_max_threads());
    auto corpus = generation_corpus();

    double t0 = wall_s();
    criterion_1(corpus);
    criterion_2();
    criterion_3();
    criterion_4(corpus);
    criterion_5();

    Graph consistency_graph = largest_component(powerlaw_cluster(1000, 4, 0.7, 600));
    double pipeline_perturbation = 0.0;
    criterion_6(consistency_graph, &pipeline_perturbation);
    criterion_7(pipeline_perturbation);
    criterion_8();
    criterion_9(consistency_graph);

    std::printf("acceptance finished in %.1fs with %d failure(s)\n", wall_s() - t0, g_failures);
    return g_failures == 0 ? 0 : 1;
}
