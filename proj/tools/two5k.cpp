// Command-line front end: sample -> estimate -> postprocess -> generate ->
// compare, as composable subcommands plus a one-shot pipeline.
//
// Exit codes: 0 success, 2 validation error, 3 stage failure,
// 4 generator did not converge (outputs still written).

#include "CLI11.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "two5k/estimation.hpp"
#include "two5k/generation.hpp"
#include "two5k/graph.hpp"
#include "two5k/graph_metrics.hpp"
#include "two5k/metrics.hpp"
#include "two5k/postprocess.hpp"
#include "two5k/sampling.hpp"

namespace fs = std::filesystem;
using namespace two5k;

namespace {

constexpr const char* kVersion = "two5k 0.1.0";

struct StageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double now_s() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

void write_manifest(CLI::App& app, const std::string& path,
                    const std::vector<std::pair<std::string, double>>& timings) {
    std::ofstream out(path);
    out << "# " << kVersion << "\n";
    out << app.config_to_str(true, true);
    for (const auto& [stage, secs] : timings) out << "# timing " << stage << " " << secs << "s\n";
}

Graph load_input_graph(const std::string& path, bool use_lcc) {
    LoadReport rep;
    Graph g = load_edge_list(path, &rep);
    std::cout << "loaded " << path << ": " << g.num_nodes() << " nodes, " << g.num_edges()
              << " edges (dropped " << rep.self_loops_dropped << " self-loops, "
              << rep.duplicates_dropped << " duplicates)\n";
    if (use_lcc && !is_connected(g)) {
        Graph lcc = largest_component(g);
        std::cout << "input is disconnected; using the largest component: " << lcc.num_nodes()
                  << " nodes, " << lcc.num_edges() << " edges\n";
        return lcc;
    }
    return g;
}

// ---- option bags shared between the stage subcommands and the pipeline ----

struct SampleOpts {
    std::string method = "rw";
    double pct = 20.0;
    std::uint64_t n_abs = 0;  // overrides pct when nonzero
    std::uint64_t seed = 1;
    std::int64_t start = -1;
    std::uint64_t burnin = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--method", method, "sampling method: uis, wis or rw")
            ->check(CLI::IsMember({"uis", "wis", "rw"}, CLI::ignore_case));
        cmd->add_option("--pct", pct, "sample length as a percentage of |V|")
            ->check(CLI::Range(0.0001, 100.0));
        cmd->add_option("--n", n_abs, "absolute sample length (overrides --pct)");
        cmd->add_option("--seed", seed, "sampler seed");
        cmd->add_option("--start", start, "random-walk start node (default: random)");
        cmd->add_option("--burnin", burnin, "random-walk steps discarded before recording");
    }

    SampleTrace run(const Graph& g) const {
        std::size_t n = n_abs ? n_abs : sample_size_from_pct(g, pct);
        SampleMethod m = sample_method_from_string(method);
        switch (m) {
            case SampleMethod::UIS: return sample_uis(g, n, seed);
            case SampleMethod::WIS: return sample_wis(g, n, seed);
            default: {
                RwOptions opts;
                if (start >= 0) opts.start = static_cast<NodeId>(start);
                opts.burnin = burnin;
                return sample_rw(g, n, seed, opts);
            }
        }
    }
};

struct EstimateOpts {
    int margin = 50;
    std::string rw_estimator = "hybrid";
    double hybrid_threshold = 0.0;
    std::uint64_t known_n = 0;
    std::uint64_t known_e = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--margin", margin, "random-walk induced-edge safety margin M")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--rw-estimator", rw_estimator, "hybrid, induced or traversed")
            ->check(CLI::IsMember({"hybrid", "induced", "traversed"}, CLI::ignore_case));
        cmd->add_option("--hybrid-threshold", hybrid_threshold,
                        "degree threshold for the hybrid switch (default: estimated)");
        cmd->add_option("--known-n", known_n, "|V| of the sampled graph, when known");
        cmd->add_option("--known-e", known_e, "|E| of the sampled graph, when known");
    }

    EstimatorConfig config() const {
        EstimatorConfig cfg;
        cfg.margin = margin;
        if (hybrid_threshold > 0.0) cfg.hybrid_threshold = hybrid_threshold;
        if (known_n) cfg.known_nodes = known_n;
        if (known_e) cfg.known_edges = known_e;
        std::string r = rw_estimator;
        std::transform(r.begin(), r.end(), r.begin(), ::tolower);
        cfg.rw = r == "induced"     ? RwEstimator::induced
                 : r == "traversed" ? RwEstimator::traversed
                                    : RwEstimator::hybrid;
        return cfg;
    }
};

struct PostprocessOpts {
    bool no_smooth = false;
    std::uint64_t seed = 1;

    void attach(CLI::App* cmd) {
        cmd->add_flag("--no-smooth", no_smooth, "skip Gaussian kernel smoothing");
        cmd->add_option("--pp-seed", seed, "stochastic rounding / repair seed");
    }

    PostprocessOptions config() const {
        PostprocessOptions opts;
        opts.smooth = !no_smooth;
        opts.seed = seed;
        return opts;
    }
};

struct GenerateOpts {
    std::string generator = "2kt";
    std::string mcmc = "improved";
    double nmae_stop = 0.02;
    std::uint64_t max_swaps = 0;
    double time_budget = 0.0;
    std::uint64_t seed = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--generator", generator, "construction: 2kt (triangle-rich) or 2k")
            ->check(CLI::IsMember({"2kt", "2k"}, CLI::ignore_case));
        cmd->add_option("--mcmc", mcmc, "swap targeting: improved or plain")
            ->check(CLI::IsMember({"improved", "plain"}, CLI::ignore_case));
        cmd->add_option("--nmae-stop", nmae_stop, "clustering NMAE stopping threshold")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--max-swaps", max_swaps, "accepted-swap cap (default 500|E|)");
        cmd->add_option("--time-budget", time_budget, "MCMC wall-clock budget in seconds");
        cmd->add_option("--gen-seed", seed, "generator seed");
    }

    McmcConfig config(const std::string& trace_csv) const {
        McmcConfig cfg;
        cfg.variant = mcmc == "plain" ? McmcVariant::plain : McmcVariant::improved;
        cfg.nmae_stop = nmae_stop;
        cfg.max_swaps = max_swaps;
        cfg.time_budget_s = time_budget;
        cfg.seed = seed;
        if (!trace_csv.empty()) {
            auto sink = std::make_shared<std::ofstream>(trace_csv);
            *sink << "swaps,elapsed_ms,nmae,mean_clustering\n";
            cfg.on_progress = [sink](const McmcProgress& p) {
                *sink << p.swaps << ',' << p.elapsed_ms << ',' << p.nmae << ','
                      << p.mean_clustering << '\n';
            };
        }
        return cfg;
    }

    GenerateResult run(const TargetSpec& spec, const std::string& trace_csv) const {
        McmcConfig cfg = config(trace_csv);
        return generator == "2k" ? generate_2k_mcmc(spec, cfg) : generate_25k(spec, cfg);
    }
};

struct CompareOpts {
    std::size_t sources = 0;
    std::uint64_t cycle_budget = 200000;
    double clique_timeout = 120.0;
    int bins = 30;
    std::uint64_t seed = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--sources", sources,
                        "BFS source budget (default: exact up to 5000 nodes, then 1000)");
        cmd->add_option("--cycle-budget", cycle_budget, "cycle-basis candidate budget");
        cmd->add_option("--clique-timeout", clique_timeout, "maximal-clique timeout in seconds");
        cmd->add_option("--bins", bins, "intervals for the binned distribution files")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--metric-seed", seed, "source-sampling seed");
    }

    CompareBudgets config() const {
        CompareBudgets b;
        b.source_budget = sources;
        b.cycle_candidates = cycle_budget;
        b.clique_timeout_s = clique_timeout;
        b.bins = bins;
        b.seed = seed;
        return b;
    }
};

void print_report(const ComparisonReport& report) {
    std::cout << "metric      nmae     status\n";
    for (const auto& m : report.metrics) {
        char line[96];
        std::snprintf(line, sizeof(line), "%-10s  %-7.4f  %s\n", m.name.c_str(), m.nmae,
                      m.status.c_str());
        std::cout << line;
    }
}

int aggregate_runs(const std::string& out_dir, int runs) {
    // mean/stddev per metric across run_*/compare/report.csv
    std::map<std::string, std::vector<double>> values;
    for (int r = 0; r < runs; ++r) {
        std::ifstream in(out_dir + "/run_" + std::to_string(r) + "/compare/report.csv");
        if (!in) return 1;
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string name, nmae_s;
            std::getline(ls, name, ',');
            std::getline(ls, nmae_s, ',');
            values[name].push_back(std::stod(nmae_s));
        }
    }
    std::ofstream out(out_dir + "/aggregate.csv");
    out << "metric,runs,nmae_mean,nmae_stddev\n";
    std::cout << "aggregate over " << runs << " runs:\n";
    for (const auto& [name, v] : values) {
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        double sd = v.size() > 1 ? std::sqrt(var / (static_cast<double>(v.size()) - 1)) : 0.0;
        out << name << ',' << v.size() << ',' << mean << ',' << sd << '\n';
        char line[96];
        std::snprintf(line, sizeof(line), "  %-10s mean %-8.4f stddev %-8.4f\n", name.c_str(),
                      mean, sd);
        std::cout << line;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"joint-degree + clustering graph sampling, estimation and generation toolkit"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "read options from a key=value config file (manifest replay)");
    app.require_subcommand(1);

    // ---- sample ----
    auto* cmd_sample = app.add_subcommand("sample", "sample a known graph into a trace file");
    std::string in_path, out_path;
    SampleOpts sample_opts;
    cmd_sample->add_option("--input", in_path, "edge-list file")->required();
    cmd_sample->add_option("--out", out_path, "output trace file")->required();
    sample_opts.attach(cmd_sample);

    // ---- estimate ----
    auto* cmd_estimate = app.add_subcommand("estimate", "estimate JDD and c(k) from a trace");
    std::string est_in, est_out;
    EstimateOpts est_opts;
    cmd_estimate->add_option("--input", est_in, "trace file")->required();
    cmd_estimate->add_option("--out", est_out, "output directory")->required();
    est_opts.attach(cmd_estimate);

    // ---- postprocess ----
    auto* cmd_post = app.add_subcommand("postprocess", "turn raw estimates into a realizable target");
    std::string post_jdd, post_ck, post_out;
    PostprocessOpts post_opts;
    cmd_post->add_option("--jdd", post_jdd, "estimated JDD file")->required();
    cmd_post->add_option("--ck", post_ck, "estimated c(k) file")->required();
    cmd_post->add_option("--out", post_out, "output target-spec file")->required();
    post_opts.attach(cmd_post);

    // ---- generate ----
    auto* cmd_gen = app.add_subcommand("generate", "construct a graph from a target spec");
    std::string gen_spec, gen_out, gen_trace, gen_pairings;
    GenerateOpts gen_opts;
    cmd_gen->add_option("--spec", gen_spec, "target-spec file")->required();
    cmd_gen->add_option("--out", gen_out, "output edge-list file")->required();
    cmd_gen->add_option("--trace-out", gen_trace, "convergence trace CSV");
    cmd_gen->add_option("--pairings-csv", gen_pairings,
                        "also time all four construction/MCMC pairings into this CSV");
    gen_opts.attach(cmd_gen);

    // ---- compare ----
    auto* cmd_cmp = app.add_subcommand("compare", "score a generated graph against a reference");
    std::string cmp_ref, cmp_gen, cmp_out;
    CompareOpts cmp_opts;
    cmd_cmp->add_option("--ref", cmp_ref, "reference edge-list file")->required();
    cmd_cmp->add_option("--gen", cmp_gen, "generated edge-list file")->required();
    cmd_cmp->add_option("--out", cmp_out, "output directory")->required();
    cmp_opts.attach(cmd_cmp);

    // ---- pipeline ----
    auto* cmd_pipe = app.add_subcommand("pipeline", "sample, estimate, postprocess, generate, compare");
    std::string pipe_in, pipe_out;
    int pipe_runs = 1;
    SampleOpts p_sample;
    EstimateOpts p_est;
    PostprocessOpts p_post;
    GenerateOpts p_gen;
    CompareOpts p_cmp;
    cmd_pipe->add_option("--input", pipe_in, "edge-list file")->required();
    cmd_pipe->add_option("--out", pipe_out, "output directory")->required();
    cmd_pipe->add_option("--runs", pipe_runs, "seeded repetitions, aggregated")->check(CLI::PositiveNumber);
    p_sample.attach(cmd_pipe);
    p_est.attach(cmd_pipe);
    p_post.attach(cmd_pipe);
    p_gen.attach(cmd_pipe);
    p_cmp.attach(cmd_pipe);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::vector<std::pair<std::string, double>> timings;
    try {
        if (*cmd_sample) {
            Graph g = load_input_graph(in_path, true);
            double t0 = now_s();
            SampleTrace trace = sample_opts.run(g);
            timings.push_back({"sample", now_s() - t0});
            if (trace.disconnected_warning)
                std::cout << "warning: walk confined to the start component\n";
            save_trace(trace, out_path);
            write_manifest(app, out_path + ".manifest", timings);
            std::cout << "wrote " << trace.records.size() << " records to " << out_path << '\n';
            return 0;
        }

        if (*cmd_estimate) {
            SampleTrace trace = load_trace(est_in);
            double t0 = now_s();
            EstimateBundle bundle = estimate_bundle(trace, est_opts.config());
            timings.push_back({"estimate", now_s() - t0});
            save_bundle(bundle, est_out);
            write_manifest(app, est_out + "/manifest.txt", timings);
            std::cout << "estimated " << bundle.jdd.size() << " JDD cells and " << bundle.ck.size()
                      << " c(k) degrees into " << est_out << '\n';
            return 0;
        }

        if (*cmd_post) {
            EstimateBundle bundle;
            bundle.jdd = load_jdd(post_jdd);
            bundle.ck = load_ck(post_ck);
            PostprocessReport rep;
            double t0 = now_s();
            TargetSpec spec = build_target(bundle, post_opts.config(), &rep);
            timings.push_back({"postprocess", now_s() - t0});
            save_target(spec, post_out);
            write_manifest(app, post_out + ".manifest", timings);
            std::cout << (rep.smoothed ? "smoothed; " : "smoothing skipped; ") << "changed "
                      << rep.units_changed << " of " << rep.mass_before
                      << " edge units during repair";
            if (!rep.dropped_ck_degrees.empty())
                std::cout << "; dropped " << rep.dropped_ck_degrees.size()
                          << " c(k) degrees absent from the repaired target";
            std::cout << "\nwrote " << post_out << " (N=" << spec.n_nodes << ", "
                      << format_count(spec.jdd.total_mass()) << " edges)\n";
            return 0;
        }

        if (*cmd_gen) {
            TargetSpec spec = load_target(gen_spec);
            if (!gen_pairings.empty()) {
                std::ofstream csv(gen_pairings);
                csv << "construction,mcmc,construction_s,mcmc_s,total_s,converged,nmae\n";
                for (const std::string& ctor : {"2kt", "2k"})
                    for (const std::string& swap : {"improved", "plain"}) {
                        GenerateOpts pairing = gen_opts;
                        pairing.generator = ctor;
                        pairing.mcmc = swap;
                        GenerateResult r = pairing.run(spec, "");
                        csv << ctor << ',' << swap << ',' << r.construction_s << ','
                            << r.mcmc.elapsed_s << ',' << r.construction_s + r.mcmc.elapsed_s
                            << ',' << (r.converged ? 1 : 0) << ',' << r.mcmc.final_nmae << '\n';
                        std::cout << ctor << "+" << swap << ": "
                                  << r.construction_s + r.mcmc.elapsed_s << "s"
                                  << (r.converged ? "" : " (not converged)") << '\n';
                    }
            }
            double t0 = now_s();
            GenerateResult result = gen_opts.run(spec, gen_trace);
            timings.push_back({"generate", now_s() - t0});
            save_edge_list(result.graph, gen_out);
            write_manifest(app, gen_out + ".manifest", timings);
            std::cout << "construction " << result.construction_s << "s, MCMC "
                      << result.mcmc.elapsed_s << "s, " << result.mcmc.swaps
                      << " swaps, final NMAE " << result.mcmc.final_nmae << '\n';
            if (!result.converged) {
                std::cout << "generator did not reach the stop threshold\n";
                return 4;
            }
            return 0;
        }

        if (*cmd_cmp) {
            Graph ref = load_input_graph(cmp_ref, false);
            Graph gen = load_input_graph(cmp_gen, false);
            double t0 = now_s();
            ComparisonReport report = compare(ref, gen, cmp_opts.config());
            timings.push_back({"compare", now_s() - t0});
            write_report(report, cmp_out);
            write_manifest(app, cmp_out + "/manifest.txt", timings);
            print_report(report);
            return 0;
        }

        if (*cmd_pipe) {
            Graph g = load_input_graph(pipe_in, true);
            fs::create_directories(pipe_out);
            bool any_unconverged = false;

            auto run_one = [&](int run_idx, const std::string& dir) {
                fs::create_directories(dir);
                SampleOpts s = p_sample;
                s.seed = p_sample.seed + static_cast<std::uint64_t>(run_idx);
                SampleTrace trace = s.run(g);
                save_trace(trace, dir + "/trace.txt");

                EstimateOpts e = p_est;
                if (e.known_n == 0) e.known_n = g.num_nodes();
                if (e.known_e == 0) e.known_e = g.num_edges();
                EstimateBundle bundle = estimate_bundle(trace, e.config());
                save_bundle(bundle, dir + "/estimate");

                PostprocessOpts p = p_post;
                p.seed = p_post.seed + static_cast<std::uint64_t>(run_idx);
                PostprocessReport prep;
                TargetSpec spec = build_target(bundle, p.config(), &prep);
                save_target(spec, dir + "/target.txt");

                GenerateOpts go = p_gen;
                go.seed = p_gen.seed + static_cast<std::uint64_t>(run_idx);
                GenerateResult result = go.run(spec, dir + "/convergence.csv");
                save_edge_list(result.graph, dir + "/generated.txt");
                if (!result.converged) any_unconverged = true;

                CompareOpts c = p_cmp;
                c.seed = p_cmp.seed + static_cast<std::uint64_t>(run_idx);
                ComparisonReport report = compare(g, result.graph, c.config());
                write_report(report, dir + "/compare");
                return report;
            };

            double t0 = now_s();
            if (pipe_runs == 1) {
                ComparisonReport report = run_one(0, pipe_out + "/run_0");
                print_report(report);
            } else {
#pragma omp parallel for schedule(dynamic)
                for (int r = 0; r < pipe_runs; ++r)
                    run_one(r, pipe_out + "/run_" + std::to_string(r));
                if (aggregate_runs(pipe_out, pipe_runs) != 0)
                    throw StageError("aggregation failed: missing run reports");
            }
            timings.push_back({"pipeline", now_s() - t0});
            write_manifest(app, pipe_out + "/manifest.txt", timings);
            return any_unconverged ? 4 : 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "stage failure: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
