// Times the serial reference kernels against their OpenMP counterparts on a
// clustered synthetic graph (or a supplied edge list) and prints speedups.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "two5k/graph.hpp"
#include "two5k/kernels.hpp"
#include "two5k/metrics.hpp"
#include "two5k/rng.hpp"
#include "two5k/synthetic.hpp"

using namespace two5k;

namespace {

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        best = std::min(best, s);
    }
    return best;
}

void row(const char* name, double serial_s, double parallel_s) {
    std::printf("%-18s %10.4fs %10.4fs %8.2fx\n", name, serial_s, parallel_s,
                serial_s / parallel_s);
}

}  // namespace

int main(int argc, char** argv) {
    Graph g;
    if (argc > 1) {
        g = load_edge_list(argv[1]);
        std::printf("graph: %s\n", argv[1]);
    } else {
        g = powerlaw_cluster(30000, 4, 0.6, 7);
        std::printf("graph: powerlaw_cluster(30000, 4, 0.6)\n");
    }
    std::printf("nodes %u, edges %llu, threads %d\n\n", g.num_nodes(),
                static_cast<unsigned long long>(g.num_edges()), omp_get_max_threads());
    std::printf("%-18s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

    const int reps = 3;
    row("triangle_counts",
        time_best_of(reps, [&] { kernels::serial::triangle_counts(g); }),
        time_best_of(reps, [&] { kernels::parallel::triangle_counts(g); }));
    row("exact_jdd",
        time_best_of(reps, [&] { kernels::serial::exact_jdd(g); }),
        time_best_of(reps, [&] { kernels::parallel::exact_jdd(g); }));
    row("esp_histogram",
        time_best_of(reps, [&] { kernels::serial::esp_histogram(g); }),
        time_best_of(reps, [&] { kernels::parallel::esp_histogram(g); }));
    row("avg_neighbor_deg",
        time_best_of(reps, [&] { kernels::serial::avg_neighbor_degree(g); }),
        time_best_of(reps, [&] { kernels::parallel::avg_neighbor_degree(g); }));

    std::vector<NodeId> sources;
    for (NodeId v = 0; v < g.num_nodes() && sources.size() < 256; v += 97) sources.push_back(v);
    row("bfs_stats(256)",
        time_best_of(reps, [&] { kernels::serial::bfs_stats(g, sources); }),
        time_best_of(reps, [&] { kernels::parallel::bfs_stats(g, sources); }));

    auto csr = kernels::build_csr(g);
    std::vector<double> x(g.num_nodes(), 1.0), y(g.num_nodes());
    Rng rng(3);
    for (auto& xi : x) xi = rng.canonical();
    row("spmv x64",
        time_best_of(reps, [&] {
            for (int i = 0; i < 64; ++i) kernels::serial::spmv(csr, x.data(), y.data());
        }),
        time_best_of(reps, [&] {
            for (int i = 0; i < 64; ++i) kernels::parallel::spmv(csr, x.data(), y.data());
        }));
    return 0;
}
