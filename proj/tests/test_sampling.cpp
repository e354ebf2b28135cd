#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <map>

#include "test_support.hpp"
#include "two5k/sampling.hpp"
#include "two5k/synthetic.hpp"

using namespace two5k;
using namespace two5k::testing;

namespace {

std::map<NodeId, std::uint64_t> multiplicities(const SampleTrace& t) {
    std::map<NodeId, std::uint64_t> m;
    for (const auto& r : t.records) ++m[r.node];
    return m;
}

bool within_3_sigma(double observed, double n, double p) {
    double mean = n * p;
    double sigma = std::sqrt(n * p * (1.0 - p));
    return std::abs(observed - mean) <= 3.0 * sigma;
}

// chi-square 0.999 quantile, Wilson-Hilferty approximation
double chi2_crit_999(double df) {
    const double z = 3.090232;
    double t = 1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df));
    return df * t * t * t;
}

}  // namespace

TEST_CASE("uis multiplicities stay near uniform") {
    Graph k3 = complete_graph(3);
    auto t = sample_uis(k3, 1000, 4);
    auto m = multiplicities(t);
    for (NodeId v = 0; v < 3; ++v)
        CHECK(within_3_sigma(static_cast<double>(m[v]), 1000.0, 1.0 / 3.0));
}

TEST_CASE("uis edge cases") {
    Graph g = gnp_graph(10, 0.3, 1);
    CHECK(sample_uis(g, 1, 0).records.size() == 1);

    Graph single(1);
    auto t = sample_uis(single, 5, 0);
    CHECK(t.records.size() == 5);
    for (const auto& r : t.records) {
        CHECK(r.node == 0);
        CHECK(r.neighbors.empty());
    }
    CHECK_THROWS_AS(sample_uis(Graph(), 3, 0), std::invalid_argument);
}

TEST_CASE("wis follows the degree weights") {
    Graph s4 = star_graph(4);
    auto t = sample_wis(s4, 3000, 9);
    auto m = multiplicities(t);
    CHECK(within_3_sigma(static_cast<double>(m[0]), 3000.0, 0.5));  // center holds half the degree

    Graph k3 = complete_graph(3);
    auto t2 = sample_wis(k3, 3000, 10);
    auto m2 = multiplicities(t2);
    for (NodeId v = 0; v < 3; ++v)
        CHECK(within_3_sigma(static_cast<double>(m2[v]), 3000.0, 1.0 / 3.0));

    Graph p3 = path_graph(3);
    auto t3 = sample_wis(p3, 4000, 11);
    auto m3 = multiplicities(t3);
    CHECK(within_3_sigma(static_cast<double>(m3[1]), 4000.0, 0.5));

    Graph edgeless(4);
    CHECK_THROWS_AS(sample_wis(edgeless, 5, 0), std::invalid_argument);
}

TEST_CASE("rw visits follow the stationary distribution") {
    Graph k3 = complete_graph(3);
    auto t = sample_rw(k3, 10000, 5, {});
    auto m = multiplicities(t);
    for (NodeId v = 0; v < 3; ++v)
        CHECK(std::abs(static_cast<double>(m[v]) - 10000.0 / 3.0) < 3.0 * std::sqrt(10000.0 / 3.0));

    Graph p3 = path_graph(3);
    auto t2 = sample_rw(p3, 10000, 6, {});
    auto m2 = multiplicities(t2);
    CHECK(within_3_sigma(static_cast<double>(m2[1]), 10000.0, 0.5));
}

TEST_CASE("rw trace adjacency invariant") {
    Graph g = largest_component(watts_strogatz(80, 6, 0.1, 3));
    auto t = sample_rw(g, 2000, 7, {});
    for (std::size_t i = 0; i + 1 < t.records.size(); ++i) {
        const auto& nb = t.records[i].neighbors;
        CHECK(std::find(nb.begin(), nb.end(), t.records[i + 1].node) != nb.end());
    }
}

TEST_CASE("rw long-run distribution passes a chi-square check") {
    Graph g = largest_component(watts_strogatz(60, 6, 0.15, 21));
    const std::size_t n = 100000;
    auto t = sample_rw(g, n, 22, {});
    // consecutive visits are correlated; thin the walk before the i.i.d. test
    const std::size_t stride = 25;
    std::map<NodeId, std::uint64_t> m;
    std::size_t used = 0;
    for (std::size_t i = 0; i < t.records.size(); i += stride) {
        ++m[t.records[i].node];
        ++used;
    }
    const double two_e = 2.0 * static_cast<double>(g.num_edges());
    double chi2 = 0.0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        double expect = static_cast<double>(used) * g.degree(v) / two_e;
        double diff = static_cast<double>(m[v]) - expect;
        chi2 += diff * diff / expect;
    }
    CHECK(chi2 < chi2_crit_999(static_cast<double>(g.num_nodes() - 1)));
}

TEST_CASE("rw options and errors") {
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    // degree-0 start
    CHECK_THROWS_AS(sample_rw(g, 10, 0, RwOptions{.start = 4, .burnin = 0}), std::invalid_argument);
    // disconnected graph: confined walk, flagged
    auto t = sample_rw(g, 50, 1, RwOptions{.start = 0, .burnin = 0});
    CHECK(t.disconnected_warning);
    for (const auto& r : t.records) CHECK(r.node <= 2);

    auto burned = sample_rw(g, 10, 2, RwOptions{.start = 0, .burnin = 5});
    CHECK(burned.records.size() == 10);
}

TEST_CASE("determinism: same inputs give byte-identical traces") {
    Graph g = largest_component(powerlaw_cluster(200, 3, 0.5, 8));
    for (auto method : {SampleMethod::UIS, SampleMethod::WIS, SampleMethod::RW}) {
        auto run = [&](std::uint64_t seed) {
            switch (method) {
                case SampleMethod::UIS: return sample_uis(g, 300, seed);
                case SampleMethod::WIS: return sample_wis(g, 300, seed);
                default: return sample_rw(g, 300, seed, {});
            }
        };
        CHECK(run(42) == run(42));
        CHECK_FALSE(run(42) == run(43));
    }
}

TEST_CASE("trace files round trip bit-exactly") {
    Graph g(6);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 0);
    auto t = sample_rw(g, 40, 99, {});
    save_trace(t, "test_trace.txt");
    auto loaded = load_trace("test_trace.txt");
    CHECK(t == loaded);
    save_trace(loaded, "test_trace2.txt");
    // file-level equality as well
    std::ifstream a("test_trace.txt"), b("test_trace2.txt");
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    std::filesystem::remove("test_trace.txt");
    std::filesystem::remove("test_trace2.txt");

    // isolated-node records (degree 0) survive the round trip
    Graph single(1);
    auto t2 = sample_uis(single, 3, 0);
    save_trace(t2, "test_trace3.txt");
    CHECK(load_trace("test_trace3.txt") == t2);
    std::filesystem::remove("test_trace3.txt");
}

TEST_CASE("sample size from percentage") {
    Graph g(1000);
    CHECK(sample_size_from_pct(g, 20.0) == 200);
    CHECK(sample_size_from_pct(g, 0.05) == 1);  // ceil
    CHECK_THROWS_AS(sample_size_from_pct(g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_size_from_pct(g, 101.0), std::invalid_argument);
}
