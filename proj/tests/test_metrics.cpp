#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "test_support.hpp"
#include "two5k/graph_metrics.hpp"
#include "two5k/metrics.hpp"
#include "two5k/synthetic.hpp"

using namespace two5k;
using namespace two5k::testing;

TEST_CASE("nmae on the named examples") {
    std::map<int, double> ref{{1, 2.0}, {2, 3.0}};
    CHECK(nmae(ref, ref) == doctest::Approx(0.0));

    std::map<int, double> twice{{1, 4.0}, {2, 6.0}};
    CHECK(nmae(twice, ref) == doctest::Approx(1.0));

    std::map<int, double> est{{1, 1.0}};
    std::map<int, double> refb{{2, 1.0}};
    CHECK(nmae(est, refb) == doctest::Approx(2.0));

    CHECK_THROWS_AS(nmae(std::map<int, double>{}, std::map<int, double>{}),
                    std::invalid_argument);
    CHECK(nmae(est, refb) == doctest::Approx(oracle_nmae(est, refb)));
}

TEST_CASE("degree distribution and knn examples") {
    Graph s4 = star_graph(4);
    auto dd = degree_distribution(s4);
    CHECK(dd.at(1) == 3);
    CHECK(dd.at(3) == 1);
    auto knn = avg_neighbor_degree(s4);
    CHECK(knn.at(1) == doctest::Approx(3.0));
    CHECK(knn.at(3) == doctest::Approx(1.0));

    Graph k3 = complete_graph(3);
    CHECK(degree_distribution(k3).at(2) == 3);
    CHECK(avg_neighbor_degree(k3).at(2) == doctest::Approx(2.0));
}

TEST_CASE("edgewise shared partners") {
    CHECK(edgewise_shared_partners(complete_graph(3)) ==
          std::map<int, std::uint64_t>{{1, 3}});
    Graph tree = star_graph(9);
    CHECK(edgewise_shared_partners(tree) ==
          std::map<int, std::uint64_t>{{0, 8}});
    CHECK(edgewise_shared_partners(complete_graph(4)) ==
          std::map<int, std::uint64_t>{{2, 6}});

    for (std::uint64_t seed : {3u, 4u}) {
        Graph g = gnp_graph(40, 0.2, seed);
        auto hist = edgewise_shared_partners(g);
        CHECK(hist == oracle_esp(g));
        std::uint64_t mass = 0;
        for (const auto& [k, c] : hist) mass += c;
        CHECK(mass == g.num_edges());
    }
}

TEST_CASE("shortest path distribution") {
    auto h = shortest_path_histogram(path_graph(3), 100);
    CHECK(h.exact);
    // ordered pairs: four at one hop, two at two hops
    CHECK(h.hops.at(1) == 4);
    CHECK(h.hops.at(2) == 2);
    CHECK(h.pairs == 6);

    auto hk = shortest_path_histogram(complete_graph(5), 100);
    CHECK(hk.hops.size() == 1);
    CHECK(hk.hops.at(1) == 20);

    for (std::uint64_t seed : {5u, 6u}) {
        Graph g = largest_component(gnp_graph(150, 0.03, seed));
        auto exact = shortest_path_histogram(g, g.num_nodes());
        CHECK(exact.exact);
        CHECK(exact.hops == oracle_hops(g));
        auto sampled = shortest_path_histogram(g, 30, seed);
        CHECK_FALSE(sampled.exact);
        CHECK(sampled.sources_used == 30);
    }
}

TEST_CASE("maximal cliques") {
    CHECK(maximal_cliques(complete_graph(4)).sizes ==
          std::map<int, std::uint64_t>{{4, 1}});
    CHECK(maximal_cliques(cycle_graph(4)).sizes ==
          std::map<int, std::uint64_t>{{2, 4}});
    CHECK(maximal_cliques(k4_minus_edge()).sizes ==
          std::map<int, std::uint64_t>{{3, 2}});

    for (std::uint64_t seed : {7u, 8u, 9u}) {
        Graph g = gnp_graph(17, 0.35, seed);
        auto got = maximal_cliques(g);
        CHECK(got.complete);
        CHECK(got.sizes == oracle_cliques(g));
    }
}

TEST_CASE("cycle basis distribution") {
    auto c4 = cycle_basis_distribution(cycle_graph(4));
    CHECK(c4.computed);
    CHECK(c4.lengths == std::map<int, std::uint64_t>{{4, 1}});

    auto k4 = cycle_basis_distribution(complete_graph(4));
    CHECK(k4.computed);
    CHECK(k4.basis_size == 3);
    CHECK(k4.lengths == std::map<int, std::uint64_t>{{3, 3}});

    auto tree = cycle_basis_distribution(star_graph(12));
    CHECK(tree.computed);
    CHECK(tree.lengths.empty());

    for (std::uint64_t seed : {10u, 11u}) {
        Graph g = gnp_graph(40, 0.08, seed);
        auto got = cycle_basis_distribution(g);
        CHECK(got.computed);
        CHECK(got.basis_size == oracle_cycle_rank(g));
        std::uint64_t selected = 0;
        for (const auto& [len, c] : got.lengths) selected += c;
        CHECK(selected == got.basis_size);
    }

    // over budget: reported as not computed
    Graph big = largest_component(powerlaw_cluster(200, 3, 0.5, 12));
    auto skipped = cycle_basis_distribution(big, 10);
    CHECK_FALSE(skipped.computed);
}

TEST_CASE("minimal cycle basis is genuinely minimal on a known shape") {
    // two triangles sharing a node plus a long outer cycle: the greedy basis
    // must pick the two triangles, never the long way around
    Graph g(7);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(4, 2);
    g.add_edge(4, 5);
    g.add_edge(5, 6);
    g.add_edge(6, 0);
    auto basis = cycle_basis_distribution(g);
    CHECK(basis.computed);
    CHECK(basis.basis_size == 3);
    CHECK(basis.lengths.at(3) == 2);
}

TEST_CASE("spectrum examples") {
    auto kn = spectrum_top(complete_graph(10), 20);
    CHECK(kn.size() == 10);
    CHECK(kn[0] == doctest::Approx(9.0));
    for (std::size_t i = 1; i < kn.size(); ++i) CHECK(kn[i] == doctest::Approx(-1.0));

    auto star = spectrum_top(star_graph(10), 3);
    CHECK(std::abs(star[0]) == doctest::Approx(std::sqrt(9.0)));
    CHECK(std::abs(star[1]) == doctest::Approx(std::sqrt(9.0)));
    CHECK(star[2] == doctest::Approx(0.0).epsilon(1e-9));

    // d-regular: leading eigenvalue d
    auto ring = spectrum_top(ring_lattice(40, 6), 1);
    CHECK(ring[0] == doctest::Approx(6.0));
}

TEST_CASE("iterative spectrum agrees with the dense solver") {
    Graph g = largest_component(powerlaw_cluster(300, 3, 0.5, 13));
    auto dense = spectrum_top(g, 20, false);
    auto lanczos = spectrum_top(g, 20, true);
    REQUIRE(dense.size() == lanczos.size());
    for (std::size_t i = 0; i < dense.size(); ++i)
        CHECK(lanczos[i] == doctest::Approx(dense[i]).epsilon(1e-6));

    // repeated eigenvalues force the deflation path
    auto kn = spectrum_top(complete_graph(20), 20, true);
    CHECK(kn[0] == doctest::Approx(19.0));
    for (std::size_t i = 1; i < kn.size(); ++i) CHECK(kn[i] == doctest::Approx(-1.0));

    // leading eigenvalue dominates the average degree
    double avg = 2.0 * static_cast<double>(g.num_edges()) / g.num_nodes();
    CHECK(dense[0] >= avg);
}

TEST_CASE("closeness centrality") {
    Graph s = star_graph(8);
    auto vals = closeness_values(s, 100);
    REQUIRE(vals.size() == 8);
    double best = *std::max_element(vals.begin(), vals.end());
    CHECK(best == doctest::Approx(1.0 / 7.0));  // center: distance 1 to all

    Graph k = complete_graph(6);
    auto kv = closeness_values(k, 100);
    for (double v : kv) CHECK(v == doctest::Approx(1.0 / 5.0));

    Graph p = path_graph(5);
    auto pv = closeness_values(p, 100);
    CHECK(*std::min_element(pv.begin(), pv.end()) ==
          doctest::Approx(1.0 / (1 + 2 + 3 + 4)));  // endpoints
}

TEST_CASE("self comparison scores zero everywhere deterministic") {
    Graph g = largest_component(watts_strogatz(200, 6, 0.1, 14));
    CompareBudgets budgets;
    budgets.source_budget = g.num_nodes();  // exact paths and closeness
    auto report = compare(g, g, budgets);
    for (const auto& m : report.metrics) {
        INFO(m.name);
        CHECK(m.nmae == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(m.status != "skipped");
    }
}

TEST_CASE("comparison report files") {
    Graph a = largest_component(watts_strogatz(150, 6, 0.05, 15));
    Graph b = largest_component(watts_strogatz(150, 6, 0.4, 16));
    auto report = compare(a, b);
    CHECK(report.metrics.size() == 10);
    const auto* cc = report.find("CC");
    REQUIRE(cc != nullptr);
    CHECK(cc->nmae > 0.0);

    write_report(report, "test_report_dir");
    CHECK(std::filesystem::exists("test_report_dir/report.txt"));
    CHECK(std::filesystem::exists("test_report_dir/report.csv"));
    CHECK(std::filesystem::exists("test_report_dir/dist_DD.csv"));
    std::filesystem::remove_all("test_report_dir");
}
