#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>

#include "test_support.hpp"
#include "two5k/graph.hpp"
#include "two5k/graph_metrics.hpp"
#include "two5k/kernels.hpp"

using namespace two5k;
using namespace two5k::testing;

TEST_CASE("graph basics") {
    Graph g(4);
    CHECK(g.add_edge(0, 1));
    CHECK(g.add_edge(1, 2));
    CHECK_FALSE(g.add_edge(1, 0));  // duplicate
    CHECK_FALSE(g.add_edge(2, 2));  // self loop
    CHECK(g.num_edges() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK(g.remove_edge(0, 1));
    CHECK_FALSE(g.remove_edge(0, 1));
    CHECK(g.num_edges() == 1);
    CHECK(g.degree(1) == 1);
    CHECK(g.isolated_count() == 2);
}

TEST_CASE("edge list round trip with dirty input") {
    const char* path = "test_edges.txt";
    {
        std::FILE* f = std::fopen(path, "w");
        std::fputs("# comment\n5 7\n7 5\n3 3\n5 3\n\n9 5\n", f);
        std::fclose(f);
    }
    LoadReport rep;
    Graph g = load_edge_list(path, &rep);
    CHECK(rep.self_loops_dropped == 1);
    CHECK(rep.duplicates_dropped == 1);
    CHECK(rep.relabeled);
    CHECK(g.num_nodes() == 4);  // ids 3, 5, 7, 9
    CHECK(g.num_edges() == 3);

    save_edge_list(g, path);
    Graph g2 = load_edge_list(path);
    CHECK(g == g2);
    std::filesystem::remove(path);
}

TEST_CASE("connected components and largest component") {
    Graph g(7);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(3, 4);
    // 5, 6 isolated
    auto comps = connected_components(g);
    CHECK(comps.size() == 4);
    CHECK_FALSE(is_connected(g));
    std::vector<NodeId> back;
    Graph lcc = largest_component(g, &back);
    CHECK(lcc.num_nodes() == 3);
    CHECK(lcc.num_edges() == 2);
    CHECK(back == std::vector<NodeId>{0, 1, 2});
    CHECK(is_connected(lcc));
}

TEST_CASE("shared partners on the named examples") {
    Graph k3 = complete_graph(3);
    CHECK(shared_partners(k3, 0, 1) == 1);
    Graph s4 = star_graph(4);
    CHECK(shared_partners(s4, 1, 2) == 1);
    Graph p3 = path_graph(3);
    CHECK(shared_partners(p3, 0, 2) == 1);
    CHECK(shared_partners(p3, 0, 1) == 0);
    CHECK_THROWS_AS(shared_partners(p3, 0, 7), std::invalid_argument);
    CHECK_THROWS_AS(shared_partners(p3, 1, 1), std::invalid_argument);
}

TEST_CASE("shared partners is symmetric") {
    Graph g = gnp_graph(40, 0.15, 99);
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        NodeId a = rng.below32(40), b = rng.below32(40);
        if (a == b) continue;
        CHECK(shared_partners(g, a, b) == shared_partners(g, b, a));
    }
}

TEST_CASE("node clustering examples and brute-force equivalence") {
    Graph k3 = complete_graph(3);
    for (NodeId v = 0; v < 3; ++v) CHECK(node_clustering(k3, v) == doctest::Approx(1.0));
    Graph s4 = star_graph(4);
    CHECK(node_clustering(s4, 0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(node_clustering(s4, 1), std::invalid_argument);  // degree 1

    Graph k4e = k4_minus_edge();
    // degree-3 node: two triangles over three neighbor pairs
    CHECK(oracle_node_clustering(k4e, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(node_clustering(k4e, 0) == doctest::Approx(2.0 / 3.0));

    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Graph g = gnp_graph(50, 0.12, seed);
        auto oracle = oracle_triangles(g);
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
            if (g.degree(v) < 2) continue;
            double expect = 2.0 * static_cast<double>(oracle[v]) /
                            (static_cast<double>(g.degree(v)) * (g.degree(v) - 1));
            CHECK(node_clustering(g, v) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("degree clustering examples") {
    auto ck3 = degree_clustering(complete_graph(3));
    REQUIRE(ck3.size() == 1);
    CHECK(ck3[2] == doctest::Approx(1.0));

    auto ck4e = degree_clustering(k4_minus_edge());
    REQUIRE(ck4e.size() == 2);
    CHECK(ck4e[2] == doctest::Approx(1.0));
    CHECK(ck4e[3] == doctest::Approx(2.0 / 3.0));

    // degrees below 2 are excluded from the keys
    auto cks = degree_clustering(star_graph(5));
    CHECK(cks.count(1) == 0);
    CHECK(cks.count(4) == 1);
}

TEST_CASE("mean clustering and the aggregation identity") {
    CHECK(mean_clustering(complete_graph(3)) == doctest::Approx(1.0));
    CHECK(mean_clustering(cycle_graph(4)) == doctest::Approx(0.0));

    for (std::uint64_t seed : {5u, 6u, 7u}) {
        Graph g = gnp_graph(60, 0.1, seed);
        auto ck = degree_clustering(g);
        std::map<int, int> vk;
        for (NodeId v = 0; v < g.num_nodes(); ++v) ++vk[g.degree(v)];
        double total = 0.0;
        for (const auto& [k, c] : ck) total += vk[k] * c;
        CHECK(total == doctest::Approx(g.num_nodes() * mean_clustering(g)).epsilon(1e-9));
    }
}

TEST_CASE("exact jdd examples and mass invariant") {
    auto j3 = exact_jdd(complete_graph(3));
    CHECK(j3.size() == 1);
    CHECK(j3.at(2, 2) == doctest::Approx(3.0));

    auto js = exact_jdd(star_graph(4));
    CHECK(js.size() == 1);
    CHECK(js.at(1, 3) == doctest::Approx(3.0));

    auto jp = exact_jdd(path_graph(4));
    CHECK(jp.at(1, 2) == doctest::Approx(2.0));
    CHECK(jp.at(2, 2) == doctest::Approx(1.0));
    CHECK(jp.total_mass() == doctest::Approx(3.0));

    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Graph g = gnp_graph(80, 0.07, seed);
        auto jdd = exact_jdd(g);
        CHECK(jdd.total_mass() == doctest::Approx(static_cast<double>(g.num_edges())));
        CHECK(JddMatrix::absolute_difference(jdd, oracle_jdd(g)) == doctest::Approx(0.0));
        // derived degree counts match the graph
        auto d = jdd.degree_counts();
        std::map<int, int> vk;
        for (NodeId v = 0; v < g.num_nodes(); ++v)
            if (g.degree(v) > 0) ++vk[g.degree(v)];
        for (const auto& [k, cnt] : vk) CHECK(d[k] == doctest::Approx(cnt));
    }
}

TEST_CASE("triangle totals") {
    CHECK(triangle_count_total(complete_graph(3)) == 3);
    CHECK(triangle_count_total(complete_graph(4)) == 12);  // 4 triangles, counted at 3 nodes
    CHECK(triangle_count_total(star_graph(10)) == 0);
}

TEST_CASE("jdd file round trip") {
    Graph g = gnp_graph(30, 0.2, 17);
    auto jdd = exact_jdd(g);
    save_jdd(jdd, "test_jdd.txt");
    auto loaded = load_jdd("test_jdd.txt");
    CHECK(JddMatrix::absolute_difference(jdd, loaded) == doctest::Approx(0.0));
    std::filesystem::remove("test_jdd.txt");
}

TEST_CASE("serial and parallel kernels agree") {
    for (std::uint64_t seed : {11u, 12u}) {
        Graph g = gnp_graph(120, 0.06, seed);
        CHECK(kernels::serial::triangle_counts(g) == kernels::parallel::triangle_counts(g));
        CHECK(JddMatrix::absolute_difference(kernels::serial::exact_jdd(g),
                                             kernels::parallel::exact_jdd(g)) == 0.0);
        CHECK(kernels::serial::esp_histogram(g) == kernels::parallel::esp_histogram(g));

        auto ks = kernels::serial::avg_neighbor_degree(g);
        auto kp = kernels::parallel::avg_neighbor_degree(g);
        REQUIRE(ks.size() == kp.size());
        for (const auto& [k, v] : ks) CHECK(v == doctest::Approx(kp.at(k)).epsilon(1e-12));

        std::vector<NodeId> sources;
        for (NodeId v = 0; v < g.num_nodes(); v += 3) sources.push_back(v);
        auto bs = kernels::serial::bfs_stats(g, sources);
        auto bp = kernels::parallel::bfs_stats(g, sources);
        CHECK(bs.hop_hist == bp.hop_hist);
        CHECK(bs.dist_sum == bp.dist_sum);
        CHECK(bs.reach_count == bp.reach_count);
        CHECK(bs.pairs == bp.pairs);

        auto csr = kernels::build_csr(g);
        std::vector<double> x(g.num_nodes()), y1(g.num_nodes()), y2(g.num_nodes());
        Rng rng(3);
        for (auto& xi : x) xi = rng.canonical();
        kernels::serial::spmv(csr, x.data(), y1.data());
        kernels::parallel::spmv(csr, x.data(), y2.data());
        for (NodeId v = 0; v < g.num_nodes(); ++v)
            CHECK(y1[v] == doctest::Approx(y2[v]).epsilon(1e-12));
    }
}

TEST_CASE("dataset values when the files are supplied") {
    struct Row {
        const char* file;
        NodeId nodes;
        double mean_c;
        std::int64_t triangle_total;
    };
    // published properties of the evaluation datasets
    const Row rows[] = {
        {"caida-as.txt", 26475, 0.208, 109086},
        {"facebook-new-orleans.txt", 63392, 0.222, 10504548},
        {"email-enron.txt", 36692, 0.497, 2181132},
    };
    for (const auto& row : rows) {
        auto path = dataset_path(row.file);
        if (!path) continue;
        LoadReport rep;
        Graph g = load_edge_list(*path, &rep);
        if (g.num_nodes() != row.nodes) {
            MESSAGE("dataset snapshot differs for ", row.file, ": |V|=", g.num_nodes());
            continue;
        }
        CHECK(mean_clustering(g) == doctest::Approx(row.mean_c).epsilon(0.005));
        CHECK(triangle_count_total(g) == row.triangle_total);
    }
}
