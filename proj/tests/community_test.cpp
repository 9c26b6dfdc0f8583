#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "support/oracles.hpp"
#include "twinet/community.hpp"
#include "twinet/errors.hpp"

using namespace twinet;

namespace {

std::set<std::set<VertexId>> as_groups(const Partition& p) {
    std::vector<std::set<VertexId>> groups(p.community_count);
    for (VertexId v = 0; v < p.labels.size(); ++v) {
        groups[p.labels[v]].insert(v);
    }
    std::set<std::set<VertexId>> out;
    for (auto& group : groups) {
        if (!group.empty()) {
            out.insert(std::move(group));
        }
    }
    return out;
}

} // namespace

TEST_CASE("config validation") {
    MemeticConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.population_size = 2;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = MemeticConfig{};
    cfg.elite_count = 64;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = MemeticConfig{};
    cfg.mutation_rate = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("brute force enumerates the exact optimum") {
    SUBCASE("triangle collapses into one community") {
        auto [p, q] = brute_force_best_partition(testsupport::triangle());
        CHECK(q == doctest::Approx(0.0));
        CHECK(p.community_count == 1);
    }

    SUBCASE("two disjoint edges pair up") {
        UndirectedGraph g(4);
        g.add_edge(0, 1, 1.0);
        g.add_edge(2, 3, 1.0);
        auto [p, q] = brute_force_best_partition(g);
        CHECK(q == doctest::Approx(0.5).epsilon(1e-12));
        auto groups = as_groups(p);
        CHECK(groups.count({0, 1}) == 1);
        CHECK(groups.count({2, 3}) == 1);
    }

    SUBCASE("barbell splits at the bridge") {
        auto [p, q] = brute_force_best_partition(testsupport::barbell());
        CHECK(q == doctest::Approx(5.0 / 14.0).epsilon(1e-12));
        auto groups = as_groups(p);
        CHECK(groups.count({0, 1, 2}) == 1);
        CHECK(groups.count({3, 4, 5}) == 1);
    }

    SUBCASE("size guard") {
        UndirectedGraph g(13);
        g.add_edge(0, 1, 1.0);
        CHECK_THROWS_AS(brute_force_best_partition(g), std::invalid_argument);
    }
}

TEST_CASE("local search improves and reaches fixpoints") {
    SUBCASE("a local optimum is left unchanged") {
        UndirectedGraph g = testsupport::barbell();
        Individual ind;
        ind.genotype = {0, 0, 0, 1, 1, 1};
        std::mt19937_64 rng(5);
        Individual out = local_search(g, ind, 10, rng);
        CHECK(out.genotype == ind.genotype);
        CHECK(out.fitness == doctest::Approx(5.0 / 14.0).epsilon(1e-12));

        std::mt19937_64 rng2(5);
        Individual again = local_search(g, out, 10, rng2);
        CHECK(again.genotype == out.genotype);
    }

    SUBCASE("a mislabeled barbell vertex moves home") {
        UndirectedGraph g = testsupport::barbell();
        Individual ind;
        ind.genotype = {0, 0, 1, 1, 1, 1}; // vertex 2 on the wrong side
        Partition before;
        before.labels = ind.genotype;
        before.community_count = 2;
        double q_before = modularity(g, before);
        std::mt19937_64 rng(9);
        Individual out = local_search(g, ind, 10, rng);
        CHECK(out.fitness == doctest::Approx(5.0 / 14.0).epsilon(1e-12));
        CHECK(out.fitness > q_before);
        CHECK(out.genotype[2] == out.genotype[0]);
    }

    SUBCASE("singletons on a 4-clique converge to one community") {
        UndirectedGraph g(4);
        for (VertexId i = 0; i < 4; ++i) {
            for (VertexId j = i + 1; j < 4; ++j) {
                g.add_edge(i, j, 1.0);
            }
        }
        Individual ind;
        ind.genotype = {0, 1, 2, 3};
        std::mt19937_64 rng(13);
        Individual out = local_search(g, ind, 10, rng);
        CHECK(out.fitness == doctest::Approx(0.0));
        std::set<std::uint32_t> labels(out.genotype.begin(), out.genotype.end());
        CHECK(labels.size() == 1);
    }

    SUBCASE("Q never decreases across random starts") {
        std::mt19937_64 rng(17);
        for (int i = 0; i < 20; ++i) {
            UndirectedGraph g = testsupport::random_graph(9, 0.4, rng, false);
            Partition p = testsupport::random_partition(9, 4, rng);
            double q_before = modularity(g, p);
            Individual ind;
            ind.genotype = p.labels;
            Individual out = local_search(g, ind, 5, rng);
            CHECK(out.fitness >= q_before - 1e-12);
        }
    }
}

TEST_CASE("solver separates canonical fixtures") {
    MemeticConfig cfg;
    cfg.rng_seed = 1;

    SUBCASE("two disjoint triangles") {
        CommunityResult result = detect_communities(testsupport::two_triangles(), cfg);
        CHECK(result.q == doctest::Approx(0.5).epsilon(1e-12));
        auto groups = as_groups(result.partition);
        CHECK(groups.count({0, 1, 2}) == 1);
        CHECK(groups.count({3, 4, 5}) == 1);
    }

    SUBCASE("barbell") {
        CommunityResult result = detect_communities(testsupport::barbell(), cfg);
        CHECK(result.q == doctest::Approx(5.0 / 14.0).epsilon(1e-12));
        CHECK(result.community_sizes == std::vector<std::size_t>{3, 3});
    }

    SUBCASE("single edge stays together") {
        UndirectedGraph g(2);
        g.add_edge(0, 1, 1.0);
        CommunityResult result = detect_communities(g, cfg);
        CHECK(result.q == doctest::Approx(0.0));
        CHECK(result.community_sizes == std::vector<std::size_t>{2});
    }

    SUBCASE("edgeless graph is an error") {
        UndirectedGraph g(3);
        CHECK_THROWS_AS(detect_communities(g, cfg), AnalysisError);
    }
}

TEST_CASE("solver result invariants") {
    std::mt19937_64 rng(19);
    UndirectedGraph g = testsupport::random_graph(12, 0.35, rng, true);
    MemeticConfig cfg;
    cfg.rng_seed = 77;
    CommunityResult result = detect_communities(g, cfg);

    SUBCASE("q equals a fresh recomputation") {
        CHECK(result.q == doctest::Approx(modularity(g, result.partition)).epsilon(1e-12));
    }

    SUBCASE("labels are canonical") {
        Partition copy = result.partition;
        copy.canonicalize();
        CHECK(copy.labels == result.partition.labels);
        CHECK(copy.community_count == result.partition.community_count);
    }

    SUBCASE("best Q never decreases over generations") {
        REQUIRE(!result.q_history.empty());
        for (std::size_t i = 1; i < result.q_history.size(); ++i) {
            CHECK(result.q_history[i] >= result.q_history[i - 1]);
        }
        CHECK(result.q == doctest::Approx(result.q_history.back()));
    }

    SUBCASE("sizes sum to the vertex count") {
        std::size_t total = 0;
        for (std::size_t size : result.community_sizes) {
            total += size;
        }
        CHECK(total == g.size());
    }
}

TEST_CASE("solver is deterministic and thread-count independent") {
    std::mt19937_64 rng(29);
    UndirectedGraph g = testsupport::random_graph(20, 0.25, rng, true);

    MemeticConfig cfg;
    cfg.rng_seed = 4242;
    cfg.max_generations = 40;
    CommunityResult serial = detect_communities(g, cfg);

    CommunityResult serial_again = detect_communities(g, cfg);
    CHECK(serial.partition.labels == serial_again.partition.labels);
    CHECK(serial.q == serial_again.q);
    CHECK(serial.generations_run == serial_again.generations_run);
    CHECK(serial.evaluations == serial_again.evaluations);

    cfg.threads = 4;
    CommunityResult parallel = detect_communities(g, cfg);
    CHECK(serial.partition.labels == parallel.partition.labels);
    CHECK(serial.q == parallel.q);
    CHECK(serial.generations_run == parallel.generations_run);
    CHECK(serial.evaluations == parallel.evaluations);

    cfg.threads = 1;
    cfg.rng_seed = 4243;
    CommunityResult other_seed = detect_communities(g, cfg);
    // A different seed explores differently; the search path must differ even
    // if the final partition coincides.
    CHECK((other_seed.evaluations != serial.evaluations ||
           other_seed.partition.labels != serial.partition.labels ||
           other_seed.q == serial.q));
}

TEST_CASE("solver matches the exhaustive optimum on small graphs") {
    std::mt19937_64 rng(31);
    MemeticConfig cfg;
    for (int i = 0; i < 10; ++i) {
        std::size_t n = 5 + (i % 4);
        UndirectedGraph g = testsupport::random_graph(n, 0.5, rng, true);
        auto [best, best_q] = brute_force_best_partition(g);
        cfg.rng_seed = 1000 + i;
        CommunityResult result = detect_communities(g, cfg);
        REQUIRE(std::abs(result.q - best_q) <= 1e-12);
    }
}

TEST_CASE("planted partition generator") {
    SUBCASE("p_in = 1, p_out = 0 yields exact disjoint cliques") {
        std::vector<std::size_t> blocks = {3, 3};
        auto [g, planted] = planted_partition_graph(blocks, 1.0, 0.0, 99);
        CHECK(g.size() == 6);
        CHECK(g.edge_count() == 6); // two triangles
        CHECK(modularity(g, planted) == doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("degenerate parameters are rejected") {
        std::vector<std::size_t> blocks = {4, 4};
        CHECK_THROWS_AS(planted_partition_graph(blocks, 0.0, 0.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(planted_partition_graph(blocks, 0.2, 0.4, 1), std::invalid_argument);
        std::vector<std::size_t> bad = {4, 0};
        CHECK_THROWS_AS(planted_partition_graph(bad, 0.5, 0.1, 1), std::invalid_argument);
        std::vector<std::size_t> none;
        CHECK_THROWS_AS(planted_partition_graph(none, 0.5, 0.1, 1), std::invalid_argument);
    }

    SUBCASE("intra-block edge count sits within 3 sigma of its binomial mean") {
        std::vector<std::size_t> blocks = {16, 16, 16, 16};
        auto [g, planted] = planted_partition_graph(blocks, 0.3, 0.02, 2024);
        std::size_t intra = 0;
        for (VertexId v = 0; v < g.size(); ++v) {
            g.for_neighbors(v, [&](VertexId w, double) {
                if (v < w && planted.labels[v] == planted.labels[w]) {
                    ++intra;
                }
            });
        }
        // 4 blocks x C(16,2) = 480 trials at p = 0.3.
        const double mean = 480.0 * 0.3;
        const double sigma = std::sqrt(480.0 * 0.3 * 0.7);
        CHECK(static_cast<double>(intra) > mean - 3.0 * sigma);
        CHECK(static_cast<double>(intra) < mean + 3.0 * sigma);
    }

    SUBCASE("generation is deterministic per seed") {
        std::vector<std::size_t> blocks = {8, 8};
        auto [g1, p1] = planted_partition_graph(blocks, 0.4, 0.05, 7);
        auto [g2, p2] = planted_partition_graph(blocks, 0.4, 0.05, 7);
        CHECK(g1.edge_count() == g2.edge_count());
        CHECK(g1.total_weight() == g2.total_weight());
        auto [g3, p3] = planted_partition_graph(blocks, 0.4, 0.05, 8);
        CHECK((g3.edge_count() != g1.edge_count() || g3.total_weight() == g1.total_weight()));
    }
}
