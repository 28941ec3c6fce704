#include <catch_amalgamated.hpp>

#include <map>
#include <random>

#include "oracles.hpp"

using namespace endsbench;

namespace {

Graph path(int edges)
{
    Graph g{edges + 1, {}};
    for (int i = 0; i < edges; ++i) g.edges.push_back({i, i + 1});
    return g;
}

Graph cycle(int n)
{
    Graph g{n, {}};
    for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n});
    return g;
}

} // namespace

TEST_CASE("graph statistics")
{
    const auto single = graph_stats(Graph{1, {}});
    CHECK(single.valences == std::vector<int>{0});
    CHECK(single.leaves == 0);
    CHECK(single.euler_char == 1);
    const auto loop = graph_stats(Graph{1, {{0, 0}}});
    CHECK(loop.valences == std::vector<int>{2});
    CHECK(loop.euler_char == 0);
    const auto p3 = graph_stats(path(2));
    CHECK(p3.leaves == 2);
    CHECK(p3.euler_char == 1);
    CHECK(p3.connected);
    CHECK_FALSE(graph_stats(Graph{2, {}}).connected);
}

TEST_CASE("maximum matchings on small graphs")
{
    CHECK(maximum_matching(path(4)).size() == 2);
    CHECK(maximum_matching(cycle(3)).size() == 1);
    CHECK(maximum_matching(Graph{1, {{0, 0}}}).size() == 1);
    CHECK(matching_bruteforce(Graph{1, {}}).empty());
    CHECK(matching_bruteforce(Graph{2, {{0, 1}}}) == std::vector<int>{0});
    // two loops at one vertex conflict
    CHECK(maximum_matching(Graph{1, {{0, 0}, {0, 0}}}).size() == 1);
    // 5-cycle with four pendant edges
    Graph pet{10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7}, {3, 8}}};
    CHECK(maximum_matching(pet).size() == matching_bruteforce(pet).size());
    CHECK(is_matching(pet, maximum_matching(pet)));
}

TEST_CASE("blossom matches brute force on random multigraphs")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<int> nv(1, 9), ne(0, 12);
        const int v = nv(rng);
        Graph g{v, {}};
        std::uniform_int_distribution<int> any(0, v - 1);
        for (int e = ne(rng); e > 0; --e) g.edges.push_back({any(rng), any(rng)});
        const auto m = maximum_matching(g);
        CHECK(is_matching(g, m));
        CHECK(m.size() == matching_bruteforce(g).size());
    }
    CHECK_THROWS_AS(matching_bruteforce(path(21)), TooLarge);
}

TEST_CASE("counting reports")
{
    const auto p = counting_report(path(2));
    CHECK(p.edge_count == 2);
    CHECK(p.matching_size == 1);
    CHECK(p.t_value == 1);
    CHECK(p.bound == 11);
    CHECK(p.holds);

    const auto tri = counting_report(cycle(3));
    CHECK(tri.matching_size == 1);
    CHECK(tri.t_value == 0);
    CHECK(tri.bound == 2);
    CHECK_FALSE(tri.holds);
    CHECK(tri.exceptional);

    const Graph star{4, {{0, 1}, {0, 2}, {0, 3}}};
    const auto s = counting_report(star);
    CHECK(s.matching_size == 1);
    CHECK(s.leaves == 3);
    CHECK(s.t_value == 2);
    CHECK(s.bound == 20);
    CHECK(s.holds);

    for (int n : {4, 6}) {
        const auto c = counting_report(cycle(n));
        CHECK(c.holds);
        CHECK(c.bound == c.edge_count);
    }
}

TEST_CASE("smoothing valence-two vertices")
{
    const auto y = smooth_valence_two(path(5));
    CHECK(y.edge_count() == 1);
    CHECK(y.vertex_count == 2);
    // a theta graph has no valence-2 vertices after subdividing then smoothing
    Graph theta{4, {{0, 1}, {0, 2}, {2, 1}, {0, 3}, {3, 1}}};
    const auto t = smooth_valence_two(theta);
    CHECK(t.vertex_count == 2);
    CHECK(t.edge_count() == 3);
}

TEST_CASE("canonical codes identify isomorphic graphs")
{
    const Graph a{3, {{0, 1}, {1, 2}, {2, 2}}};
    const Graph b{3, {{2, 0}, {0, 1}, {1, 1}}};
    const Graph c{3, {{0, 1}, {1, 2}, {1, 1}}};
    CHECK(canonical_code(a) == canonical_code(b));
    CHECK(canonical_code(a) != canonical_code(c));
    CHECK(canonical_code(graph_from_code(canonical_code(a))) == canonical_code(a));
}

TEST_CASE("enumeration counts")
{
    CHECK(enumerate_connected_multigraphs(1, 1).size() == 2);
    CHECK(enumerate_connected_multigraphs(2, 2).size() == 6);
    std::map<int, int> by_edges;
    for (const auto& g : enumerate_connected_multigraphs(6, 7)) ++by_edges[g.edge_count()];
    // connected multigraphs with loops, by number of edges
    const std::vector<int> expected = {1, 2, 4, 11, 30, 95, 328};
    for (int e = 0; e <= 6; ++e) CHECK(by_edges[e] == expected[static_cast<std::size_t>(e)]);
}

TEST_CASE("orbit counting cross-check of the enumeration")
{
    // sum over unlabelled graphs of n!/|Aut| equals the labelled count
    for (int e = 1; e <= 4; ++e)
        for (int n = 1; n <= e + 1; ++n) {
            std::size_t total = 0;
            for (const auto& g : enumerate_connected_multigraphs(e, e + 1))
                if (g.edge_count() == e && g.vertex_count == n)
                    total += oracle::factorial(static_cast<std::size_t>(n)) / oracle::automorphisms(g);
            INFO("edges " << e << " vertices " << n);
            CHECK(total == oracle::labelled_connected(n, e));
        }
}

TEST_CASE("counting lemma over small graphs")
{
    const auto v = verify_counting_lemma(4);
    CHECK(v.violations.empty());
    CHECK(v.intermediate_failures.empty());
    REQUIRE(v.exceptional.size() == 2);
    for (const auto& f : v.exceptional) CHECK(f.report.exceptional);
    std::vector<int> sizes;
    for (const auto& f : v.exceptional) sizes.push_back(f.graph.edge_count());
    std::sort(sizes.begin(), sizes.end());
    // the edgeless graph and the triangle
    CHECK(sizes == std::vector<int>{0, 3});
}

TEST_CASE("randomized sweep beyond the exhaustive range is seeded")
{
    const auto a = verify_counting_lemma(9, 5, 20);
    const auto b = verify_counting_lemma(9, 5, 20);
    CHECK(a.all.size() == b.all.size());
    CHECK(a.all.back().graph == b.all.back().graph);
    CHECK(a.violations.empty());
}
