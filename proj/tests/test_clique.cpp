#include <catch2/catch_amalgamated.hpp>

#include "idnc/clique.hpp"
#include "idnc/rng.hpp"

using namespace idnc;

namespace {

WeightedGraph random_graph(Rng& rng, int max_n = 12, bool integer_weights = false) {
    int n = 1 + static_cast<int>(rng.below(max_n));
    WeightedGraph g(n);
    double p = rng.uniform(0.1, 0.9);
    for (int v = 0; v < n; ++v)
        g.weights[v] = integer_weights ? static_cast<double>(rng.below(4)) : rng.uniform(0.0, 10.0);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (rng.bernoulli(p)) g.add_edge(a, b);
    return g;
}

bool is_clique(const WeightedGraph& g, const std::vector<int>& set) {
    for (size_t i = 0; i < set.size(); ++i)
        for (size_t j = i + 1; j < set.size(); ++j)
            if (!g.adjacent(set[i], set[j])) return false;
    return true;
}

}  // namespace

TEST_CASE("triangle takes all three vertices") {
    WeightedGraph g(3);
    g.weights = {1, 1, 1};
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    CHECK(max_weight_clique(g) == std::vector<int>{0, 1, 2});
}

TEST_CASE("path tie resolves to the lexicographically smallest set") {
    WeightedGraph g(3);
    g.weights = {2, 3, 2};
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    CHECK(max_weight_clique(g) == std::vector<int>{0, 1});
    CHECK(brute_force_clique(g) == std::vector<int>{0, 1});
}

TEST_CASE("edgeless graph picks the single heaviest vertex") {
    WeightedGraph g(4);
    g.weights = {1, 5, 3, 2};
    CHECK(max_weight_clique(g) == std::vector<int>{1});
    CHECK(brute_force_clique(g) == std::vector<int>{1});
}

TEST_CASE("empty graph yields the empty clique") {
    WeightedGraph g(0);
    CHECK(max_weight_clique(g).empty());
}

TEST_CASE("single vertex") {
    WeightedGraph g(1);
    g.weights = {2.5};
    CHECK(brute_force_clique(g) == std::vector<int>{0});
    CHECK(max_weight_clique(g) == std::vector<int>{0});
}

TEST_CASE("brute force rejects large graphs") {
    WeightedGraph g(21);
    CHECK_THROWS_AS(brute_force_clique(g), std::invalid_argument);
}

TEST_CASE("node budget triggers an explicit error") {
    // Dense graph with many cliques and a budget of one node.
    WeightedGraph g(16);
    for (int a = 0; a < 16; ++a)
        for (int b = a + 1; b < 16; ++b) g.add_edge(a, b);
    for (int v = 0; v < 16; ++v) g.weights[v] = 1.0;
    CliqueSearchOptions opt;
    opt.node_budget = 1;
    CHECK_THROWS_AS(max_weight_clique(g, opt), std::runtime_error);
}

TEST_CASE("solver matches brute force on random graphs") {
    Rng rng(2024);
    for (int i = 0; i < 300; ++i) {
        WeightedGraph g = random_graph(rng, 12, i % 4 == 0);
        auto a = max_weight_clique(g);
        auto b = brute_force_clique(g);
        REQUIRE(a == b);
        CHECK(is_clique(g, a));
    }
}

TEST_CASE("output is always a clique and scaling leaves it unchanged") {
    Rng rng(77);
    for (int i = 0; i < 100; ++i) {
        WeightedGraph g = random_graph(rng, 14);
        auto set = max_weight_clique(g);
        CHECK(is_clique(g, set));
        WeightedGraph scaled = g;
        for (auto& w : scaled.weights) w *= 3.5;
        CHECK(max_weight_clique(scaled) == set);
    }
}

TEST_CASE("an isolated zero-weight vertex never changes the result") {
    Rng rng(123);
    for (int i = 0; i < 50; ++i) {
        WeightedGraph g = random_graph(rng, 10);
        auto before = max_weight_clique(g);
        WeightedGraph g2(g.n + 1);
        g2.weights = g.weights;
        g2.weights.push_back(0.0);
        for (int a = 0; a < g.n; ++a)
            for (int b = a + 1; b < g.n; ++b)
                if (g.adjacent(a, b)) g2.add_edge(a, b);
        CHECK(max_weight_clique(g2) == before);
    }
}

TEST_CASE("forced vertices are honored") {
    WeightedGraph g(4);
    g.weights = {10, 1, 1, 1};
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    CliqueSearchOptions opt;
    opt.forced = {2};
    auto set = max_weight_clique(g, opt);
    CHECK(std::find(set.begin(), set.end(), 2) != set.end());
    CHECK(set == std::vector<int>{1, 2});
}

TEST_CASE("triple weights compare lexicographically") {
    TripleWeight a{1.0, 100.0, 0.0};
    TripleWeight b{2.0, 0.0, 0.0};
    CHECK(a < b);
    TripleWeight c{2.0, 1.0, 0.0};
    CHECK(b < c);
    CHECK_FALSE(c < b);

    WeightedGraphT<TripleWeight> g(3);
    g.weights[0] = {1.0, 0.0, 0.0};
    g.weights[1] = {0.0, 5.0, 0.0};
    g.weights[2] = {1.0, 0.0, 0.0};
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    // Primary dominates: {0,1} and {1,2} tie on primary 1, coverage decides
    // nothing further, so the lexicographically smaller set wins.
    TripleWeight w{};
    auto set = max_weight_clique(g, {}, &w);
    CHECK(set == std::vector<int>{0, 1});
    CHECK(w.primary == 1.0);
    CHECK(w.coverage == 5.0);
}
