#include "doctest.h"

#include <random>
#include <set>
#include <stdexcept>

#include "commdet/graph.hpp"
#include "helpers.hpp"

using namespace commdet;
using testutil::random_connected;

TEST_CASE("add_message_weight creates and accumulates") {
    InteractionGraph g;
    g.add_message_weight(1, 2, 3.0);
    CHECK(g.edge_weight(1, 2) == 3.0);
    CHECK(g.edge_weight(2, 1) == 3.0);
    CHECK(g.edge_count() == 1);

    g.add_message_weight(1, 2, 2.0);
    CHECK(g.edge_weight(1, 2) == 5.0);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("add_message_weight resets the idle counter") {
    InteractionGraph g;
    g.set_edge(1, 2, 3.0, 1);
    CHECK(g.idle_intervals(1, 2) == 1);
    g.add_message_weight(1, 2, 1.0);
    CHECK(g.edge_weight(1, 2) == 4.0);
    CHECK(g.idle_intervals(1, 2) == 0);
}

TEST_CASE("self-loops and nonpositive weights are rejected") {
    InteractionGraph g;
    CHECK_THROWS_AS(g.add_message_weight(1, 1, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_message_weight(1, 2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_message_weight(1, 2, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(g.set_edge(3, 3, 1.0), std::invalid_argument);
}

TEST_CASE("split of a star center yields two copies with the old origin") {
    InteractionGraph g;
    for (NodeId leaf : {1, 2, 3, 4}) g.set_edge(0, leaf, 1.0);
    auto [a, b] = g.split_vertex(0, {1, 2}, {3, 4});
    CHECK_FALSE(g.has_node(0));
    CHECK(g.degree(a) == 2);
    CHECK(g.degree(b) == 2);
    CHECK(g.origin(a) == 0);
    CHECK(g.origin(b) == 0);
    CHECK(g.has_edge(a, 1));
    CHECK(g.has_edge(a, 2));
    CHECK(g.has_edge(b, 3));
    CHECK(g.has_edge(b, 4));
    CHECK_FALSE(g.has_edge(a, b));
}

TEST_CASE("splitting the middle of a path leaves two disjoint edges") {
    InteractionGraph g = testutil::path_graph({1, 2, 3});
    auto [b1, b2] = g.split_vertex(2, {1}, {3});
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(1, b1));
    CHECK(g.has_edge(b2, 3));
    CHECK(node_components(g).size() == 2);

    Partition p = connected_components(g);
    REQUIRE(p.communities.size() == 2);
    CHECK(p.communities[0] == std::vector<NodeId>{1, 2});
    CHECK(p.communities[1] == std::vector<NodeId>{2, 3});
    CHECK(p.overlapping_nodes() == std::vector<NodeId>{2});
}

TEST_CASE("split rejects bad sides") {
    InteractionGraph g;
    for (NodeId leaf : {1, 2, 3}) g.set_edge(0, leaf, 1.0);
    CHECK_THROWS_AS(g.split_vertex(0, {}, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(g.split_vertex(0, {1}, {2}), std::invalid_argument);        // not covering
    CHECK_THROWS_AS(g.split_vertex(0, {1, 2}, {2, 3}), std::invalid_argument);  // not disjoint
    CHECK_THROWS_AS(g.split_vertex(0, {1, 5}, {2, 3}), std::invalid_argument);  // not a neighbor
    CHECK_THROWS_AS(g.split_vertex(9, {1}, {2}), std::invalid_argument);        // unknown vertex
}

TEST_CASE("split preserves edge count and total weight") {
    std::mt19937 rng(7);
    for (int rep = 0; rep < 30; ++rep) {
        InteractionGraph g = random_connected(rng, 8, true);
        std::vector<NodeId> candidates;
        for (NodeId id : g.node_ids())
            if (g.degree(id) >= 2) candidates.push_back(id);
        if (candidates.empty()) continue;
        NodeId v = candidates[rng() % candidates.size()];

        std::vector<NodeId> nbrs;
        for (const auto& [n, st] : g.neighbors(v)) nbrs.push_back(n);
        std::vector<NodeId> side_a{nbrs[0]};
        std::vector<NodeId> side_b{nbrs[1]};
        for (std::size_t i = 2; i < nbrs.size(); ++i)
            (rng() % 2 == 0 ? side_a : side_b).push_back(nbrs[i]);

        std::size_t edges_before = g.edge_count();
        double weight_before = g.total_weight();
        std::size_t nodes_before = g.node_count();
        g.split_vertex(v, side_a, side_b);
        CHECK(g.edge_count() == edges_before);
        CHECK(g.total_weight() == doctest::Approx(weight_before).epsilon(1e-12));
        CHECK(g.node_count() == nodes_before + 1);
    }
}

TEST_CASE("adjacency stays symmetric and consistent under mutation") {
    std::mt19937 rng(11);
    InteractionGraph g = random_connected(rng, 10, true);
    g.remove_edge(g.edges().front().u, g.edges().front().v);
    for (NodeId id : g.node_ids())
        if (g.degree(id) >= 2) {
            std::vector<NodeId> nbrs;
            for (const auto& [n, st] : g.neighbors(id)) nbrs.push_back(n);
            g.split_vertex(id, {nbrs[0]}, {nbrs.begin() + 1, nbrs.end()});
            break;
        }

    std::size_t degree_sum = 0;
    for (NodeId u : g.node_ids()) {
        degree_sum += g.degree(u);
        for (const auto& [v, st] : g.neighbors(u)) {
            CHECK(g.has_edge(v, u));
            CHECK(g.edge_weight(u, v) == g.edge_weight(v, u));
        }
    }
    CHECK(degree_sum == 2 * g.edge_count());
}

TEST_CASE("origins of repeated splits resolve to the ingested id") {
    InteractionGraph g = testutil::complete_graph({0, 1, 2, 3});
    auto [a, b] = g.split_vertex(0, {1}, {2, 3});
    auto [c, d] = g.split_vertex(b, {2}, {3});
    CHECK(g.origin(a) == 0);
    CHECK(g.origin(c) == 0);
    CHECK(g.origin(d) == 0);
    for (NodeId id : g.node_ids()) CHECK(g.origin(id) <= 3);  // only ingested ids as origins
}

TEST_CASE("connected components of disjoint triangles") {
    InteractionGraph g;
    testutil::add_clique(g, {0, 1, 2});
    testutil::add_clique(g, {5, 6, 7});
    auto comps = node_components(g);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].size() == 3);
    CHECK(comps[1].size() == 3);

    InteractionGraph empty;
    CHECK(node_components(empty).empty());
    CHECK(connected_components(empty).communities.empty());
}

TEST_CASE("components cover all node ids exactly once") {
    std::mt19937 rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        InteractionGraph g = random_connected(rng, 9, false);
        auto edges = g.edges();
        const auto& doomed = edges[rng() % edges.size()];
        g.remove_edge(doomed.u, doomed.v);  // may disconnect; node ids stay
        auto comps = node_components(g);
        std::set<NodeId> seen;
        for (const auto& c : comps)
            for (NodeId id : c) CHECK(seen.insert(id).second);
        CHECK(seen.size() == g.node_count());
    }
}

TEST_CASE("origin_collapsed merges split copies back") {
    InteractionGraph g = testutil::path_graph({1, 2, 3}, 2.0);
    g.split_vertex(2, {1}, {3});
    InteractionGraph merged = origin_collapsed(g);
    CHECK(merged.node_count() == 3);
    CHECK(merged.edge_count() == 2);
    CHECK(merged.edge_weight(1, 2) == 2.0);
    CHECK(merged.edge_weight(2, 3) == 2.0);
}
