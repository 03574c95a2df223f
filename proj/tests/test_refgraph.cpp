#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "ascurves/refinement_graph.hpp"

using namespace ascurves;
using refgraph::Closure;
using strata::Partition;

namespace {

using EdgeSet = std::set<std::pair<std::vector<int>, std::vector<int>>>;

EdgeSet edge_set(const refgraph::RefinementGraph& g) {
    EdgeSet out;
    for (const auto& e : g.edges) out.insert({g.vertices[e.source].parts(), g.vertices[e.target].parts()});
    return out;
}

}  // namespace

TEST_CASE("refinement relation") {
    CHECK(refgraph::refines(Partition({12}), Partition({2, 2, 2, 3, 3})));
    CHECK(refgraph::refines(Partition({12}), Partition({12})));
    CHECK(refgraph::refines(Partition({6, 6}), Partition({2, 2, 2, 6})));
    CHECK_FALSE(refgraph::refines(Partition({3, 3, 6}), Partition({2, 2, 2, 6})));
    CHECK_FALSE(refgraph::refines(Partition({3, 3, 3, 3}), Partition({2, 2, 2, 3, 3})));
    CHECK_FALSE(refgraph::refines(Partition({2, 2, 2, 3, 3}), Partition({2, 2, 2, 2, 2, 2})));
    CHECK_THROWS_AS(refgraph::refines(Partition({4}), Partition({2, 2, 2})), std::invalid_argument);
}

TEST_CASE("refinement graph for p=3, d=10: eleven vertices, sixteen covering edges") {
    const auto g = refgraph::build_graph(3, 10);
    REQUIRE(g.vertices.size() == 11);
    REQUIRE(g.edges.size() == 16);
    // {3,9} -> {2,2,3,5} is easy to overlook: 9 splits as {2,2,5}, and the
    // only length-3 partition above {3,9} is {3,3,6}, which does not refine
    // to {2,2,3,5} (no sub-multiset of {2,2,5} sums to 3)
    const EdgeSet expected = {
        {{12}, {3, 9}},          {{12}, {6, 6}},          {{12}, {2, 2, 8}},
        {{12}, {2, 5, 5}},       {{3, 9}, {3, 3, 6}},     {{3, 9}, {2, 2, 3, 5}},
        {{6, 6}, {3, 3, 6}},     {{6, 6}, {2, 2, 2, 6}},  {{2, 2, 8}, {2, 2, 2, 6}},
        {{2, 2, 8}, {2, 2, 3, 5}},                        {{2, 5, 5}, {2, 2, 3, 5}},
        {{3, 3, 6}, {3, 3, 3, 3}},                        {{3, 3, 6}, {2, 2, 2, 3, 3}},
        {{2, 2, 2, 6}, {2, 2, 2, 3, 3}},                  {{2, 2, 2, 6}, {2, 2, 2, 2, 2, 2}},
        {{2, 2, 3, 5}, {2, 2, 2, 3, 3}}};
    REQUIRE(edge_set(g) == expected);

    int type2 = 0;
    for (const auto& e : g.edges)
        if (e.info.edge_type == 2) ++type2;
    CHECK(type2 == 6);  // every three-way split has all parts congruent to 2 mod 3
    for (const auto& e : g.edges) {
        if (g.vertices[e.source] == Partition({6, 6}) && g.vertices[e.target] == Partition({2, 2, 2, 6})) {
            CHECK(e.info.edge_type == 2);
            CHECK(e.info.split_into == std::vector<int>{2, 2, 2});
            CHECK(e.info.closure == Closure::unknown);
            CHECK(e.info.dim_delta == 1);
        }
    }
}

TEST_CASE("refinement graph small cases") {
    const auto chain = refgraph::build_graph(2, 4);
    REQUIRE(chain.vertices.size() == 3);  // {6}, {2,4}, {2,2,2}
    const EdgeSet expected = {{{6}, {2, 4}}, {{2, 4}, {2, 2, 2}}};
    REQUIRE(edge_set(chain) == expected);

    const auto single = refgraph::build_graph(5, 1);
    CHECK(single.vertices.size() == 1);
    CHECK(single.edges.empty());
}

TEST_CASE("edge classification on the worked examples") {
    SECTION("{4} -> {2,2} for p=5: equal dimensions, not in the closure") {
        const auto info = refgraph::classify_edge(5, Partition({4}), Partition({2, 2}));
        CHECK(info.edge_type == 1);
        CHECK(info.closure == Closure::no);
        CHECK(info.dim_delta == 0);
    }
    SECTION("{12} -> {3,9} for p=3: p divides both parts, closure holds") {
        const auto info = refgraph::classify_edge(3, Partition({12}), Partition({3, 9}));
        CHECK(info.edge_type == 1);
        CHECK(info.closure == Closure::yes);
        CHECK(info.dim_delta == 1);
    }
    SECTION("{6,6} -> {2,2,2,6} for p=3: type 2, undetermined closure") {
        const auto info = refgraph::classify_edge(3, Partition({6, 6}), Partition({2, 2, 2, 6}));
        CHECK(info.edge_type == 2);
        CHECK(info.split_from == 6);
        CHECK(info.closure == Closure::unknown);
        CHECK(info.dim_delta == 1);
    }
    SECTION("{8} -> {3,5} for p=5: a p-divisible part forces the closure and a dimension step") {
        const auto info = refgraph::classify_edge(5, Partition({8}), Partition({3, 5}));
        CHECK(info.closure == Closure::yes);
        CHECK(info.dim_delta == 1);
    }
    SECTION("a non-covering relation is rejected") {
        CHECK_THROWS_AS(refgraph::classify_edge(3, Partition({12}), Partition({2, 2, 2, 3, 3})), std::domain_error);
    }
}

TEST_CASE("every edge is a single-entry split with the predicted shape") {
    for (int p : {2, 3, 5, 7})
        for (int d = 1; d <= 16; ++d) {
            if (p == 2 && d % 2) continue;
            const auto g = refgraph::build_graph(p, d);
            for (const auto& e : g.edges) {
                // classify_edge already threw if the split shape is wrong
                REQUIRE((e.info.edge_type == 1 || e.info.edge_type == 2));
                if (e.info.edge_type == 2) {
                    REQUIRE(p >= 3);
                    for (int part : e.info.split_into) REQUIRE(part % p == (p + 1) / 2 % p);
                }
                REQUIRE((e.info.dim_delta == 0 || e.info.dim_delta == 1));
                const bool zero_case = e.info.edge_type == 1 &&
                                       refgraph::residue_1_to_p(e.info.split_into[0], p) +
                                               refgraph::residue_1_to_p(e.info.split_into[1], p) <=
                                           p;
                REQUIRE((e.info.dim_delta == 0) == zero_case);
                // closure-marked edges really are refinements
                if (e.info.closure == Closure::yes)
                    REQUIRE(refgraph::refines(g.vertices[e.source], g.vertices[e.target]));
                // length increases along edges and the graph stays acyclic
                REQUIRE(g.vertices[e.source].length() < g.vertices[e.target].length());
            }
        }
}

TEST_CASE("characteristic 2: every edge is a closure edge") {
    for (int d = 2; d <= 24; d += 2) {
        const auto g = refgraph::build_graph(2, d);
        for (const auto& e : g.edges) REQUIRE(e.info.closure == Closure::yes);
    }
}

TEST_CASE("chain lengths") {
    CHECK(refgraph::chain_lengths(2, 8) == std::set<int>{4});
    CHECK(refgraph::chain_lengths(3, 10) == std::set<int>{3});
    for (int d = 2; d <= 16; d += 2) REQUIRE(refgraph::chain_lengths(2, d) == std::set<int>{d / 2});
    for (int d = 1; d <= 16; ++d) REQUIRE(refgraph::chain_lengths(3, d) == std::set<int>{d / 3});
    // for p = 5 the common-length property fails somewhere below d = 16
    bool witness = false;
    for (int d = 1; d <= 16 && !witness; ++d) witness = refgraph::chain_lengths(5, d).size() >= 2;
    CHECK(witness);
}

TEST_CASE("p-rank raising closure step") {
    const auto step3 = refgraph::prank_closure_step(3, Partition({12}));
    REQUIRE(step3.has_value());
    CHECK(step3->target == Partition({3, 9}));

    const auto none = refgraph::prank_closure_step(2, Partition({2, 2, 2}));
    CHECK_FALSE(none.has_value());

    const auto step2 = refgraph::prank_closure_step(2, Partition({2, 4}));
    REQUIRE(step2.has_value());
    CHECK(step2->target == Partition({2, 2, 2}));

    // a step exists exactly when the component is not of full dimension,
    // and it always lands on a closure edge
    for (int p : {2, 3, 5})
        for (int d = 1; d <= 12; ++d) {
            if (p == 2 && d % 2) continue;
            for (const auto& E : strata::enumerate_partitions(p, d)) {
                const auto step = refgraph::prank_closure_step(p, E);
                const bool full_dim = strata::stratum_dimension(p, E) == d - 1;
                REQUIRE(step.has_value() == !full_dim);
                if (step) {
                    REQUIRE(step->target.length() == E.length() + 1);
                    const auto info = refgraph::classify_edge(p, E, step->target);
                    REQUIRE(info.closure == Closure::yes);
                }
            }
        }
}

TEST_CASE("DOT export is deterministic and styled by closure status") {
    const auto g = refgraph::build_graph(3, 10);
    const auto dot = refgraph::to_dot(g);
    CHECK(dot == refgraph::to_dot(refgraph::build_graph(3, 10)));
    CHECK(dot.find("digraph refinement_p3_d10") != std::string::npos);
    CHECK(dot.find("{12}\\ndim 6") != std::string::npos);
    CHECK(dot.find("style=solid") != std::string::npos);
    CHECK(dot.find("style=dashed") != std::string::npos);
    const auto g5 = refgraph::build_graph(5, 2);
    const auto dot5 = refgraph::to_dot(g5);
    CHECK(dot5.find("style=dotted, color=red") != std::string::npos);  // {4} -> {2,2}
}
