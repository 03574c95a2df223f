#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "ascurves/strata.hpp"

using namespace ascurves;
using strata::Partition;

namespace {

std::vector<std::vector<int>> parts_of(const std::vector<Partition>& list) {
    std::vector<std::vector<int>> out;
    for (const auto& e : list) out.push_back(e.parts());
    return out;
}

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

}  // namespace

TEST_CASE("partition enumeration: the eleven partitions for p=3, d=10") {
    const auto omega = strata::enumerate_partitions(3, 10);
    const std::vector<std::vector<int>> expected = {
        {12},          {3, 9},        {6, 6},        {2, 2, 8},       {2, 5, 5},        {3, 3, 6},
        {2, 2, 2, 6},  {2, 2, 3, 5},  {3, 3, 3, 3},  {2, 2, 2, 3, 3}, {2, 2, 2, 2, 2, 2}};
    REQUIRE(parts_of(omega) == expected);
}

TEST_CASE("partition enumeration: small cases and restrictions") {
    CHECK(parts_of(strata::enumerate_partitions(5, 1)) == std::vector<std::vector<int>>{{3}});
    CHECK(parts_of(strata::enumerate_partitions(3, 2, 1)) == std::vector<std::vector<int>>{{2, 2}});
    CHECK_THROWS_AS(strata::enumerate_partitions(2, 3), std::invalid_argument);  // parity
    CHECK_THROWS_AS(strata::enumerate_partitions(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(strata::enumerate_partitions(4, 2), std::invalid_argument);  // not prime
}

TEST_CASE("every enumerated partition is admissible") {
    for (int p : {2, 3, 5, 7})
        for (int d = 1; d <= 30; ++d) {
            if (p == 2 && d % 2) continue;
            for (const auto& E : strata::enumerate_partitions(p, d)) {
                REQUIRE(E.sum() == d + 2);
                for (int e : E.parts()) {
                    REQUIRE(e >= 2);
                    REQUIRE(e % p != 1);
                }
                REQUIRE(std::is_sorted(E.parts().begin(), E.parts().end()));
            }
        }
}

TEST_CASE("length-one and length-two strata counts") {
    for (int p : {3, 5, 7})
        for (int d = 1; d <= 50; ++d) {
            const auto omega0 = strata::enumerate_partitions(p, d, 0);
            REQUIRE(omega0.empty() == ((d + 1) % p == 0));
            if ((d + 1) % p == 0) {
                const auto omega1 = strata::enumerate_partitions(p, d, 1);
                REQUIRE(static_cast<long>(omega1.size()) == ceil_div(long(d + 1) * (p - 2), 2L * p));
            }
        }
}

TEST_CASE("stratum dimensions for the p=3, d=10 table") {
    const std::vector<std::pair<std::vector<int>, int>> table = {
        {{12}, 6},          {{3, 9}, 7},          {{6, 6}, 7},          {{2, 2, 8}, 7},
        {{2, 5, 5}, 7},     {{3, 3, 6}, 8},       {{2, 2, 2, 6}, 8},    {{2, 2, 3, 5}, 8},
        {{3, 3, 3, 3}, 9},  {{2, 2, 2, 3, 3}, 9}, {{2, 2, 2, 2, 2, 2}, 9}};
    for (const auto& [parts, dim] : table) CHECK(strata::stratum_dimension(3, Partition(parts)) == dim);
}

TEST_CASE("stratum dimension edge cases") {
    // all-twos partition in characteristic 2 has dimension 2g-1
    for (int g = 1; g <= 12; ++g) {
        Partition E(std::vector<int>(g + 1, 2));
        CHECK(strata::stratum_dimension(2, E) == 2 * g - 1);
    }
    CHECK_THROWS_AS(strata::stratum_dimension(3, Partition({4})), std::invalid_argument);  // 4 = 1 mod 3
    CHECK_THROWS_AS(strata::stratum_dimension(3, Partition({2})), std::invalid_argument);  // d = 0
}

TEST_CASE("full dimension is attained exactly when all parts are at most p") {
    for (int p : {2, 3, 5, 7})
        for (int d = 1; d <= 20; ++d) {
            if (p == 2 && d % 2) continue;
            for (const auto& E : strata::enumerate_partitions(p, d)) {
                const bool full = strata::stratum_dimension(p, E) == d - 1;
                const bool smallparts = *std::max_element(E.parts().begin(), E.parts().end()) <= p;
                REQUIRE(full == smallparts);
            }
        }
}

TEST_CASE("characteristic 2: stratum dimension is g - 1 + s") {
    for (int g = 1; g <= 12; ++g)
        for (const auto& E : strata::enumerate_partitions(2, 2 * g))
            REQUIRE(strata::stratum_dimension(2, E) == g - 1 + E.r());
}

TEST_CASE("cover stratum dimensions") {
    const auto a = strata::cover_stratum_dimension(3, Partition({12}));
    CHECK(a.dim_cover == 9);
    CHECK(a.fibre_dim == 8);
    const auto b = strata::cover_stratum_dimension(2, Partition({2, 2}));
    CHECK(b.dim_cover == 4);
    CHECK(b.fibre_dim == 2);
    // the cover dimension exceeds the curve dimension by 3
    for (int p : {2, 3, 5})
        for (int d = 2; d <= 14; ++d) {
            if (p == 2 && d % 2) continue;
            for (const auto& E : strata::enumerate_partitions(p, d))
                REQUIRE(strata::cover_stratum_dimension(p, E).dim_cover == strata::stratum_dimension(p, E) + 3);
        }
}

TEST_CASE("existence of a curve with given genus and p-rank") {
    // p = 2: everything with 0 <= s <= g exists
    for (long g = 0; g <= 10; ++g)
        for (long s = 0; s <= g; ++s) REQUIRE(strata::prank_exists(2, g, s));
    // p >= 3, p-rank 0 exists exactly when p does not divide d+1
    for (int p : {3, 5, 7})
        for (int d = 1; d <= 40; ++d) {
            const long g = static_cast<long>(d) * (p - 1) / 2;
            REQUIRE(strata::prank_exists(p, g, 0) == ((d + 1) % p != 0));
        }
    // ordinary curves exist exactly when d is even
    for (int p : {3, 5})
        for (int d = 1; d <= 20; ++d) {
            const long g = static_cast<long>(d) * (p - 1) / 2;
            REQUIRE(strata::prank_exists(p, g, g) == (d % 2 == 0));
        }
    CHECK(strata::prank_exists(3, 10, 10));
    CHECK_FALSE(strata::prank_exists(3, 10, 9));  // s not a multiple of p-1
    CHECK_FALSE(strata::prank_exists(3, 10, 12));
    CHECK(strata::prank_exists(5, 0, 0));
}

TEST_CASE("maximal partitions") {
    CHECK(parts_of(strata::maximal_partitions(3, 10)) ==
          std::vector<std::vector<int>>{{3, 3, 3, 3}, {2, 2, 2, 3, 3}, {2, 2, 2, 2, 2, 2}});
    CHECK(parts_of(strata::maximal_partitions(2, 6)) == std::vector<std::vector<int>>{{2, 2, 2, 2}});
    CHECK(parts_of(strata::maximal_partitions(5, 3)) == std::vector<std::vector<int>>{{2, 3}});

    for (int p : {3, 5, 7})
        for (int d = 1; d <= 50; ++d) {
            const auto maxima = strata::maximal_partitions(p, d);
            REQUIRE(static_cast<long>(maxima.size()) == d / 2 - ceil_div(d - 4, 3));
            // each length in the allowed window occurs exactly once
            std::set<int> lengths;
            for (const auto& E : maxima) {
                for (int e : E.parts()) REQUIRE((e == 2 || e == 3));
                lengths.insert(E.length());
            }
            REQUIRE(static_cast<long>(lengths.size()) == static_cast<long>(maxima.size()));
            for (long rp1 = ceil_div(d + 2, 3); rp1 <= (d + 2) / 2; ++rp1) REQUIRE(lengths.count(int(rp1)) == 1);
            // uniqueness happens exactly for d in {1,2,3,5}
            REQUIRE((maxima.size() == 1) == (d == 1 || d == 2 || d == 3 || d == 5));
        }
}

TEST_CASE("irreducibility classification") {
    const auto r35 = strata::is_irreducible(3, 5);
    CHECK(r35.irreducible);
    REQUIRE(r35.witnesses.size() == 1);
    CHECK(r35.witnesses[0] == Partition({2, 2, 3}));

    const auto r5 = strata::is_irreducible(5, 4);  // d = 2
    CHECK_FALSE(r5.irreducible);
    CHECK(parts_of(r5.witnesses) == std::vector<std::vector<int>>{{4}, {2, 2}});

    for (long g = 1; g <= 14; ++g) CHECK(strata::is_irreducible(2, g).irreducible);
    CHECK(strata::is_irreducible(7, 0).irreducible);
    CHECK(strata::is_irreducible(7, 3).irreducible);  // d = 1
    CHECK_THROWS_AS(strata::is_irreducible(5, 3), std::invalid_argument);
}

TEST_CASE("hyperelliptic components in characteristic 2") {
    CHECK(strata::hyperelliptic_components(2, 0).component_count == 1);
    CHECK(strata::hyperelliptic_components(2, 0).dimension == 1);
    CHECK(strata::hyperelliptic_components(2, 2).component_count == 1);
    CHECK(strata::hyperelliptic_components(2, 2).dimension == 3);
    CHECK(strata::hyperelliptic_components(4, 1).component_count == 2);  // {1,4}, {2,3}
    CHECK(strata::hyperelliptic_components(4, 1).dimension == 4);
    CHECK_THROWS_AS(strata::hyperelliptic_components(4, 5), std::invalid_argument);

    for (long g = 1; g <= 12; ++g)
        for (long s = 0; s <= g; ++s) {
            const auto h = strata::hyperelliptic_components(g, s);
            REQUIRE(h.dimension == g - 1 + s);
            REQUIRE(h.component_count >= 1);
        }
}

TEST_CASE("codimension is always below the p-rank gap") {
    CHECK(strata::codim_check(3, 10, 4).codim == 1);
    CHECK(strata::codim_check(3, 10, 4).gap == 6);
    CHECK(strata::codim_check(3, 10, 4).strict);
    CHECK_THROWS_AS(strata::codim_check(3, 10, 10), std::invalid_argument);  // needs s < g
    CHECK_THROWS_AS(strata::codim_check(2, 4, 1), std::invalid_argument);    // needs p >= 3
    CHECK_THROWS_AS(strata::codim_check(5, 8, 0), std::invalid_argument);    // empty: 5 | d+1
    for (int p : {3, 5})
        for (int d = 1; d <= 20; ++d) {
            const long g = static_cast<long>(d) * (p - 1) / 2;
            for (long s = 0; s < g; s += p - 1) {
                if (!strata::prank_exists(p, g, s)) continue;
                REQUIRE(strata::codim_check(p, g, s).strict);
            }
        }
}

TEST_CASE("partition count helper") {
    CHECK(strata::count_partitions_into(5, 2) == 2);
    CHECK(strata::count_partitions_into(5, 5) == 1);
    CHECK(strata::count_partitions_into(5, 6) == 0);
    CHECK(strata::count_partitions_into(1, 1) == 1);
}
