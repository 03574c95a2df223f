#include <catch2/catch_amalgamated.hpp>

#include "ascurves/deform.hpp"
#include "ascurves/refinement_graph.hpp"

using namespace ascurves;
using strata::Partition;

TEST_CASE("family construction enforces its hypotheses") {
    const auto f33 = deform::make_family(3, 3, 3);
    CHECK(f33.e() == 6);
    CHECK(f33.rhs_string() == "x^5/(1-x*t)^3");

    const auto f22 = deform::make_family(2, 2, 2);
    CHECK(f22.rhs_string() == "x^3/(1-x*t)^2");

    // the p-divisible entry is moved into first position
    const auto f26 = deform::make_family(3, 2, 6);
    CHECK(f26.e1 == 6);
    CHECK(f26.e2 == 2);

    CHECK_THROWS_AS(deform::make_family(5, 2, 3), std::invalid_argument);   // 5 divides neither
    CHECK_THROWS_AS(deform::make_family(3, 3, 4), std::invalid_argument);   // 4 = 1 mod 3
    CHECK_THROWS_AS(deform::make_family(3, 3, 1), std::invalid_argument);   // e2 < 2
    CHECK_THROWS_AS(deform::make_family(2, 2, 3), std::invalid_argument);   // 3 = 1 mod 2
}

TEST_CASE("specialization at t = 0 gives the one-pole cover") {
    auto F9 = FieldRegistry::instance().field(3, 2);
    const auto fam = deform::make_family(3, 3, 3);
    const auto an = covers::analyze(deform::specialize(fam, F9, 0));
    CHECK(an.partition == Partition({6}));
    CHECK(an.genus == 4);
    CHECK(an.p_rank == 0);
}

TEST_CASE("specialization at t = 1 over F_9 splits the branch point") {
    auto F9 = FieldRegistry::instance().field(3, 2);
    const auto fam = deform::make_family(3, 3, 3);
    const auto an = covers::analyze(deform::specialize(fam, F9, 1));
    CHECK(an.partition == Partition({3, 3}));
    CHECK(an.genus == 4);
    CHECK(an.p_rank == 2);
}

TEST_CASE("p=2, e1=e2=2: every specialization over F_4 degenerates, F_8 works") {
    const auto fam = deform::make_family(2, 2, 2);

    // over F_4, x^3/(1-xt)^2 is equivalent to y^2+y = x for every t != 0:
    // the index-2 Laurent coefficient folds onto index 1 and cancels it
    auto F4 = FieldRegistry::instance().field(2, 2);
    for (std::uint64_t t = 1; t < F4->size(); ++t) {
        const auto an = covers::analyze(deform::specialize(fam, F4, static_cast<FiniteField::Elem>(t)));
        REQUIRE(an.partition == Partition({2}));
        REQUIRE(an.genus == 0);
    }
    CHECK_THROWS_AS(deform::verify_deformation(2, 2, 2, F4), NoSuitableParameterError);
    CHECK_THROWS_AS(deform::verify_deformation(2, 2, 2, FieldRegistry::instance().field(2, 1)),
                    NoSuitableParameterError);

    auto F8 = FieldRegistry::instance().field(2, 3);
    const auto rep = deform::verify_deformation(2, 2, 2, F8);
    CHECK(rep.pass());
    CHECK(rep.special.genus == 1);
    CHECK(rep.generic.genus == 1);
    CHECK(rep.special.p_rank == 0);
    CHECK(rep.generic.p_rank == 1);
    CHECK(rep.generic.partition == Partition({2, 2}));
}

TEST_CASE("worked deformation reports") {
    SECTION("p=3, e1=e2=3 over F_9") {
        const auto rep = deform::verify_deformation(3, 3, 3, FieldRegistry::instance().field(3, 2));
        CHECK(rep.pass());
        CHECK(rep.special.partition == Partition({6}));
        CHECK(rep.generic.partition == Partition({3, 3}));
        CHECK(rep.special.genus == 4);
        CHECK(rep.generic.genus == 4);
        CHECK(rep.special.p_rank == 0);
        CHECK(rep.generic.p_rank == 2);
        REQUIRE(rep.special.oracle_p_rank.has_value());
        REQUIRE(rep.generic.oracle_p_rank.has_value());
        CHECK(*rep.special.oracle_p_rank == 0);
        CHECK(*rep.generic.oracle_p_rank == 2);
    }
    SECTION("p=2, e1=2, e2=4 over F_8") {
        const auto rep = deform::verify_deformation(2, 2, 4, FieldRegistry::instance().field(2, 3));
        CHECK(rep.pass());
        CHECK(rep.special.partition == Partition({6}));
        CHECK(rep.generic.partition == Partition({2, 4}));
        CHECK(rep.special.genus == 2);
        CHECK(rep.generic.genus == 2);
        CHECK(rep.special.p_rank == 0);
        CHECK(rep.generic.p_rank == 1);
    }
}

TEST_CASE("the p-rank jump is exactly p-1 for all small admissible families") {
    for (int p : {2, 3, 5})
        for (int e1 = 2; e1 + 2 <= 10; ++e1)
            for (int e2 = e1; e1 + e2 <= 10; ++e2) {
                if (e1 % p == 1 || e2 % p == 1) continue;
                if (e1 % p != 0 && e2 % p != 0) continue;
                const auto rep = deform::verify_deformation_auto(p, e1, e2);
                INFO("p=" << p << " e1=" << e1 << " e2=" << e2 << " over " << rep.field->name());
                REQUIRE(rep.pass());
                REQUIRE(rep.field->size() <= (1u << 12));
                REQUIRE(rep.generic.p_rank == rep.special.p_rank + (p - 1));
                if (rep.special.oracle_p_rank) REQUIRE(*rep.special.oracle_p_rank == rep.special.p_rank);
                if (rep.generic.oracle_p_rank) REQUIRE(*rep.generic.oracle_p_rank == rep.generic.p_rank);
            }
}

TEST_CASE("closure steps are realized by the deformation family") {
    for (int p : {2, 3, 5})
        for (int d = 1; d <= 10; ++d) {
            if (p == 2 && d % 2) continue;
            for (const auto& E : strata::enumerate_partitions(p, d)) {
                const auto step = refgraph::prank_closure_step(p, E);
                if (!step) continue;
                const int e = *std::max_element(E.parts().begin(), E.parts().end());
                const auto rep = deform::verify_deformation_auto(p, p, e - p);
                INFO("partition " << E.str() << ", split entry " << e);
                REQUIRE(rep.pass());
                // the deformed partition is the closure-step target
                std::vector<int> expected = E.parts();
                expected.erase(std::find(expected.begin(), expected.end(), e));
                expected.push_back(p);
                expected.push_back(e - p);
                REQUIRE(step->target == Partition(expected));
                // specializing at t = 0 reproduces the one-pole model of the
                // split entry
                const auto fam = deform::make_family(p, p, e - p);
                const auto special = covers::analyze(deform::specialize(fam, rep.field, 0));
                REQUIRE(special.partition == Partition({e}));
            }
        }
}
