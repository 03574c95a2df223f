#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ascurves/poly.hpp"
#include "ascurves/rational.hpp"

using namespace ascurves;

namespace {

Poly random_poly(const FiniteField& F, std::mt19937& rng, int maxdeg) {
    std::uniform_int_distribution<int> ddist(0, maxdeg);
    std::uniform_int_distribution<std::uint64_t> cdist(0, F.size() - 1);
    Poly out;
    const int d = ddist(rng);
    out.c.resize(d + 1);
    for (auto& c : out.c) c = static_cast<FiniteField::Elem>(cdist(rng));
    out.trim();
    return out;
}

}  // namespace

TEST_CASE("division with remainder inverts multiplication") {
    auto F = FiniteField::make(5, 2);
    std::mt19937 rng(2024);
    for (int k = 0; k < 100; ++k) {
        const Poly a = random_poly(*F, rng, 8);
        Poly b = random_poly(*F, rng, 5);
        if (b.is_zero()) b = poly_const(1);
        const auto [q, r] = poly_divrem(*F, a, b);
        REQUIRE(poly_add(*F, poly_mul(*F, q, b), r) == a);
        REQUIRE(r.deg() < b.deg());
    }
}

TEST_CASE("gcd divides both arguments and is monic") {
    auto F = FiniteField::make(2, 3);
    std::mt19937 rng(77);
    for (int k = 0; k < 100; ++k) {
        const Poly a = random_poly(*F, rng, 6);
        const Poly b = random_poly(*F, rng, 6);
        if (a.is_zero() && b.is_zero()) continue;
        const Poly g = poly_gcd(*F, a, b);
        REQUIRE(!g.is_zero());
        REQUIRE(g.lead() == 1);
        if (!a.is_zero()) REQUIRE(poly_divrem(*F, a, g).second.is_zero());
        if (!b.is_zero()) REQUIRE(poly_divrem(*F, b, g).second.is_zero());
    }
}

TEST_CASE("root finding over the coefficient field") {
    SECTION("x^2 - 1 over F_5 splits as {1, 4}") {
        auto F = FiniteField::make(5, 1);
        Poly f{{F->neg(1), 0, 1}};
        const auto rs = factor_roots(*F, f);
        // independent check: evaluate at all field elements
        std::vector<std::pair<FiniteField::Elem, int>> expected;
        for (std::uint64_t x = 0; x < F->size(); ++x)
            if (poly_eval(*F, f, static_cast<FiniteField::Elem>(x)) == 0)
                expected.push_back({static_cast<FiniteField::Elem>(x), 1});
        REQUIRE(rs.roots == expected);
        REQUIRE(rs.roots == std::vector<std::pair<FiniteField::Elem, int>>{{1, 1}, {4, 1}});
        REQUIRE(rs.nonsplit == poly_const(1));
    }
    SECTION("x has the single root 0") {
        auto F = FiniteField::make(3, 2);
        const auto rs = factor_roots(*F, poly_x());
        REQUIRE(rs.roots == std::vector<std::pair<FiniteField::Elem, int>>{{0, 1}});
        REQUIRE(rs.nonsplit == poly_const(1));
    }
    SECTION("x^2 + 1 over F_3 has no roots") {
        auto F = FiniteField::make(3, 1);
        Poly f{{1, 0, 1}};
        for (std::uint64_t x = 0; x < F->size(); ++x)
            REQUIRE(poly_eval(*F, f, static_cast<FiniteField::Elem>(x)) != 0);
        const auto rs = factor_roots(*F, f);
        REQUIRE(rs.roots.empty());
        REQUIRE(rs.nonsplit == f);
    }
    SECTION("multiplicities are reported") {
        auto F = FiniteField::make(2, 1);
        // x^3 (x+1) = x^4 + x^3
        Poly f{{0, 0, 0, 1, 1}};
        const auto rs = factor_roots(*F, f);
        REQUIRE(rs.roots == std::vector<std::pair<FiniteField::Elem, int>>{{0, 3}, {1, 1}});
    }
    SECTION("zero polynomial is rejected") {
        auto F = FiniteField::make(2, 1);
        CHECK_THROWS_AS(factor_roots(*F, Poly{}), std::invalid_argument);
    }
}

TEST_CASE("splitting degree matches a brute-force root count") {
    // over F_p, check that the reported extension is the first one where
    // all roots (with multiplicity) appear
    for (int p : {2, 3, 5}) {
        auto F = FiniteField::make(p, 1);
        std::mt19937 rng(31 + p);
        for (int k = 0; k < 40; ++k) {
            Poly f = random_poly(*F, rng, 5);
            if (f.deg() < 1) continue;
            const int m = splitting_degree(*F, f);
            REQUIRE(m >= 1);
            for (int i = 1; i <= m; ++i) {
                auto E = FiniteField::make(p, i);
                Embedding emb(F, E);
                const auto rs = factor_roots(*E, poly_embed(emb, f));
                int found = 0;
                for (const auto& [root, mult] : rs.roots) found += mult;
                if (i < m)
                    REQUIRE(found < f.deg());
                else
                    REQUIRE(found == f.deg());
            }
        }
    }
}

TEST_CASE("taylor coefficients recompose the shifted polynomial") {
    auto F = FiniteField::make(7, 1);
    std::mt19937 rng(5);
    for (int k = 0; k < 50; ++k) {
        const Poly f = random_poly(*F, rng, 6);
        std::uniform_int_distribution<std::uint64_t> cdist(0, F->size() - 1);
        const auto s = static_cast<FiniteField::Elem>(cdist(rng));
        const auto coeffs = poly_taylor(*F, f, s, f.deg() + 2);
        // f(x) = sum coeffs[k] (x - s)^k
        Poly acc;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            acc = poly_add(*F, acc, poly_scale(*F, poly_pow(*F, poly_x_minus(*F, s), i), coeffs[i]));
        REQUIRE(acc == f);
    }
}

TEST_CASE("rational functions normalize to lowest terms with monic denominator") {
    auto F = FiniteField::make(5, 1);
    // (2x^2 + 2x) / (2x + 2) = x
    const auto f = make_rational(*F, Poly{{0, 2, 2}}, Poly{{2, 2}});
    REQUIRE(f.num == poly_x());
    REQUIRE(f.den == poly_const(1));
    CHECK_THROWS_AS(make_rational(*F, poly_x(), Poly{}), std::invalid_argument);

    const auto g = make_rational(*F, poly_const(3), Poly{{1, 3}});  // 3/(3x+1)
    REQUIRE(g.den.lead() == 1);
    const auto sum = rf_add(*F, f, g);
    // recompose: sum - f == g
    const auto diff = rf_add(*F, sum, make_rational(*F, poly_neg(*F, f.num), f.den));
    REQUIRE(diff == g);
}
