#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ascurves/config.hpp"
#include "ascurves/finite_field.hpp"
#include "ascurves/poly.hpp"
#include "ascurves/rational.hpp"
#include "ascurves/strata.hpp"

namespace ascurves::covers {

using boost::multiprecision::cpp_int;

// A degree-p cover of the projective line, y^p - y = f(x), over an explicit
// finite field.
struct ASCover {
    FieldPtr field;
    RationalFunction f;
};

inline ASCover make_cover(FieldPtr field, Poly num, Poly den) {
    auto f = make_rational(*field, std::move(num), std::move(den));
    if (f.is_constant()) throw std::invalid_argument("cover requires a non-constant right-hand side");
    return {std::move(field), std::move(f)};
}

inline ASCover make_cover(FieldPtr field, RationalFunction f) {
    return make_cover(std::move(field), std::move(f.num), std::move(f.den));
}

// One finite pole with the coefficients of its principal part:
// coeffs[i-1] is the coefficient of (x - pole)^(-i), i = 1..depth.
struct PrincipalPart {
    FiniteField::Elem pole;
    std::vector<FiniteField::Elem> coeffs;

    int depth() const { return static_cast<int>(coeffs.size()); }
};

// Partial fraction decomposition over the splitting field of the
// denominator: f = poly_part + sum of principal parts.
struct PartialFractions {
    FieldPtr ext;       // splitting field
    EmbeddingPtr emb;   // base -> ext
    Poly poly_part;     // over ext, constant term included
    std::vector<PrincipalPart> parts;  // sorted by pole index
};

namespace detail_cov {

inline FieldPtr extension_of(const FieldPtr& base, int m, const Config& cfg) {
    std::uint64_t size = 1;
    for (int i = 0; i < static_cast<int>(base->degree()) * m; ++i) {
        size *= base->characteristic();
        if (size > cfg.max_field_size) throw BoundError("required extension field exceeds max_field_size");
    }
    if (m == 1) return base;
    return FieldRegistry::instance().field(base->characteristic(), base->degree() * m);
}

// Principal part of num/den at a root `pole` of den with multiplicity
// `mult`: Laurent coefficients from a truncated power-series division.
inline std::vector<FiniteField::Elem> principal_part_at(const FiniteField& K, const Poly& num, const Poly& den,
                                                        FiniteField::Elem pole, int mult) {
    Poly h = den;
    const Poly lin = poly_x_minus(K, pole);
    for (int i = 0; i < mult; ++i) {
        auto [q, r] = poly_divrem(K, h, lin);
        assert(r.is_zero());
        h = q;
    }
    assert(poly_eval(K, h, pole) != 0);
    const auto a = poly_taylor(K, num, pole, mult);
    const auto b = poly_taylor(K, h, pole, mult);
    const auto t = series_div(K, a, b, mult);
    std::vector<FiniteField::Elem> coeffs(mult);
    for (int i = 1; i <= mult; ++i) coeffs[i - 1] = t[mult - i];
    assert(coeffs.back() != 0);
    return coeffs;
}

// Principal part of f at infinity via the substitution x -> 1/u, reusing
// the finite-pole extraction at u = 0. Entry i-1 is the x^i coefficient of
// the polynomial part; empty when deg num <= deg den.
inline std::vector<FiniteField::Elem> principal_part_at_infinity(const FiniteField& K, const RationalFunction& f) {
    const int dn = f.num.deg(), dd = f.den.deg();
    if (dn <= dd) return {};
    const int m0 = dn - dd;
    Poly revnum, revden;
    revnum.c.assign(f.num.c.rbegin(), f.num.c.rend());
    revden.c.assign(f.den.c.rbegin(), f.den.c.rend());
    revnum.trim();
    revden.trim();
    Poly gden = revden;
    gden.c.insert(gden.c.begin(), m0, 0);  // * u^m0
    return principal_part_at(K, revnum, gden, 0, m0);
}

// Standard-form reduction of one principal part: every coefficient at a
// p-divisible index i is folded into index i/p through a p-th root, which
// replaces the summand by an Artin-Schreier-equivalent one. A single
// descending sweep settles all cascades.
inline std::vector<FiniteField::Elem> reduce_principal_part(const FiniteField& K, std::vector<FiniteField::Elem> coeffs) {
    const std::uint32_t p = K.characteristic();
    for (int i = static_cast<int>(coeffs.size()); i >= 1; --i) {
        if (coeffs[i - 1] == 0 || i % static_cast<int>(p) != 0) continue;
        const int j = i / static_cast<int>(p);
        coeffs[j - 1] = K.add(coeffs[j - 1], K.pth_root(coeffs[i - 1]));
        coeffs[i - 1] = 0;
    }
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return coeffs;
}

}  // namespace detail_cov

inline PartialFractions partial_fractions(const ASCover& cover, const Config& cfg = {}) {
    const FiniteField& F = *cover.field;
    const auto& f = cover.f;
    auto [quot, rem] = poly_divrem(F, f.num, f.den);
    int m = 1;
    if (f.den.deg() > 0) {
        m = splitting_degree(F, f.den);
        if (m > cfg.max_splitting_degree) throw BoundError("denominator needs a splitting extension of degree " +
                                                           std::to_string(m) + " > cap");
    }
    PartialFractions out;
    out.ext = detail_cov::extension_of(cover.field, m, cfg);
    out.emb = FieldRegistry::instance().embedding(cover.field, out.ext);
    out.poly_part = poly_embed(*out.emb, quot);
    if (f.den.deg() > 0) {
        const FiniteField& K = *out.ext;
        const Poly den_ext = poly_embed(*out.emb, f.den);
        const Poly rem_ext = poly_embed(*out.emb, rem);
        auto split = factor_roots(K, den_ext);
        if (split.nonsplit.deg() != 0) throw std::logic_error("denominator failed to split over its splitting field");
        for (const auto& [pole, mult] : split.roots)
            out.parts.push_back({pole, detail_cov::principal_part_at(K, rem_ext, den_ext, pole, mult)});
    }
    return out;
}

// One ramified place of the cover, identified by the x-coordinate of the
// branch point (an element of the splitting field) or by x = infinity.
struct RamifiedPlace {
    bool at_infinity;
    FiniteField::Elem location;  // in the analysis extension field; 0 when at_infinity
    int lower_jump;              // prime-to-p pole order of the reduced equation
};

// Everything the rest of the pipeline needs about one cover, computed in a
// single pass: the standard form, the dropped constant, and the
// ramification data.
struct CoverAnalysis {
    ASCover reduced;                     // standard form over the base field, constant dropped
    FiniteField::Elem dropped_constant;  // additive constant removed from the polynomial part
    FieldPtr ext;                        // splitting field of the branch locus
    EmbeddingPtr emb;                    // base -> ext
    std::vector<RamifiedPlace> places;
    strata::Partition partition;         // multiset {lower_jump + 1}
    long genus;
    long p_rank;                         // (number of branch points - 1) * (p - 1)
};

inline CoverAnalysis analyze(const ASCover& cover, const Config& cfg = {}) {
    const FiniteField& F = *cover.field;
    const std::uint32_t p = F.characteristic();
    auto pf = partial_fractions(cover, cfg);
    const FiniteField& K = *pf.ext;

    // infinity handled over the base field through x -> 1/u
    auto inf_part = detail_cov::reduce_principal_part(F, detail_cov::principal_part_at_infinity(F, cover.f));
    const FiniteField::Elem dropped = poly_divrem(F, cover.f.num, cover.f.den).first.coeff(0);

    std::vector<PrincipalPart> finite;
    for (auto& part : pf.parts) {
        auto coeffs = detail_cov::reduce_principal_part(K, std::move(part.coeffs));
        if (!coeffs.empty()) finite.push_back({part.pole, std::move(coeffs)});
    }
    if (finite.empty() && inf_part.empty())
        throw DisconnectedCoverError("right-hand side is of the form c + delta^p - delta: the cover is disconnected");

    // recombine the reduced parts into a rational function over ext, then
    // pull the coefficients back to the base field
    Poly den_ext = poly_const(1);
    for (const auto& part : finite)
        den_ext = poly_mul(K, den_ext, poly_pow(K, poly_x_minus(K, part.pole), part.depth()));
    Poly reduced_polypart;
    reduced_polypart.c.assign(inf_part.size() + 1, 0);
    for (std::size_t i = 0; i < inf_part.size(); ++i) reduced_polypart.c[i + 1] = inf_part[i];
    reduced_polypart.trim();
    Poly num_ext = poly_mul(K, poly_embed(*pf.emb, reduced_polypart), den_ext);
    for (std::size_t j = 0; j < finite.size(); ++j) {
        Poly others = poly_const(1);
        for (std::size_t k = 0; k < finite.size(); ++k)
            if (k != j) others = poly_mul(K, others, poly_pow(K, poly_x_minus(K, finite[k].pole), finite[k].depth()));
        Poly local;
        const Poly lin = poly_x_minus(K, finite[j].pole);
        for (int i = 1; i <= finite[j].depth(); ++i) {
            const auto ci = finite[j].coeffs[i - 1];
            if (ci != 0)
                local = poly_add(K, local, poly_scale(K, poly_pow(K, lin, finite[j].depth() - i), ci));
        }
        num_ext = poly_add(K, num_ext, poly_mul(K, local, others));
    }
    auto reduced_ext = make_rational(K, num_ext, den_ext);
    auto num_base = poly_restrict(*pf.emb, reduced_ext.num);
    auto den_base = poly_restrict(*pf.emb, reduced_ext.den);
    if (!num_base || !den_base) throw std::logic_error("reduced equation is not rational over the base field");

    CoverAnalysis out;
    out.reduced = ASCover{cover.field, {std::move(*num_base), std::move(*den_base)}};
    out.dropped_constant = dropped;
    out.ext = pf.ext;
    out.emb = pf.emb;
    std::vector<int> parts;
    for (const auto& part : finite) {
        const int jump = part.depth();
        assert(jump % p != 0);
        out.places.push_back({false, part.pole, jump});
        parts.push_back(jump + 1);
    }
    if (!inf_part.empty()) {
        const int jump = static_cast<int>(inf_part.size());
        assert(jump % p != 0);
        out.places.push_back({true, 0, jump});
        parts.push_back(jump + 1);
    }
    out.partition = strata::Partition(std::move(parts));
    out.genus = static_cast<long>(out.partition.sum() - 2) * (p - 1) / 2;
    out.p_rank = static_cast<long>(out.places.size() - 1) * (p - 1);
    return out;
}

// Artin-Schreier-equivalent cover whose principal parts contain no exponent
// divisible by p and whose additive constant is removed. Idempotent.
inline ASCover standard_form(const ASCover& cover, const Config& cfg = {}) { return analyze(cover, cfg).reduced; }

inline strata::Partition ramification_partition(const ASCover& cover, const Config& cfg = {}) {
    return analyze(cover, cfg).partition;
}

inline long genus(const ASCover& cover, const Config& cfg = {}) { return analyze(cover, cfg).genus; }

// Deuring-Shafarevich route: s = r(p-1) with r+1 geometric branch points.
inline long p_rank_from_ramification(const ASCover& cover, const Config& cfg = {}) { return analyze(cover, cfg).p_rank; }

// Number of points of the smooth projective model over F_{q^i}, computed
// from the standard form with the dropped constant re-added (the constant
// changes the arithmetic twist, so point counts keep it).
inline std::uint64_t point_count(const CoverAnalysis& an, int ext_deg, const Config& cfg = {}) {
    if (ext_deg < 1) throw std::invalid_argument("extension degree must be >= 1");
    const FieldPtr& base = an.reduced.field;
    const std::uint32_t p = base->characteristic();
    FieldPtr E = detail_cov::extension_of(base, ext_deg, cfg);
    const auto emb = FieldRegistry::instance().embedding(base, E);
    const FiniteField& K = *E;
    const Poly num = poly_embed(*emb, an.reduced.f.num);
    const Poly den = poly_embed(*emb, an.reduced.f.den);
    const FiniteField::Elem c0 = emb->apply(an.dropped_constant);

    const auto count_range = [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t acc = 0;
        for (std::uint64_t x = lo; x < hi; ++x) {
            const auto xe = static_cast<FiniteField::Elem>(x);
            const auto dv = poly_eval(K, den, xe);
            if (dv == 0) {
                acc += 1;  // branch point: one (rational) point above it
            } else {
                const auto v = K.add(K.div(poly_eval(K, num, xe), dv), c0);
                if (K.abs_trace(v) == 0) acc += p;
            }
        }
        return acc;
    };

    std::uint64_t total = 0;
    const std::uint64_t n = K.size();
    if (cfg.jobs > 1 && n >= 1024) {
        const int jobs = cfg.jobs;
        std::vector<std::uint64_t> partial(jobs, 0);
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&, t] {
                const std::uint64_t lo = n * t / jobs, hi = n * (t + 1) / jobs;
                partial[t] = count_range(lo, hi);
            });
        for (auto& th : pool) th.join();
        for (auto v : partial) total += v;
    } else {
        total = count_range(0, n);
    }

    // the place over x = infinity
    if (num.deg() > den.deg()) {
        total += 1;  // branch point
    } else {
        assert(num.deg() < den.deg());  // standard form leaves no equal-degree case
        if (K.abs_trace(c0) == 0) total += p;
    }
    return total;
}

inline std::uint64_t point_count(const ASCover& cover, int ext_deg, const Config& cfg = {}) {
    return point_count(analyze(cover, cfg), ext_deg, cfg);
}

// L-polynomial data recovered from point counts.
struct ZetaData {
    long genus;
    long p_rank;                  // degree of L mod p
    std::vector<cpp_int> l_poly;  // coefficients of L(T), degree 2g
    bool cross_checked;           // true when N_{g+1} was also counted and matched
};

// Independent p-rank computation: count N_1..N_g, build L(T) through
// Newton's identities and the functional equation, and read off the degree
// of L mod p.
inline ZetaData zeta_p_rank(const CoverAnalysis& an, const Config& cfg = {}) {
    const long g = an.genus;
    if (g > cfg.max_oracle_genus) throw BoundError("genus " + std::to_string(g) + " exceeds the oracle bound");
    ZetaData out;
    out.genus = g;
    if (g == 0) {
        out.p_rank = 0;
        out.l_poly = {1};
        out.cross_checked = false;
        return out;
    }
    const cpp_int q = an.reduced.field->size();
    std::vector<cpp_int> power_sums(g + 1);  // S_i = q^i + 1 - N_i
    for (long i = 1; i <= g; ++i) {
        const cpp_int qi = boost::multiprecision::pow(q, static_cast<unsigned>(i));
        power_sums[i] = qi + 1 - cpp_int(point_count(an, static_cast<int>(i), cfg));
    }
    // Newton's identities: k e_k = sum_{i=1..k} (-1)^(i-1) S_i e_{k-i}
    std::vector<cpp_int> esym(2 * g + 1);
    esym[0] = 1;
    for (long k = 1; k <= g; ++k) {
        cpp_int acc = 0;
        for (long i = 1; i <= k; ++i) {
            const cpp_int term = power_sums[i] * esym[k - i];
            acc += (i % 2 == 1) ? term : -term;
        }
        if (acc % k != 0) throw std::logic_error("zeta oracle: Newton identity division failed");
        esym[k] = acc / k;
    }
    out.l_poly.assign(2 * g + 1, 0);
    for (long j = 0; j <= g; ++j) out.l_poly[j] = (j % 2 == 0) ? esym[j] : -esym[j];
    for (long j = 0; j < g; ++j)
        out.l_poly[2 * g - j] = boost::multiprecision::pow(q, static_cast<unsigned>(g - j)) * out.l_poly[j];
    if (out.l_poly[0] != 1 || out.l_poly[2 * g] == 0) throw std::logic_error("zeta oracle: malformed L-polynomial");

    // optional consistency check against one extra point count
    out.cross_checked = false;
    std::uint64_t next_size = 1;
    bool fits = true;
    for (std::uint32_t i = 0; i < an.reduced.field->degree() * (g + 1); ++i) {
        next_size *= an.reduced.field->characteristic();
        if (next_size > cfg.max_field_size) {
            fits = false;
            break;
        }
    }
    if (fits) {
        for (long j = g + 1; j <= 2 * g; ++j) esym[j] = (j % 2 == 0) ? out.l_poly[j] : -out.l_poly[j];
        const long k = g + 1;
        cpp_int acc = 0;
        for (long i = 1; i < k; ++i) {
            const cpp_int term = power_sums[i] * esym[k - i];
            acc += (i % 2 == 1) ? term : -term;
        }
        // S_k = (-1)^(k-1) (k e_k - sum_{i<k} (-1)^(i-1) S_i e_{k-i})
        cpp_int sk = k * esym[k] - acc;
        if (k % 2 == 0) sk = -sk;
        const cpp_int predicted = boost::multiprecision::pow(q, static_cast<unsigned>(k)) + 1 - sk;
        const cpp_int counted = cpp_int(point_count(an, static_cast<int>(k), cfg));
        if (predicted != counted)
            throw std::logic_error("zeta oracle: L-polynomial fails the extra point-count check");
        out.cross_checked = true;
        power_sums.push_back(sk);
    }

    const cpp_int pc = an.reduced.field->characteristic();
    long deg_mod_p = 0;
    for (long j = 0; j <= 2 * g; ++j)
        if (out.l_poly[j] % pc != 0) deg_mod_p = j;
    out.p_rank = deg_mod_p;
    return out;
}

inline ZetaData zeta_p_rank(const ASCover& cover, const Config& cfg = {}) {
    return zeta_p_rank(analyze(cover, cfg), cfg);
}

// The same cover read over the degree-m extension of its base field.
inline ASCover base_change(const ASCover& cover, int m, const Config& cfg = {}) {
    if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
    FieldPtr E = detail_cov::extension_of(cover.field, m, cfg);
    const auto emb = FieldRegistry::instance().embedding(cover.field, E);
    return make_cover(E, rf_embed(*emb, cover.f));
}

}  // namespace ascurves::covers
