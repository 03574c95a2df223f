#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ascurves/cover.hpp"

namespace ascurves::deform {

// The one-parameter family y^p - y = x^(e-1) / (1 - x t)^(e1) with
// p | e1. At t = 0 it degenerates to y^p - y = x^(e-1), one branch point
// with lower jump e-1; for generic t it is branched at infinity and at
// x = 1/t with lower jumps e2-1 and e1-1.
struct DeformationFamily {
    int p;
    int e1;  // the p-divisible entry
    int e2;

    int e() const { return e1 + e2; }
    std::string rhs_string() const {
        return "x^" + std::to_string(e() - 1) + "/(1-x*t)^" + std::to_string(e1);
    }
};

inline DeformationFamily make_family(int p, int e1, int e2) {
    strata::validate_prime(p);
    if (e1 < 2 || e2 < 2) throw std::invalid_argument("family requires e1, e2 >= 2");
    if (e1 % p == 1 || e2 % p == 1) throw std::invalid_argument("family requires e1, e2 != 1 mod p");
    if (e1 % p != 0 && e2 % p != 0) throw std::invalid_argument("family requires p | e1 or p | e2");
    if ((e1 + e2 - 1) % p == 0) throw std::invalid_argument("family requires p not dividing e1 + e2 - 1");
    if (e1 % p != 0) std::swap(e1, e2);
    return {p, e1, e2};
}

inline covers::ASCover specialize(const DeformationFamily& fam, FieldPtr field, FiniteField::Elem t0) {
    if (static_cast<int>(field->characteristic()) != fam.p)
        throw std::invalid_argument("field characteristic does not match the family");
    const FiniteField& F = *field;
    Poly num;
    num.c.assign(fam.e(), 0);
    num.c[fam.e() - 1] = 1;  // x^(e-1)
    Poly den = poly_const(1);
    if (t0 != 0) {
        Poly lin{{1, F.neg(t0)}};  // 1 - t0 x
        den = poly_pow(F, lin, fam.e1);
    }
    return covers::make_cover(std::move(field), std::move(num), std::move(den));
}

// Invariants of one fibre of the family.
struct FibreInvariants {
    strata::Partition partition;
    long genus = 0;
    long p_rank = 0;
    std::optional<long> oracle_p_rank;  // set when the zeta oracle ran
};

struct DeformationReport {
    int p, e1, e2;
    FieldPtr field;
    FiniteField::Elem t0;
    FibreInvariants special, generic;
    bool special_partition_ok = false;   // special fibre has partition {e1+e2}
    bool generic_partition_ok = false;   // generic fibre has partition {e1, e2}
    bool genus_equal_ok = false;         // both fibres share the genus
    bool p_rank_jump_ok = false;         // generic p-rank = special p-rank + (p-1)
    bool expansion_ok = false;           // Laurent data at x = 1/t0 matches the closed form

    bool pass() const {
        return special_partition_ok && generic_partition_ok && genus_equal_ok && p_rank_jump_ok && expansion_ok;
    }
};

namespace detail_def {

inline FibreInvariants fibre_invariants(const covers::CoverAnalysis& an, const Config& cfg) {
    FibreInvariants out;
    out.partition = an.partition;
    out.genus = an.genus;
    out.p_rank = an.p_rank;
    if (an.genus <= cfg.max_oracle_genus) {
        std::uint64_t needed = 1;
        bool fits = true;
        for (std::uint32_t i = 0; i < an.reduced.field->degree() * std::max<long>(an.genus, 1); ++i) {
            needed *= an.reduced.field->characteristic();
            if (needed > cfg.max_field_size) {
                fits = false;
                break;
            }
        }
        if (fits) out.oracle_p_rank = covers::zeta_p_rank(an, cfg).p_rank;
    }
    return out;
}

// First two Laurent coefficients of x^(e-1)/(1-xt)^(e1) at x = 1/t:
// c_{e1}   = (-1)^(e1) t^-(e+e1-1)
// c_{e1-1} = (e-1) (-1)^(e1) t^-(e+e1-2)
inline std::pair<FiniteField::Elem, FiniteField::Elem> expected_leading_terms(const FiniteField& F, int e1, int e,
                                                                              FiniteField::Elem t0) {
    const FiniteField::Elem sign = (e1 % 2 == 0) ? F.one() : F.neg(F.one());
    const FiniteField::Elem tinv = F.inv(t0);
    const FiniteField::Elem first = F.mul(sign, F.pow(tinv, e + e1 - 1));
    const FiniteField::Elem second = F.mul(F.mul(sign, F.from_int(e - 1)), F.pow(tinv, e + e1 - 2));
    return {first, second};
}

}  // namespace detail_def

// Run the covers pipeline on the t = 0 fibre and on the first usable
// t0 != 0, and check the predicted behavior: partitions {e} vs {e1, e2},
// constant genus, p-rank jump of exactly p-1, and the Laurent expansion at
// the moving branch point. A t0 is usable when the specialized cover
// really is branched at the two expected places; if none exists in the
// field, NoSuitableParameterError asks the caller for an extension.
inline DeformationReport verify_deformation(int p, int e1, int e2, FieldPtr field, const Config& cfg = {}) {
    const auto fam = make_family(p, e1, e2);
    const FiniteField& F = *field;

    DeformationReport rep;
    rep.p = fam.p;
    rep.e1 = fam.e1;
    rep.e2 = fam.e2;
    rep.field = field;

    const auto special_an = covers::analyze(specialize(fam, field, 0), cfg);
    rep.special = detail_def::fibre_invariants(special_an, cfg);
    rep.special_partition_ok = rep.special.partition == strata::Partition({fam.e()});

    // deterministic scan for a non-degenerate specialization
    std::optional<covers::CoverAnalysis> generic_an;
    for (std::uint64_t cand = 1; cand < F.size(); ++cand) {
        const auto t0 = static_cast<FiniteField::Elem>(cand);
        auto an = covers::analyze(specialize(fam, field, t0), cfg);
        if (an.places.size() != 2) continue;  // principal part collapsed; branch places merged
        rep.t0 = t0;
        generic_an = std::move(an);
        break;
    }
    if (!generic_an)
        throw NoSuitableParameterError("no specialization parameter in " + F.name() +
                                       " keeps the two branch places distinct; enlarge the field");
    rep.generic = detail_def::fibre_invariants(*generic_an, cfg);
    rep.generic_partition_ok = rep.generic.partition == strata::Partition({fam.e1, fam.e2});
    rep.genus_equal_ok = rep.special.genus == rep.generic.genus;
    rep.p_rank_jump_ok = rep.generic.p_rank == rep.special.p_rank + (p - 1);

    // Laurent expansion at the moving branch point x = 1/t0: the raw
    // principal part starts with the predicted two terms, and after the
    // standard-form reduction the leading prime-to-p index is e1 - 1.
    {
        const auto pole = F.inv(rep.t0);
        const auto cover = specialize(fam, field, rep.t0);
        const auto pf = covers::partial_fractions(cover, cfg);
        bool ok = pf.parts.size() == 1 && pf.ext == field && pf.parts[0].pole == pole &&
                  pf.parts[0].depth() == fam.e1;
        if (ok) {
            const auto [c_top, c_next] = detail_def::expected_leading_terms(F, fam.e1, fam.e(), rep.t0);
            ok = pf.parts[0].coeffs[fam.e1 - 1] == c_top && pf.parts[0].coeffs[fam.e1 - 2] == c_next;
        }
        if (ok) {
            bool found = false;
            for (const auto& place : generic_an->places)
                if (!place.at_infinity && generic_an->emb->apply(pole) == place.location)
                    found = place.lower_jump == fam.e1 - 1;
            ok = found;
        }
        rep.expansion_ok = ok;
    }
    return rep;
}

// verify_deformation over the smallest field F_{p^m}, m = min_degree.., in
// which a usable specialization exists.
inline DeformationReport verify_deformation_auto(int p, int e1, int e2, const Config& cfg = {}, int min_degree = 1) {
    const auto fam = make_family(p, e1, e2);
    std::uint64_t size = 1;
    for (int i = 1; i < min_degree; ++i) size *= p;
    for (int m = min_degree;; ++m) {
        size *= p;
        if (size > cfg.max_field_size) throw BoundError("no usable specialization below max_field_size");
        try {
            return verify_deformation(fam.p, fam.e1, fam.e2, FieldRegistry::instance().field(p, m), cfg);
        } catch (const NoSuitableParameterError&) {
            continue;
        }
    }
}

}  // namespace ascurves::deform
