#pragma once

#include <string>
#include <utility>

#include "ascurves/poly.hpp"

namespace ascurves {

// Rational function num/den in lowest terms with monic denominator.
struct RationalFunction {
    Poly num;
    Poly den;  // monic, coprime to num

    bool is_constant() const { return den.deg() == 0 && num.deg() <= 0; }
    bool operator==(const RationalFunction& o) const { return num == o.num && den == o.den; }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }
};

inline RationalFunction make_rational(const FiniteField& F, Poly num, Poly den) {
    if (den.is_zero()) throw std::invalid_argument("rational function: zero denominator");
    if (num.is_zero()) return {Poly{}, poly_const(1)};
    const Poly g = poly_gcd(F, num, den);
    if (g.deg() > 0) {
        num = poly_divrem(F, std::move(num), g).first;
        den = poly_divrem(F, std::move(den), g).first;
    }
    const FiniteField::Elem s = F.inv(den.lead());
    return {poly_scale(F, num, s), poly_scale(F, den, s)};
}

inline RationalFunction rational_from_poly(Poly p) { return {std::move(p), poly_const(1)}; }

inline RationalFunction rf_add(const FiniteField& F, const RationalFunction& a, const RationalFunction& b) {
    Poly n = poly_add(F, poly_mul(F, a.num, b.den), poly_mul(F, b.num, a.den));
    return make_rational(F, std::move(n), poly_mul(F, a.den, b.den));
}

inline RationalFunction rf_embed(const Embedding& emb, const RationalFunction& f) {
    return {poly_embed(emb, f.num), poly_embed(emb, f.den)};
}

inline std::string rf_to_string(const FiniteField& F, const RationalFunction& f) {
    if (f.den.deg() == 0) return poly_to_string(F, f.num);
    return "(" + poly_to_string(F, f.num) + ")/(" + poly_to_string(F, f.den) + ")";
}

}  // namespace ascurves
