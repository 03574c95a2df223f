#pragma once

#include <cassert>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ascurves/finite_field.hpp"

namespace ascurves {

// Univariate polynomial over a FiniteField; coefficients ascending, trailing
// zeros trimmed. The zero polynomial is the empty vector and has degree -1
// (the sentinel for "minus infinity").
struct Poly {
    std::vector<FiniteField::Elem> c;

    Poly() = default;
    explicit Poly(std::vector<FiniteField::Elem> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    FiniteField::Elem coeff(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : 0; }
    FiniteField::Elem lead() const { return c.empty() ? 0 : c.back(); }
    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return c != o.c; }
};

inline Poly poly_const(FiniteField::Elem a) { return a == 0 ? Poly{} : Poly{{a}}; }

inline Poly poly_x() { return Poly{{0, 1}}; }

// x - a
inline Poly poly_x_minus(const FiniteField& F, FiniteField::Elem a) { return Poly{{F.neg(a), 1}}; }

inline Poly poly_add(const FiniteField& F, const Poly& a, const Poly& b) {
    Poly out;
    out.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = F.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    out.trim();
    return out;
}

inline Poly poly_neg(const FiniteField& F, const Poly& a) {
    Poly out = a;
    for (auto& x : out.c) x = F.neg(x);
    return out;
}

inline Poly poly_sub(const FiniteField& F, const Poly& a, const Poly& b) { return poly_add(F, a, poly_neg(F, b)); }

inline Poly poly_scale(const FiniteField& F, const Poly& a, FiniteField::Elem s) {
    if (s == 0) return {};
    Poly out = a;
    for (auto& x : out.c) x = F.mul(x, s);
    return out;
}

inline Poly poly_mul(const FiniteField& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Poly out;
    out.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            if (b.c[j] != 0) out.c[i + j] = F.add(out.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    out.trim();
    return out;
}

inline std::pair<Poly, Poly> poly_divrem(const FiniteField& F, Poly a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const int db = b.deg();
    const FiniteField::Elem leadinv = F.inv(b.lead());
    Poly q;
    if (a.deg() >= db) q.c.assign(a.deg() - db + 1, 0);
    while (a.deg() >= db) {
        const int shift = a.deg() - db;
        const FiniteField::Elem s = F.mul(a.lead(), leadinv);
        q.c[shift] = s;
        for (int i = 0; i <= db; ++i) a.c[i + shift] = F.sub(a.c[i + shift], F.mul(s, b.c[i]));
        a.trim();
    }
    q.trim();
    return {q, a};
}

inline Poly poly_mod(const FiniteField& F, Poly a, const Poly& b) { return poly_divrem(F, std::move(a), b).second; }

inline Poly poly_monic(const FiniteField& F, const Poly& a) {
    if (a.is_zero() || a.lead() == 1) return a;
    return poly_scale(F, a, F.inv(a.lead()));
}

// Monic gcd.
inline Poly poly_gcd(const FiniteField& F, Poly a, Poly b) {
    while (!b.is_zero()) {
        a = poly_mod(F, std::move(a), b);
        std::swap(a, b);
    }
    return poly_monic(F, a);
}

inline FiniteField::Elem poly_eval(const FiniteField& F, const Poly& a, FiniteField::Elem x) {
    FiniteField::Elem acc = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a.c[i]);
    return acc;
}

inline Poly poly_derivative(const FiniteField& F, const Poly& a) {
    Poly out;
    if (a.deg() < 1) return out;
    out.c.resize(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) {
        FiniteField::Elem k = F.from_int(i);
        out.c[i - 1] = F.mul(a.c[i], k);
    }
    out.trim();
    return out;
}

inline Poly poly_pow(const FiniteField& F, Poly base, std::uint64_t e) {
    Poly r = poly_const(1);
    while (e) {
        if (e & 1) r = poly_mul(F, r, base);
        base = poly_mul(F, base, base);
        e >>= 1;
    }
    return r;
}

inline Poly poly_powmod(const FiniteField& F, Poly base, std::uint64_t e, const Poly& m) {
    Poly r = poly_const(1);
    base = poly_mod(F, std::move(base), m);
    while (e) {
        if (e & 1) r = poly_mod(F, poly_mul(F, r, base), m);
        base = poly_mod(F, poly_mul(F, base, base), m);
        e >>= 1;
    }
    return r;
}

// Coefficients of a(u + shift) up to u^(count-1), by repeated synthetic
// division: the k-th remainder of division by (x - shift) is the k-th
// Taylor coefficient.
inline std::vector<FiniteField::Elem> poly_taylor(const FiniteField& F, Poly a, FiniteField::Elem shift, int count) {
    std::vector<FiniteField::Elem> out(count, 0);
    for (int k = 0; k < count && !a.is_zero(); ++k) {
        // synthetic division by (x - shift)
        FiniteField::Elem carry = 0;
        for (std::size_t i = a.c.size(); i-- > 0;) {
            const FiniteField::Elem cur = F.add(a.c[i], F.mul(carry, shift));
            a.c[i] = carry;
            carry = cur;
        }
        out[k] = carry;
        a.trim();
    }
    return out;
}

// First `count` coefficients of the power series a/b, requires b(0) != 0.
inline std::vector<FiniteField::Elem> series_div(const FiniteField& F, const std::vector<FiniteField::Elem>& a,
                                                 const std::vector<FiniteField::Elem>& b, int count) {
    assert(!b.empty() && b[0] != 0);
    const FiniteField::Elem b0inv = F.inv(b[0]);
    std::vector<FiniteField::Elem> t(count, 0);
    for (int k = 0; k < count; ++k) {
        FiniteField::Elem acc = k < static_cast<int>(a.size()) ? a[k] : 0;
        for (int i = 1; i <= k; ++i) {
            const FiniteField::Elem bi = i < static_cast<int>(b.size()) ? b[i] : 0;
            if (bi != 0) acc = F.sub(acc, F.mul(bi, t[k - i]));
        }
        t[k] = F.mul(acc, b0inv);
    }
    return t;
}

inline Poly poly_embed(const Embedding& emb, const Poly& a) {
    Poly out;
    out.c.resize(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) out.c[i] = emb.apply(a.c[i]);
    out.trim();
    return out;
}

inline std::optional<Poly> poly_restrict(const Embedding& emb, const Poly& a) {
    Poly out;
    out.c.resize(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        auto r = emb.restrict_to_subfield(a.c[i]);
        if (!r) return std::nullopt;
        out.c[i] = *r;
    }
    out.trim();
    return out;
}

// All roots in the coefficient field, with multiplicities, plus the monic
// factor that has no roots there. Deterministic: roots ascend by index.
struct RootSplit {
    std::vector<std::pair<FiniteField::Elem, int>> roots;
    Poly nonsplit;
};

inline RootSplit factor_roots(const FiniteField& F, const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("factor_roots: zero polynomial");
    RootSplit out;
    Poly rest = poly_monic(F, f);
    for (std::uint64_t x = 0; x < F.size() && rest.deg() > 0; ++x) {
        const auto xe = static_cast<FiniteField::Elem>(x);
        if (poly_eval(F, rest, xe) != 0) continue;
        int mult = 0;
        const Poly lin = poly_x_minus(F, xe);
        for (;;) {
            auto [q, r] = poly_divrem(F, rest, lin);
            if (!r.is_zero()) break;
            rest = q;
            ++mult;
        }
        out.roots.emplace_back(xe, mult);
    }
    out.nonsplit = rest;
    return out;
}

// Degree of the smallest extension of the coefficient field over which f
// splits completely: the lcm of the degrees of its irreducible factors,
// found by distinct-degree factorization of the squarefree part.
inline int splitting_degree(const FiniteField& F, const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("splitting_degree: zero polynomial");
    Poly s = poly_monic(F, f);
    if (s.deg() <= 0) return 1;
    const Poly d = poly_derivative(F, s);
    if (!d.is_zero()) {
        s = poly_divrem(F, s, poly_gcd(F, s, d)).first;
    } else {
        // f is a polynomial in x^p; its roots are those of the p-th root
        // polynomial, taken coefficient-wise
        Poly root;
        root.c.resize(s.deg() / F.characteristic() + 1, 0);
        for (int i = 0; i <= s.deg(); i += F.characteristic())
            root.c[i / F.characteristic()] = F.pth_root(s.coeff(i));
        root.trim();
        return splitting_degree(F, root);
    }
    // now s is squarefree
    int lcm = 1;
    Poly xq = poly_powmod(F, poly_x(), F.size(), s);  // x^q mod s
    Poly u = xq;
    for (int k = 1; s.deg() > 0; ++k) {
        if (2 * k > s.deg()) {
            // remaining factor is irreducible
            lcm = static_cast<int>(std::lcm(lcm, s.deg()));
            break;
        }
        Poly diff = poly_sub(F, u, poly_x());
        Poly g = poly_gcd(F, diff, s);
        if (g.deg() > 0) {
            lcm = static_cast<int>(std::lcm(lcm, k));
            s = poly_divrem(F, s, g).first;
            if (s.deg() == 0) break;
            u = poly_mod(F, u, s);
        }
        // raise u to the q-th power for the next round
        Poly next = poly_const(0);
        // u(x)^q = u(x^q) over F_q: substitute instead of powering
        // (cheaper: evaluate u at xq modulo s)
        Poly acc = poly_const(1);
        for (std::size_t i = 0; i < u.c.size(); ++i) {
            if (u.c[i] != 0) next = poly_add(F, next, poly_scale(F, acc, u.c[i]));
            if (i + 1 < u.c.size()) acc = poly_mod(F, poly_mul(F, acc, xq), s);
        }
        u = next;
    }
    return lcm;
}

inline std::string poly_to_string(const FiniteField& F, const Poly& a, const std::string& var = "x") {
    if (a.is_zero()) return "0";
    std::string out;
    for (int i = a.deg(); i >= 0; --i) {
        const auto ci = a.coeff(i);
        if (ci == 0) continue;
        if (!out.empty()) out += " + ";
        const std::string cs = F.to_string(ci);
        if (i == 0) {
            out += cs;
        } else {
            if (ci != 1) out += (F.degree() > 1 && cs.find('+') != std::string::npos ? "(" + cs + ")" : cs) + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace ascurves
