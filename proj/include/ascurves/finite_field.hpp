#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ascurves/config.hpp"

namespace ascurves {

namespace detail {

// Dense polynomials over the prime field F_p, used only while a field is
// being constructed (modulus search, generator search). Coefficients are
// residues in [0, p), ascending degree.
using FpPoly = std::vector<std::uint32_t>;

inline void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int fp_deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    fp_trim(out);
    return out;
}

inline std::uint32_t fp_inv_scalar(std::uint32_t a, std::uint32_t p) {
    // extended Euclid on (a, p)
    std::int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        std::int64_t qq = r / newr;
        std::swap(t -= qq * newt, newt);
        std::swap(r -= qq * newr, newr);
    }
    if (r != 1) throw std::domain_error("fp_inv_scalar: not invertible");
    return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

// Remainder of a modulo monic m.
inline FpPoly fp_mod(FpPoly a, const FpPoly& m, std::uint32_t p) {
    fp_trim(a);
    const int dm = fp_deg(m);
    assert(dm >= 0 && m.back() == 1);
    while (fp_deg(a) >= dm) {
        const std::uint32_t lead = a.back();
        const int shift = fp_deg(a) - dm;
        if (lead != 0)
            for (int i = 0; i <= dm; ++i) {
                std::uint64_t v = a[i + shift] + std::uint64_t(p - m[i]) * lead % p;
                a[i + shift] = static_cast<std::uint32_t>(v % p);
            }
        a.pop_back();
        fp_trim(a);
    }
    return a;
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint32_t p) {
    return fp_mod(fp_mul(a, b, p), m, p);
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint32_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        // reduce a mod b after making b monic
        FpPoly bm = b;
        const std::uint32_t s = fp_inv_scalar(bm.back(), p);
        for (auto& c : bm) c = static_cast<std::uint32_t>(std::uint64_t(c) * s % p);
        a = fp_mod(std::move(a), bm, p);
        std::swap(a, b);
    }
    if (!a.empty()) {
        const std::uint32_t s = fp_inv_scalar(a.back(), p);
        for (auto& c : a) c = static_cast<std::uint32_t>(std::uint64_t(c) * s % p);
    }
    return a;
}

// x^(p^k) mod m for k = 1.., by iterating the p-power map.
inline FpPoly fp_pow_p(const FpPoly& a, const FpPoly& m, std::uint32_t p) {
    FpPoly r{1};
    FpPoly base = a;
    std::uint32_t e = p;
    while (e) {
        if (e & 1) r = fp_mulmod(r, base, m, p);
        base = fp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

// A monic f of degree n >= 1 over F_p is irreducible iff it has no
// irreducible factor of degree <= n/2.
inline bool fp_irreducible(const FpPoly& f, std::uint32_t p) {
    const int n = fp_deg(f);
    if (n < 1 || f.back() != 1) return false;
    if (n == 1) return true;
    FpPoly x{0, 1};
    FpPoly u = x;  // x^(p^k) mod f
    for (int k = 1; 2 * k <= n; ++k) {
        u = fp_pow_p(u, f, p);
        FpPoly diff = u;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
        fp_trim(diff);
        if (fp_deg(fp_gcd(diff, f, p)) != 0) return false;
    }
    return true;
}

inline bool is_prime_u32(std::uint32_t v) {
    if (v < 2) return false;
    for (std::uint32_t d = 2; std::uint64_t(d) * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    if (v > 1) out.push_back(v);
    return out;
}

}  // namespace detail

// An explicit finite field F_{p^n} = F_p[x]/(modulus). Elements are encoded
// as integer indices in [0, p^n): the base-p digits of the index, little
// endian, are the coordinates relative to the power basis of the modulus.
// Multiplication runs through discrete-log tables built once at
// construction; all state is immutable afterwards and safe to share.
class FiniteField {
  public:
    using Elem = std::uint32_t;

    static constexpr std::uint64_t kHardSizeCap = 1ull << 24;

    // Field with the canonical modulus: the first irreducible monic
    // polynomial x^n + c_{n-1}x^{n-1} + ... + c_0 when the coefficient
    // vector (c_0, ..., c_{n-1}) is read as a base-p counter.
    static std::shared_ptr<const FiniteField> make(std::uint32_t p, std::uint32_t n) {
        return std::shared_ptr<const FiniteField>(new FiniteField(p, find_canonical_modulus(p, n)));
    }

    // Field with an explicitly given monic irreducible modulus
    // (n + 1 coefficients in [0, p), ascending degree).
    static std::shared_ptr<const FiniteField> make(std::uint32_t p, std::vector<std::uint32_t> modulus) {
        return std::shared_ptr<const FiniteField>(new FiniteField(p, std::move(modulus)));
    }

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return n_; }
    std::uint64_t size() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    static Elem zero() { return 0; }
    static Elem one() { return 1; }
    // The class of x, a root of the modulus (equals p as an index).
    Elem gen() const { return n_ > 1 ? Elem(p_) : 0; }

    std::vector<std::uint32_t> coords(Elem a) const {
        check(a);
        std::vector<std::uint32_t> out(n_);
        for (std::uint32_t i = 0; i < n_; ++i) {
            out[i] = a % p_;
            a /= p_;
        }
        return out;
    }

    Elem from_coords(const std::vector<std::uint32_t>& digits) const {
        if (digits.size() > n_) throw std::invalid_argument("from_coords: too many coordinates");
        std::uint64_t idx = 0;
        for (std::size_t i = digits.size(); i-- > 0;) {
            if (digits[i] >= p_) throw std::invalid_argument("from_coords: digit out of range");
            idx = idx * p_ + digits[i];
        }
        return static_cast<Elem>(idx);
    }

    // Residue -> prime-subfield element.
    Elem from_int(std::uint64_t v) const { return static_cast<Elem>(v % p_); }

    Elem add(Elem a, Elem b) const {
        check(a);
        check(b);
        Elem out = 0;
        std::uint64_t mult = 1;
        for (std::uint32_t i = 0; i < n_; ++i) {
            const std::uint32_t da = a % p_, db = b % p_;
            std::uint32_t s = da + db;
            if (s >= p_) s -= p_;
            out += static_cast<Elem>(s * mult);
            a /= p_;
            b /= p_;
            mult *= p_;
        }
        return out;
    }

    Elem neg(Elem a) const {
        check(a);
        Elem out = 0;
        std::uint64_t mult = 1;
        for (std::uint32_t i = 0; i < n_; ++i) {
            const std::uint32_t da = a % p_;
            out += static_cast<Elem>((da == 0 ? 0 : p_ - da) * mult);
            a /= p_;
            mult *= p_;
        }
        return out;
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        check(a);
        check(b);
        if (a == 0 || b == 0) return 0;
        std::uint64_t e = log_[a] + log_[b];
        if (e >= q_ - 1) e -= q_ - 1;
        return exp_[e];
    }

    Elem inv(Elem a) const {
        check(a);
        if (a == 0) throw std::domain_error("inverse of zero");
        const std::uint64_t l = log_[a];
        return exp_[l == 0 ? 0 : q_ - 1 - l];
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::uint64_t e) const {
        check(a);
        if (a == 0) return e == 0 ? one() : 0;
        if (q_ == 2) return 1;
        const std::uint64_t r = (static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
        return exp_[r];
    }

    Elem frobenius(Elem a) const { return pow(a, p_); }

    // Unique b with b^p = a (the Frobenius inverse, b = a^(p^(n-1))).
    Elem pth_root(Elem a) const {
        std::uint64_t e = 1;
        for (std::uint32_t i = 0; i + 1 < n_; ++i) e *= p_;
        return pow(a, e);
    }

    // Absolute trace down to F_p: sum of a^(p^i), i < n. The result index
    // is a residue in [0, p).
    Elem abs_trace(Elem a) const {
        Elem acc = 0;
        Elem t = a;
        for (std::uint32_t i = 0; i < n_; ++i) {
            acc = add(acc, t);
            t = frobenius(t);
        }
        assert(acc < p_);
        return acc;
    }

    std::string to_string(Elem a) const {
        if (n_ == 1) return std::to_string(a);
        const auto d = coords(a);
        std::string out;
        bool first = true;
        for (std::uint32_t i = 0; i < n_; ++i) {
            if (d[i] == 0) continue;
            if (!first) out += "+";
            first = false;
            if (i == 0 || d[i] != 1) out += std::to_string(d[i]);
            if (i >= 1) {
                if (d[i] != 1) out += "*";
                out += "w";
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return first ? "0" : out;
    }

    std::string name() const { return "F_" + std::to_string(q_); }

  private:
    FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p), modulus_(std::move(modulus)) {
        if (!detail::is_prime_u32(p_)) throw std::invalid_argument("characteristic must be prime");
        detail::fp_trim(modulus_);
        if (detail::fp_deg(modulus_) < 1 || modulus_.back() != 1)
            throw std::invalid_argument("modulus must be monic of degree >= 1");
        for (auto c : modulus_)
            if (c >= p_) throw std::invalid_argument("modulus coefficient out of range");
        if (!detail::fp_irreducible(modulus_, p_)) throw std::invalid_argument("modulus is reducible");
        n_ = static_cast<std::uint32_t>(detail::fp_deg(modulus_));
        q_ = 1;
        for (std::uint32_t i = 0; i < n_; ++i) {
            q_ *= p_;
            if (q_ > kHardSizeCap) throw BoundError("field size exceeds hard cap 2^24");
        }
        build_tables();
    }

    static std::vector<std::uint32_t> find_canonical_modulus(std::uint32_t p, std::uint32_t n) {
        if (!detail::is_prime_u32(p)) throw std::invalid_argument("characteristic must be prime");
        if (n < 1) throw std::invalid_argument("extension degree must be >= 1");
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            count *= p;
            if (count > kHardSizeCap) throw BoundError("field size exceeds hard cap 2^24");
        }
        std::vector<std::uint32_t> f(n + 1, 0);
        f[n] = 1;
        for (std::uint64_t k = 0; k < count; ++k) {
            std::uint64_t v = k;
            for (std::uint32_t i = 0; i < n; ++i) {
                f[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            if (detail::fp_irreducible(f, p)) return f;
        }
        throw std::logic_error("no irreducible polynomial found");  // unreachable
    }

    void check(Elem a) const { assert(a < q_); (void)a; }

    void build_tables() {
        using detail::FpPoly;
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        if (q_ == 2) {
            exp_[0] = 1;
            log_[1] = 0;
            return;
        }
        // generator: first element index whose order is q-1
        const auto factors = detail::prime_factors(q_ - 1);
        FpPoly g;
        for (std::uint64_t cand = 2; cand < q_; ++cand) {
            FpPoly c;
            std::uint64_t v = cand;
            for (std::uint32_t i = 0; i < n_; ++i) {
                c.push_back(static_cast<std::uint32_t>(v % p_));
                v /= p_;
            }
            detail::fp_trim(c);
            bool ok = true;
            for (auto ell : factors) {
                if (raw_pow(c, (q_ - 1) / ell) == FpPoly{1}) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                g = c;
                break;
            }
        }
        assert(!g.empty());
        // multiplication by g is F_p-linear: column j holds g * x^j mod modulus
        std::vector<std::uint32_t> gmat(std::size_t(n_) * n_, 0);
        FpPoly col = g;
        for (std::uint32_t j = 0; j < n_; ++j) {
            for (std::uint32_t i = 0; i < n_; ++i)
                gmat[std::size_t(j) * n_ + i] = i < col.size() ? col[i] : 0;
            col.insert(col.begin(), 0);  // * x
            col = detail::fp_mod(std::move(col), modulus_, p_);
        }
        std::vector<std::uint32_t> cur(n_, 0), nxt(n_, 0);
        cur[0] = 1;
        for (std::uint64_t k = 0; k < q_ - 1; ++k) {
            std::uint64_t idx = 0;
            for (std::size_t i = n_; i-- > 0;) idx = idx * p_ + cur[i];
            exp_[k] = static_cast<Elem>(idx);
            log_[idx] = static_cast<std::uint32_t>(k);
            std::fill(nxt.begin(), nxt.end(), 0u);
            for (std::uint32_t j = 0; j < n_; ++j) {
                if (cur[j] == 0) continue;
                const std::uint32_t* colj = &gmat[std::size_t(j) * n_];
                for (std::uint32_t i = 0; i < n_; ++i)
                    nxt[i] = static_cast<std::uint32_t>((nxt[i] + std::uint64_t(cur[j]) * colj[i]) % p_);
            }
            std::swap(cur, nxt);
        }
        assert(cur[0] == 1 && std::all_of(cur.begin() + 1, cur.end(), [](std::uint32_t c) { return c == 0; }));
    }

    detail::FpPoly raw_pow(detail::FpPoly base, std::uint64_t e) const {
        detail::FpPoly r{1};
        while (e) {
            if (e & 1) r = detail::fp_mulmod(r, base, modulus_, p_);
            base = detail::fp_mulmod(base, base, modulus_, p_);
            e >>= 1;
        }
        return r;
    }

    std::uint32_t p_ = 0;
    std::uint32_t n_ = 0;
    std::uint64_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<Elem> exp_;           // exp_[k] = g^k, k < q-1
    std::vector<std::uint32_t> log_;  // log_[a] for a != 0
};

using FieldPtr = std::shared_ptr<const FiniteField>;

// F_p-linear embedding of a subfield into an extension, realized by mapping
// the power basis of the small modulus onto powers of its least root in the
// big field. Also supports the inverse map on the image.
class Embedding {
  public:
    Embedding(FieldPtr from, FieldPtr to) : from_(std::move(from)), to_(std::move(to)) {
        if (from_->characteristic() != to_->characteristic())
            throw std::invalid_argument("embedding: characteristics differ");
        if (to_->degree() % from_->degree() != 0)
            throw std::invalid_argument("embedding: degree does not divide");
        const std::uint32_t p = from_->characteristic();
        if (from_ == to_ || (from_->degree() == to_->degree() && from_->modulus() == to_->modulus())) {
            identity_ = true;
            return;
        }
        // least root of the small modulus in the big field
        const auto& m = from_->modulus();
        std::optional<FiniteField::Elem> beta;
        for (std::uint64_t cand = 0; cand < to_->size(); ++cand) {
            FiniteField::Elem acc = 0, xp = 1;
            for (std::size_t i = 0; i < m.size(); ++i) {
                acc = to_->add(acc, to_->mul(m[i], xp));
                xp = to_->mul(xp, static_cast<FiniteField::Elem>(cand));
            }
            if (acc == 0) {
                beta = static_cast<FiniteField::Elem>(cand);
                break;
            }
        }
        if (!beta) throw std::logic_error("embedding: modulus has no root in extension");
        beta_pow_.resize(from_->degree());
        FiniteField::Elem bp = 1;
        for (std::uint32_t j = 0; j < from_->degree(); ++j) {
            beta_pow_[j] = bp;
            bp = to_->mul(bp, *beta);
        }
        build_restriction(p);
    }

    const FieldPtr& from() const { return from_; }
    const FieldPtr& to() const { return to_; }

    FiniteField::Elem apply(FiniteField::Elem a) const {
        if (identity_) return a;
        const auto digits = from_->coords(a);
        FiniteField::Elem acc = 0;
        for (std::uint32_t j = 0; j < from_->degree(); ++j)
            if (digits[j] != 0) acc = to_->add(acc, to_->mul(digits[j], beta_pow_[j]));
        return acc;
    }

    // Pull an element of the big field back to the subfield, if it lies in
    // the image.
    std::optional<FiniteField::Elem> restrict_to_subfield(FiniteField::Elem b) const {
        if (identity_) return b;
        const std::uint32_t p = from_->characteristic();
        const std::uint32_t bign = to_->degree(), smalln = from_->degree();
        auto rhs = to_->coords(b);
        // r = E * rhs, then read coordinates off the pivot rows
        std::vector<std::uint32_t> r(bign, 0);
        for (std::uint32_t i = 0; i < bign; ++i) {
            std::uint64_t acc = 0;
            for (std::uint32_t k = 0; k < bign; ++k) acc += std::uint64_t(elim_[std::size_t(i) * bign + k]) * rhs[k];
            r[i] = static_cast<std::uint32_t>(acc % p);
        }
        std::vector<std::uint32_t> digits(smalln, 0);
        for (std::uint32_t i = 0; i < bign; ++i) {
            if (pivot_col_[i] >= 0)
                digits[pivot_col_[i]] = r[i];
            else if (r[i] != 0)
                return std::nullopt;  // not in the image
        }
        return from_->from_coords(digits);
    }

  private:
    void build_restriction(std::uint32_t p) {
        const std::uint32_t bign = to_->degree(), smalln = from_->degree();
        // Gauss-Jordan on [V | I], V's columns are the beta powers
        std::vector<std::uint32_t> a(std::size_t(bign) * (smalln + bign), 0);
        const auto at = [&](std::uint32_t i, std::uint32_t j) -> std::uint32_t& {
            return a[std::size_t(i) * (smalln + bign) + j];
        };
        for (std::uint32_t j = 0; j < smalln; ++j) {
            const auto col = to_->coords(beta_pow_[j]);
            for (std::uint32_t i = 0; i < bign; ++i) at(i, j) = col[i];
        }
        for (std::uint32_t i = 0; i < bign; ++i) at(i, smalln + i) = 1;
        pivot_col_.assign(bign, -1);
        std::uint32_t row = 0;
        for (std::uint32_t col = 0; col < smalln && row < bign; ++col) {
            std::uint32_t sel = row;
            while (sel < bign && at(sel, col) == 0) ++sel;
            if (sel == bign) continue;
            for (std::uint32_t j = 0; j < smalln + bign; ++j) std::swap(at(sel, j), at(row, j));
            const std::uint32_t s = detail::fp_inv_scalar(at(row, col), p);
            for (std::uint32_t j = 0; j < smalln + bign; ++j)
                at(row, j) = static_cast<std::uint32_t>(std::uint64_t(at(row, j)) * s % p);
            for (std::uint32_t i = 0; i < bign; ++i) {
                if (i == row || at(i, col) == 0) continue;
                const std::uint32_t f = at(i, col);
                for (std::uint32_t j = 0; j < smalln + bign; ++j) {
                    std::uint64_t v = at(i, j) + std::uint64_t(p - f) * at(row, j) % p;
                    at(i, j) = static_cast<std::uint32_t>(v % p);
                }
            }
            pivot_col_[row] = static_cast<int>(col);
            ++row;
        }
        elim_.assign(std::size_t(bign) * bign, 0);
        for (std::uint32_t i = 0; i < bign; ++i)
            for (std::uint32_t k = 0; k < bign; ++k) elim_[std::size_t(i) * bign + k] = at(i, smalln + k);
    }

    FieldPtr from_;
    FieldPtr to_;
    bool identity_ = false;
    std::vector<FiniteField::Elem> beta_pow_;
    std::vector<std::uint32_t> elim_;  // bign x bign row-reduction matrix
    std::vector<int> pivot_col_;       // pivot column per row, -1 if none
};

using EmbeddingPtr = std::shared_ptr<const Embedding>;

// Process-wide cache of canonical fields and of embeddings, so that repeated
// tower constructions reuse the same tables.
class FieldRegistry {
  public:
    static FieldRegistry& instance() {
        static FieldRegistry reg;
        return reg;
    }

    FieldPtr field(std::uint32_t p, std::uint32_t n) {
        std::lock_guard<std::mutex> lock(mu_);
        const auto key = std::make_pair(p, n);
        auto it = fields_.find(key);
        if (it != fields_.end()) return it->second;
        auto f = FiniteField::make(p, n);
        fields_.emplace(key, f);
        return f;
    }

    EmbeddingPtr embedding(const FieldPtr& from, const FieldPtr& to) {
        std::lock_guard<std::mutex> lock(mu_);
        const auto key = std::make_pair(from.get(), to.get());
        auto it = embeddings_.find(key);
        if (it != embeddings_.end()) return it->second;
        auto e = std::make_shared<const Embedding>(from, to);
        embeddings_.emplace(key, e);
        return e;
    }

  private:
    std::mutex mu_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> fields_;
    std::map<std::pair<const FiniteField*, const FiniteField*>, EmbeddingPtr> embeddings_;
};

}  // namespace ascurves
