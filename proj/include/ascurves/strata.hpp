#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ascurves/finite_field.hpp"  // detail::is_prime_u32

namespace ascurves::strata {

// A partition {e_1 <= ... <= e_{r+1}} of d+2 with every part >= 2 and
// every part != 1 mod p. Partitions index the irreducible components of
// the p-rank strata: length r+1 corresponds to p-rank r(p-1).
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        std::sort(parts_.begin(), parts_.end());
    }

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int r() const { return length() - 1; }
    int sum() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int d() const { return sum() - 2; }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    bool operator!=(const Partition& o) const { return parts_ != o.parts_; }

    std::string str() const {
        std::string out = "{";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(parts_[i]);
        }
        return out + "}";
    }

  private:
    std::vector<int> parts_;
};

// Canonical listing order: shorter partitions first, then lexicographic.
inline bool canonical_less(const Partition& a, const Partition& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.parts() < b.parts();
}

inline void validate_prime(int p) {
    if (p < 2 || !detail::is_prime_u32(static_cast<std::uint32_t>(p)))
        throw std::invalid_argument("p must be prime");
}

inline bool valid_part(int p, int e) { return e >= 2 && e % p != 1; }

inline bool in_omega(int p, const Partition& E) {
    if (E.length() == 0) return false;
    for (int e : E.parts())
        if (!valid_part(p, e)) return false;
    return true;
}

// d >= 1, and even when p = 2 (all parts are then even, so d+2 must be).
inline void validate_pd(int p, int d) {
    validate_prime(p);
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    if (p == 2 && d % 2 != 0) throw std::invalid_argument("d must be even when p = 2");
}

// All partitions in Omega_d (or Omega_{d,r} when a length constraint r is
// given), in canonical order.
inline std::vector<Partition> enumerate_partitions(int p, int d, std::optional<int> r = std::nullopt) {
    validate_pd(p, d);
    std::vector<Partition> out;
    std::vector<int> cur;
    const int total = d + 2;
    std::function<void(int, int)> rec = [&](int remaining, int min_part) {
        if (remaining == 0) {
            if (!r || static_cast<int>(cur.size()) == *r + 1) out.emplace_back(cur);
            return;
        }
        if (r && static_cast<int>(cur.size()) > *r) return;
        for (int e = min_part; e <= remaining; ++e) {
            if (!valid_part(p, e)) continue;
            if (remaining - e == 1) continue;  // cannot complete: no part equals 1
            cur.push_back(e);
            rec(remaining - e, e);
            cur.pop_back();
        }
    };
    rec(total, 2);
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

inline void validate_in_omega(int p, const Partition& E) {
    validate_prime(p);
    if (!in_omega(p, E)) throw std::invalid_argument("partition " + E.str() + " is not valid for p = " + std::to_string(p));
    if (E.d() < 1) throw std::invalid_argument("partition sum must be >= 3");
    if (p == 2 && E.d() % 2 != 0) throw std::invalid_argument("d must be even when p = 2");
}

// Dimension of the irreducible component of AS_{g,s} indexed by E:
// d - 1 - sum floor((e_j - 1)/p).
inline int stratum_dimension(int p, const Partition& E) {
    validate_in_omega(p, E);
    int dim = E.d() - 1;
    for (int e : E.parts()) dim -= (e - 1) / p;
    if (dim < 0) throw std::logic_error("negative stratum dimension");
    return dim;
}

struct CoverDimensions {
    int dim_cover;  // component of the cover moduli space: d + 2 - sum floor((e_j-1)/p)
    int fibre_dim;  // N_E = sum (d_j - floor(d_j/p)), the fibre over a fixed branch divisor
};

inline CoverDimensions cover_stratum_dimension(int p, const Partition& E) {
    validate_in_omega(p, E);
    int dim = E.d() + 2;
    int fibre = 0;
    for (int e : E.parts()) {
        dim -= (e - 1) / p;
        const int dj = e - 1;
        fibre += dj - dj / p;
    }
    if (dim != E.length() + fibre) throw std::logic_error("cover dimension identity violated");
    return {dim, fibre};
}

// Existence of a curve with genus g and p-rank s: both 2g/(p-1) and
// s/(p-1) must be integers and Omega_{d,r} nonempty.
inline bool prank_exists(int p, long g, long s) {
    validate_prime(p);
    if (g < 0 || s < 0) return false;
    if ((2 * g) % (p - 1) != 0 || s % (p - 1) != 0) return false;
    const long d = 2 * g / (p - 1);
    const long r = s / (p - 1);
    if (2 * (r + 1) > d + 2) return false;  // parts are >= 2
    if (d == 0) return r == 0;              // Omega_0 = {{2}}
    if (p == 2 && d % 2 != 0) return false;
    // search for one partition of d+2 into r+1 admissible parts
    std::function<bool(long, long, long)> feasible = [&](long remaining, long slots, long min_part) -> bool {
        if (slots == 0) return remaining == 0;
        for (long e = min_part; e * slots <= remaining; ++e) {
            if (!valid_part(p, static_cast<int>(e))) continue;
            if (slots == 1 && e != remaining) continue;
            if (feasible(remaining - e, slots - 1, e)) return true;
        }
        return false;
    };
    return feasible(d + 2, r + 1, 2);
}

// Maximal partitions of the refinement order: every part is 2 or 3 when
// p >= 3, and the all-twos partition when p = 2.
inline std::vector<Partition> maximal_partitions(int p, int d) {
    validate_pd(p, d);
    std::vector<Partition> out;
    if (p == 2) {
        out.emplace_back(std::vector<int>(d / 2 + 1, 2));
        return out;
    }
    for (int threes = 0; 3 * threes <= d + 2; ++threes) {
        const int rest = d + 2 - 3 * threes;
        if (rest % 2 != 0) continue;
        std::vector<int> parts(rest / 2, 2);
        parts.insert(parts.end(), threes, 3);
        out.emplace_back(std::move(parts));
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

struct IrreducibilityResult {
    bool irreducible;
    std::vector<Partition> witnesses;  // partitions of full dimension d-1
};

// The moduli space of genus-g Artin-Schreier curves is irreducible exactly
// when one partition attains the full dimension d-1, i.e. has all parts
// <= p.
inline IrreducibilityResult is_irreducible(int p, long g) {
    validate_prime(p);
    if (g < 0) throw std::invalid_argument("genus must be >= 0");
    if (g == 0) return {true, {Partition({2})}};
    if ((2 * g) % (p - 1) != 0) throw std::invalid_argument("g is not of the form d(p-1)/2");
    const int d = static_cast<int>(2 * g / (p - 1));
    if (p == 2 && d % 2 != 0) throw std::invalid_argument("d must be even when p = 2");
    IrreducibilityResult res;
    for (const auto& E : enumerate_partitions(p, d)) {
        if (*std::max_element(E.parts().begin(), E.parts().end()) <= p) res.witnesses.push_back(E);
    }
    res.irreducible = res.witnesses.size() == 1;
    return res;
}

// Partitions of `total` into exactly `slots` positive integers.
inline long count_partitions_into(long total, long slots) {
    if (slots < 0 || total < slots) return 0;
    if (slots == 0) return total == 0 ? 1 : 0;
    // p(total, slots) with parts >= 1; DP over (sum, parts)
    std::vector<std::vector<long>> dp(total + 1, std::vector<long>(slots + 1, 0));
    dp[0][0] = 1;
    for (long n = 1; n <= total; ++n)
        for (long k = 1; k <= slots; ++k) dp[n][k] = dp[n - 1][k - 1] + (n - k >= 0 ? dp[n - k][k] : 0);
    return dp[total][slots];
}

struct HyperellipticStratum {
    long component_count;  // partitions of g+1 into s+1 positive parts
    long dimension;        // g - 1 + s, for every component
};

// Characteristic-2 hyperelliptic stratum by genus and 2-rank.
inline HyperellipticStratum hyperelliptic_components(long g, long s) {
    if (g < 1) throw std::invalid_argument("genus must be >= 1");
    if (s < 0 || s > g) throw std::invalid_argument("2-rank must satisfy 0 <= s <= g");
    const long count = count_partitions_into(g + 1, s + 1);
    // cross-check against the even-part enumeration: doubling each part of a
    // partition of g+1 gives a partition of 2g+2 into even parts
    const auto direct = enumerate_partitions(2, static_cast<int>(2 * g), static_cast<int>(s));
    if (static_cast<long>(direct.size()) != count) throw std::logic_error("hyperelliptic component count mismatch");
    return {count, g - 1 + s};
}

struct CodimResult {
    int codim;  // min over E in Omega_{d,r} of sum floor((e_j-1)/p)
    long gap;   // g - s
    bool strict;
};

// Codimension of the p-rank-s stratum inside the full moduli space, for
// p >= 3; always strictly less than g - s.
inline CodimResult codim_check(int p, long g, long s) {
    validate_prime(p);
    if (p < 3) throw std::invalid_argument("codim_check requires p >= 3");
    if (s >= g) throw std::invalid_argument("requires s < g");
    if (!prank_exists(p, g, s)) throw std::invalid_argument("empty stratum: no such (g, s)");
    const int d = static_cast<int>(2 * g / (p - 1));
    const int r = static_cast<int>(s / (p - 1));
    const auto omega = enumerate_partitions(p, d, r);
    int codim = -1;
    for (const auto& E : omega) {
        int c = 0;
        for (int e : E.parts()) c += (e - 1) / p;
        if (codim < 0 || c < codim) codim = c;
    }
    return {codim, g - s, codim < g - s};
}

// Genus and p-rank attached to a partition for a given p.
inline long genus_of(int p, const Partition& E) { return static_cast<long>(E.d()) * (p - 1) / 2; }
inline long p_rank_of(int p, const Partition& E) { return static_cast<long>(E.r()) * (p - 1); }

}  // namespace ascurves::strata
