#pragma once

// Test-side oracles, deliberately independent of the library's reduction
// path: cyclotomic integers as exponent vectors mod m reduced only with
// the relation 1 + zeta_p + ... + zeta_p^{p-1} = 0, a brute-force
// Legendre symbol, and a deterministic RNG with portable helpers.

#include <cstdint>
#include <random>
#include <vector>

#include "weilrep/rational.hpp"

namespace oracles {

using weilrep::Rat;

// Element of Q[zeta_m] as a coefficient vector over exponents 0..m-1.
struct ExpVec {
    long m;
    std::vector<Rat> a;

    explicit ExpVec(long mm) : m(mm), a(static_cast<size_t>(mm), Rat(0)) {}
};

inline ExpVec ev_zeta(long m, long e) {
    ExpVec v(m);
    e %= m;
    if (e < 0) e += m;
    v.a[static_cast<size_t>(e)] = 1;
    return v;
}

inline ExpVec ev_mul(const ExpVec& x, const ExpVec& y) {
    ExpVec out(x.m);
    for (long i = 0; i < x.m; ++i) {
        if (weilrep::is_zero(x.a[static_cast<size_t>(i)])) continue;
        for (long j = 0; j < y.m; ++j) {
            if (weilrep::is_zero(y.a[static_cast<size_t>(j)])) continue;
            out.a[static_cast<size_t>((i + j) % x.m)] += x.a[static_cast<size_t>(i)] * y.a[static_cast<size_t>(j)];
        }
    }
    return out;
}

inline ExpVec ev_add(const ExpVec& x, const ExpVec& y) {
    ExpVec out = x;
    for (long j = 0; j < y.m; ++j) out.a[static_cast<size_t>(j)] += y.a[static_cast<size_t>(j)];
    return out;
}

inline ExpVec ev_scale(const ExpVec& x, const Rat& r) {
    ExpVec out = x;
    for (auto& c : out.a) c *= r;
    return out;
}

// For a vector supported on the p-th roots of unity inside mu_m (exponents
// multiples of m/p), decide equality with the rational r using only
// sum_k zeta_p^k = 0: coefficients (a_k - a_0) for k = 1..p-1 must match
// (0 - r)... i.e. a_k - a_0 == -r is wrong unless r sits at exponent 0;
// compare both sides in the basis zeta_p^1..zeta_p^{p-1}.
inline bool ev_equals_rational_p_support(const ExpVec& x, long p, const Rat& r) {
    const long step = x.m / p;
    for (long e = 0; e < x.m; ++e)
        if (e % step != 0 && !weilrep::is_zero(x.a[static_cast<size_t>(e)])) return false;
    const Rat a0 = x.a[0] - r;  // move r to the zeta_p^0 slot of the difference
    for (long k = 1; k < p; ++k) {
        const Rat ak = x.a[static_cast<size_t>(k * step)];
        if (ak - a0 != 0) return false;
    }
    return true;
}

inline long legendre_brute(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    for (long x = 1; x < p; ++x)
        if ((x * x) % p == a) return 1;
    return -1;
}

// Deterministic, portable RNG helpers (std::mt19937_64 sequence is
// standard-specified; distributions are not, so roll our own).
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    long below(long n) { return static_cast<long>(eng() % static_cast<std::uint64_t>(n)); }
    long range(long lo, long hi) { return lo + below(hi - lo + 1); }  // inclusive

    // Rational with numerator in [-h, h] and denominator a p-power p^e,
    // 0 <= e <= emax.
    Rat rat_p(long p, long h, long emax) {
        long num = range(-h, h);
        long e = range(0, emax);
        Rat den(1);
        for (long i = 0; i < e; ++i) den *= p;
        Rat r = Rat(num) / den;
        r.canonicalize();
        return r;
    }
};

}  // namespace oracles
