#pragma once

// Exact rational arithmetic. We use GMP's mpq_class throughout; these are
// the small helpers the rest of the library needs on top of it (p-adic
// valuation, modular arithmetic on exponents, string forms).

#include <gmpxx.h>

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace weilrep {

using Rat = mpq_class;
using Int = mpz_class;

// Sentinel for v(0) = +infinity.
inline constexpr long kValInf = std::numeric_limits<long>::max();

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

// p-adic valuation of a nonzero rational; kValInf for 0.
inline long padic_val(const Rat& x, long p) {
    if (is_zero(x)) return kValInf;
    Int q;
    mp_bitcnt_t vn = mpz_remove(q.get_mpz_t(), x.get_num().get_mpz_t(), Int(p).get_mpz_t());
    if (vn > 0) return static_cast<long>(vn);
    mp_bitcnt_t vd = mpz_remove(q.get_mpz_t(), x.get_den().get_mpz_t(), Int(p).get_mpz_t());
    return -static_cast<long>(vd);
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (is_zero(base)) {
        if (e < 0) throw std::domain_error("rat_pow: 0 to a negative power");
        return Rat(0);
    }
    Rat b = e < 0 ? Rat(1) / base : base;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Rat acc(1);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

// p^e as an exact rational (e may be negative).
inline Rat p_power(long p, long e) { return rat_pow(Rat(p), e); }

inline Int mod_reduce(const Int& a, const Int& m) {
    Int r = a % m;
    if (sgn(r) < 0) r += m;
    return r;
}

inline Int mod_inverse(const Int& a, const Int& m) {
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("mod_inverse: not invertible");
    return inv;
}

inline Int mod_pow(const Int& b, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(Int(n).get_mpz_t(), 40) != 0;
}

inline Int int_pow(long b, long e) {
    Int r(1);
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

// Residue of a p-integral rational a/b modulo p^k, as an integer in [0, p^k).
inline Int residue_mod_pk(const Rat& x, long p, long k) {
    const Int pk = int_pow(p, k);
    Int num = mod_reduce(x.get_num(), pk);
    Int den = mod_reduce(x.get_den(), pk);
    return mod_reduce(num * mod_inverse(den, pk), pk);
}

inline std::string rat_str(const Rat& x) { return x.get_str(); }

inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

}  // namespace weilrep
