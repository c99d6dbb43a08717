#pragma once

// Exact arithmetic in the cyclotomic tower E_N = Q(zeta_m), m = 4*p^N,
// together with its Galois group and the distinguished square roots
// sqrt(p), sqrt(-p), sqrt(-1) fixed by a Gauss-sum branch rule.
//
// Elements are canonical coefficient vectors over the power basis of
// Q[x]/Phi_m(x); equality is coefficient equality after coercion to a
// common conductor. All arithmetic is exact.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "weilrep/rational.hpp"

namespace weilrep {

class Cyclo;
class CycloContext;
using CtxPtr = std::shared_ptr<const CycloContext>;

// Subfields of E_N we test membership in. QSqrtP doubles as Q(sqrt q)
// since q = p here.
enum class Subfield { Q, QSqrtP, QSqrtPSqrtMP, QZetaPI };

// Per-(p, N) context: conductor m = 4 p^N, the reduction table for
// x^t mod Phi_m, the unit group mod m, and the cached square roots.
class CycloContext : public std::enable_shared_from_this<CycloContext> {
public:
    // Shared registry; contexts are immutable once built.
    static CtxPtr get(long p, long N);

    long p() const { return p_; }
    long N() const { return N_; }
    long m() const { return m_; }
    long phi() const { return phi_; }

    // x^t mod Phi_m as a power-basis coefficient row, 0 <= t < m.
    const std::vector<Rat>& power_row(long t) const { return rows_[t]; }

    // Phi_m coefficients, degree phi, monic.
    const std::vector<Rat>& modulus() const { return phi_poly_; }

    // Units mod m in increasing order.
    const std::vector<long>& units() const { return units_; }

    // Exponents s with sigma_s fixing the given subfield pointwise,
    // i.e. Gal(E_N / K).
    const std::vector<long>& fixing_group(Subfield K) const;

    const Cyclo& gauss() const { build_sqrt_table(); return *gauss_; }
    const Cyclo& sqrt_pstar() const { build_sqrt_table(); return *sqrt_pstar_; }
    const Cyclo& sqrt_p() const { build_sqrt_table(); return *sqrt_p_; }
    const Cyclo& sqrt_mp() const { build_sqrt_table(); return *sqrt_mp_; }
    const Cyclo& sqrt_m1() const { build_sqrt_table(); return *sqrt_m1_; }

    ~CycloContext();

private:
    CycloContext(long p, long N);
    void build_sqrt_table() const;

    long p_, N_, m_, phi_;
    std::vector<Rat> phi_poly_;
    std::vector<std::vector<Rat>> rows_;
    std::vector<long> units_;
    mutable std::mutex cache_mu_;
    mutable std::unique_ptr<Cyclo> gauss_, sqrt_pstar_, sqrt_p_, sqrt_mp_, sqrt_m1_;
    mutable std::map<Subfield, std::vector<long>> fixers_;
};

class Cyclo {
public:
    static Cyclo zero(const CtxPtr& ctx);
    static Cyclo one(const CtxPtr& ctx);
    static Cyclo from_rat(const CtxPtr& ctx, const Rat& r);
    // zeta_m^e, e taken mod m.
    static Cyclo zeta_pow(const CtxPtr& ctx, long e);
    // From a sparse map {power-basis exponent -> coefficient}; exponents
    // 0 <= t < m are reduced mod Phi_m.
    static Cyclo from_powers(const CtxPtr& ctx, const std::map<long, Rat>& coeff_map);
    static Cyclo from_coeffs(const CtxPtr& ctx, std::vector<Rat> coeffs);

    const CtxPtr& ctx() const { return ctx_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    // The value as a rational; throws if not rational.
    Rat rational_value() const;

    Cyclo operator-() const;
    Cyclo operator+(const Cyclo& o) const;
    Cyclo operator-(const Cyclo& o) const;
    Cyclo operator*(const Cyclo& o) const;
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
    Cyclo operator*(const Rat& r) const;
    Cyclo inv() const;
    Cyclo operator/(const Cyclo& o) const { return *this * o.inv(); }

    bool operator==(const Cyclo& o) const;
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    // Image under sigma_s : zeta_m -> zeta_m^s; s must be a unit mod m.
    Cyclo galois(long s) const;

    // Embed into the conductor of ctx2 (same p, N' >= N) via
    // zeta_m -> zeta_{m'}^{m'/m}.
    Cyclo coerce(const CtxPtr& ctx2) const;

    bool in_subfield(Subfield K) const;

    std::string str() const;

private:
    Cyclo(CtxPtr ctx, std::vector<Rat> c) : ctx_(std::move(ctx)), c_(std::move(c)) {}
    static void align(Cyclo& a, Cyclo& b);

    CtxPtr ctx_;
    std::vector<Rat> c_;  // length phi(m), canonical
};

inline Cyclo operator*(const Rat& r, const Cyclo& x) { return x * r; }

// An element sigma_s of Gal(E_N/Q), acting by zeta_m -> zeta_m^s.
class GaloisElement {
public:
    GaloisElement(long p, long N, long s);

    long p() const { return p_; }
    long N() const { return N_; }
    long exponent() const { return s_; }

    // Restriction to Q(zeta_{p^N}): s mod p^N.
    long restriction_mod_pN() const;
    bool is_identity() const { return s_ == 1; }

    GaloisElement compose(const GaloisElement& o) const;  // this after o
    GaloisElement inverse() const;

    Cyclo apply(const Cyclo& x) const;

    bool operator==(const GaloisElement& o) const {
        return p_ == o.p_ && N_ == o.N_ && s_ == o.s_;
    }

private:
    long p_, N_, s_;
};

// Spec-level constructor: validates p, N and builds from a power map.
Cyclo cyc_make(long p, long N, const std::map<long, Rat>& coeff_map);

}  // namespace weilrep
