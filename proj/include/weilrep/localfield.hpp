#pragma once

// F = Q_p modeled on exact rationals: p-adic valuation, additive
// characters as twists of the standard level-0 character, and the
// self-dual Haar measure scalars.

#include "weilrep/cyclo.hpp"
#include "weilrep/rational.hpp"

namespace weilrep {

// A rational number read as an element of Q_p.
struct LocalScalar {
    long p;
    Rat value;

    LocalScalar(long prime, Rat v) : p(prime), value(std::move(v)) {}

    long val() const { return padic_val(value, p); }
    // |x| = p^{-v(x)} as an exact rational; |0| = 0.
    Rat abs() const {
        if (weilrep::is_zero(value)) return Rat(0);
        return p_power(p, -val());
    }
    bool is_zero() const { return weilrep::is_zero(value); }
};

// lambda_std[t] where lambda_std is the standard character of level 0:
// lambda_std(x) = zeta_{p^k}^a for x = a/p^k + (p-integral part).
class AdditiveCharacter {
public:
    AdditiveCharacter(long p, Rat twist = Rat(1)) : p_(p), twist_(std::move(twist)) {
        if (weilrep::is_zero(twist_)) throw std::invalid_argument("AdditiveCharacter: zero twist");
    }

    long p() const { return p_; }
    const Rat& twist() const { return twist_; }

    // level(lambda_std[t]) = -v(t).
    long level() const { return -padic_val(twist_, p_); }

    AdditiveCharacter twisted(const Rat& s) const {
        if (weilrep::is_zero(s)) throw std::invalid_argument("twist: s = 0");
        return AdditiveCharacter(p_, twist_ * s);
    }

    // Exact character value in E_N; requires the p-power depth of t*x to
    // be at most N.
    Cyclo eval(const Rat& x, const CtxPtr& ctx) const;

    bool operator==(const AdditiveCharacter& o) const { return p_ == o.p_ && twist_ == o.twist_; }

private:
    long p_;
    Rat twist_;
};

// The d_lambda-measure of p^k O: q^{l/2 - k}, exact in E (sqrt p for odd
// exponents, positive-root convention from the context's sqrt table).
Cyclo lattice_measure(const AdditiveCharacter& lambda, long k, const CtxPtr& ctx);

// q^{e/2} for integer e, exact.
Cyclo half_power_q(long e, const CtxPtr& ctx);

}  // namespace weilrep
