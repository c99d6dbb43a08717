#include "weilrep/localfield.hpp"

namespace weilrep {

Cyclo AdditiveCharacter::eval(const Rat& x, const CtxPtr& ctx) const {
    if (ctx->p() != p_) throw std::invalid_argument("char_eval: prime mismatch");
    const Rat tx = twist_ * x;
    const long v = padic_val(tx, p_);
    if (v >= 0 || tx == 0) return Cyclo::one(ctx);
    const long k = -v;
    if (k > ctx->N())
        throw std::domain_error("char_eval: depth " + std::to_string(k) +
                                " exceeds tower depth N = " + std::to_string(ctx->N()));
    // t*x = a/p^k mod Z_p with gcd(a, p) = 1.
    const Rat scaled = tx * p_power(p_, k);
    const Int a = residue_mod_pk(scaled, p_, k);
    // zeta_{p^k} = zeta_m^{m / p^k}
    long mpk = ctx->m();
    for (long i = 0; i < k; ++i) mpk /= p_;
    const long e = static_cast<long>(mod_reduce(a * mpk, Int(ctx->m())).get_si());
    return Cyclo::zeta_pow(ctx, e);
}

Cyclo half_power_q(long e, const CtxPtr& ctx) {
    if (e % 2 == 0) return Cyclo::from_rat(ctx, p_power(ctx->p(), e / 2));
    // p^{e/2} = p^{(e-1)/2} * sqrt(p); (e-1)/2 is exact for odd e.
    long half = (e - 1) / 2;
    return ctx->sqrt_p() * p_power(ctx->p(), half);
}

Cyclo lattice_measure(const AdditiveCharacter& lambda, long k, const CtxPtr& ctx) {
    if (ctx->p() != lambda.p()) throw std::invalid_argument("lattice_measure: prime mismatch");
    return half_power_q(lambda.level() - 2 * k, ctx);
}

}  // namespace weilrep
