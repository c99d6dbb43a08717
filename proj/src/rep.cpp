#include "weilrep/rep.hpp"

#include <sstream>

namespace weilrep {

namespace {

long ceil_div(long a, long b) {
    // b > 0
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

Rat dot(const std::vector<Rat>& u, const std::vector<Rat>& w) {
    Rat out(0);
    for (size_t i = 0; i < u.size(); ++i) out += u[i] * w[i];
    return out;
}

long vec_min_val(const std::vector<Rat>& v, long p) {
    long mv = kValInf;
    for (const Rat& x : v) {
        long vv = padic_val(x, p);
        if (vv < mv) mv = vv;
    }
    return mv;
}

std::vector<Rat> vec_add(const std::vector<Rat>& u, const std::vector<Rat>& w) {
    std::vector<Rat> out(u);
    for (size_t i = 0; i < out.size(); ++i) out[i] += w[i];
    return out;
}

struct Cell {
    long j, k;
};

// Cell bound for [W(p) phi](x) = |det a|^{1/2} lambda(<xa, xb>/2) phi(xa).
Cell cellmap_parabolic(const SymplecticElement& p, Cell in, long level, long prime) {
    RatMat a = p.block_a();
    RatMat S = a * p.block_b().transpose();  // symmetric phase matrix
    long j2 = in.j + a.inverse().min_val(prime);
    long k2 = std::max(j2, in.k - a.min_val(prime));
    long vS = S.min_val(prime);
    if (vS != kValInf) {
        k2 = std::max(k2, level - j2 - vS);
        k2 = std::max(k2, ceil_div(level - vS, 2));
    }
    return Cell{j2, k2};
}

// Cell bound for the rank-i partial Fourier transform.
Cell cellmap_tau(Cell in, long level) {
    long j2 = std::min(in.j, level - in.k);
    long k2 = std::max(in.k, level - in.j);
    return Cell{j2, k2};
}

SiegelDecomposition trivial_tau_dec(long n, long i) {
    return SiegelDecomposition{sp_identity(n), i, sp_identity(n)};
}

SchwartzFunction apply_parabolic(const AdditiveCharacter& lambda, const SymplecticElement& p,
                                 const SchwartzFunction& phi) {
    const CtxPtr& ctx = phi.ctx();
    const long prime = ctx->p();
    RatMat a = p.block_a();
    RatMat b = p.block_b();
    Cell out_cell = cellmap_parabolic(p, Cell{phi.j(), phi.k()}, lambda.level(), prime);
    Cyclo scalar = half_power_q(-padic_val(a.det(), prime), ctx);  // |det a|^{1/2}
    SchwartzFunction out(ctx, phi.n(), out_cell.j, out_cell.k);
    for (long idx = 0; idx < out.table_size(); ++idx) {
        std::vector<Rat> x = out.rep_point(idx);
        std::vector<Rat> xa = a.apply_row(x);
        Cyclo fv = phi.eval(xa);
        if (fv.is_zero()) continue;
        Rat phase = dot(xa, b.apply_row(x)) / 2;
        out.set_value(idx, scalar * lambda.eval(phase, ctx) * fv);
    }
    out.canonicalize();
    return out;
}

struct DirectGeometry {
    long i;
    RatMat a_g, b_g;
    RatMat Mc;      // i x n: z -> yc coordinates
    RatMat Md;      // i x n: z -> yd coordinates
    RatMat MQ;      // i x i quadratic form matrix
    RatMat MQsym;   // MQ + MQ^T
    long v_Mc, v_MQ, v_MQsym, v_cols_inv;
    MeasureData md;

    DirectGeometry(const SymplecticElement& g, const SiegelDecomposition& dec, long prime)
        : i(dec.i), a_g(g.block_a()), b_g(g.block_b()), Mc(0, 0), Md(0, 0), MQ(0, 0), MQsym(0, 0),
          md(weil_measure(dec)) {
        const long n = g.n();
        RatMat a_p2 = dec.p2.block_a();
        Mc = a_p2.block(0, 0, i, n);
        Md = (md.lift * g.block_d()).block(0, 0, i, n);
        MQ = Mc * Md.transpose();
        RatMat MQt = MQ.transpose();
        MQsym = MQ;
        for (long r = 0; r < i; ++r)
            for (long c = 0; c < i; ++c) MQsym.at(r, c) += MQt.at(r, c);
        v_Mc = Mc.min_val(prime);
        v_MQ = MQ.min_val(prime);
        v_MQsym = MQsym.min_val(prime);
        RatMat ainv = a_p2.inverse();
        long mv = kValInf;
        for (long r = 0; r < n; ++r)
            for (long c = 0; c < i; ++c) {
                long v = padic_val(ainv.at(r, c), prime);
                if (v < mv) mv = v;
            }
        v_cols_inv = mv;
    }
};

// One output value of the direct integral at the point x, summed over the
// window [J, K).
Cyclo direct_point_sum(const AdditiveCharacter& lambda, const DirectGeometry& geo,
                       const SchwartzFunction& phi, const std::vector<Rat>& xa,
                       const std::vector<Rat>& xb, long J, long K, const CtxPtr& ctx) {
    const long i = geo.i;
    Cyclo acc = Cyclo::zero(ctx);
    const Rat base_phase = dot(xa, xb);
    long steps = 1;
    long window = K - J;
    for (long t = 0; t < i * window; ++t) {
        steps *= ctx->p();
        if (steps > SchwartzFunction::kMaxTable)
            throw std::length_error("weil_direct: integration window exceeds the size limit");
    }
    const Rat pJ = p_power(ctx->p(), J);
    for (long counter = 0; counter < steps; ++counter) {
        std::vector<Rat> z(static_cast<size_t>(i));
        long rem = counter;
        long radix = 1;
        for (long t = 0; t < window; ++t) radix *= ctx->p();
        for (long c = 0; c < i; ++c) {
            z[static_cast<size_t>(c)] = Rat(rem % radix) * pJ;
            rem /= radix;
        }
        std::vector<Rat> zc = geo.Mc.apply_row(z);
        Cyclo fv = phi.eval(vec_add(xa, zc));
        if (fv.is_zero()) continue;
        std::vector<Rat> zd = geo.Md.apply_row(z);
        Rat phase = (base_phase + 2 * dot(xb, zc) + dot(zc, zd)) / 2;
        acc += lambda.eval(phase, ctx) * fv;
    }
    return acc * geo.md.coset_measure(lambda, K, ctx);
}

SchwartzFunction weil_direct(const AdditiveCharacter& lambda, const SymplecticElement& g,
                             const SiegelDecomposition& dec, const SchwartzFunction& phi,
                             bool certify) {
    const CtxPtr& ctx = phi.ctx();
    const long prime = ctx->p();
    const long level = lambda.level();
    DirectGeometry geo(g, dec, prime);

    Cell cell{phi.j(), phi.k()};
    cell = cellmap_parabolic(dec.p2, cell, level, prime);
    if (geo.i > 0) cell = cellmap_tau(cell, level);
    cell = cellmap_parabolic(dec.p1, cell, level, prime);

    SchwartzFunction out(ctx, phi.n(), cell.j, cell.k);
    for (long idx = 0; idx < out.table_size(); ++idx) {
        std::vector<Rat> x = out.rep_point(idx);
        std::vector<Rat> xa = geo.a_g.apply_row(x);
        std::vector<Rat> xb = geo.b_g.apply_row(x);
        long J = 0, K = 0;
        if (geo.i > 0) {
            long j0 = std::min(phi.j(), vec_min_val(xa, prime));
            J = j0 + geo.v_cols_inv;
            K = std::max(J, phi.k() - geo.v_Mc);
            // Linear phase term 2 <xb, z Mc>: coefficients 2 Mc xb^T.
            long vL = kValInf;
            for (long r = 0; r < geo.i; ++r) {
                Rat coeff(0);
                for (long c = 0; c < geo.Mc.cols(); ++c) coeff += geo.Mc.at(r, c) * xb[static_cast<size_t>(c)];
                long v = padic_val(2 * coeff, prime);
                if (v < vL) vL = v;
            }
            if (vL != kValInf) K = std::max(K, level - vL);
            if (geo.v_MQsym != kValInf) K = std::max(K, level - J - geo.v_MQsym);
            if (geo.v_MQ != kValInf) K = std::max(K, ceil_div(level - geo.v_MQ, 2));
        }
        Cyclo val = direct_point_sum(lambda, geo, phi, xa, xb, J, K, ctx);
        if (certify && geo.i > 0) {
            Cyclo val2 = direct_point_sum(lambda, geo, phi, xa, xb, J - 1, K + 1, ctx);
            if (val != val2)
                throw std::logic_error("weil_direct: window stabilization check failed");
        }
        if (!val.is_zero()) out.set_value(idx, val);
    }
    out.canonicalize();
    return out;
}

}  // namespace

Cyclo MeasureData::norm_scalar(const CtxPtr& ctx) const {
    // |det|^{-1/2} = p^{v(det)/2}
    return half_power_q(padic_val(det_p1p2_Y, ctx->p()), ctx);
}

Cyclo MeasureData::coset_measure(const AdditiveCharacter& lambda, long K, const CtxPtr& ctx) const {
    return half_power_q((lambda.level() - 2 * K) * i, ctx) * norm_scalar(ctx);
}

MeasureData weil_measure(const SiegelDecomposition& dec) {
    MeasureData md;
    md.i = dec.i;
    md.det_p1p2_Y = dec.p1.det_on_Y() * dec.p2.det_on_Y();
    md.lift = dec.p1.block_d().inverse();
    return md;
}

SchwartzFunction schrodinger_apply(const AdditiveCharacter& lambda, const HeisenbergElement& h,
                                   const SchwartzFunction& phi) {
    const CtxPtr& ctx = phi.ctx();
    const long prime = ctx->p();
    if (h.n != phi.n()) throw std::invalid_argument("schrodinger_apply: dimension mismatch");
    const long n = h.n;
    std::vector<Rat> hx(h.v.begin(), h.v.begin() + n);
    std::vector<Rat> hy(h.v.begin() + n, h.v.end());
    long jo = std::min(phi.j(), vec_min_val(hx, prime));
    long ko = std::max(phi.k(), jo);
    long vy = vec_min_val(hy, prime);
    if (vy != kValInf) ko = std::max(ko, lambda.level() - vy);
    const Rat head = h.t + dot(hx, hy) / 2;
    SchwartzFunction out(ctx, n, jo, ko);
    for (long idx = 0; idx < out.table_size(); ++idx) {
        std::vector<Rat> xp = out.rep_point(idx);
        Cyclo fv = phi.eval(vec_add(hx, xp));
        if (fv.is_zero()) continue;
        out.set_value(idx, lambda.eval(head + dot(xp, hy), ctx) * fv);
    }
    out.canonicalize();
    return out;
}

SchwartzFunction weil_apply_with_dec(const AdditiveCharacter& lambda, const SymplecticElement& g,
                                     const SiegelDecomposition& dec, const SchwartzFunction& phi,
                                     WeilMode mode, bool certify_bounds) {
    if (g.n() != phi.n()) throw std::invalid_argument("weil_apply: dimension mismatch");
    if (mode == WeilMode::Direct) return weil_direct(lambda, g, dec, phi, certify_bounds);
    SchwartzFunction psi = apply_parabolic(lambda, dec.p2, phi);
    if (dec.i > 0) {
        SymplecticElement tau = sp_tau(g.n(), dec.i);
        psi = weil_direct(lambda, tau, trivial_tau_dec(g.n(), dec.i), psi, certify_bounds);
    }
    return apply_parabolic(lambda, dec.p1, psi);
}

SchwartzFunction weil_apply(const AdditiveCharacter& lambda, const SymplecticElement& g,
                            const SchwartzFunction& phi, WeilMode mode, bool certify_bounds) {
    return weil_apply_with_dec(lambda, g, bruhat_siegel(g), phi, mode, certify_bounds);
}

Cyclo projective_multiplier(const AdditiveCharacter& lambda, const SymplecticElement& g1,
                            const SymplecticElement& g2, const std::vector<SchwartzFunction>& probes) {
    if (probes.empty()) throw std::invalid_argument("projective_multiplier: no probes");
    SymplecticElement g12 = g1 * g2;
    std::optional<Cyclo> c;
    for (const SchwartzFunction& phi : probes) {
        SchwartzFunction lhs = weil_apply(lambda, g1, weil_apply(lambda, g2, phi));
        SchwartzFunction rhs = weil_apply(lambda, g12, phi);
        if (rhs.is_zero()) {
            if (!lhs.is_zero())
                throw std::logic_error("projective_multiplier: inconsistent ratio (rhs = 0, lhs != 0)");
            continue;
        }
        SchwartzFunction rc = rhs.canonical();
        long idx0 = -1;
        for (long idx = 0; idx < rc.table_size(); ++idx)
            if (!rc.value_at_index(idx).is_zero()) { idx0 = idx; break; }
        Cyclo ratio = lhs.eval(rc.rep_point(idx0)) / rc.value_at_index(idx0);
        if (lhs != rhs.scaled(ratio))
            throw std::logic_error("projective_multiplier: probe is not an exact scalar multiple");
        if (c && *c != ratio)
            throw std::logic_error("projective_multiplier: inconsistent ratios across probes");
        c = ratio;
    }
    if (!c) throw std::logic_error("projective_multiplier: all probes annihilated");
    return *c;
}

bool intertwine_check(const AdditiveCharacter& lambda, const SymplecticElement& g,
                      const HeisenbergElement& h, const std::vector<SchwartzFunction>& probes) {
    if (probes.empty()) throw std::invalid_argument("intertwine_check: no probes");
    SymplecticElement ginv = g.inverse();
    Cyclo mult = projective_multiplier(lambda, g, ginv, {probes.front()});
    Cyclo minv = mult.inv();
    HeisenbergElement hg = heis_act(h, g);
    for (const SchwartzFunction& phi : probes) {
        SchwartzFunction lhs =
            weil_apply(lambda, ginv, schrodinger_apply(lambda, h, weil_apply(lambda, g, phi)))
                .scaled(minv);
        SchwartzFunction rhs = schrodinger_apply(lambda, hg, phi);
        if (lhs != rhs) return false;
    }
    return true;
}

struct OperatorExpr::Node {
    enum class Kind { Identity, Scalar, Weil, WeilInverse, Schrod, Compose, Sum, GaloisConj };
    Kind kind = Kind::Identity;
    std::optional<Cyclo> coeff;
    std::optional<AdditiveCharacter> lambda;
    std::optional<SymplecticElement> g;
    std::optional<SymplecticElement> g_inv;
    std::optional<SiegelDecomposition> dec;  // of g (Weil) or g^{-1} (WeilInverse)
    WeilMode mode = WeilMode::Direct;
    std::optional<HeisenbergElement> h;
    std::optional<GaloisElement> sigma;
    std::vector<OperatorExpr> children;
};

OperatorExpr OperatorExpr::identity() {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Identity;
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::scalar(const Cyclo& c) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Scalar;
    n->coeff = c;
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::weil(const AdditiveCharacter& lambda, const SymplecticElement& g,
                                WeilMode mode) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Weil;
    n->lambda = lambda;
    n->g = g;
    n->dec = bruhat_siegel(g);
    n->mode = mode;
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::weil_inverse(const AdditiveCharacter& lambda, const SymplecticElement& g,
                                        WeilMode mode) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::WeilInverse;
    n->lambda = lambda;
    n->g = g;
    n->g_inv = g.inverse();
    n->dec = bruhat_siegel(*n->g_inv);
    n->mode = mode;
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::schrodinger(const AdditiveCharacter& lambda, const HeisenbergElement& h) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Schrod;
    n->lambda = lambda;
    n->h = h;
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::galois_conj(const GaloisElement& sigma, const OperatorExpr& T) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::GaloisConj;
    n->sigma = sigma;
    n->children.push_back(T);
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::sum(std::vector<OperatorExpr> terms) {
    if (terms.empty()) throw std::invalid_argument("OperatorExpr::sum: empty");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Sum;
    n->children = std::move(terms);
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::compose(const OperatorExpr& rhs) const {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Compose;
    n->children = {*this, rhs};
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::scaled(const Cyclo& c) const { return scalar(c).compose(*this); }

SchwartzFunction OperatorExpr::apply(const SchwartzFunction& phi) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Node::Kind::Identity:
            return phi;
        case Node::Kind::Scalar:
            return phi.scaled(*n.coeff);
        case Node::Kind::Weil:
            return weil_apply_with_dec(*n.lambda, *n.g, *n.dec, phi, n.mode);
        case Node::Kind::WeilInverse: {
            std::vector<SchwartzFunction> probe{
                SchwartzFunction::atom(phi.ctx(), phi.n(), std::vector<Rat>(static_cast<size_t>(phi.n()), Rat(0)), 1)};
            Cyclo c = projective_multiplier(*n.lambda, *n.g, *n.g_inv, probe);
            return weil_apply_with_dec(*n.lambda, *n.g_inv, *n.dec, phi, n.mode).scaled(c.inv());
        }
        case Node::Kind::Schrod:
            return schrodinger_apply(*n.lambda, *n.h, phi);
        case Node::Kind::Compose: {
            SchwartzFunction cur = phi;
            for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) cur = it->apply(cur);
            return cur;
        }
        case Node::Kind::Sum: {
            SchwartzFunction acc = n.children.front().apply(phi);
            for (size_t t = 1; t < n.children.size(); ++t) acc = acc + n.children[t].apply(phi);
            return acc;
        }
        case Node::Kind::GaloisConj: {
            const GaloisElement& s = *n.sigma;
            SchwartzFunction inner = phi.values_galois(s.inverse());
            return n.children.front().apply(inner).values_galois(s);
        }
    }
    throw std::logic_error("OperatorExpr::apply: unreachable");
}

OperatorExpr projector_even(const AdditiveCharacter& lambda, long n, const CtxPtr& ctx) {
    Cyclo half = Cyclo::from_rat(ctx, Rat(1, 2));
    return OperatorExpr::sum({OperatorExpr::identity().scaled(half),
                              OperatorExpr::weil(lambda, sp_iota(n)).scaled(half)});
}

OperatorExpr projector_odd(const AdditiveCharacter& lambda, long n, const CtxPtr& ctx) {
    Cyclo half = Cyclo::from_rat(ctx, Rat(1, 2));
    return OperatorExpr::sum({OperatorExpr::identity().scaled(half),
                              OperatorExpr::weil(lambda, sp_iota(n)).scaled(-half)});
}

bool operators_agree_on(const OperatorExpr& A, const OperatorExpr& B,
                        const std::vector<SchwartzFunction>& probes) {
    for (const SchwartzFunction& phi : probes)
        if (A.apply(phi) != B.apply(phi)) return false;
    return true;
}

std::vector<SchwartzFunction> atom_probes(const CtxPtr& ctx, long n, long j, long k,
                                          bool add_combinations) {
    SchwartzFunction shape(ctx, n, j, k);
    std::vector<SchwartzFunction> probes;
    for (long idx = 0; idx < shape.table_size(); ++idx)
        probes.push_back(SchwartzFunction::atom(ctx, n, shape.rep_point(idx), k));
    if (add_combinations) {
        SchwartzFunction comb1 = SchwartzFunction::zero(ctx, n);
        SchwartzFunction comb2 = SchwartzFunction::zero(ctx, n);
        for (long idx = 0; idx < shape.table_size(); ++idx) {
            comb1 = comb1 + probes[static_cast<size_t>(idx)].scaled(Cyclo::zeta_pow(ctx, idx % ctx->m()));
            comb2 = comb2 + probes[static_cast<size_t>(idx)].scaled(Rat(idx + 1));
        }
        SchwartzFunction comb3 = probes.front().scaled(ctx->sqrt_p()) +
                                 probes.back().scaled(Cyclo::zeta_pow(ctx, 1));
        probes.push_back(std::move(comb1));
        probes.push_back(std::move(comb2));
        probes.push_back(std::move(comb3));
    }
    return probes;
}

}  // namespace weilrep
