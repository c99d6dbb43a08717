#include "weilrep/cyclo.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace weilrep {

namespace {

// Phi_{4 p^N}(x) = sum_{k=0}^{p-1} (-1)^k x^{2 k p^(N-1)}.
std::vector<Rat> cyclotomic_4pN(long p, long N) {
    long h = 1;
    for (long i = 0; i < N - 1; ++i) h *= p;
    std::vector<Rat> poly(static_cast<size_t>(2 * (p - 1) * h) + 1, Rat(0));
    for (long k = 0; k < p; ++k) poly[static_cast<size_t>(2 * k * h)] = (k % 2 == 0) ? 1 : -1;
    return poly;
}

struct CtxKey {
    long p, N;
    bool operator<(const CtxKey& o) const { return p < o.p || (p == o.p && N < o.N); }
};

std::map<CtxKey, std::weak_ptr<const CycloContext>>& registry() {
    static std::map<CtxKey, std::weak_ptr<const CycloContext>> reg;
    return reg;
}

std::mutex& registry_mutex() {
    static std::mutex mu;
    return mu;
}

long legendre(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    for (long x = 1; x < p; ++x)
        if ((x * x) % p == a) return 1;
    return -1;
}

}  // namespace

CycloContext::CycloContext(long p, long N) : p_(p), N_(N) {
    if (p == 2) throw std::invalid_argument("CycloContext: p = 2 is not supported");
    if (!is_prime(p)) throw std::invalid_argument("CycloContext: p must be an odd prime");
    if (N < 1) throw std::invalid_argument("CycloContext: N must be >= 1");
    long h = 1;
    for (long i = 0; i < N - 1; ++i) h *= p;
    m_ = 4 * p * h;
    phi_ = 2 * (p - 1) * h;
    phi_poly_ = cyclotomic_4pN(p, N);

    // Reduction rows: x^t mod Phi_m for 0 <= t < m, built by iterated
    // multiplication by x with the monic relation for x^phi.
    rows_.resize(static_cast<size_t>(m_));
    for (long t = 0; t < phi_; ++t) {
        rows_[t].assign(static_cast<size_t>(phi_), Rat(0));
        rows_[t][static_cast<size_t>(t)] = 1;
    }
    std::vector<Rat> top(static_cast<size_t>(phi_));  // x^phi = -(lower terms)
    for (long j = 0; j < phi_; ++j) top[static_cast<size_t>(j)] = -phi_poly_[static_cast<size_t>(j)];
    for (long t = phi_; t < m_; ++t) {
        std::vector<Rat> row(static_cast<size_t>(phi_), Rat(0));
        const std::vector<Rat>& prev = rows_[t - 1];
        // x * prev: shift, then substitute the overflow coefficient.
        for (long j = 0; j + 1 < phi_; ++j) row[static_cast<size_t>(j + 1)] = prev[static_cast<size_t>(j)];
        const Rat& hi = prev[static_cast<size_t>(phi_ - 1)];
        if (!weilrep::is_zero(hi))
            for (long j = 0; j < phi_; ++j) row[static_cast<size_t>(j)] += hi * top[static_cast<size_t>(j)];
        rows_[t] = std::move(row);
    }

    for (long s = 1; s < m_; ++s)
        if (std::gcd(s, m_) == 1) units_.push_back(s);
}

CycloContext::~CycloContext() = default;

CtxPtr CycloContext::get(long p, long N) {
    std::lock_guard<std::mutex> lock(registry_mutex());
    CtxKey key{p, N};
    auto& reg = registry();
    auto it = reg.find(key);
    if (it != reg.end())
        if (auto sp = it->second.lock()) return sp;
    CtxPtr ctx(new CycloContext(p, N));
    reg[key] = ctx;
    return ctx;
}

void CycloContext::build_sqrt_table() const {
    std::lock_guard<std::mutex> lock(cache_mu_);
    if (gauss_) return;
    CtxPtr self = shared_from_this();
    // gauss = sum_{a=1}^{p-1} (a|p) zeta_p^a with zeta_p = zeta_m^{m/p}.
    Cyclo g = Cyclo::zero(self);
    const long zp = m_ / p_;
    for (long a = 1; a < p_; ++a) {
        Cyclo term = Cyclo::zeta_pow(self, (zp * a) % m_);
        g = (legendre(a, p_) == 1) ? g + term : g - term;
    }
    Cyclo i = Cyclo::zeta_pow(self, m_ / 4);
    gauss_ = std::make_unique<Cyclo>(g);
    sqrt_pstar_ = std::make_unique<Cyclo>(g);
    sqrt_m1_ = std::make_unique<Cyclo>(i);
    if (p_ % 4 == 1) {
        sqrt_p_ = std::make_unique<Cyclo>(g);
        sqrt_mp_ = std::make_unique<Cyclo>(i * g);
    } else {
        sqrt_mp_ = std::make_unique<Cyclo>(g);
        sqrt_p_ = std::make_unique<Cyclo>(-(i * g));
    }
}

const std::vector<long>& CycloContext::fixing_group(Subfield K) const {
    build_sqrt_table();
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = fixers_.find(K);
    if (it != fixers_.end()) return it->second;
    std::vector<long> out;
    for (long s : units_) {
        bool fixes = true;
        switch (K) {
            case Subfield::Q:
                break;
            case Subfield::QSqrtP:
                fixes = sqrt_p_->galois(s) == *sqrt_p_;
                break;
            case Subfield::QSqrtPSqrtMP:
                fixes = sqrt_p_->galois(s) == *sqrt_p_ && sqrt_mp_->galois(s) == *sqrt_mp_;
                break;
            case Subfield::QZetaPI: {
                CtxPtr self = shared_from_this();
                Cyclo zp = Cyclo::zeta_pow(self, m_ / p_);
                fixes = zp.galois(s) == zp && sqrt_m1_->galois(s) == *sqrt_m1_;
                break;
            }
        }
        if (fixes) out.push_back(s);
    }
    return fixers_.emplace(K, std::move(out)).first->second;
}

Cyclo Cyclo::zero(const CtxPtr& ctx) {
    return Cyclo(ctx, std::vector<Rat>(static_cast<size_t>(ctx->phi()), Rat(0)));
}

Cyclo Cyclo::one(const CtxPtr& ctx) { return from_rat(ctx, Rat(1)); }

Cyclo Cyclo::from_rat(const CtxPtr& ctx, const Rat& r) {
    std::vector<Rat> c(static_cast<size_t>(ctx->phi()), Rat(0));
    c[0] = r;
    return Cyclo(ctx, std::move(c));
}

Cyclo Cyclo::zeta_pow(const CtxPtr& ctx, long e) {
    e %= ctx->m();
    if (e < 0) e += ctx->m();
    std::vector<Rat> c = ctx->power_row(e);
    return Cyclo(ctx, std::move(c));
}

Cyclo Cyclo::from_powers(const CtxPtr& ctx, const std::map<long, Rat>& coeff_map) {
    Cyclo out = zero(ctx);
    for (const auto& [t, r] : coeff_map) {
        if (t < 0 || t >= ctx->m()) throw std::invalid_argument("from_powers: exponent out of [0, m)");
        const std::vector<Rat>& row = ctx->power_row(t);
        for (long j = 0; j < ctx->phi(); ++j) out.c_[static_cast<size_t>(j)] += r * row[static_cast<size_t>(j)];
    }
    return out;
}

Cyclo Cyclo::from_coeffs(const CtxPtr& ctx, std::vector<Rat> coeffs) {
    if (static_cast<long>(coeffs.size()) != ctx->phi())
        throw std::invalid_argument("from_coeffs: need exactly phi(m) coefficients");
    return Cyclo(ctx, std::move(coeffs));
}

bool Cyclo::is_zero() const {
    for (const Rat& r : c_)
        if (!weilrep::is_zero(r)) return false;
    return true;
}

bool Cyclo::is_rational() const {
    for (size_t j = 1; j < c_.size(); ++j)
        if (!weilrep::is_zero(c_[j])) return false;
    return true;
}

Rat Cyclo::rational_value() const {
    if (!is_rational()) throw std::domain_error("rational_value: element is not rational");
    return c_[0];
}

Cyclo Cyclo::operator-() const {
    std::vector<Rat> c(c_.size());
    for (size_t j = 0; j < c_.size(); ++j) c[j] = -c_[j];
    return Cyclo(ctx_, std::move(c));
}

void Cyclo::align(Cyclo& a, Cyclo& b) {
    if (a.ctx_ == b.ctx_) return;
    if (a.ctx_->p() != b.ctx_->p())
        throw std::invalid_argument("Cyclo: mixing different primes");
    if (a.ctx_->N() < b.ctx_->N())
        a = a.coerce(b.ctx_);
    else
        b = b.coerce(a.ctx_);
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
    Cyclo a = *this, b = o;
    align(a, b);
    for (size_t j = 0; j < a.c_.size(); ++j) a.c_[j] += b.c_[j];
    return a;
}

Cyclo Cyclo::operator-(const Cyclo& o) const {
    Cyclo a = *this, b = o;
    align(a, b);
    for (size_t j = 0; j < a.c_.size(); ++j) a.c_[j] -= b.c_[j];
    return a;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
    Cyclo a = *this, b = o;
    align(a, b);
    const long phi = a.ctx_->phi();
    std::vector<Rat> acc(static_cast<size_t>(2 * phi - 1), Rat(0));
    for (long i = 0; i < phi; ++i) {
        if (weilrep::is_zero(a.c_[static_cast<size_t>(i)])) continue;
        const Rat& ai = a.c_[static_cast<size_t>(i)];
        for (long j = 0; j < phi; ++j) {
            if (weilrep::is_zero(b.c_[static_cast<size_t>(j)])) continue;
            acc[static_cast<size_t>(i + j)] += ai * b.c_[static_cast<size_t>(j)];
        }
    }
    std::vector<Rat> out(acc.begin(), acc.begin() + phi);
    for (long t = phi; t < 2 * phi - 1; ++t) {
        if (weilrep::is_zero(acc[static_cast<size_t>(t)])) continue;
        const std::vector<Rat>& row = a.ctx_->power_row(t);
        for (long j = 0; j < phi; ++j) out[static_cast<size_t>(j)] += acc[static_cast<size_t>(t)] * row[static_cast<size_t>(j)];
    }
    return Cyclo(a.ctx_, std::move(out));
}

Cyclo Cyclo::operator*(const Rat& r) const {
    std::vector<Rat> c(c_.size());
    for (size_t j = 0; j < c_.size(); ++j) c[j] = c_[j] * r;
    return Cyclo(ctx_, std::move(c));
}

namespace {

// Polynomials as coefficient vectors, lowest degree first.
long poly_deg(const std::vector<Rat>& a) {
    for (long d = static_cast<long>(a.size()) - 1; d >= 0; --d)
        if (!is_zero(a[static_cast<size_t>(d)])) return d;
    return -1;
}

void poly_trim(std::vector<Rat>& a) {
    long d = poly_deg(a);
    a.resize(static_cast<size_t>(d + 1));
}

// a -= q * b step by step, returning the quotient; a becomes the remainder.
std::vector<Rat> poly_divmod(std::vector<Rat>& a, const std::vector<Rat>& b) {
    long db = poly_deg(b);
    if (db < 0) throw std::domain_error("poly_divmod: division by zero polynomial");
    std::vector<Rat> q;
    long da = poly_deg(a);
    if (da >= db) q.assign(static_cast<size_t>(da - db + 1), Rat(0));
    const Rat& lead = b[static_cast<size_t>(db)];
    while ((da = poly_deg(a)) >= db) {
        Rat f = a[static_cast<size_t>(da)] / lead;
        q[static_cast<size_t>(da - db)] = f;
        for (long j = 0; j <= db; ++j) a[static_cast<size_t>(da - db + j)] -= f * b[static_cast<size_t>(j)];
    }
    poly_trim(a);
    return q;
}

}  // namespace

Cyclo Cyclo::inv() const {
    if (is_zero()) throw std::domain_error("Cyclo::inv: inversion of zero");
    // Extended Euclid for (a, Phi_m): u*a + v*Phi = gcd, a nonconstant unit
    // of the field so gcd is a nonzero constant.
    std::vector<Rat> r0(c_);
    poly_trim(r0);
    std::vector<Rat> r1 = ctx_->modulus();
    std::vector<Rat> u0{Rat(1)}, u1{};  // coefficients of a
    while (poly_deg(r1) >= 0) {
        std::vector<Rat> rem = r0;
        std::vector<Rat> q = poly_divmod(rem, r1);
        // u2 = u0 - q*u1
        std::vector<Rat> u2 = u0;
        long dq = poly_deg(q), du1 = poly_deg(u1);
        if (dq >= 0 && du1 >= 0) {
            if (static_cast<long>(u2.size()) < dq + du1 + 1) u2.resize(static_cast<size_t>(dq + du1 + 1), Rat(0));
            for (long i = 0; i <= dq; ++i) {
                if (weilrep::is_zero(q[static_cast<size_t>(i)])) continue;
                for (long j = 0; j <= du1; ++j)
                    u2[static_cast<size_t>(i + j)] -= q[static_cast<size_t>(i)] * u1[static_cast<size_t>(j)];
            }
        }
        poly_trim(u2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (poly_deg(r0) != 0) throw std::logic_error("Cyclo::inv: gcd with Phi_m not constant");
    const Rat g = r0[0];
    std::vector<Rat> out(static_cast<size_t>(ctx_->phi()), Rat(0));
    for (long j = 0; j <= poly_deg(u0); ++j) out[static_cast<size_t>(j)] = u0[static_cast<size_t>(j)] / g;
    return Cyclo(ctx_, std::move(out));
}

bool Cyclo::operator==(const Cyclo& o) const {
    Cyclo a = *this, b = o;
    align(a, b);
    return a.c_ == b.c_;
}

Cyclo Cyclo::galois(long s) const {
    const long m = ctx_->m();
    long sr = s % m;
    if (sr < 0) sr += m;
    if (std::gcd(sr, m) != 1) throw std::invalid_argument("Cyclo::galois: s not a unit mod m");
    Cyclo out = zero(ctx_);
    for (long t = 0; t < ctx_->phi(); ++t) {
        if (weilrep::is_zero(c_[static_cast<size_t>(t)])) continue;
        const std::vector<Rat>& row = ctx_->power_row((t * sr) % m);
        for (long j = 0; j < ctx_->phi(); ++j)
            out.c_[static_cast<size_t>(j)] += c_[static_cast<size_t>(t)] * row[static_cast<size_t>(j)];
    }
    return out;
}

Cyclo Cyclo::coerce(const CtxPtr& ctx2) const {
    if (ctx2 == ctx_) return *this;
    if (ctx2->p() != ctx_->p()) throw std::invalid_argument("Cyclo::coerce: different primes");
    if (ctx2->N() < ctx_->N()) {
        // Downward coercion is only the identity map on values that already
        // live in the smaller field; check by round trip.
        Cyclo down = Cyclo::zero(ctx2);
        // Solve by expressing in the small basis: zeta_m^t -> only exponents
        // divisible by m'/m come from the small field.
        const long ratio = ctx_->m() / ctx2->m();
        // Round-trip via the embedding of every small-basis monomial is
        // expensive; instead re-express: lift the small context's basis.
        // We reduce this value against the lifted basis by linear algebra.
        // Desk-scale fields are small, so do the naive solve.
        const long phi2 = ctx2->phi();
        // Build matrix of embedded basis vectors.
        std::vector<Cyclo> emb;
        emb.reserve(static_cast<size_t>(phi2));
        for (long t = 0; t < phi2; ++t)
            emb.push_back(Cyclo::zeta_pow(ctx_, (t * ratio) % ctx_->m()));
        // Gaussian elimination to solve sum x_t emb[t] = *this.
        const long phi1 = ctx_->phi();
        std::vector<std::vector<Rat>> M(static_cast<size_t>(phi1), std::vector<Rat>(static_cast<size_t>(phi2 + 1), Rat(0)));
        for (long r = 0; r < phi1; ++r) {
            for (long t = 0; t < phi2; ++t) M[static_cast<size_t>(r)][static_cast<size_t>(t)] = emb[static_cast<size_t>(t)].coeffs()[static_cast<size_t>(r)];
            M[static_cast<size_t>(r)][static_cast<size_t>(phi2)] = c_[static_cast<size_t>(r)];
        }
        long row = 0;
        std::vector<long> pivot_col(static_cast<size_t>(phi2), -1);
        for (long col = 0; col < phi2 && row < phi1; ++col) {
            long pr = -1;
            for (long r = row; r < phi1; ++r)
                if (!weilrep::is_zero(M[static_cast<size_t>(r)][static_cast<size_t>(col)])) { pr = r; break; }
            if (pr < 0) continue;
            std::swap(M[static_cast<size_t>(pr)], M[static_cast<size_t>(row)]);
            const Rat piv = M[static_cast<size_t>(row)][static_cast<size_t>(col)];
            for (long cc = col; cc <= phi2; ++cc) M[static_cast<size_t>(row)][static_cast<size_t>(cc)] /= piv;
            for (long r = 0; r < phi1; ++r) {
                if (r == row) continue;
                const Rat f = M[static_cast<size_t>(r)][static_cast<size_t>(col)];
                if (weilrep::is_zero(f)) continue;
                for (long cc = col; cc <= phi2; ++cc)
                    M[static_cast<size_t>(r)][static_cast<size_t>(cc)] -= f * M[static_cast<size_t>(row)][static_cast<size_t>(cc)];
            }
            pivot_col[static_cast<size_t>(col)] = row;
            ++row;
        }
        std::vector<Rat> sol(static_cast<size_t>(phi2), Rat(0));
        for (long col = 0; col < phi2; ++col)
            if (pivot_col[static_cast<size_t>(col)] >= 0)
                sol[static_cast<size_t>(col)] = M[static_cast<size_t>(pivot_col[static_cast<size_t>(col)])][static_cast<size_t>(phi2)];
        // Residual rows must be zero or the value is not in the subfield.
        for (long r = row; r < phi1; ++r)
            if (!weilrep::is_zero(M[static_cast<size_t>(r)][static_cast<size_t>(phi2)]))
                throw std::domain_error("Cyclo::coerce: value not in the smaller conductor");
        Cyclo res = Cyclo::from_coeffs(ctx2, std::move(sol));
        if (res.coerce(ctx_) != *this) throw std::domain_error("Cyclo::coerce: value not in the smaller conductor");
        return res;
    }
    const long ratio = ctx2->m() / ctx_->m();
    Cyclo out = zero(ctx2);
    for (long t = 0; t < ctx_->phi(); ++t) {
        if (weilrep::is_zero(c_[static_cast<size_t>(t)])) continue;
        const std::vector<Rat>& row = ctx2->power_row((t * ratio) % ctx2->m());
        for (long j = 0; j < ctx2->phi(); ++j)
            out.c_[static_cast<size_t>(j)] += c_[static_cast<size_t>(t)] * row[static_cast<size_t>(j)];
    }
    return out;
}

bool Cyclo::in_subfield(Subfield K) const {
    for (long s : ctx_->fixing_group(K))
        if (galois(s) != *this) return false;
    return true;
}

std::string Cyclo::str() const {
    std::ostringstream os;
    bool first = true;
    for (long t = 0; t < ctx_->phi(); ++t) {
        const Rat& r = c_[static_cast<size_t>(t)];
        if (weilrep::is_zero(r)) continue;
        if (!first) os << " + ";
        first = false;
        if (t == 0) {
            os << rat_str(r);
        } else {
            if (r != 1) os << rat_str(r) << "*";
            os << "z" << ctx_->m() << "^" << t;
        }
    }
    if (first) os << "0";
    return os.str();
}

GaloisElement::GaloisElement(long p, long N, long s) : p_(p), N_(N) {
    CtxPtr ctx = CycloContext::get(p, N);
    s %= ctx->m();
    if (s < 0) s += ctx->m();
    if (std::gcd(s, ctx->m()) != 1)
        throw std::invalid_argument("GaloisElement: exponent not a unit mod 4p^N");
    s_ = s;
}

long GaloisElement::restriction_mod_pN() const {
    long pN = 1;
    for (long i = 0; i < N_; ++i) pN *= p_;
    return s_ % pN;
}

GaloisElement GaloisElement::compose(const GaloisElement& o) const {
    if (p_ != o.p_ || N_ != o.N_) throw std::invalid_argument("GaloisElement::compose: mismatched tower");
    long m = CycloContext::get(p_, N_)->m();
    return GaloisElement(p_, N_, static_cast<long>((static_cast<long long>(s_) * o.s_) % m));
}

GaloisElement GaloisElement::inverse() const {
    long m = CycloContext::get(p_, N_)->m();
    Int inv = mod_inverse(Int(s_), Int(m));
    return GaloisElement(p_, N_, inv.get_si());
}

Cyclo GaloisElement::apply(const Cyclo& x) const {
    if (x.ctx()->p() != p_) throw std::invalid_argument("GaloisElement::apply: different primes");
    if (x.ctx()->N() > N_)
        throw std::invalid_argument("GaloisElement::apply: value lives above the element's level");
    Cyclo y = x.ctx()->N() == N_ ? x : x.coerce(CycloContext::get(p_, N_));
    return y.galois(s_);
}

Cyclo cyc_make(long p, long N, const std::map<long, Rat>& coeff_map) {
    CtxPtr ctx = CycloContext::get(p, N);  // validates p, N
    return Cyclo::from_powers(ctx, coeff_map);
}

}  // namespace weilrep
