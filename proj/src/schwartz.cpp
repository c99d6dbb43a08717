#include "weilrep/schwartz.hpp"

#include <sstream>

namespace weilrep {

namespace {

long checked_table_size(long p, long n, long j, long k) {
    if (j > k) throw std::invalid_argument("SchwartzFunction: j > k");
    double est = 1.0;
    for (long i = 0; i < n * (k - j); ++i) {
        est *= p;
        if (est > static_cast<double>(SchwartzFunction::kMaxTable))
            throw std::length_error("SchwartzFunction: cell exceeds the configured size limit");
    }
    long size = 1;
    for (long i = 0; i < n * (k - j); ++i) size *= p;
    return size;
}

}  // namespace

SchwartzFunction::SchwartzFunction(CtxPtr ctx, long n, long j, long k)
    : ctx_(std::move(ctx)), n_(n), j_(j), k_(k) {
    if (n < 1) throw std::invalid_argument("SchwartzFunction: n must be >= 1");
    long size = checked_table_size(ctx_->p(), n, j, k);
    base_ = 1;
    for (long i = 0; i < k - j; ++i) base_ *= ctx_->p();
    table_.assign(static_cast<size_t>(size), Cyclo::zero(ctx_));
}

SchwartzFunction SchwartzFunction::zero(const CtxPtr& ctx, long n) {
    return SchwartzFunction(ctx, n, 0, 0);
}

SchwartzFunction SchwartzFunction::atom(const CtxPtr& ctx, long n, const std::vector<Rat>& c, long k) {
    if (static_cast<long>(c.size()) != n) throw std::invalid_argument("atom: coordinate count != n");
    long j = k;
    for (const Rat& ci : c) {
        long v = padic_val(ci, ctx->p());
        if (v < j) j = v;
    }
    SchwartzFunction f(ctx, n, j, k);
    f.set_value(c, Cyclo::one(ctx));
    return f;
}

std::vector<Rat> SchwartzFunction::rep_point(long index) const {
    std::vector<Rat> x(static_cast<size_t>(n_));
    const Rat pj = p_power(ctx_->p(), j_);
    for (long i = 0; i < n_; ++i) {
        long digit = index % base_;
        index /= base_;
        x[static_cast<size_t>(i)] = Rat(digit) * pj;
    }
    return x;
}

long SchwartzFunction::index_of_digits(const std::vector<long>& d) const {
    long idx = 0;
    for (long i = n_ - 1; i >= 0; --i) idx = idx * base_ + d[static_cast<size_t>(i)];
    return idx;
}

void SchwartzFunction::set_value(long index, const Cyclo& v) {
    table_[static_cast<size_t>(index)] = v.ctx() == ctx_ ? v : v.coerce(ctx_);
}

void SchwartzFunction::set_value(const std::vector<Rat>& point, const Cyclo& v) {
    std::vector<long> d(static_cast<size_t>(n_));
    for (long i = 0; i < n_; ++i) {
        const Rat& xi = point[static_cast<size_t>(i)];
        if (padic_val(xi, ctx_->p()) < j_) throw std::invalid_argument("set_value: point outside p^j L");
        Rat scaled = xi * p_power(ctx_->p(), -j_);
        d[static_cast<size_t>(i)] = static_cast<long>(residue_mod_pk(scaled, ctx_->p(), k_ - j_).get_si());
    }
    set_value(index_of_digits(d), v);
}

Cyclo SchwartzFunction::eval(const std::vector<Rat>& x) const {
    if (static_cast<long>(x.size()) != n_) throw std::invalid_argument("eval: dimension mismatch");
    std::vector<long> d(static_cast<size_t>(n_));
    for (long i = 0; i < n_; ++i) {
        const Rat& xi = x[static_cast<size_t>(i)];
        if (padic_val(xi, ctx_->p()) < j_) return Cyclo::zero(ctx_);
        Rat scaled = xi * p_power(ctx_->p(), -j_);
        d[static_cast<size_t>(i)] = static_cast<long>(residue_mod_pk(scaled, ctx_->p(), k_ - j_).get_si());
    }
    return table_[static_cast<size_t>(index_of_digits(d))];
}

bool SchwartzFunction::is_zero() const {
    for (const Cyclo& v : table_)
        if (!v.is_zero()) return false;
    return true;
}

SchwartzFunction SchwartzFunction::refined(long j2, long k2) const {
    if (j2 > j_ || k2 < k_) throw std::invalid_argument("refined: not a refinement");
    SchwartzFunction out(ctx_, n_, j2, k2);
    for (long idx = 0; idx < out.table_size(); ++idx) {
        Cyclo v = eval(out.rep_point(idx));
        if (!v.is_zero()) out.table_[static_cast<size_t>(idx)] = std::move(v);
    }
    return out;
}

void SchwartzFunction::canonicalize() {
    // Zero function: fixed canonical cell (0,0).
    bool any = false;
    for (const Cyclo& v : table_)
        if (!v.is_zero()) { any = true; break; }
    if (!any) {
        *this = SchwartzFunction(ctx_, n_, 0, 0);
        return;
    }

    // Maximal support exponent: min over nonzero cosets and coordinates of
    // min(v(coordinate), k).
    long jstar = k_;
    for (long idx = 0; idx < table_size(); ++idx) {
        if (table_[static_cast<size_t>(idx)].is_zero()) continue;
        std::vector<Rat> x = rep_point(idx);
        for (const Rat& xi : x) {
            long v = padic_val(xi, ctx_->p());
            if (v > k_) v = k_;
            if (v < jstar) jstar = v;
        }
    }

    if (jstar > j_) {
        SchwartzFunction shrunk(ctx_, n_, jstar, k_);
        for (long idx = 0; idx < shrunk.table_size(); ++idx) {
            Cyclo v = eval(shrunk.rep_point(idx));
            if (!v.is_zero()) shrunk.table_[static_cast<size_t>(idx)] = std::move(v);
        }
        *this = std::move(shrunk);
    }

    // Minimal level: merge p^n children while the function is constant on
    // the coarser cosets.
    while (k_ > j_) {
        SchwartzFunction coarse(ctx_, n_, j_, k_ - 1);
        bool constant = true;
        const long p = ctx_->p();
        const long child_step = coarse.base_;  // p^{k-1-j}
        for (long cidx = 0; cidx < coarse.table_size() && constant; ++cidx) {
            std::vector<long> cd(static_cast<size_t>(n_));
            long tmp = cidx;
            for (long i = 0; i < n_; ++i) {
                cd[static_cast<size_t>(i)] = tmp % coarse.base_;
                tmp /= coarse.base_;
            }
            // Children digits at level k: cd_i + d_i * p^{k-1-j}.
            std::vector<long> child(static_cast<size_t>(n_), 0);
            Cyclo firstv = Cyclo::zero(ctx_);
            bool have = false;
            while (true) {
                std::vector<long> fd(static_cast<size_t>(n_));
                for (long i = 0; i < n_; ++i)
                    fd[static_cast<size_t>(i)] = cd[static_cast<size_t>(i)] + child[static_cast<size_t>(i)] * child_step;
                const Cyclo& v = table_[static_cast<size_t>(index_of_digits(fd))];
                if (!have) {
                    firstv = v;
                    have = true;
                } else if (v != firstv) {
                    constant = false;
                    break;
                }
                long i = 0;
                while (i < n_ && ++child[static_cast<size_t>(i)] == p) {
                    child[static_cast<size_t>(i)] = 0;
                    ++i;
                }
                if (i == n_) break;
            }
            if (constant && have) coarse.table_[static_cast<size_t>(cidx)] = std::move(firstv);
        }
        if (!constant) break;
        *this = std::move(coarse);
    }
}

SchwartzFunction SchwartzFunction::canonical() const {
    SchwartzFunction f = *this;
    f.canonicalize();
    return f;
}

SchwartzFunction SchwartzFunction::with_context(const CtxPtr& ctx2) const {
    if (ctx2 == ctx_) return *this;
    SchwartzFunction out(ctx2, n_, j_, k_);
    for (long idx = 0; idx < table_size(); ++idx)
        out.table_[static_cast<size_t>(idx)] = table_[static_cast<size_t>(idx)].coerce(ctx2);
    return out;
}

SchwartzFunction SchwartzFunction::operator+(const SchwartzFunction& o) const {
    if (n_ != o.n_) throw std::invalid_argument("SchwartzFunction: dimension mismatch");
    SchwartzFunction a = *this, b = o;
    if (a.ctx_->N() < b.ctx_->N()) a = a.with_context(b.ctx_);
    if (b.ctx_->N() < a.ctx_->N()) b = b.with_context(a.ctx_);
    long j2 = std::min(a.j_, b.j_), k2 = std::max(a.k_, b.k_);
    SchwartzFunction ra = a.refined(j2, k2), rb = b.refined(j2, k2);
    for (long idx = 0; idx < ra.table_size(); ++idx)
        ra.table_[static_cast<size_t>(idx)] += rb.table_[static_cast<size_t>(idx)];
    ra.canonicalize();
    return ra;
}

SchwartzFunction SchwartzFunction::operator-(const SchwartzFunction& o) const {
    return *this + o.scaled(Rat(-1));
}

SchwartzFunction SchwartzFunction::scaled(const Cyclo& e) const {
    SchwartzFunction out = *this;
    Cyclo ec = e;
    if (ec.ctx()->N() > ctx_->N()) out = out.with_context(ec.ctx());
    if (ec.ctx()->N() < out.ctx_->N()) ec = ec.coerce(out.ctx_);
    for (Cyclo& v : out.table_) v *= ec;
    out.canonicalize();
    return out;
}

SchwartzFunction SchwartzFunction::scaled(const Rat& r) const {
    SchwartzFunction out = *this;
    for (Cyclo& v : out.table_) v = v * r;
    out.canonicalize();
    return out;
}

bool SchwartzFunction::operator==(const SchwartzFunction& o) const {
    if (n_ != o.n_) return false;
    SchwartzFunction a = canonical(), b = o.canonical();
    if (a.j_ != b.j_ || a.k_ != b.k_) return false;
    for (long idx = 0; idx < a.table_size(); ++idx)
        if (a.table_[static_cast<size_t>(idx)] != b.table_[static_cast<size_t>(idx)]) return false;
    return true;
}

SchwartzFunction SchwartzFunction::values_galois(const GaloisElement& sigma) const {
    CtxPtr target = ctx_;
    if (sigma.N() > ctx_->N()) target = CycloContext::get(sigma.p(), sigma.N());
    SchwartzFunction out = with_context(target);
    for (Cyclo& v : out.table_) v = sigma.apply(v);
    out.canonicalize();
    return out;
}

bool SchwartzFunction::is_rational_over(Subfield K) const {
    for (const Cyclo& v : table_)
        if (!v.in_subfield(K)) return false;
    return true;
}

std::string SchwartzFunction::str() const {
    SchwartzFunction c = canonical();
    std::ostringstream os;
    os << "cell(" << c.j_ << "," << c.k_ << ") {";
    bool first = true;
    for (long idx = 0; idx < c.table_size(); ++idx) {
        if (c.table_[static_cast<size_t>(idx)].is_zero()) continue;
        if (!first) os << ", ";
        first = false;
        std::vector<Rat> x = c.rep_point(idx);
        os << "(";
        for (size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << rat_str(x[i]);
        os << ") -> " << c.table_[static_cast<size_t>(idx)].str();
    }
    os << "}";
    return os.str();
}

}  // namespace weilrep
