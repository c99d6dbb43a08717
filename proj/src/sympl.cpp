#include "weilrep/sympl.hpp"

#include <algorithm>
#include <sstream>

namespace weilrep {

RatMat RatMat::identity(long n) {
    RatMat m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMat RatMat::operator*(const RatMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("RatMat: dimension mismatch in product");
    RatMat out(rows_, o.cols_);
    for (long i = 0; i < rows_; ++i)
        for (long k = 0; k < cols_; ++k) {
            const Rat& v = at(i, k);
            if (weilrep::is_zero(v)) continue;
            for (long j = 0; j < o.cols_; ++j) out.at(i, j) += v * o.at(k, j);
        }
    return out;
}

RatMat RatMat::operator-() const {
    RatMat out(rows_, cols_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) out.at(i, j) = -at(i, j);
    return out;
}

RatMat RatMat::transpose() const {
    RatMat out(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

RatMat RatMat::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("RatMat::inverse: not square");
    const long n = rows_;
    RatMat m = *this;
    RatMat inv = identity(n);
    for (long col = 0; col < n; ++col) {
        long piv = -1;
        for (long r = col; r < n; ++r)
            if (!weilrep::is_zero(m.at(r, col))) { piv = r; break; }
        if (piv < 0) throw std::domain_error("RatMat::inverse: singular matrix");
        if (piv != col)
            for (long j = 0; j < n; ++j) {
                std::swap(m.at(piv, j), m.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        const Rat d = m.at(col, col);
        for (long j = 0; j < n; ++j) {
            m.at(col, j) /= d;
            inv.at(col, j) /= d;
        }
        for (long r = 0; r < n; ++r) {
            if (r == col) continue;
            const Rat f = m.at(r, col);
            if (weilrep::is_zero(f)) continue;
            for (long j = 0; j < n; ++j) {
                m.at(r, j) -= f * m.at(col, j);
                inv.at(r, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

Rat RatMat::det() const {
    if (rows_ != cols_) throw std::invalid_argument("RatMat::det: not square");
    RatMat m = *this;
    Rat d(1);
    const long n = rows_;
    for (long col = 0; col < n; ++col) {
        long piv = -1;
        for (long r = col; r < n; ++r)
            if (!weilrep::is_zero(m.at(r, col))) { piv = r; break; }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            for (long j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        const Rat inv = Rat(1) / m.at(col, col);
        for (long r = col + 1; r < n; ++r) {
            const Rat f = m.at(r, col) * inv;
            if (weilrep::is_zero(f)) continue;
            for (long j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
        }
    }
    return d;
}

long RatMat::rank() const {
    RatMat m = *this;
    long rank = 0;
    for (long col = 0; col < cols_ && rank < rows_; ++col) {
        long piv = -1;
        for (long r = rank; r < rows_; ++r)
            if (!weilrep::is_zero(m.at(r, col))) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (long j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        const Rat inv = Rat(1) / m.at(rank, col);
        for (long r = rank + 1; r < rows_; ++r) {
            const Rat f = m.at(r, col) * inv;
            if (weilrep::is_zero(f)) continue;
            for (long j = col; j < cols_; ++j) m.at(r, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

bool RatMat::is_zero() const {
    for (const Rat& x : a_)
        if (!weilrep::is_zero(x)) return false;
    return true;
}

bool RatMat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (long i = 0; i < rows_; ++i)
        for (long j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

RatMat RatMat::block(long r0, long c0, long nr, long nc) const {
    RatMat out(nr, nc);
    for (long i = 0; i < nr; ++i)
        for (long j = 0; j < nc; ++j) out.at(i, j) = at(r0 + i, c0 + j);
    return out;
}

void RatMat::set_block(long r0, long c0, const RatMat& b) {
    for (long i = 0; i < b.rows(); ++i)
        for (long j = 0; j < b.cols(); ++j) at(r0 + i, c0 + j) = b.at(i, j);
}

long RatMat::min_val(long p) const {
    long mv = kValInf;
    for (const Rat& x : a_) {
        long v = padic_val(x, p);
        if (v < mv) mv = v;
    }
    return mv;
}

std::vector<Rat> RatMat::apply_row(const std::vector<Rat>& v) const {
    if (static_cast<long>(v.size()) != rows_) throw std::invalid_argument("apply_row: dimension mismatch");
    std::vector<Rat> out(static_cast<size_t>(cols_), Rat(0));
    for (long i = 0; i < rows_; ++i) {
        if (weilrep::is_zero(v[static_cast<size_t>(i)])) continue;
        for (long j = 0; j < cols_; ++j) out[static_cast<size_t>(j)] += v[static_cast<size_t>(i)] * at(i, j);
    }
    return out;
}

namespace {

RatMat gram_J(long n) {
    RatMat J(2 * n, 2 * n);
    for (long i = 0; i < n; ++i) {
        J.at(i, n + i) = 1;
        J.at(n + i, i) = -1;
    }
    return J;
}

}  // namespace

SymplecticElement::SymplecticElement(long n, RatMat g) : n_(n), g_(std::move(g)) {
    if (g_.rows() != 2 * n || g_.cols() != 2 * n)
        throw std::invalid_argument("SymplecticElement: matrix must be 2n x 2n");
    RatMat J = gram_J(n);
    if (g_ * J * g_.transpose() != J)
        throw std::invalid_argument("SymplecticElement: g J g^T != J");
}

Rat SymplecticElement::det_on_Y() const {
    if (!in_parabolic()) throw std::domain_error("det_on_Y: element not in P");
    return block_d().det();
}

SymplecticElement SymplecticElement::operator*(const SymplecticElement& o) const {
    if (n_ != o.n_) throw std::invalid_argument("SymplecticElement: rank mismatch");
    return SymplecticElement(n_, g_ * o.g_);
}

SymplecticElement SymplecticElement::inverse() const {
    return SymplecticElement(n_, g_.inverse());
}

std::string SymplecticElement::str() const {
    std::ostringstream os;
    for (long i = 0; i < 2 * n_; ++i) {
        os << (i ? "; " : "[");
        for (long j = 0; j < 2 * n_; ++j) os << (j ? "," : "") << rat_str(g_.at(i, j));
    }
    os << "]";
    return os.str();
}

SymplecticElement sp_identity(long n) { return SymplecticElement(n, RatMat::identity(2 * n)); }

SymplecticElement sp_tau(long n, long i) {
    if (i < 0 || i > n) throw std::invalid_argument("sp_tau: need 0 <= i <= n");
    RatMat m(2 * n, 2 * n);
    for (long j = 0; j < n; ++j) {
        if (j < i) {
            m.at(j, n + j) = -1;  // x_j -> -y_j
            m.at(n + j, j) = 1;   // y_j -> x_j
        } else {
            m.at(j, j) = 1;
            m.at(n + j, n + j) = 1;
        }
    }
    return SymplecticElement(n, std::move(m));
}

SymplecticElement sp_levi(const RatMat& a) {
    const long n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("sp_levi: a must be square");
    RatMat m(2 * n, 2 * n);
    m.set_block(0, 0, a);
    m.set_block(n, n, a.inverse().transpose());
    return SymplecticElement(n, std::move(m));
}

SymplecticElement sp_levi_scalar(long n, const Rat& a) {
    RatMat m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = a;
    return sp_levi(m);
}

SymplecticElement sp_unip(const RatMat& b) {
    const long n = b.rows();
    if (b.cols() != n) throw std::invalid_argument("sp_unip: b must be square");
    if (!b.is_symmetric()) throw std::invalid_argument("sp_unip: b must be symmetric");
    RatMat m = RatMat::identity(2 * n);
    m.set_block(0, n, b);
    return SymplecticElement(n, std::move(m));
}

SymplecticElement sp_unip_scalar(long n, const Rat& b) {
    RatMat m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = b;
    return sp_unip(m);
}

SymplecticElement sp_gs(long n, const Rat& s) {
    if (weilrep::is_zero(s)) throw std::invalid_argument("sp_gs: s = 0");
    RatMat m(2 * n, 2 * n);
    for (long i = 0; i < n; ++i) {
        m.at(i, i) = Rat(1) / s;
        m.at(n + i, n + i) = s;
    }
    return SymplecticElement(n, std::move(m));
}

SymplecticElement sp_pis(long n, long i, const Rat& s) {
    if (weilrep::is_zero(s)) throw std::invalid_argument("sp_pis: s = 0");
    if (i < 0 || i > n) throw std::invalid_argument("sp_pis: need 0 <= i <= n");
    RatMat m(2 * n, 2 * n);
    for (long j = 0; j < n; ++j) {
        m.at(j, j) = j < i ? Rat(1) / s : Rat(1);
        m.at(n + j, n + j) = j < i ? s : Rat(1);
    }
    return SymplecticElement(n, std::move(m));
}

SymplecticElement sp_iota(long n) { return sp_gs(n, Rat(-1)); }

RatMat similitude_fs(long n, const Rat& s) {
    RatMat m(2 * n, 2 * n);
    for (long i = 0; i < n; ++i) {
        m.at(i, i) = 1;
        m.at(n + i, n + i) = s;
    }
    return m;
}

SymplecticElement conj_fs(const SymplecticElement& g, const Rat& s) {
    if (weilrep::is_zero(s)) throw std::invalid_argument("conj_fs: s = 0");
    const long n = g.n();
    RatMat m(2 * n, 2 * n);
    m.set_block(0, 0, g.block_a());
    RatMat b = g.block_b();
    RatMat c = g.block_c();
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            b.at(i, j) *= s;
            c.at(i, j) /= s;
        }
    m.set_block(0, n, b);
    m.set_block(n, 0, c);
    m.set_block(n, n, g.block_d());
    return SymplecticElement(n, std::move(m));
}

HeisenbergElement::HeisenbergElement(long dim, std::vector<Rat> vec, Rat tt)
    : n(dim), v(std::move(vec)), t(std::move(tt)) {
    if (static_cast<long>(v.size()) != 2 * n)
        throw std::invalid_argument("HeisenbergElement: v must have length 2n");
}

HeisenbergElement HeisenbergElement::zero(long n) {
    return HeisenbergElement(n, std::vector<Rat>(static_cast<size_t>(2 * n), Rat(0)), Rat(0));
}

Rat symplectic_form(long n, const std::vector<Rat>& v, const std::vector<Rat>& w) {
    Rat out(0);
    for (long i = 0; i < n; ++i) {
        out += v[static_cast<size_t>(i)] * w[static_cast<size_t>(n + i)];
        out -= v[static_cast<size_t>(n + i)] * w[static_cast<size_t>(i)];
    }
    return out;
}

HeisenbergElement heis_mul(const HeisenbergElement& h, const HeisenbergElement& k) {
    if (h.n != k.n) throw std::invalid_argument("heis_mul: dimension mismatch");
    std::vector<Rat> v(h.v);
    for (size_t i = 0; i < v.size(); ++i) v[i] += k.v[i];
    Rat t = h.t + k.t + symplectic_form(h.n, h.v, k.v) / 2;
    return HeisenbergElement(h.n, std::move(v), std::move(t));
}

HeisenbergElement heis_inverse(const HeisenbergElement& h) {
    std::vector<Rat> v(h.v);
    for (Rat& x : v) x = -x;
    return HeisenbergElement(h.n, std::move(v), -h.t);
}

HeisenbergElement heis_act(const HeisenbergElement& h, const SymplecticElement& g) {
    if (h.n != g.n()) throw std::invalid_argument("heis_act: dimension mismatch");
    return HeisenbergElement(h.n, g.mat().apply_row(h.v), h.t);
}

SiegelDecomposition bruhat_siegel(const SymplecticElement& g) {
    const long n = g.n();
    const RatMat c = g.block_c();
    if (c.is_zero()) return SiegelDecomposition{g, 0, sp_identity(n)};

    // Rank normal form R * c * C = diag(I_i, 0) via full pivoting.
    RatMat M = c;
    RatMat R = RatMat::identity(n);
    RatMat C = RatMat::identity(n);
    long i = 0;
    for (long t = 0; t < n; ++t) {
        long pr = -1, pc = -1;
        for (long r = t; r < n && pr < 0; ++r)
            for (long cc = t; cc < n; ++cc)
                if (!weilrep::is_zero(M.at(r, cc))) { pr = r; pc = cc; break; }
        if (pr < 0) break;
        // Swap rows t <-> pr and columns t <-> pc.
        if (pr != t)
            for (long j = 0; j < n; ++j) {
                std::swap(M.at(pr, j), M.at(t, j));
                std::swap(R.at(pr, j), R.at(t, j));
            }
        if (pc != t)
            for (long r = 0; r < n; ++r) {
                std::swap(M.at(r, pc), M.at(r, t));
                std::swap(C.at(r, pc), C.at(r, t));
            }
        // Scale row t so the pivot is 1.
        const Rat inv = Rat(1) / M.at(t, t);
        for (long j = 0; j < n; ++j) {
            M.at(t, j) *= inv;
            R.at(t, j) *= inv;
        }
        // Clear the rest of column t with row ops, then row t with col ops.
        for (long r = 0; r < n; ++r) {
            if (r == t) continue;
            const Rat f = M.at(r, t);
            if (weilrep::is_zero(f)) continue;
            for (long j = 0; j < n; ++j) {
                M.at(r, j) -= f * M.at(t, j);
                R.at(r, j) -= f * R.at(t, j);
            }
        }
        for (long cc = 0; cc < n; ++cc) {
            if (cc == t) continue;
            const Rat f = M.at(t, cc);
            if (weilrep::is_zero(f)) continue;
            for (long r = 0; r < n; ++r) {
                M.at(r, cc) -= f * M.at(r, t);
                C.at(r, cc) -= f * C.at(r, t);
            }
        }
        ++i;
    }

    SymplecticElement levi_left = sp_levi(R.inverse().transpose());   // acts on c by R
    SymplecticElement levi_right = sp_levi(C);                        // acts on c by C
    SymplecticElement g1 = levi_left * g * levi_right;
    // Now c(g1) = diag(I_i, 0) =: E. Clear d with a right unipotent: the
    // symplectic relations force d21 = 0 and d11 symmetric.
    RatMat d1 = g1.block_d();
    RatMat S2(n, n);
    S2.set_block(0, 0, -d1.block(0, 0, i, i));
    S2.set_block(0, i, -d1.block(0, i, i, n - i));
    S2.set_block(i, 0, -d1.block(0, i, i, n - i).transpose());
    SymplecticElement g2 = g1 * sp_unip(S2);
    // Clear a with a left unipotent; a11 is symmetric here.
    RatMat a2 = g2.block_a();
    RatMat S1(n, n);
    S1.set_block(0, 0, -a2.block(0, 0, i, i));
    S1.set_block(0, i, -a2.block(i, 0, n - i, i).transpose());
    S1.set_block(i, 0, -a2.block(i, 0, n - i, i));
    SymplecticElement g3 = sp_unip(S1) * g2;

    SymplecticElement tau = sp_tau(n, i);
    SymplecticElement p2core = tau.inverse() * g3;
    if (!p2core.in_parabolic()) throw std::logic_error("bruhat_siegel: residual factor not in P");

    SymplecticElement p1 = levi_left.inverse() * sp_unip(-S1);
    SymplecticElement p2 = p2core * sp_unip(-S2) * levi_right.inverse();
    if (!p1.in_parabolic() || !p2.in_parabolic()) throw std::logic_error("bruhat_siegel: factors not in P");
    if (p1 * tau * p2 != g) throw std::logic_error("bruhat_siegel: factorization check failed");
    return SiegelDecomposition{std::move(p1), i, std::move(p2)};
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

RatMat parse_matrix_arg(const std::string& arg, long n) {
    std::vector<std::vector<Rat>> rows;
    for (const std::string& rs : split(arg, ';')) {
        std::vector<Rat> row;
        for (const std::string& es : split(rs, ','))
            row.push_back(parse_rat(strip(es)));
        rows.push_back(std::move(row));
    }
    if (rows.size() == 1 && rows[0].size() == 1) {
        // Scalar: scalar matrix.
        RatMat m(n, n);
        for (long ii = 0; ii < n; ++ii) m.at(ii, ii) = rows[0][0];
        return m;
    }
    if (rows.size() == 1 && static_cast<long>(rows[0].size()) == n) {
        // Diagonal entries.
        RatMat m(n, n);
        for (long ii = 0; ii < n; ++ii) m.at(ii, ii) = rows[0][static_cast<size_t>(ii)];
        return m;
    }
    if (static_cast<long>(rows.size()) != n) throw std::invalid_argument("matrix argument: wrong row count");
    RatMat m(n, n);
    for (long r = 0; r < n; ++r) {
        if (static_cast<long>(rows[static_cast<size_t>(r)].size()) != n)
            throw std::invalid_argument("matrix argument: wrong column count");
        for (long cc = 0; cc < n; ++cc) m.at(r, cc) = rows[static_cast<size_t>(r)][static_cast<size_t>(cc)];
    }
    return m;
}

SymplecticElement parse_atom(const std::string& atom, long n) {
    std::string a = strip(atom);
    if (a == "id" || a == "1") return sp_identity(n);
    if (a == "iota") return sp_iota(n);
    size_t par = a.find('(');
    if (par == std::string::npos) {
        if (a.rfind("tau", 0) == 0) return sp_tau(n, std::stol(a.substr(3)));
        throw std::invalid_argument("unknown symplectic atom '" + a + "'");
    }
    if (a.back() != ')') throw std::invalid_argument("unbalanced parentheses in '" + a + "'");
    std::string name = a.substr(0, par);
    std::string arg = a.substr(par + 1, a.size() - par - 2);
    if (name == "tau") return sp_tau(n, std::stol(arg));
    if (name == "levi") return sp_levi(parse_matrix_arg(arg, n));
    if (name == "unip") return sp_unip(parse_matrix_arg(arg, n));
    if (name == "g") return sp_gs(n, parse_rat(strip(arg)));
    if (name == "p") {
        auto parts = split(arg, ',');
        if (parts.size() != 2) throw std::invalid_argument("p(i,s) needs two arguments");
        return sp_pis(n, std::stol(strip(parts[0])), parse_rat(strip(parts[1])));
    }
    throw std::invalid_argument("unknown symplectic atom '" + name + "'");
}

}  // namespace

SymplecticElement parse_symplectic_word(const std::string& word, long n) {
    SymplecticElement out = sp_identity(n);
    // Split on '*' at top level (no nested '*' occurs inside arguments).
    std::string cur;
    long depth = 0;
    std::vector<std::string> atoms;
    for (char ch : word) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == '*' && depth == 0) {
            atoms.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    atoms.push_back(cur);
    for (const std::string& a : atoms)
        if (!strip(a).empty()) out = out * parse_atom(a, n);
    return out;
}

HeisenbergElement parse_heisenberg(const std::string& spec, long n) {
    // "<terms>,t" where <terms> is '+'-separated x(i)?(r) / y(i)?(r) or 0.
    long depth = 0;
    size_t comma = std::string::npos;
    for (size_t idx = spec.size(); idx-- > 0;) {
        char ch = spec[idx];
        if (ch == ')') ++depth;
        if (ch == '(') --depth;
        if (ch == ',' && depth == 0) {
            comma = idx;
            break;
        }
    }
    if (comma == std::string::npos) throw std::invalid_argument("heisenberg spec needs ', t' component");
    std::string vec = spec.substr(0, comma);
    Rat t = parse_rat(strip(spec.substr(comma + 1)));
    std::vector<Rat> v(static_cast<size_t>(2 * n), Rat(0));
    for (const std::string& term0 : split(vec, '+')) {
        std::string term = strip(term0);
        if (term.empty() || term == "0") continue;
        char kind = term[0];
        if (kind != 'x' && kind != 'y') throw std::invalid_argument("heisenberg term must start with x or y");
        size_t par = term.find('(');
        if (par == std::string::npos || term.back() != ')')
            throw std::invalid_argument("heisenberg term needs (value)");
        long index = 1;
        if (par > 1) index = std::stol(term.substr(1, par - 1));
        if (index < 1 || index > n) throw std::invalid_argument("heisenberg coordinate index out of range");
        Rat val = parse_rat(strip(term.substr(par + 1, term.size() - par - 2)));
        size_t slot = static_cast<size_t>(kind == 'x' ? index - 1 : n + index - 1);
        v[slot] += val;
    }
    return HeisenbergElement(n, std::move(v), std::move(t));
}

}  // namespace weilrep
