#pragma once

// Symplectic and Heisenberg groups over F = Q_p with exact rational
// matrices, the distinguished elements tau_i, p_{i,s}, g_s, iota, the
// similitude conjugation g^{f_s}, and the Bruhat-Siegel factorization
// g = p_1 tau_i p_2 with i = rank of the c block.
//
// Convention: row vectors, (x, y) -> (x, y) * g, basis order
// (x_1..x_n, y_1..y_n), so <x_i, y_j> = delta_ij and the Gram matrix is
// J = [[0, I], [-I, 0]].

#include <string>
#include <vector>

#include "weilrep/rational.hpp"

namespace weilrep {

class RatMat {
public:
    RatMat(long rows, long cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols), Rat(0)) {}
    static RatMat identity(long n);

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    Rat& at(long r, long c) { return a_[static_cast<size_t>(r * cols_ + c)]; }
    const Rat& at(long r, long c) const { return a_[static_cast<size_t>(r * cols_ + c)]; }

    RatMat operator*(const RatMat& o) const;
    RatMat operator-() const;
    RatMat transpose() const;
    RatMat inverse() const;  // throws std::domain_error if singular
    Rat det() const;
    long rank() const;
    bool operator==(const RatMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const RatMat& o) const { return !(*this == o); }
    bool is_zero() const;
    bool is_symmetric() const;

    RatMat block(long r0, long c0, long nr, long nc) const;
    void set_block(long r0, long c0, const RatMat& b);

    // Minimal p-adic valuation over the nonzero entries; kValInf if zero.
    long min_val(long p) const;

    std::vector<Rat> apply_row(const std::vector<Rat>& v) const;  // v * M

private:
    long rows_, cols_;
    std::vector<Rat> a_;
};

class SymplecticElement {
public:
    // Checks g J g^T = J exactly.
    SymplecticElement(long n, RatMat g);

    long n() const { return n_; }
    const RatMat& mat() const { return g_; }

    RatMat block_a() const { return g_.block(0, 0, n_, n_); }
    RatMat block_b() const { return g_.block(0, n_, n_, n_); }
    RatMat block_c() const { return g_.block(n_, 0, n_, n_); }
    RatMat block_d() const { return g_.block(n_, n_, n_, n_); }

    bool in_parabolic() const { return block_c().is_zero(); }
    // det of the restriction to Y; only for elements of P.
    Rat det_on_Y() const;

    SymplecticElement operator*(const SymplecticElement& o) const;
    SymplecticElement inverse() const;
    bool operator==(const SymplecticElement& o) const { return n_ == o.n_ && g_ == o.g_; }
    bool operator!=(const SymplecticElement& o) const { return !(*this == o); }

    std::string str() const;

private:
    long n_;
    RatMat g_;
};

// Standard elements.
SymplecticElement sp_identity(long n);
SymplecticElement sp_tau(long n, long i);
SymplecticElement sp_levi(const RatMat& a);             // diag(a, a^{-T})
SymplecticElement sp_levi_scalar(long n, const Rat& a); // levi of a*I
SymplecticElement sp_unip(const RatMat& b);             // [[I, b], [0, I]], b symmetric
SymplecticElement sp_unip_scalar(long n, const Rat& b);
SymplecticElement sp_gs(long n, const Rat& s);          // diag(s^{-1} I, s I)
SymplecticElement sp_pis(long n, long i, const Rat& s);
SymplecticElement sp_iota(long n);                      // g_{-1} = -I

// f_s = diag(I, s I) as a plain GL(2n) matrix (not symplectic).
RatMat similitude_fs(long n, const Rat& s);

// g^{f_s}: blocks (a, s b; s^{-1} c, d).
SymplecticElement conj_fs(const SymplecticElement& g, const Rat& s);

struct HeisenbergElement {
    long n;
    std::vector<Rat> v;  // length 2n, X then Y coordinates
    Rat t;

    HeisenbergElement(long dim, std::vector<Rat> vec, Rat tt);
    static HeisenbergElement zero(long n);
};

// <v, w> = v J w^T.
Rat symplectic_form(long n, const std::vector<Rat>& v, const std::vector<Rat>& w);

HeisenbergElement heis_mul(const HeisenbergElement& h, const HeisenbergElement& k);
HeisenbergElement heis_inverse(const HeisenbergElement& h);
// (v, t) g = (v g, t).
HeisenbergElement heis_act(const HeisenbergElement& h, const SymplecticElement& g);

struct SiegelDecomposition {
    SymplecticElement p1;
    long i;
    SymplecticElement p2;
};

// Exact factorization g = p1 tau_i p2, i = rank(c); verified internally
// by multiplying back.
SiegelDecomposition bruhat_siegel(const SymplecticElement& g);

// Parser for generator words like "tau1*unip(1/3)*levi(2)"; matrices use
// comma-separated entries with ';' between rows, scalars mean scalar
// matrices. Accepted atoms: tauI, levi(...), unip(...), g(s), iota, id.
SymplecticElement parse_symplectic_word(const std::string& word, long n);

// Heisenberg spec "x1(a)+y1(b),t"; for n = 1 plain x(a), y(b) work too.
HeisenbergElement parse_heisenberg(const std::string& spec, long n);

}  // namespace weilrep
