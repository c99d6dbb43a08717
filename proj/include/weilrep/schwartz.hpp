#pragma once

// The Bruhat-Schwartz space S(F^n, E) as exact finite data. A function is
// stored on a cell (j, k): it is supported in p^j L (L = O^n in the fixed
// basis) and constant on cosets of p^k L, with a dense value table over
// the coset representatives of (p^j Z / p^k Z)^n. Canonical form takes
// the maximal j, then the minimal k; equality is decidable.

#include <functional>
#include <string>
#include <vector>

#include "weilrep/cyclo.hpp"
#include "weilrep/localfield.hpp"

namespace weilrep {

class SchwartzFunction {
public:
    // Indicator of the coset c + p^k L.
    static SchwartzFunction atom(const CtxPtr& ctx, long n, const std::vector<Rat>& c, long k);
    static SchwartzFunction zero(const CtxPtr& ctx, long n);

    // A raw cell with all values zero; values are then set by set_value.
    SchwartzFunction(CtxPtr ctx, long n, long j, long k);

    const CtxPtr& ctx() const { return ctx_; }
    long n() const { return n_; }
    long j() const { return j_; }
    long k() const { return k_; }
    long table_size() const { return static_cast<long>(table_.size()); }

    // Coset representative for a table index: coordinates c_i * p^j with
    // digits c_i in [0, p^{k-j}).
    std::vector<Rat> rep_point(long index) const;
    const Cyclo& value_at_index(long index) const { return table_[static_cast<size_t>(index)]; }
    void set_value(long index, const Cyclo& v);
    void set_value(const std::vector<Rat>& point, const Cyclo& v);

    // Value of the function at an arbitrary point of F^n.
    Cyclo eval(const std::vector<Rat>& x) const;

    bool is_zero() const;

    SchwartzFunction operator+(const SchwartzFunction& o) const;
    SchwartzFunction operator-(const SchwartzFunction& o) const;
    SchwartzFunction scaled(const Cyclo& e) const;
    SchwartzFunction scaled(const Rat& r) const;
    SchwartzFunction operator-() const { return scaled(Rat(-1)); }

    bool operator==(const SchwartzFunction& o) const;
    bool operator!=(const SchwartzFunction& o) const { return !(*this == o); }

    // Entrywise Galois action (Eq. on values); semilinear over E.
    SchwartzFunction values_galois(const GaloisElement& sigma) const;

    bool is_rational_over(Subfield K) const;

    // Refinement to a coarser-support / finer-level cell (j2 <= j, k2 >= k).
    SchwartzFunction refined(long j2, long k2) const;

    SchwartzFunction canonical() const;
    void canonicalize();

    // Lift values into a deeper tower (same p, larger N).
    SchwartzFunction with_context(const CtxPtr& ctx2) const;

    std::string str() const;

    // Guard for runaway cells (weil apply bounds); throws beyond this.
    static constexpr long kMaxTable = 4000000;

private:
    long base() const { return base_; }
    long digits_per_coord() const { return k_ - j_; }
    long index_of_digits(const std::vector<long>& d) const;

    CtxPtr ctx_;
    long n_, j_, k_;
    long base_;  // p^{k-j}
    std::vector<Cyclo> table_;
};

inline SchwartzFunction operator*(const Cyclo& e, const SchwartzFunction& f) { return f.scaled(e); }
inline SchwartzFunction operator*(const Rat& r, const SchwartzFunction& f) { return f.scaled(r); }

}  // namespace weilrep
