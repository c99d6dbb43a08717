#pragma once

// The Schroedinger operators S_lambda(h) and the Weil operators
// W_lambda(g) on Bruhat-Schwartz functions, with Rao's normalized
// measures. The defining integral is evaluated as an exact finite sum
// over a certified coset window; a second route composes the
// Bruhat-Siegel factors (parabolic closed form + partial Fourier
// transform). The two routes agree exactly, which is the strongest
// internal consistency check of measures + decomposition.

#include <memory>
#include <optional>
#include <vector>

#include "weilrep/localfield.hpp"
#include "weilrep/schwartz.hpp"
#include "weilrep/sympl.hpp"

namespace weilrep {

enum class WeilMode { Direct, Composed };

// Measure data for a fixed Siegel decomposition: the rank, the
// identification lift of Y_{tau_i}-coordinates back into Y, and the
// normalization |det(p1 p2|_Y)|^{-1/2}.
struct MeasureData {
    long i;
    Rat det_p1p2_Y;
    RatMat lift;  // d(p1)^{-1}: row vector z-hat in Y_{tau_i} -> section of Y_g

    MeasureData() : i(0), det_p1p2_Y(1), lift(0, 0) {}

    // |det(p1 p2|_Y)|^{-1/2}, exact.
    Cyclo norm_scalar(const CtxPtr& ctx) const;
    // Measure of one p^K-coset of the i-dimensional integration window:
    // (q^{l/2 - K})^i * norm_scalar.
    Cyclo coset_measure(const AdditiveCharacter& lambda, long K, const CtxPtr& ctx) const;
};

MeasureData weil_measure(const SiegelDecomposition& dec);

SchwartzFunction schrodinger_apply(const AdditiveCharacter& lambda, const HeisenbergElement& h,
                                   const SchwartzFunction& phi);

SchwartzFunction weil_apply(const AdditiveCharacter& lambda, const SymplecticElement& g,
                            const SchwartzFunction& phi, WeilMode mode = WeilMode::Direct,
                            bool certify_bounds = false);

// As above but with a caller-provided decomposition (cached by operator
// expressions); both modes route through it.
SchwartzFunction weil_apply_with_dec(const AdditiveCharacter& lambda, const SymplecticElement& g,
                                     const SiegelDecomposition& dec, const SchwartzFunction& phi,
                                     WeilMode mode, bool certify_bounds = false);

// The unique c with W(g1)W(g2) = c W(g1 g2), determined and cross-checked
// on the probes. Throws if the probes are all annihilated or inconsistent.
Cyclo projective_multiplier(const AdditiveCharacter& lambda, const SymplecticElement& g1,
                            const SymplecticElement& g2, const std::vector<SchwartzFunction>& probes);

// W(g)^{-1} S(h) W(g) = S(hg) on every probe.
bool intertwine_check(const AdditiveCharacter& lambda, const SymplecticElement& g,
                      const HeisenbergElement& h, const std::vector<SchwartzFunction>& probes);

// Composable, lazily applied operator on Schwartz functions.
class OperatorExpr {
public:
    static OperatorExpr identity();
    static OperatorExpr scalar(const Cyclo& c);
    static OperatorExpr weil(const AdditiveCharacter& lambda, const SymplecticElement& g,
                             WeilMode mode = WeilMode::Direct);
    // W(g)^{-1} realized as multiplier(g, g^{-1})^{-1} * W(g^{-1}).
    static OperatorExpr weil_inverse(const AdditiveCharacter& lambda, const SymplecticElement& g,
                                     WeilMode mode = WeilMode::Direct);
    static OperatorExpr schrodinger(const AdditiveCharacter& lambda, const HeisenbergElement& h);
    static OperatorExpr galois_conj(const GaloisElement& sigma, const OperatorExpr& T);
    static OperatorExpr sum(std::vector<OperatorExpr> terms);

    OperatorExpr compose(const OperatorExpr& rhs) const;  // this after rhs
    OperatorExpr scaled(const Cyclo& c) const;

    SchwartzFunction apply(const SchwartzFunction& phi) const;

private:
    struct Node;
    explicit OperatorExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// (I + W(iota))/2 and (I - W(iota))/2.
OperatorExpr projector_even(const AdditiveCharacter& lambda, long n, const CtxPtr& ctx);
OperatorExpr projector_odd(const AdditiveCharacter& lambda, long n, const CtxPtr& ctx);

bool operators_agree_on(const OperatorExpr& A, const OperatorExpr& B,
                        const std::vector<SchwartzFunction>& probes);

// Default probe family: all atoms of the cell (j, k) in dimension n, plus
// (optionally) a few fixed E-combinations.
std::vector<SchwartzFunction> atom_probes(const CtxPtr& ctx, long n, long j, long k,
                                          bool add_combinations = false);

}  // namespace weilrep
