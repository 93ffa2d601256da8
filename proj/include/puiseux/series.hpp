#pragma once

#include "puiseux/exponent.hpp"

#include <optional>
#include <string>
#include <vector>

namespace puiseux {

struct OperatorKind {
    enum Kind { Dx, Euler, QDiff } kind = Euler;
    Scalar q;  // QDiff only

    int epsilon() const { return kind == Dx ? 1 : 0; }
    static OperatorKind dx() { return {Dx, Scalar()}; }
    static OperatorKind euler() { return {Euler, Scalar()}; }
    static OperatorKind qdiff(Scalar qv) { return {QDiff, std::move(qv)}; }
};

std::string operator_render(const OperatorKind& op, const SymbolTable& tab);

struct SeriesTerm {
    Exponent exp;
    Scalar coeff;
};

/// Finite generalized power series with a truncation watermark: coefficients
/// at exponents below valid_to are exact and complete; valid_to == nullopt
/// means the series is exact everywhere.
struct GenSeries {
    std::vector<SeriesTerm> terms;      // strictly increasing exponents, nonzero coeffs
    std::optional<Exponent> valid_to;

    bool no_terms() const { return terms.empty(); }
    bool is_exact_zero() const { return terms.empty() && !valid_to; }
    /// Zero as far as the watermark can see, but possibly not identically.
    bool is_zero_up_to_watermark() const { return terms.empty() && valid_to.has_value(); }
};

/// Watermark helpers (nullopt = +infinity).
using ExpBound = std::optional<Exponent>;
ExpBound bound_min(const ExpBound& a, const ExpBound& b, const Ctx& ctx);
ExpBound bound_shift(const ExpBound& a, const Exponent& delta);

/// Builds a series from unsorted terms: sorts, merges equal exponents, drops
/// zeros and terms at/above the watermark.
GenSeries series_make(const Ctx& ctx, std::vector<SeriesTerm> terms, ExpBound valid_to = {});

GenSeries series_add(const Ctx& ctx, const GenSeries& a, const GenSeries& b);
GenSeries series_mul(const Ctx& ctx, const GenSeries& a, const GenSeries& b);
GenSeries series_scale(const GenSeries& a, const Scalar& c);
GenSeries series_neg(const GenSeries& a);
/// c * x^e * a
GenSeries series_monomial_mul(const Ctx& ctx, const GenSeries& a, const Scalar& c,
                              const Exponent& e);
GenSeries series_pow(const Ctx& ctx, const GenSeries& a, unsigned e);

const Exponent& series_ord(const GenSeries& s);  // throws OrdOfZero
std::vector<Exponent> series_support(const GenSeries& s);
bool series_equal(const GenSeries& a, const GenSeries& b);  // exact, term-wise

/// The operator factor <mu>_kappa: falling factorial (d/dx), power (Euler) or
/// q^(kappa*mu) (q-difference; may register q^mu_j symbols in the table).
Scalar op_factor(const Ctx& ctx, const OperatorKind& op, const Exponent& mu, int kappa);

/// q^e for an exponent e; exact, or NeedsAlgebraicExtension when a fractional
/// power of a non-symbol q would be required.
Scalar qpow(const Ctx& ctx, const Scalar& q, const Exponent& e);

/// s^(kappa): term-wise c x^mu -> c <mu>_kappa x^(mu - eps*kappa).
GenSeries apply_operator(const Ctx& ctx, const GenSeries& s, const OperatorKind& op, int kappa);

/// D_j: multiply each coefficient by the generator-j coordinate of its exponent.
GenSeries formal_derivation(const GenSeries& s, int generator_sym);
/// Derivation against a rational generator g (coordinate rational_part / g).
GenSeries formal_derivation_rational(const GenSeries& s, const Rat& g);

std::string series_render(const GenSeries& s, const SymbolTable& tab);

}  // namespace puiseux
