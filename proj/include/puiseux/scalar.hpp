#pragma once

#include "puiseux/gaussian.hpp"
#include "puiseux/symbols.hpp"

#include <map>
#include <optional>
#include <string>

namespace puiseux {

/// Power product of symbols with rational exponents; exponent 0 entries are
/// never stored.
struct Monomial {
    std::map<int, Rat> exps;  // symbol id -> nonzero rational exponent

    bool is_one() const { return exps.empty(); }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
    friend bool operator<(const Monomial& a, const Monomial& b);  // lexicographic, total

    Monomial operator*(const Monomial& o) const;
    Monomial pow(const Rat& e) const;
};

using MonoPoly = std::map<Monomial, Gaussian>;

MonoPoly mp_add(const MonoPoly& a, const MonoPoly& b);
MonoPoly mp_mul(const MonoPoly& a, const MonoPoly& b);
MonoPoly mp_neg(const MonoPoly& a);
MonoPoly mp_scale(const MonoPoly& a, const Gaussian& c);

/// Square root of a polynomial of monomials, when one exists (rational
/// exponents make every monomial a square).
std::optional<MonoPoly> mp_sqrt(const MonoPoly& p);

/// Element of Q(i)(t_1, ..., t_s) with rational monomial exponents, kept as a
/// normalized fraction of monomial polynomials.  Symbols are free: the zero
/// test is syntactic expansion of the numerator.
struct Scalar {
    MonoPoly num, den;

    Scalar() { init_zero(); }
    explicit Scalar(const Rat& v) { init_const(Gaussian(v)); }
    explicit Scalar(long v) { init_const(Gaussian(Rat(v))); }
    explicit Scalar(const Gaussian& v) { init_const(v); }

    static Scalar from_symbol(int id, const Rat& exp = Rat(1));
    static Scalar from_monomial(const Monomial& m, const Gaussian& c = Gaussian(Rat(1)));
    static Scalar imaginary_unit() { return Scalar(Gaussian(Rat(0), Rat(1))); }

    bool is_zero() const { return num.empty(); }
    bool is_one() const;
    bool is_rational() const;
    std::optional<Rat> as_rational() const;
    std::optional<Gaussian> as_gaussian() const;

    /// A lone monomial with unit coefficient and trivial denominator.
    std::optional<Monomial> as_unit_monomial() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);  // throws DivisionByZero
    Scalar pow(long e) const;

    friend bool operator==(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    void normalize();

private:
    void init_zero();
    void init_const(const Gaussian& v);
    /// Exact common-factor reduction when the fraction involves at most one
    /// symbol; multivariate fractions are left to cross-multiplication.
    void reduce_univariate();
};

/// Certified complex enclosure; refines symbol enclosures up to `max_rounds`
/// rounds (32 digits per round) until the denominator separates from zero.
ComplexBox scalar_eval_enclosure(const Scalar& a, const SymbolTable& tab, int max_rounds);

/// Enclosure at one fixed precision; throws if the denominator straddles zero.
ComplexBox scalar_eval_at(const Scalar& a, const SymbolTable& tab, unsigned digits);

/// Square root within the field, when it exists.
std::optional<Scalar> scalar_sqrt(const Scalar& a);

std::string scalar_render(const Scalar& a, const SymbolTable& tab);
/// Rendering safe to embed in a product context (parenthesizes sums/fractions).
std::string scalar_render_factor(const Scalar& a, const SymbolTable& tab);

}  // namespace puiseux
