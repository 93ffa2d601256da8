#pragma once

#include "puiseux/scalar.hpp"

#include <optional>
#include <vector>

namespace puiseux {

/// Dense univariate polynomial over Scalar (coefficient of X^k at index k).
struct UniPoly {
    std::vector<Scalar> c;

    UniPoly() = default;
    explicit UniPoly(std::vector<Scalar> coeffs) : c(std::move(coeffs)) { trim(); }
    static UniPoly constant(const Scalar& a) { return UniPoly({a}); }
    /// a*X + b
    static UniPoly linear(const Scalar& a, const Scalar& b) { return UniPoly({b, a}); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    const Scalar& coeff(size_t k) const;

    Scalar eval(const Scalar& x) const;

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    UniPoly scaled(const Scalar& s) const;
    UniPoly pow(unsigned e) const;

    friend bool operator==(const UniPoly& a, const UniPoly& b);

    /// Divide by (X - r); remainder must be zero.
    UniPoly deflate(const Scalar& r) const;
};

struct RootList {
    std::vector<std::pair<Scalar, int>> roots;  // (root, multiplicity)
    std::optional<UniPoly> unresolved;          // residual factor of degree >= 2
};

/// Exact roots by the strategy chain: deflate X=0; pure-power detection;
/// degree 1; degree 2 with a perfect-square discriminant.  Whatever remains is
/// reported as an unresolved factor.  Throws ZeroPolynomial for p == 0.
RootList poly_roots_exact(const UniPoly& p);

std::string poly_render(const UniPoly& p, const SymbolTable& tab, const std::string& var);

}  // namespace puiseux
