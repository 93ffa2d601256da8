#pragma once

#include "puiseux/scalar_poly.hpp"
#include "puiseux/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace puiseux {

/// (rho_0, ..., rho_n): the exponent vector of a y-monomial.
using MultiIndex = std::vector<int>;

int mi_total(const MultiIndex& m);   // |rho|
int mi_weight(const MultiIndex& m);  // omega(rho) = sum kappa*rho_kappa

/// Point of the cloud: shifted abscissa and total y-degree.
struct CloudPoint {
    Exponent alpha;
    int height = 0;
};

struct CloudEntry {
    CloudPoint pt;
    std::vector<std::pair<MultiIndex, Scalar>> terms;  // contributing (rho, P_(alpha,rho))
};

/// Cloud of points, sorted by height descending then abscissa.
struct Cloud {
    std::vector<CloudEntry> entries;
    bool empty() const { return entries.empty(); }
};

/// Polynomial P in y_0..y_n over generalized-series coefficients, tagged with
/// the operator kind.
struct Equation {
    int order = 0;  // n
    OperatorKind op;
    std::map<MultiIndex, GenSeries> coeffs;

    const GenSeries& coeff(const MultiIndex& m) const;
    /// The y-free part (rho = 0); zero series when absent.
    const GenSeries& constant_part() const;
    void prune();  // drop coefficient series with no terms and exact watermark

    /// Union of the supports of all coefficients (unshifted exponents).
    std::vector<Exponent> support() const;
};

/// The scalar P_(alpha,rho): coefficient of x^(alpha + eps*omega(rho)) in coeffs[rho].
Scalar equation_coefficient_at(const Equation& P, const Exponent& alpha, const MultiIndex& rho);

Cloud build_cloud(const Ctx& ctx, const Equation& P);

/// y_kappa -> c <nu>_kappa x^(nu - eps*kappa) + y_kappa, expanded exactly.
Equation substitute_monomial(const Ctx& ctx, const Equation& P, const Scalar& c,
                             const Exponent& nu);

/// Left fold of substitute_monomial over the terms of r (increasing exponents).
Equation substitute_polynomial(const Ctx& ctx, const Equation& P, const GenSeries& r);

Equation partial_derivative(const Equation& P, int kappa);

/// Psi_(P;V)(T) = sum over |rho| = height(V) of P_(alpha,rho) T^<rho>.
UniPoly indicial_polynomial(const Ctx& ctx, const Equation& P, const CloudPoint& V);

/// Element data needed by the characteristic polynomial: the extreme points of
/// E_mu (bot == top for a vertex).
struct ElementRef {
    CloudPoint bot, top;
    bool is_side() const { return bot.height != top.height; }
};

/// Phi_(P;mu)(C) = sum over heights r in the element of Psi at (alpha0 - mu r, r)
/// evaluated at <mu>, times C^r.
UniPoly characteristic_polynomial(const Ctx& ctx, const Equation& P, const Exponent& mu,
                                  const ElementRef& elem);

/// P(s, s', ..., s^(n)) with watermark propagation.
GenSeries evaluate_residual(const Ctx& ctx, const Equation& P, const GenSeries& s);

bool equation_equal(const Equation& a, const Equation& b);

std::string equation_render(const Equation& P, const SymbolTable& tab);

}  // namespace puiseux
