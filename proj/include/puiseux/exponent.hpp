#pragma once

#include "puiseux/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace puiseux {

/// Element of the exponent group: q0*1 + sum q_j * mu_j over declared additive
/// generators.  Equality is exact (componentwise).
struct Exponent {
    Rat rat;                 // coefficient of 1
    std::map<int, Rat> irr;  // generator symbol id -> nonzero coefficient

    Exponent() : rat(0) {}
    explicit Exponent(Rat q) : rat(std::move(q)) {}
    explicit Exponent(long q) : rat(q) {}
    static Exponent generator(int sym, Rat coeff = Rat(1));

    bool is_rational() const { return irr.empty(); }
    bool is_zero() const { return rat == 0 && irr.empty(); }

    friend Exponent operator+(const Exponent& a, const Exponent& b);
    friend Exponent operator-(const Exponent& a, const Exponent& b);
    friend Exponent operator-(const Exponent& a);
    Exponent scaled(const Rat& r) const;

    friend bool operator==(const Exponent& a, const Exponent& b) {
        return a.rat == b.rat && a.irr == b.irr;
    }
    friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }
};

/// Syntactic total order, for use as a map key only (not the numeric order).
bool exponent_key_less(const Exponent& a, const Exponent& b);
struct ExponentKeyLess {
    bool operator()(const Exponent& a, const Exponent& b) const {
        return exponent_key_less(a, b);
    }
};

enum class Cmp { Less, Equal, Greater };

/// Decides the numeric order by interval refinement; Equal only on identical
/// vectors.  Throws OrderUndecidable when enclosures cannot separate the
/// values within the context budget.
Cmp exponent_compare(const Exponent& a, const Exponent& b, const Ctx& ctx);

bool exp_less(const Exponent& a, const Exponent& b, const Ctx& ctx);
bool exp_less_eq(const Exponent& a, const Exponent& b, const Ctx& ctx);
const Exponent& exp_min(const Exponent& a, const Exponent& b, const Ctx& ctx);

/// Certified enclosure of the exponent's value.
RatInterval exponent_enclosure(const Exponent& a, const SymbolTable& tab, unsigned digits);

/// The degree-1 scalar q0 + sum q_j * t_j.
Scalar exponent_to_scalar(const Exponent& a);

/// Inverse of exponent_to_scalar when the scalar is such a degree-1 real
/// combination of additive generators; nullopt otherwise.
std::optional<Exponent> scalar_to_exponent(const Scalar& s, const SymbolTable& tab);

/// dim_Q of the span of the given exponents.
int rational_rank(const std::vector<Exponent>& vs);

/// dim_Q span(num + den) - dim_Q span(den).
int rational_rank_quotient(const std::vector<Exponent>& num, const std::vector<Exponent>& den);

std::string exponent_render(const Exponent& a, const SymbolTable& tab);

}  // namespace puiseux
