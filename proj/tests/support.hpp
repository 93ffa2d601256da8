#pragma once

// Shared test helpers: reference problems, random generators, and independent
// oracle implementations (kept free of the code paths they check).

#include "puiseux/dsl.hpp"

#include <map>
#include <random>
#include <vector>

namespace puiseux::testing {

inline const char* kTauProblem = R"(puiseux-forge v1
transcendental tau in [157079632679/100000000000, 157079632680/100000000000] refine pi/2;
operator euler;
equation (tau*y0 - y1 - ((tau-1)*x + (tau-2)*x^2 + (tau-3)*x^3))
       * (tau*y0 - y1 - ((tau-1)*x + (tau-2)*x^2 + (tau-5)*x^5))
       + x^6*y0*y1;
segment x + x^tau;
budget terms=8;
policy sides_and_vertex_roots;
)";

inline Problem tau_problem() { return parse_problem(kTauProblem); }

inline Scalar sym(const Problem& p, const char* name) {
    int id = p.syms.find(name);
    if (id < 0) throw Error("missing symbol in test");
    return Scalar::from_symbol(id);
}

inline Exponent gen_exp(const Problem& p, const char* name, Rat coeff = Rat(1)) {
    return Exponent::generator(p.syms.find(name), std::move(coeff));
}

inline GenSeries make_series(const Ctx& ctx, std::vector<SeriesTerm> terms) {
    return series_make(ctx, std::move(terms));
}

// ---- random generators over the basis {1, tau} ----

struct Rng {
    std::mt19937 eng;
    explicit Rng(unsigned seed) : eng(seed) {}

    int uniform(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(eng);
    }
    Rat rat(int span = 4) {
        int num = uniform(-span, span);
        int den = uniform(1, 3);
        return Rat(num, den);
    }
    Rat nonzero_rat(int span = 4) {
        Rat r = rat(span);
        return r == 0 ? Rat(1) : r;
    }
    Gaussian gaussian(bool allow_imag = true) {
        Gaussian g(rat());
        if (allow_imag && uniform(0, 3) == 0) g.im = rat();
        return g;
    }
    Gaussian nonzero_gaussian(bool allow_imag = true) {
        Gaussian g = gaussian(allow_imag);
        return g.is_zero() ? Gaussian(Rat(1)) : g;
    }
};

inline Scalar random_scalar(Rng& rng, const Problem& p, bool allow_fraction = true) {
    int tau = p.syms.find("tau");
    auto mono_poly = [&](int max_terms) {
        Scalar acc;
        int terms = rng.uniform(1, max_terms);
        for (int i = 0; i < terms; ++i) {
            Monomial m;
            int deg = rng.uniform(0, 2);
            if (deg > 0) m.exps.emplace(tau, Rat(deg));
            acc = acc + Scalar::from_monomial(m, rng.gaussian());
        }
        return acc;
    };
    Scalar num = mono_poly(3);
    if (!allow_fraction || rng.uniform(0, 2) != 0) return num;
    Scalar den = mono_poly(2);
    if (den.is_zero()) den = Scalar(Rat(1));
    return num / den;
}

inline Scalar random_nonzero_scalar(Rng& rng, const Problem& p, bool allow_fraction = true) {
    for (int i = 0; i < 16; ++i) {
        Scalar s = random_scalar(rng, p, allow_fraction);
        if (!s.is_zero()) return s;
    }
    return Scalar(Rat(1));
}

// exponent q0 + q1*tau with small rationals
inline Exponent random_exponent(Rng& rng, const Problem& p, bool allow_irr = true) {
    Exponent e(rng.rat(5));
    if (allow_irr && rng.uniform(0, 2) == 0)
        e = e + gen_exp(p, "tau", rng.nonzero_rat(2));
    return e;
}

inline GenSeries random_series(const Ctx& ctx, Rng& rng, const Problem& p, int max_terms,
                               bool allow_irr = true) {
    std::vector<SeriesTerm> terms;
    int n = rng.uniform(1, max_terms);
    for (int i = 0; i < n; ++i)
        terms.push_back({random_exponent(rng, p, allow_irr),
                         Scalar(rng.nonzero_gaussian())});
    return series_make(ctx, std::move(terms));
}

/// Random equation with rational-exponent coefficients (supp P in Q), order <= 2.
inline Equation random_equation(const Ctx& ctx, Rng& rng, const Problem& p,
                                const OperatorKind& op, int max_order = 2) {
    Equation eq;
    eq.order = rng.uniform(0, max_order);
    eq.op = op;
    int terms = rng.uniform(1, 4);
    for (int t = 0; t < terms; ++t) {
        MultiIndex rho(static_cast<size_t>(eq.order) + 1, 0);
        int total = rng.uniform(0, 2);
        for (int i = 0; i < total; ++i) ++rho[static_cast<size_t>(rng.uniform(0, eq.order))];
        std::vector<SeriesTerm> st;
        int k = rng.uniform(1, 2);
        for (int i = 0; i < k; ++i)
            st.push_back({Exponent(Rat(rng.uniform(0, 4))), Scalar(rng.nonzero_gaussian(false))});
        GenSeries f = series_make(ctx, std::move(st));
        if (f.terms.empty()) continue;
        auto it = eq.coeffs.find(rho);
        if (it == eq.coeffs.end())
            eq.coeffs.emplace(rho, f);
        else
            it->second = series_add(ctx, it->second, f);
    }
    if (eq.coeffs.empty()) {
        MultiIndex rho(static_cast<size_t>(eq.order) + 1, 0);
        rho[0] = 1;
        GenSeries one;
        one.terms.push_back({Exponent(), Scalar(Rat(1))});
        eq.coeffs.emplace(rho, one);
    }
    return eq;
}

// ---- independent oracles ----

/// Exact evaluation of a Scalar at rational sample points for its symbols.
inline Gaussian eval_scalar_at(const Scalar& s, const std::map<int, Rat>& at) {
    auto eval_poly = [&](const MonoPoly& p) {
        Gaussian acc;
        for (const auto& [m, c] : p) {
            Rat v(1);
            for (const auto& [id, e] : m.exps) {
                if (!is_integer(e)) throw Error("sample evaluation needs integer exponents");
                v *= rat_pow(at.at(id), to_long(rat_num(e)));
            }
            acc = acc + c * Gaussian(v);
        }
        return acc;
    };
    Gaussian d = eval_poly(s.den);
    if (d.is_zero()) throw Error("sample hit a denominator zero");
    return eval_poly(s.num) / d;
}

/// Brute-force variant of P[s]: every y_kappa is replaced by
/// (sum of monomials of s^(kappa)) + y_kappa and the product is expanded by
/// naive polynomial multiplication in a term-list ring.  Shares only the
/// Scalar/Exponent arithmetic with the implementation under test.
struct BruteTerm {
    Exponent xexp;
    MultiIndex ypow;
    Scalar c;
};

using BrutePoly = std::vector<BruteTerm>;

inline BrutePoly brute_collect(const BrutePoly& p) {
    std::map<std::pair<std::vector<std::pair<Rat, std::map<int, Rat>>>, MultiIndex>, Scalar> acc;
    auto key_of = [](const Exponent& e) {
        std::vector<std::pair<Rat, std::map<int, Rat>>> k;
        k.push_back({e.rat, e.irr});
        return k;
    };
    for (const auto& t : p) {
        auto key = std::make_pair(key_of(t.xexp), t.ypow);
        auto it = acc.find(key);
        if (it == acc.end())
            acc.emplace(std::move(key), t.c);
        else
            it->second = it->second + t.c;
    }
    BrutePoly out;
    for (const auto& [k, c] : acc) {
        if (c.is_zero()) continue;
        Exponent e;
        e.rat = k.first[0].first;
        e.irr = k.first[0].second;
        out.push_back({e, k.second, c});
    }
    return out;
}

inline BrutePoly brute_mul(const BrutePoly& a, const BrutePoly& b) {
    BrutePoly out;
    for (const auto& ta : a)
        for (const auto& tb : b) {
            MultiIndex y = ta.ypow;
            for (size_t i = 0; i < y.size(); ++i) y[i] += tb.ypow[i];
            out.push_back({ta.xexp + tb.xexp, y, ta.c * tb.c});
        }
    return brute_collect(out);
}

inline BrutePoly brute_from_equation(const Equation& P) {
    BrutePoly out;
    for (const auto& [rho, f] : P.coeffs)
        for (const auto& t : f.terms) out.push_back({t.exp, rho, t.coeff});
    return brute_collect(out);
}

/// P[c x^nu] by naive expansion.
inline BrutePoly brute_substitute(const Ctx& ctx, const Equation& P, const Scalar& c,
                                  const Exponent& nu) {
    size_t n1 = static_cast<size_t>(P.order) + 1;
    int eps = P.op.epsilon();
    // replacement[kappa] = c <nu>_kappa x^(nu - eps kappa) + y_kappa
    std::vector<BrutePoly> repl(n1);
    for (size_t k = 0; k < n1; ++k) {
        MultiIndex yk(n1, 0);
        yk[k] = 1;
        MultiIndex zero(n1, 0);
        Scalar f = c * op_factor(ctx, P.op, nu, static_cast<int>(k));
        BrutePoly r;
        if (!f.is_zero())
            r.push_back({nu + Exponent(Rat(-eps * static_cast<int>(k))), zero, f});
        BruteTerm ident{Exponent(), yk, Scalar(Rat(1))};
        r.push_back(ident);
        repl[k] = r;
    }
    BrutePoly acc;
    for (const auto& [rho, f] : P.coeffs) {
        MultiIndex zero(n1, 0);
        for (const auto& t : f.terms) {
            BrutePoly term{{t.exp, zero, t.coeff}};
            for (size_t k = 0; k < n1; ++k)
                for (int j = 0; j < rho[k]; ++j) term = brute_mul(term, repl[k]);
            acc.insert(acc.end(), term.begin(), term.end());
        }
    }
    return brute_collect(acc);
}

/// Brute-force supporting line value: min over every cloud point directly.
inline Exponent brute_support_value(const Ctx& ctx, const Cloud& cloud, const Exponent& mu) {
    std::optional<Exponent> best;
    for (const auto& e : cloud.entries) {
        Exponent v = e.pt.alpha + mu.scaled(Rat(e.pt.height));
        if (!best || exp_less(v, *best, ctx)) best = v;
    }
    if (!best) throw EmptyCloud("empty cloud in oracle");
    return *best;
}

/// Scalar P_(alpha,rho) read off a brute-force term list.
inline Scalar brute_coefficient_at(const BrutePoly& p, int eps, const Exponent& alpha,
                                   const MultiIndex& rho) {
    Exponent target = alpha + Exponent(Rat(eps * mi_weight(rho)));
    for (const auto& t : p)
        if (t.ypow == rho && t.xexp == target) return t.c;
    return Scalar();
}

}  // namespace puiseux::testing
