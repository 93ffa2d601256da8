#include "puiseux/series.hpp"

#include <algorithm>

namespace puiseux {

std::string operator_render(const OperatorKind& op, const SymbolTable& tab) {
    switch (op.kind) {
        case OperatorKind::Dx: return "dx";
        case OperatorKind::Euler: return "euler";
        case OperatorKind::QDiff: return "qdiff q = " + scalar_render(op.q, tab);
    }
    return "?";
}

ExpBound bound_min(const ExpBound& a, const ExpBound& b, const Ctx& ctx) {
    if (!a) return b;
    if (!b) return a;
    return exp_min(*a, *b, ctx);
}

ExpBound bound_shift(const ExpBound& a, const Exponent& delta) {
    if (!a) return a;
    return *a + delta;
}

GenSeries series_make(const Ctx& ctx, std::vector<SeriesTerm> terms, ExpBound valid_to) {
    std::sort(terms.begin(), terms.end(), [&](const SeriesTerm& a, const SeriesTerm& b) {
        return exponent_compare(a.exp, b.exp, ctx) == Cmp::Less;
    });
    GenSeries out;
    out.valid_to = valid_to;
    for (auto& t : terms) {
        if (t.coeff.is_zero()) continue;
        if (valid_to && exponent_compare(t.exp, *valid_to, ctx) != Cmp::Less) continue;
        if (!out.terms.empty() && out.terms.back().exp == t.exp) {
            out.terms.back().coeff = out.terms.back().coeff + t.coeff;
            if (out.terms.back().coeff.is_zero()) out.terms.pop_back();
        } else {
            out.terms.push_back(std::move(t));
        }
    }
    return out;
}

GenSeries series_add(const Ctx& ctx, const GenSeries& a, const GenSeries& b) {
    std::vector<SeriesTerm> terms = a.terms;
    terms.insert(terms.end(), b.terms.begin(), b.terms.end());
    return series_make(ctx, std::move(terms), bound_min(a.valid_to, b.valid_to, ctx));
}

// Lower bound for the order of a series: its first term, else its watermark
// (for a term-free truncated series nothing is known below valid_to).
static ExpBound ord_lower_bound(const GenSeries& s) {
    if (!s.terms.empty()) return s.terms.front().exp;
    return s.valid_to;  // nullopt for exact zero = +infinity
}

GenSeries series_mul(const Ctx& ctx, const GenSeries& a, const GenSeries& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) return GenSeries{};
    ExpBound vt;
    ExpBound ob = ord_lower_bound(b), oa = ord_lower_bound(a);
    if (a.valid_to) vt = ob ? ExpBound(*a.valid_to + *ob) : ExpBound{};
    if (b.valid_to) {
        ExpBound other = oa ? ExpBound(*b.valid_to + *oa) : ExpBound{};
        vt = bound_min(vt, other, ctx);
    }
    std::vector<SeriesTerm> terms;
    terms.reserve(a.terms.size() * b.terms.size());
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms)
            terms.push_back({ta.exp + tb.exp, ta.coeff * tb.coeff});
    return series_make(ctx, std::move(terms), vt);
}

GenSeries series_scale(const GenSeries& a, const Scalar& c) {
    if (c.is_zero()) return GenSeries{};
    GenSeries out;
    out.valid_to = a.valid_to;
    for (const auto& t : a.terms) {
        Scalar nc = t.coeff * c;
        if (!nc.is_zero()) out.terms.push_back({t.exp, nc});
    }
    return out;
}

GenSeries series_neg(const GenSeries& a) { return series_scale(a, Scalar(Rat(-1))); }

GenSeries series_monomial_mul(const Ctx& ctx, const GenSeries& a, const Scalar& c,
                              const Exponent& e) {
    (void)ctx;
    if (c.is_zero()) return GenSeries{};
    GenSeries out;
    out.valid_to = bound_shift(a.valid_to, e);
    for (const auto& t : a.terms) {
        Scalar nc = t.coeff * c;
        if (!nc.is_zero()) out.terms.push_back({t.exp + e, nc});
    }
    return out;
}

GenSeries series_pow(const Ctx& ctx, const GenSeries& a, unsigned e) {
    GenSeries r;
    r.terms.push_back({Exponent(), Scalar(Rat(1))});
    GenSeries b = a;
    while (e) {
        if (e & 1) r = series_mul(ctx, r, b);
        b = series_mul(ctx, b, b);
        e >>= 1;
    }
    return r;
}

const Exponent& series_ord(const GenSeries& s) {
    if (s.terms.empty()) throw OrdOfZero("ord of a series with no terms");
    return s.terms.front().exp;
}

std::vector<Exponent> series_support(const GenSeries& s) {
    std::vector<Exponent> out;
    out.reserve(s.terms.size());
    for (const auto& t : s.terms) out.push_back(t.exp);
    return out;
}

bool series_equal(const GenSeries& a, const GenSeries& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (size_t i = 0; i < a.terms.size(); ++i) {
        if (a.terms[i].exp != b.terms[i].exp) return false;
        if (a.terms[i].coeff != b.terms[i].coeff) return false;
    }
    return true;
}

Scalar qpow(const Ctx& ctx, const Scalar& q, const Exponent& e) {
    Scalar out(Rat(1));
    if (e.rat != 0) {
        if (is_integer(e.rat)) {
            out = q.pow(to_long(rat_num(e.rat)));
        } else {
            auto mono = q.as_unit_monomial();
            if (!mono)
                throw NeedsAlgebraicExtension(
                    "q^(" + rat_render(e.rat) + ") requires a root of q");
            out = Scalar::from_monomial(mono->pow(e.rat));
        }
    }
    for (const auto& [gen, coeff] : e.irr) {
        int qp = ctx.syms->qpow_symbol(q, gen, ctx.digits_at(2));
        out = out * Scalar::from_symbol(qp, coeff);
    }
    return out;
}

Scalar op_factor(const Ctx& ctx, const OperatorKind& op, const Exponent& mu, int kappa) {
    if (kappa == 0) return Scalar(Rat(1));
    switch (op.kind) {
        case OperatorKind::Dx: {
            Scalar m = exponent_to_scalar(mu);
            Scalar acc(Rat(1));
            for (int j = 0; j < kappa; ++j) acc = acc * (m - Scalar(Rat(j)));
            return acc;
        }
        case OperatorKind::Euler:
            return exponent_to_scalar(mu).pow(kappa);
        case OperatorKind::QDiff:
            return qpow(ctx, op.q, mu.scaled(Rat(kappa)));
    }
    return Scalar(Rat(1));
}

GenSeries apply_operator(const Ctx& ctx, const GenSeries& s, const OperatorKind& op, int kappa) {
    if (kappa < 0) throw Error("operator iteration count must be non-negative");
    Exponent shift = Exponent(Rat(-op.epsilon() * kappa));
    GenSeries out;
    out.valid_to = bound_shift(s.valid_to, shift);
    for (const auto& t : s.terms) {
        Scalar f = op_factor(ctx, op, t.exp, kappa);
        if (f.is_zero()) continue;
        out.terms.push_back({t.exp + shift, t.coeff * f});
    }
    return out;
}

GenSeries formal_derivation(const GenSeries& s, int generator_sym) {
    GenSeries out;
    out.valid_to = s.valid_to;
    for (const auto& t : s.terms) {
        auto it = t.exp.irr.find(generator_sym);
        if (it == t.exp.irr.end()) continue;
        out.terms.push_back({t.exp, t.coeff * Scalar(it->second)});
    }
    return out;
}

GenSeries formal_derivation_rational(const GenSeries& s, const Rat& g) {
    if (g == 0) throw Error("rational generator must be nonzero");
    GenSeries out;
    out.valid_to = s.valid_to;
    for (const auto& t : s.terms) {
        if (t.exp.rat == 0) continue;
        out.terms.push_back({t.exp, t.coeff * Scalar(t.exp.rat / g)});
    }
    return out;
}

std::string series_render(const GenSeries& s, const SymbolTable& tab) {
    if (s.terms.empty()) return "0";
    std::string out;
    for (const auto& t : s.terms) {
        std::string xpart;
        if (t.exp.is_zero()) {
            xpart = "";
        } else if (t.exp == Exponent(1)) {
            xpart = "x";
        } else if (t.exp.is_rational() && is_integer(t.exp.rat) && t.exp.rat > 0) {
            xpart = "x^" + rat_render(t.exp.rat);
        } else {
            xpart = "x^(" + exponent_render(t.exp, tab) + ")";
        }
        std::string cpart = scalar_render_factor(t.coeff, tab);
        std::string term;
        if (xpart.empty())
            term = cpart;
        else if (t.coeff.is_one())
            term = xpart;
        else
            term = cpart + "*" + xpart;
        out += out.empty() ? term : " + " + term;
    }
    return out;
}

}  // namespace puiseux
