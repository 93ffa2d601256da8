#include "puiseux/equation.hpp"

#include <algorithm>

namespace puiseux {

int mi_total(const MultiIndex& m) {
    int s = 0;
    for (int v : m) s += v;
    return s;
}

int mi_weight(const MultiIndex& m) {
    int s = 0;
    for (size_t k = 0; k < m.size(); ++k) s += static_cast<int>(k) * m[k];
    return s;
}

const GenSeries& Equation::coeff(const MultiIndex& m) const {
    static const GenSeries zero;
    auto it = coeffs.find(m);
    return it == coeffs.end() ? zero : it->second;
}

const GenSeries& Equation::constant_part() const {
    return coeff(MultiIndex(static_cast<size_t>(order) + 1, 0));
}

void Equation::prune() {
    for (auto it = coeffs.begin(); it != coeffs.end();)
        it = it->second.is_exact_zero() ? coeffs.erase(it) : std::next(it);
}

std::vector<Exponent> Equation::support() const {
    std::vector<Exponent> out;
    for (const auto& [rho, f] : coeffs) {
        (void)rho;
        for (const auto& t : f.terms) out.push_back(t.exp);
    }
    return out;
}

Scalar equation_coefficient_at(const Equation& P, const Exponent& alpha, const MultiIndex& rho) {
    Exponent target = alpha + Exponent(Rat(P.op.epsilon() * mi_weight(rho)));
    for (const auto& t : P.coeff(rho).terms)
        if (t.exp == target) return t.coeff;
    return Scalar();
}

Cloud build_cloud(const Ctx& ctx, const Equation& P) {
    // height (desc) -> abscissa -> contributing terms
    std::map<int, std::map<Exponent, std::vector<std::pair<MultiIndex, Scalar>>, ExponentKeyLess>,
             std::greater<int>>
        buckets;
    for (const auto& [rho, f] : P.coeffs) {
        int h = mi_total(rho);
        Exponent shift(Rat(-P.op.epsilon() * mi_weight(rho)));
        for (const auto& t : f.terms) buckets[h][t.exp + shift].emplace_back(rho, t.coeff);
    }
    Cloud cloud;
    for (auto& [h, row] : buckets) {
        // sort each height row by the numeric order of abscissas
        std::vector<std::pair<Exponent, std::vector<std::pair<MultiIndex, Scalar>>>> entries(
            row.begin(), row.end());
        std::sort(entries.begin(), entries.end(), [&](const auto& a, const auto& b) {
            return exponent_compare(a.first, b.first, ctx) == Cmp::Less;
        });
        for (auto& [alpha, terms] : entries)
            cloud.entries.push_back(CloudEntry{CloudPoint{alpha, h}, std::move(terms)});
    }
    return cloud;
}

Equation substitute_monomial(const Ctx& ctx, const Equation& P, const Scalar& c,
                             const Exponent& nu) {
    if (c.is_zero()) throw Error("substitution of a zero monomial");
    int n = P.order;
    int eps = P.op.epsilon();

    // m_kappa = c <nu>_kappa x^(nu - eps*kappa); zero factors mean y_kappa is
    // left untouched beyond itself.
    std::vector<Scalar> factor(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        factor[static_cast<size_t>(k)] = c * op_factor(ctx, P.op, nu, k);

    Equation out;
    out.order = n;
    out.op = P.op;

    for (const auto& [rho, f] : P.coeffs) {
        // odometer over sigma <= rho
        MultiIndex sigma(rho.size(), 0);
        while (true) {
            // contribution: f * prod binom(rho_k, sigma_k) * m_k^(rho_k - sigma_k)
            Scalar cf(Rat(1));
            Exponent shift;
            bool vanishes = false;
            for (size_t k = 0; k < rho.size(); ++k) {
                int drop = rho[k] - sigma[k];
                if (drop == 0) continue;
                if (factor[k].is_zero()) {
                    vanishes = true;
                    break;
                }
                // binomial coefficient
                Rat b = 1;
                for (int j = 0; j < sigma[k]; ++j)
                    b = b * Rat(rho[k] - j) / Rat(j + 1);
                // note: binom(rho_k, sigma_k) counts the chosen y's
                cf = cf * Scalar(b) * factor[k].pow(drop);
                Exponent step = nu + Exponent(Rat(-eps * static_cast<int>(k)));
                shift = shift + step.scaled(Rat(drop));
            }
            if (!vanishes && !cf.is_zero()) {
                GenSeries contrib = series_monomial_mul(ctx, f, cf, shift);
                auto it = out.coeffs.find(sigma);
                if (it == out.coeffs.end())
                    out.coeffs.emplace(sigma, std::move(contrib));
                else
                    it->second = series_add(ctx, it->second, contrib);
            }
            // advance odometer
            size_t k = 0;
            while (k < sigma.size()) {
                if (sigma[k] < rho[k]) {
                    ++sigma[k];
                    break;
                }
                sigma[k] = 0;
                ++k;
            }
            if (k == sigma.size()) break;
        }
    }
    out.prune();
    return out;
}

Equation substitute_polynomial(const Ctx& ctx, const Equation& P, const GenSeries& r) {
    Equation out = P;
    for (const auto& t : r.terms) out = substitute_monomial(ctx, out, t.coeff, t.exp);
    return out;
}

Equation partial_derivative(const Equation& P, int kappa) {
    Equation out;
    out.order = P.order;
    out.op = P.op;
    for (const auto& [rho, f] : P.coeffs) {
        if (rho[static_cast<size_t>(kappa)] == 0) continue;
        MultiIndex sigma = rho;
        --sigma[static_cast<size_t>(kappa)];
        GenSeries g = series_scale(f, Scalar(Rat(rho[static_cast<size_t>(kappa)])));
        out.coeffs.emplace(std::move(sigma), std::move(g));  // rho -> rho - e_kappa is injective
    }
    out.prune();
    return out;
}

// T^<rho>: T^omega(rho) for Euler/q-difference, the falling-factorial product
// for d/dx.
static UniPoly t_power_for(const OperatorKind& op, const MultiIndex& rho) {
    if (op.kind != OperatorKind::Dx) {
        UniPoly t;
        t.c.assign(static_cast<size_t>(mi_weight(rho)) + 1, Scalar());
        t.c.back() = Scalar(Rat(1));
        return t;
    }
    UniPoly acc = UniPoly::constant(Scalar(Rat(1)));
    for (size_t kappa = 1; kappa < rho.size(); ++kappa) {
        if (rho[kappa] == 0) continue;
        UniPoly ff = UniPoly::constant(Scalar(Rat(1)));
        for (size_t j = 0; j < kappa; ++j)
            ff = ff * UniPoly::linear(Scalar(Rat(1)), Scalar(-Rat(static_cast<long>(j))));
        acc = acc * ff.pow(static_cast<unsigned>(rho[kappa]));
    }
    return acc;
}

UniPoly indicial_polynomial(const Ctx& ctx, const Equation& P, const CloudPoint& V) {
    (void)ctx;
    UniPoly psi;
    for (const auto& [rho, f] : P.coeffs) {
        (void)f;
        if (mi_total(rho) != V.height) continue;
        Scalar a = equation_coefficient_at(P, V.alpha, rho);
        if (a.is_zero()) continue;
        psi = psi + t_power_for(P.op, rho).scaled(a);
    }
    return psi;
}

UniPoly characteristic_polynomial(const Ctx& ctx, const Equation& P, const Exponent& mu,
                                  const ElementRef& elem) {
    Scalar mu_factor = op_factor(ctx, P.op, mu, 1);
    // alpha0 = bot.alpha + mu*height(bot); heights r run bot..top along the line
    Exponent alpha0 = elem.bot.alpha + mu.scaled(Rat(elem.bot.height));
    UniPoly phi;
    for (int r = elem.bot.height; r <= elem.top.height; ++r) {
        Exponent alpha_r = alpha0 - mu.scaled(Rat(r));
        UniPoly psi = indicial_polynomial(ctx, P, CloudPoint{alpha_r, r});
        if (psi.is_zero()) continue;
        Scalar value = psi.eval(mu_factor);
        if (value.is_zero()) continue;
        UniPoly term;
        term.c.assign(static_cast<size_t>(r) + 1, Scalar());
        term.c.back() = value;
        phi = phi + term;
    }
    return phi;
}

GenSeries evaluate_residual(const Ctx& ctx, const Equation& P, const GenSeries& s) {
    int n = P.order;
    std::vector<GenSeries> iter(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) iter[static_cast<size_t>(k)] = apply_operator(ctx, s, P.op, k);

    // cache powers of each iterated series
    std::vector<std::vector<GenSeries>> powers(static_cast<size_t>(n) + 1);
    auto power_of = [&](size_t k, int e) -> const GenSeries& {
        auto& cache = powers[k];
        if (cache.empty()) {
            GenSeries one;
            one.terms.push_back({Exponent(), Scalar(Rat(1))});
            cache.push_back(one);
        }
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(series_mul(ctx, cache.back(), iter[k]));
        return cache[static_cast<size_t>(e)];
    };

    GenSeries acc;
    for (const auto& [rho, f] : P.coeffs) {
        GenSeries term = f;
        for (size_t k = 0; k < rho.size(); ++k)
            if (rho[k] > 0) term = series_mul(ctx, term, power_of(k, rho[k]));
        acc = series_add(ctx, acc, term);
    }
    return acc;
}

bool equation_equal(const Equation& a, const Equation& b) {
    if (a.order != b.order) return false;
    auto nonzero_keys = [](const Equation& e) {
        std::vector<MultiIndex> keys;
        for (const auto& [rho, f] : e.coeffs)
            if (!f.terms.empty()) keys.push_back(rho);
        return keys;
    };
    auto ka = nonzero_keys(a), kb = nonzero_keys(b);
    if (ka != kb) return false;
    for (const auto& k : ka)
        if (!series_equal(a.coeff(k), b.coeff(k))) return false;
    return true;
}

std::string equation_render(const Equation& P, const SymbolTable& tab) {
    std::string out;
    for (const auto& [rho, f] : P.coeffs) {
        if (f.terms.empty()) continue;
        std::string ypart;
        for (size_t k = 0; k < rho.size(); ++k) {
            if (rho[k] == 0) continue;
            if (!ypart.empty()) ypart += "*";
            ypart += "y" + std::to_string(k);
            if (rho[k] > 1) ypart += "^" + std::to_string(rho[k]);
        }
        std::string coeff = series_render(f, tab);
        std::string term;
        if (ypart.empty()) {
            term = coeff;
        } else if (f.terms.size() == 1 && f.terms[0].coeff.is_one() && f.terms[0].exp.is_zero()) {
            term = ypart;
        } else {
            bool single = f.terms.size() == 1;
            term = (single ? coeff : "(" + coeff + ")") + "*" + ypart;
        }
        out += out.empty() ? term : " + " + term;
    }
    return out.empty() ? "0" : out;
}

}  // namespace puiseux
