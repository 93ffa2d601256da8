#include "puiseux/solver.hpp"

#include <algorithm>
#include <deque>

namespace puiseux {

std::string verdict_render(BranchVerdict v) {
    switch (v) {
        case BranchVerdict::ExactSolution: return "exact_solution";
        case BranchVerdict::BudgetExhausted: return "budget_exhausted";
        case BranchVerdict::Obstruction: return "obstruction";
        case BranchVerdict::NeedsExtension: return "needs_algebraic_extension";
        case BranchVerdict::Undecided: return "undecided";
    }
    return "?";
}

Cmp q_modulus_vs_one(const Ctx& ctx, const Scalar& q) {
    for (int round = 1; round <= std::max(1, ctx.budget); ++round) {
        ComplexBox b = scalar_eval_enclosure(q, *ctx.syms, round);
        RatInterval n2 = box_norm2(b);
        if (n2.lo > 1) return Cmp::Greater;
        if (n2.hi < 1) return Cmp::Less;
    }
    throw OrderUndecidable("cannot separate |q| from 1 within the precision budget");
}

// Exponents mu with <mu> a root of psi, for the vertex-root machinery.  Roots
// that are provably irrelevant (complex, or negative where mu >= floor is
// required) are dropped; roots that cannot be represented or excluded are
// reported through *imprecise.
static std::vector<std::pair<Exponent, int>> indicial_root_exponents(
    const Ctx& ctx, const OperatorKind& op, const UniPoly& psi,
    std::vector<std::string>* unrepresentable, bool* unresolved, const SymbolTable& tab) {
    std::vector<std::pair<Exponent, int>> out;
    RootList roots = poly_roots_exact(psi);
    if (roots.unresolved) *unresolved = true;
    for (const auto& [val, mult] : roots.roots) {
        if (op.kind == OperatorKind::QDiff) {
            if (val.is_zero()) continue;
            // accept q^gamma forms only
            if (auto mono = val.as_unit_monomial()) {
                Exponent gamma;
                bool ok = true;
                auto qmono = op.q.as_unit_monomial();
                for (const auto& [id, e] : mono->exps) {
                    const TranscSymbol& sym = ctx.syms->at(id);
                    if (sym.kind == SymbolKind::Multiplicative &&
                        sym.refiner.type == Refiner::QPower && *sym.refiner.qbase == op.q) {
                        gamma = gamma + Exponent::generator(sym.refiner.qexp_sym, e);
                    } else if (qmono && qmono->exps.size() == 1 &&
                               qmono->exps.begin()->first == id &&
                               qmono->exps.begin()->second == 1) {
                        gamma.rat += e;
                    } else {
                        ok = false;
                    }
                }
                if (ok) {
                    out.emplace_back(gamma, mult);
                    continue;
                }
            }
            if (auto g = val.as_gaussian()) {
                // rational q: try small integer exponents q^m
                auto qg = op.q.as_gaussian();
                if (qg && g->is_real() && qg->is_real() && g->re > 0 && qg->re > 0 &&
                    qg->re != 1) {
                    bool matched = false;
                    for (int m = -64; m <= 64; ++m) {
                        if (rat_pow(qg->re, m) == g->re) {
                            out.emplace_back(Exponent(Rat(m)), mult);
                            matched = true;
                            break;
                        }
                    }
                    if (matched) continue;
                }
            }
            // cannot represent: only matters if the root could be q^mu for real mu,
            // which requires a positive real value
            try {
                ComplexBox b = scalar_eval_enclosure(val, *ctx.syms, ctx.budget);
                bool excluded = b.im.strictly_positive() || b.im.strictly_negative() ||
                                b.re.strictly_negative();
                if (!excluded) unrepresentable->push_back(scalar_render(val, tab));
            } catch (const EnclosureTooWide&) {
                unrepresentable->push_back(scalar_render(val, tab));
            }
            continue;
        }
        // differential kinds: <mu> = mu itself
        auto gamma = scalar_to_exponent(val, tab);
        if (gamma) {
            out.emplace_back(*gamma, mult);
            continue;
        }
        // not a representable exponent; exclude provably non-real roots
        try {
            ComplexBox b = scalar_eval_enclosure(val, *ctx.syms, ctx.budget);
            if (!(b.im.strictly_positive() || b.im.strictly_negative()))
                unrepresentable->push_back(scalar_render(val, tab));
        } catch (const EnclosureTooWide&) {
            unrepresentable->push_back(scalar_render(val, tab));
        }
    }
    return out;
}

static std::string phi_render(const UniPoly& phi, const SymbolTable& tab) {
    return poly_render(phi, tab, "C");
}

StepOutcome newton_step(const Ctx& ctx, const BranchState& b, BranchPolicy policy) {
    StepOutcome out;
    const GenSeries& residual = b.state.constant_part();
    if (residual.no_terms()) {
        if (residual.is_exact_zero()) {
            out.kind = StepOutcome::ExactSolution;
            out.detail = "the null power series solves the current state";
        } else {
            out.kind = StepOutcome::Undecided;
            out.detail = "residual is zero only up to the truncation watermark";
        }
        return out;
    }

    try {
        Cloud cloud = build_cloud(ctx, b.state);
        NewtonPolygon poly = build_polygon(ctx, cloud);

        // candidate exponents, deduplicated syntactically
        std::vector<Exponent> cands;
        auto add_cand = [&](const Exponent& nu) {
            if (b.nu_prev && exponent_compare(nu, *b.nu_prev, ctx) != Cmp::Greater) return;
            for (const auto& c : cands)
                if (c == nu) return;
            cands.push_back(nu);
        };
        for (const auto& s : sides_above(ctx, poly, b.nu_prev)) add_cand(s.coslope);

        bool unresolved_psi = false;
        std::vector<std::string> unrepresentable;
        if (policy == BranchPolicy::SidesAndVertexRoots) {
            for (const auto& v : poly.hull) {
                UniPoly psi = indicial_polynomial(ctx, b.state, v);
                if (psi.is_zero()) continue;
                for (const auto& [gamma, mult] :
                     indicial_root_exponents(ctx, b.state.op, psi, &unrepresentable,
                                             &unresolved_psi, *ctx.syms))
                    (void)mult, add_cand(gamma);
            }
        }
        std::sort(cands.begin(), cands.end(), [&](const Exponent& a, const Exponent& c) {
            return exp_less(a, c, ctx);
        });

        bool unresolved_phi = false;
        std::optional<Exponent> first_dead;
        for (const auto& nu : cands) {
            ElementRef elem = element_of_coslope(ctx, poly, nu);
            UniPoly phi = characteristic_polynomial(ctx, b.state, nu, elem);
            if (phi.is_zero()) {
                Extension e;
                e.nu = nu;
                e.c = std::nullopt;
                e.multiplicity = 0;
                e.from_side = elem.is_side();
                e.phi = "0";
                out.extensions.push_back(std::move(e));
                continue;
            }
            RootList roots = poly_roots_exact(phi);
            if (roots.unresolved) {
                unresolved_phi = true;
                if (!out.minimal_polynomial) out.minimal_polynomial = roots.unresolved;
            }
            bool any = false;
            std::vector<Extension> here;
            for (const auto& [val, mult] : roots.roots) {
                if (val.is_zero()) continue;
                Extension e;
                e.nu = nu;
                e.c = val;
                e.multiplicity = mult;
                e.from_side = elem.is_side();
                e.phi = phi_render(phi, *ctx.syms);
                here.push_back(std::move(e));
                any = true;
            }
            std::sort(here.begin(), here.end(), [&](const Extension& x, const Extension& y) {
                return scalar_render(*x.c, *ctx.syms) < scalar_render(*y.c, *ctx.syms);
            });
            out.extensions.insert(out.extensions.end(), here.begin(), here.end());
            if (!any && !roots.unresolved && !first_dead) first_dead = nu;
        }

        if (!out.extensions.empty()) {
            out.kind = StepOutcome::Extensions;
            return out;
        }
        if (unresolved_phi || unresolved_psi || !unrepresentable.empty()) {
            out.kind = StepOutcome::NeedsExtension;
            out.detail = "candidate roots are not expressible in the declared field";
            return out;
        }
        out.kind = StepOutcome::Obstruction;
        if (first_dead) {
            out.obstruction_at = *first_dead;
            out.detail = "no nonzero characteristic root at exponent " +
                         exponent_render(*first_dead, *ctx.syms);
        } else {
            out.detail = "no candidate exponents above " +
                         (b.nu_prev ? exponent_render(*b.nu_prev, *ctx.syms)
                                    : std::string("the start"));
        }
        return out;
    } catch (const OrderUndecidable& e) {
        out.kind = StepOutcome::Undecided;
        out.detail = e.what();
        return out;
    }
}

static GenSeries prefix_append(const Ctx& ctx, const GenSeries& prefix, const Exponent& nu,
                               const Scalar& c) {
    std::vector<SeriesTerm> terms = prefix.terms;
    terms.push_back({nu, c});
    return series_make(ctx, std::move(terms));
}

static std::optional<Exponent> residual_order(const Equation& state) {
    const GenSeries& res = state.constant_part();
    if (res.no_terms()) return std::nullopt;
    return res.terms.front().exp;
}

std::vector<BranchResult> complete_from(const Ctx& ctx, const BranchState& start,
                                        const Budget& budget, BranchPolicy policy) {
    std::vector<BranchResult> results;
    std::deque<BranchState> queue{start};
    while (!queue.empty()) {
        BranchState b = std::move(queue.front());
        queue.pop_front();
        StepOutcome step = newton_step(ctx, b, policy);
        BranchResult res;
        res.residual_order = residual_order(b.state);
        switch (step.kind) {
            case StepOutcome::ExactSolution:
                res.branch = std::move(b);
                res.verdict = BranchVerdict::ExactSolution;
                res.detail = step.detail;
                results.push_back(std::move(res));
                continue;
            case StepOutcome::Obstruction:
                res.branch = std::move(b);
                res.verdict = BranchVerdict::Obstruction;
                res.detail = step.detail;
                if (step.obstruction_at) res.next_exponent = step.obstruction_at;
                results.push_back(std::move(res));
                continue;
            case StepOutcome::NeedsExtension:
                res.branch = std::move(b);
                res.verdict = BranchVerdict::NeedsExtension;
                res.detail = step.detail;
                results.push_back(std::move(res));
                continue;
            case StepOutcome::Undecided:
                res.branch = std::move(b);
                res.verdict = BranchVerdict::Undecided;
                res.detail = step.detail;
                results.push_back(std::move(res));
                continue;
            case StepOutcome::Extensions:
                break;
        }
        // budget checks: the branch survives as a resumable truncation
        bool full = static_cast<int>(b.prefix.terms.size()) >= budget.max_terms;
        std::vector<const Extension*> usable;
        for (const auto& e : step.extensions) {
            if (budget.max_exponent &&
                exponent_compare(e.nu, *budget.max_exponent, ctx) == Cmp::Greater)
                continue;
            usable.push_back(&e);
        }
        if (full || usable.empty()) {
            res.branch = std::move(b);
            res.verdict = BranchVerdict::BudgetExhausted;
            res.detail = full ? "term budget reached" : "exponent budget reached";
            res.next_exponent = step.extensions.front().nu;
            results.push_back(std::move(res));
            continue;
        }
        for (const Extension* e : usable) {
            BranchState nb;
            Scalar c = e->c ? *e->c : Scalar(Rat(1));  // free coefficient: sample 1
            nb.prefix = prefix_append(ctx, b.prefix, e->nu, c);
            nb.state = substitute_monomial(ctx, b.state, c, e->nu);
            nb.nu_prev = e->nu;
            nb.history = b.history;
            StepRecord rec;
            rec.nu = e->nu;
            rec.c = c;
            rec.free = !e->c.has_value();
            rec.multiplicity = e->multiplicity;
            rec.source = e->from_side ? "side" : "vertex-indicial";
            rec.phi = e->phi;
            nb.history.push_back(std::move(rec));
            queue.push_back(std::move(nb));
        }
    }
    // deterministic report order: first divergence exponent, then coefficient
    std::stable_sort(results.begin(), results.end(),
                     [&](const BranchResult& a, const BranchResult& b) {
                         const auto& ta = a.branch.prefix.terms;
                         const auto& tb = b.branch.prefix.terms;
                         for (size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
                             if (!(ta[i].exp == tb[i].exp)) {
                                 try {
                                     return exp_less(ta[i].exp, tb[i].exp, ctx);
                                 } catch (const OrderUndecidable&) {
                                     return exponent_key_less(ta[i].exp, tb[i].exp);
                                 }
                             }
                             if (!(ta[i].coeff == tb[i].coeff))
                                 return scalar_render(ta[i].coeff, *ctx.syms) <
                                        scalar_render(tb[i].coeff, *ctx.syms);
                         }
                         return ta.size() < tb.size();
                     });
    return results;
}

std::vector<BranchResult> complete(const Ctx& ctx, const Equation& P, const GenSeries& r,
                                   const Budget& budget, BranchPolicy policy) {
    AdmissibilityReport adm = check_admissible(ctx, P, r);
    if (!adm.admissible)
        throw SemanticError("initial segment is not admissible for the equation");
    BranchState b0;
    b0.prefix = r;
    b0.prefix.valid_to = std::nullopt;
    b0.state = adm.final_state;
    if (!r.terms.empty()) b0.nu_prev = r.terms.back().exp;
    std::vector<BranchResult> results = complete_from(ctx, b0, budget, policy);

    // Maximal-rank guarantee: with rank >= order, nonzero characteristic roots
    // exist in C at every step, so no branch may die in a genuine obstruction.
    // (Roots that merely fail to be representable surface as NeedsExtension.)
    int rank = rational_rank_quotient(series_support(r), P.support());
    if (rank >= P.order) {
        for (const auto& res : results)
            if (res.verdict == BranchVerdict::Obstruction)
                throw Error("internal: maximal-rank completion hit an obstruction");
    }
    return results;
}

AdmissibilityReport check_admissible(const Ctx& ctx, const Equation& P, const GenSeries& r) {
    AdmissibilityReport rep;
    Equation state = P;
    bool all_ok = true;
    for (const auto& t : r.terms) {
        Cloud cloud = build_cloud(ctx, state);
        NewtonPolygon poly = build_polygon(ctx, cloud);
        ElementRef elem = element_of_coslope(ctx, poly, t.exp);
        UniPoly phi = characteristic_polynomial(ctx, state, t.exp, elem);
        AdmissibilityStep step;
        step.nu = t.exp;
        step.c = t.coeff;
        step.phi = phi_render(phi, *ctx.syms);
        step.phi_value = phi.eval(t.coeff);
        step.ok = step.phi_value.is_zero();
        all_ok = all_ok && step.ok;
        rep.steps.push_back(std::move(step));
        state = substitute_monomial(ctx, state, t.coeff, t.exp);
    }
    rep.final_state = state;
    if (r.terms.empty()) {
        rep.bottom_vertex_ok = true;
    } else {
        Cloud cloud = build_cloud(ctx, state);
        if (cloud.empty()) {
            rep.bottom_vertex_ok = true;  // the state vanished: r solves P exactly
        } else {
            NewtonPolygon poly = build_polygon(ctx, cloud);
            ElementRef elem = element_of_coslope(ctx, poly, r.terms.back().exp);
            rep.bottom_vertex_ok = elem.bot.height >= 1;
        }
    }
    rep.admissible = all_ok;
    if (rep.admissible != rep.bottom_vertex_ok)
        throw Error("internal: admissibility characterizations disagree");
    return rep;
}

StabilizationReport stabilization_check(const Ctx& ctx, const Equation& P, const GenSeries& r) {
    if (r.terms.empty()) throw SemanticError("stabilization needs a nonempty segment");
    AdmissibilityReport adm = check_admissible(ctx, P, r);
    if (!adm.admissible) throw SemanticError("segment is not admissible");

    StabilizationReport rep;
    rep.nu_last = r.terms.back().exp;
    const Equation& state = adm.final_state;
    Cloud cloud = build_cloud(ctx, state);
    NewtonPolygon poly = build_polygon(ctx, cloud);
    ElementRef elem = element_of_coslope(ctx, poly, *rep.nu_last);
    rep.pivot = elem.bot;
    if (elem.bot.height != 1) {
        rep.stabilized = false;
        rep.witness = "bottom vertex of the last element has height " +
                      std::to_string(elem.bot.height);
        return rep;
    }
    UniPoly psi = indicial_polynomial(ctx, state, rep.pivot);
    bool unresolved = false;
    std::vector<std::string> unrepresentable;
    auto roots = indicial_root_exponents(ctx, state.op, psi, &unrepresentable, &unresolved,
                                         *ctx.syms);
    if (unresolved || !unrepresentable.empty())
        throw NeedsAlgebraicExtension("indicial roots at the pivot are not expressible");
    Exponent zero;
    for (const auto& [gamma, mult] : roots) {
        (void)mult;
        if (exponent_compare(gamma, zero, ctx) == Cmp::Less) continue;  // Sigma wants mu >= 0
        rep.sigma.push_back(gamma);
    }
    rep.stabilized = true;
    for (const auto& s : rep.sigma) {
        if (exponent_compare(*rep.nu_last, s, ctx) != Cmp::Greater) {
            rep.stabilized = false;
            rep.witness = "indicial root " + exponent_render(s, *ctx.syms) +
                          " is not below the last exponent";
            break;
        }
    }
    return rep;
}

GenSeries stabilized_extend(const Ctx& ctx, const Equation& P, const GenSeries& r, int count) {
    StabilizationReport rep = stabilization_check(ctx, P, r);
    if (!rep.stabilized) throw SemanticError("segment does not stabilize the equation");
    Equation state = substitute_polynomial(ctx, P, r);
    GenSeries prefix = r;
    Exponent alpha = rep.pivot.alpha;
    Exponent nu_prev = *rep.nu_last;
    for (int i = 0; i < count; ++i) {
        const GenSeries& res = state.constant_part();
        if (res.no_terms()) break;  // exact solution reached
        Exponent gamma = res.terms.front().exp;
        Scalar lead = res.terms.front().coeff;
        Exponent nu = gamma - alpha;
        if (exponent_compare(nu, nu_prev, ctx) != Cmp::Greater)
            throw Error("internal: forced exponent did not increase");
        UniPoly psi = indicial_polynomial(ctx, state, rep.pivot);
        Scalar den = psi.eval(op_factor(ctx, state.op, nu, 1));
        if (den.is_zero()) throw Error("internal: stabilized pivot produced a zero divisor");
        Scalar c = -(lead / den);
        prefix = prefix_append(ctx, prefix, nu, c);
        state = substitute_monomial(ctx, state, c, nu);
        nu_prev = nu;
    }
    return prefix;
}

Certificate convergence_certificate(const Ctx& ctx, const Equation& P, const GenSeries& s) {
    Equation cur = P;
    int eps = P.op.epsilon();
    for (int guard = 0; guard < 64; ++guard) {
        std::vector<std::optional<Exponent>> orders(static_cast<size_t>(cur.order) + 1);
        bool all_vanish = true;
        for (int k = 0; k <= cur.order; ++k) {
            Equation pd = partial_derivative(cur, k);
            if (pd.coeffs.empty()) continue;  // identically zero partial
            GenSeries g = evaluate_residual(ctx, pd, s);
            if (g.no_terms()) {
                if (g.is_exact_zero()) continue;
                return {false, std::nullopt,
                        "truncation too short: dP/dy" + std::to_string(k) +
                            " is zero up to the watermark"};
            }
            all_vanish = false;
            orders[static_cast<size_t>(k)] = g.terms.front().exp + Exponent(Rat(-eps * k));
        }
        if (all_vanish) {
            // induction fallback: descend to a partial derivative
            int pick = -1;
            for (int k = cur.order; k >= 0; --k)
                if (!partial_derivative(cur, k).coeffs.empty()) pick = pick < 0 ? k : pick;
            if (pick < 0)
                return {false, std::nullopt, "all partial derivatives vanish identically"};
            cur = partial_derivative(cur, pick);
            continue;
        }
        std::optional<Exponent> lambda;
        for (const auto& o : orders)
            if (o) lambda = lambda ? exp_min(*lambda, *o, ctx) : *o;
        auto attained = [&](int k) {
            const auto& o = orders[static_cast<size_t>(k)];
            return o && exponent_compare(*o, *lambda, ctx) == Cmp::Equal;
        };
        bool ok;
        std::string detail;
        if (cur.op.kind == OperatorKind::QDiff && q_modulus_vs_one(ctx, cur.op.q) == Cmp::Less) {
            ok = attained(cur.order) && attained(0);
            detail = ok ? "minimum attained at both kappa = n and kappa = 0 (|q| < 1)"
                        : "order minimum misses kappa = n or kappa = 0 (|q| < 1)";
        } else {
            ok = attained(cur.order);
            detail = ok ? "minimum attained at kappa = n"
                        : "order minimum is attained before kappa = n";
        }
        return {ok, lambda, detail};
    }
    return {false, std::nullopt, "induction fallback did not terminate"};
}

bool theorem1_audit(const Equation& P, const GenSeries& s, int* rank_out) {
    int rank = rational_rank_quotient(series_support(s), P.support());
    if (rank_out) *rank_out = rank;
    return rank <= P.order;
}

AutonomousResult autonomous_first_order(const Ctx& ctx, const Equation& P, const Gaussian& x0,
                                        const Gaussian& c0, const Budget& budget) {
    if (P.op.kind != OperatorKind::Dx)
        throw SemanticError("autonomous solver requires the d/dx operator");
    if (P.order != 1) throw SemanticError("autonomous solver requires order 1");
    for (const auto& [rho, f] : P.coeffs) {
        (void)rho;
        for (const auto& t : f.terms)
            if (!t.exp.is_zero())
                throw SemanticError("autonomous solver requires constant coefficients");
    }
    bool involves_y1 = false;
    for (const auto& [rho, f] : P.coeffs)
        if (rho[1] > 0 && !f.terms.empty()) involves_y1 = true;
    if (!involves_y1) throw SemanticError("equation does not involve y1");

    AutonomousResult out;
    out.x0 = x0;
    out.c0 = c0;
    // translation in x is invisible to an autonomous equation; shift y by c0
    Equation state =
        c0.is_zero() ? P : substitute_monomial(ctx, P, Scalar(c0), Exponent(Rat(0)));

    Cloud cloud = build_cloud(ctx, state);
    NewtonPolygon poly = build_polygon(ctx, cloud);
    if (poly.sides.empty()) {
        if (!state.constant_part().no_terms())
            throw Error("internal: autonomous equation with no sides but nonzero constant");
        out.branch.prefix = GenSeries{};
        out.branch.state = state;
        out.verdict = BranchVerdict::ExactSolution;
        return out;
    }
    // force the first step onto a side: the zero series may also solve the
    // equation, but the sides carry the non-trivial Puiseux branch
    std::optional<Extension> picked;
    for (const auto& s : poly.sides) {
        ElementRef elem = element_of_coslope(ctx, poly, s.coslope);
        UniPoly phi = characteristic_polynomial(ctx, state, s.coslope, elem);
        if (phi.is_zero()) continue;
        RootList roots = poly_roots_exact(phi);
        std::optional<Scalar> best;
        for (const auto& [val, mult] : roots.roots) {
            (void)mult;
            if (val.is_zero()) continue;
            if (!best || scalar_render(val, *ctx.syms) < scalar_render(*best, *ctx.syms))
                best = val;
        }
        if (!best) continue;
        Extension e;
        e.nu = s.coslope;
        e.c = *best;
        e.from_side = true;
        e.phi = poly_render(phi, *ctx.syms, "C");
        picked = std::move(e);
        break;
    }
    if (!picked) {
        if (!state.constant_part().no_terms())
            throw Error("internal: autonomous sides carry no nonzero root");
        out.branch.state = state;
        out.verdict = BranchVerdict::ExactSolution;
        return out;
    }
    const Extension& e = *picked;
    BranchState b1;
    b1.prefix = prefix_append(ctx, GenSeries{}, e.nu, *e.c);
    b1.state = substitute_monomial(ctx, state, *e.c, e.nu);
    b1.nu_prev = e.nu;
    StepRecord rec;
    rec.nu = e.nu;
    rec.c = *e.c;
    rec.multiplicity = e.multiplicity;
    rec.source = "side";
    rec.phi = e.phi;
    b1.history.push_back(std::move(rec));

    auto results = complete_from(ctx, b1, budget, BranchPolicy::SidesOnly);
    for (auto& res : results) {
        if (res.verdict == BranchVerdict::ExactSolution) {
            out.branch = std::move(res.branch);
            out.verdict = BranchVerdict::ExactSolution;
            return out;
        }
    }
    out.branch = std::move(results.front().branch);
    out.verdict = results.front().verdict;
    return out;
}

}  // namespace puiseux
