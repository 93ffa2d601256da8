#include "doctest.h"
#include "support.hpp"

using namespace puiseux;
using namespace puiseux::testing;

namespace {

Problem& P() {
    static Problem p = tau_problem();
    return p;
}

Ctx ctx() { return Ctx{&P().syms, 8}; }
Exponent tau(Rat c = Rat(1)) { return gen_exp(P(), "tau", c); }
Scalar t() { return sym(P(), "tau"); }
Scalar k(long v) { return Scalar(Rat(v)); }

Equation state_after(const GenSeries& prefix) {
    return substitute_polynomial(ctx(), P().equation, prefix);
}

GenSeries seg(std::vector<SeriesTerm> terms) { return make_series(ctx(), std::move(terms)); }

Scalar d5() { return ((t() - k(4)) * (t() - k(4))) / ((t() - k(3)) * (t() - k(5))); }

const CloudEntry* find_point(const Cloud& c, const Exponent& alpha, int h) {
    for (const auto& e : c.entries)
        if (e.pt.height == h && e.pt.alpha == alpha) return &e;
    return nullptr;
}

}  // namespace

TEST_CASE("cloud of the reference equation") {
    Cloud c = build_cloud(ctx(), P().equation);
    CHECK(find_point(c, Exponent(0), 2));   // y1^2, tau^2 y0^2, -2 tau y0 y1
    CHECK(find_point(c, Exponent(2), 0));   // (1 - 2tau + tau^2) x^2
    CHECK(find_point(c, Exponent(6), 2));   // x^6 y0 y1
    CHECK(find_point(c, Exponent(8), 0));
    CHECK(equation_coefficient_at(P().equation, Exponent(2), {0, 0}) ==
          (t() - k(1)) * (t() - k(1)));
    CHECK(equation_coefficient_at(P().equation, Exponent(0), {1, 1}) == k(-2) * t());
}

TEST_CASE("cloud shift under d/dx") {
    // x^3 y1 with rho = (0,1): omega = 1, so the point is (2, 1)
    Problem p = parse_problem("operator dx;\nequation x^3*y1 + y0;\n");
    Ctx c{&p.syms, 8};
    Cloud cloud = build_cloud(c, p.equation);
    bool found = false;
    for (const auto& e : cloud.entries)
        if (e.pt.height == 1 && e.pt.alpha == Exponent(2)) found = true;
    CHECK(found);
}

TEST_CASE("autonomous cloud points sit at (-j, i+j)") {
    Problem p = parse_problem("operator dx;\nequation y0^2*y1^3 + y1;\n");
    Ctx c{&p.syms, 8};
    Cloud cloud = build_cloud(c, p.equation);
    bool found = false;
    for (const auto& e : cloud.entries)
        if (e.pt.height == 5 && e.pt.alpha == Exponent(-3)) found = true;
    CHECK(found);
}

TEST_CASE("substitution x then x^tau reproduces the displayed border") {
    Ctx c = ctx();
    Equation P1 = substitute_monomial(c, P().equation, k(1), Exponent(1));
    // border: (tau y0 - y1)^2 + 2(tau-2) x^2 (y1 - tau y0) + (tau-2)^2 x^4
    CHECK(equation_coefficient_at(P1, Exponent(0), {2, 0}) == t() * t());
    CHECK(equation_coefficient_at(P1, Exponent(0), {1, 1}) == k(-2) * t());
    CHECK(equation_coefficient_at(P1, Exponent(0), {0, 2}) == k(1));
    CHECK(equation_coefficient_at(P1, Exponent(2), {0, 1}) == k(2) * (t() - k(2)));
    CHECK(equation_coefficient_at(P1, Exponent(2), {1, 0}) == k(-2) * t() * (t() - k(2)));
    CHECK(equation_coefficient_at(P1, Exponent(4), {0, 0}) == (t() - k(2)) * (t() - k(2)));
    // the x-linear constant term vanished (that is what admissibility bought)
    CHECK(equation_coefficient_at(P1, Exponent(1), {0, 0}).is_zero());

    Equation P2 = substitute_monomial(c, P1, k(1), tau());
    CHECK(equation_coefficient_at(P2, Exponent(0), {2, 0}) == t() * t());
    CHECK(equation_coefficient_at(P2, Exponent(2), {0, 1}) == k(2) * (t() - k(2)));
    CHECK(equation_coefficient_at(P2, Exponent(4), {0, 0}) == (t() - k(2)) * (t() - k(2)));
}

TEST_CASE("iterated substitution reaches the displayed later states") {
    Ctx c = ctx();
    SUBCASE("P3 = P[x + x^tau + x^2]") {
        Equation P3 = state_after(seg({{Exponent(1), k(1)}, {tau(), k(1)}, {Exponent(2), k(1)}}));
        CHECK(equation_coefficient_at(P3, Exponent(3), {0, 1}) == t() - k(3));
        CHECK(equation_coefficient_at(P3, Exponent(3), {1, 0}) == -t() * (t() - k(3)));
        CHECK(equation_coefficient_at(P3, Exponent(8), {0, 0}) == (t() - k(4)) * (t() - k(4)));
    }
    SUBCASE("P4 = P3[x^3] flips the x^3 border sign and has x^8") {
        Equation P4 = state_after(seg({{Exponent(1), k(1)},
                                       {tau(), k(1)},
                                       {Exponent(2), k(1)},
                                       {Exponent(3), k(1)}}));
        CHECK(equation_coefficient_at(P4, Exponent(3), {0, 1}) == -(t() - k(3)));
        CHECK(equation_coefficient_at(P4, Exponent(3), {1, 0}) == t() * (t() - k(3)));
        CHECK(equation_coefficient_at(P4, Exponent(8), {0, 0}) == k(1));
    }
    SUBCASE("Q4 = P3[d5 x^5] keeps the border and gains (1+tau) x^(7+tau)") {
        Equation Q4 = state_after(seg({{Exponent(1), k(1)},
                                       {tau(), k(1)},
                                       {Exponent(2), k(1)},
                                       {Exponent(5), d5()}}));
        CHECK(equation_coefficient_at(Q4, Exponent(3), {0, 1}) == t() - k(3));
        CHECK(equation_coefficient_at(Q4, Exponent(7) + tau(), {0, 0}) == k(1) + t());
    }
}

TEST_CASE("substitution edge cases") {
    Ctx c = ctx();
    CHECK_THROWS_AS(substitute_monomial(c, P().equation, Scalar(), Exponent(1)), Error);
    // a y-free polynomial is untouched by substitution
    Problem p = parse_problem("operator euler;\nequation y0 + x^2;\n");
    Ctx pc{&p.syms, 8};
    Equation yfree;
    yfree.order = 0;
    yfree.op = p.op;
    GenSeries x2 = series_make(pc, {{Exponent(2), Scalar(Rat(1))}});
    yfree.coeffs.emplace(MultiIndex{0}, x2);
    Equation sub = substitute_monomial(pc, yfree, Scalar(Rat(7)), Exponent(3));
    CHECK(equation_equal(sub, yfree));
}

TEST_CASE("partial derivatives") {
    Problem p = parse_problem("operator dx;\nequation y1^2 + y0^2*y1;\n");
    Ctx c{&p.syms, 8};
    Equation d1 = partial_derivative(p.equation, 1);
    // d/dy1 (y1^2 + y0^2 y1) = 2 y1 + y0^2
    REQUIRE(d1.coeff({0, 1}).terms.size() == 1);
    CHECK(d1.coeff({0, 1}).terms[0].coeff == Scalar(Rat(2)));
    REQUIRE(d1.coeff({2, 0}).terms.size() == 1);
    CHECK(d1.coeff({2, 0}).terms[0].coeff == Scalar(Rat(1)));

    // with a weightless operator the cloud of dP/dy_i is contained in the
    // height-shift (alpha, r) -> (alpha, r-1) of the cloud
    Problem pe = parse_problem("operator euler;\nequation y1^2 + y0^2*y1 + x^2*y0;\n");
    Ctx ce{&pe.syms, 8};
    for (int kappa = 0; kappa <= 1; ++kappa) {
        Equation d = partial_derivative(pe.equation, kappa);
        Cloud before = build_cloud(ce, pe.equation);
        Cloud after = build_cloud(ce, d);
        for (const auto& e : after.entries) {
            bool covered = false;
            for (const auto& b : before.entries)
                if (b.pt.height == e.pt.height + 1 && b.pt.alpha == e.pt.alpha) covered = true;
            CHECK(covered);
        }
    }

    // under d/dx the shifted-abscissa convention moves the image of a term
    // differentiated in y_kappa by epsilon*kappa
    Cloud before = build_cloud(c, p.equation);
    Cloud after = build_cloud(c, d1);
    for (const auto& e : after.entries) {
        bool covered = false;
        for (const auto& b : before.entries)
            if (b.pt.height == e.pt.height + 1 &&
                b.pt.alpha == e.pt.alpha + Exponent(Rat(-1)))  // alpha + eps*1 image
                covered = true;
        CHECK(covered);
    }
}

TEST_CASE("chain rule commutes with substitution") {
    Rng rng(40);
    Ctx c = ctx();
    for (int i = 0; i < 100; ++i) {
        Equation eq = random_equation(c, rng, P(), OperatorKind::euler());
        GenSeries r = random_series(c, rng, P(), 2);
        if (r.terms.empty()) continue;
        for (int kappa = 0; kappa <= eq.order; ++kappa) {
            Equation lhs = partial_derivative(substitute_polynomial(c, eq, r), kappa);
            Equation rhs = substitute_polynomial(c, partial_derivative(eq, kappa), r);
            CHECK(equation_equal(lhs, rhs));
        }
    }
}

TEST_CASE("substitution agrees with the brute-force expander") {
    Rng rng(41);
    Ctx c = ctx();
    std::vector<OperatorKind> ops{OperatorKind::dx(), OperatorKind::euler()};
    for (int i = 0; i < 100; ++i) {
        Equation eq = random_equation(c, rng, P(), ops[static_cast<size_t>(rng.uniform(0, 1))]);
        Scalar cc = random_nonzero_scalar(rng, P(), false);
        Exponent nu = random_exponent(rng, P());
        Equation fast = substitute_monomial(c, eq, cc, nu);
        BrutePoly slow = brute_substitute(c, eq, cc, nu);
        BrutePoly fast_terms = brute_from_equation(fast);
        REQUIRE(fast_terms.size() == slow.size());
        for (size_t j = 0; j < slow.size(); ++j) {
            CHECK(fast_terms[j].xexp == slow[j].xexp);
            CHECK(fast_terms[j].ypow == slow[j].ypow);
            CHECK((fast_terms[j].c == slow[j].c));
        }
    }
}

TEST_CASE("substitution is associative over term splitting") {
    Rng rng(42);
    Ctx c = ctx();
    for (int i = 0; i < 100; ++i) {
        Equation eq = random_equation(c, rng, P(), OperatorKind::euler());
        Exponent e1 = random_exponent(rng, P());
        Exponent e2 = random_exponent(rng, P());
        if (exponent_compare(e1, e2, c) != Cmp::Less) continue;
        Scalar c1 = Scalar(rng.nonzero_gaussian());
        Scalar c2 = Scalar(rng.nonzero_gaussian());
        GenSeries two = seg({{e1, c1}, {e2, c2}});
        if (two.terms.size() != 2) continue;
        Equation folded = substitute_polynomial(c, eq, two);
        Equation stepped = substitute_monomial(c, substitute_monomial(c, eq, c1, e1), c2, e2);
        CHECK(equation_equal(folded, stepped));
    }
}

TEST_CASE("indicial polynomials of the third state") {
    Ctx c = ctx();
    Equation P3 = state_after(seg({{Exponent(1), k(1)}, {tau(), k(1)}, {Exponent(2), k(1)}}));
    SUBCASE("at V = (0,2): (T - tau)^2") {
        UniPoly psi = indicial_polynomial(c, P3, CloudPoint{Exponent(0), 2});
        UniPoly expected({t() * t(), k(-2) * t(), k(1)});
        CHECK(psi == expected);
    }
    SUBCASE("at W = (3,1): (tau-3)(T - tau)") {
        UniPoly psi = indicial_polynomial(c, P3, CloudPoint{Exponent(3), 1});
        UniPoly expected({-t() * (t() - k(3)), t() - k(3)});
        CHECK(psi == expected);
    }
    SUBCASE("at (8,0): (tau-4)^2") {
        UniPoly psi = indicial_polynomial(c, P3, CloudPoint{Exponent(8), 0});
        UniPoly expected({(t() - k(4)) * (t() - k(4))});
        CHECK(psi == expected);
    }
    SUBCASE("powers of (T - tau) at every border point") {
        // the maximal-rank structure: Psi at a border point of height r is
        // c (T - tau)^r for a nonzero constant c
        struct Probe { Exponent alpha; int h; } probes[] = {
            {Exponent(0), 2}, {Exponent(3), 1}, {Exponent(8), 0}};
        for (const auto& pr : probes) {
            UniPoly psi = indicial_polynomial(c, P3, CloudPoint{pr.alpha, pr.h});
            REQUIRE(psi.degree() == pr.h);
            UniPoly probe = UniPoly::linear(k(1), -t()).pow(static_cast<unsigned>(pr.h))
                                .scaled(psi.c.back());
            CHECK(psi == probe);
        }
    }
}

TEST_CASE("characteristic polynomials match the worked values") {
    Ctx c = ctx();
    SUBCASE("Phi at co-slope 2 of the second state") {
        Equation P2 = state_after(seg({{Exponent(1), k(1)}, {tau(), k(1)}}));
        NewtonPolygon poly = build_polygon(c, build_cloud(c, P2));
        UniPoly phi = characteristic_polynomial(c, P2, Exponent(2),
                                                element_of_coslope(c, poly, Exponent(2)));
        Scalar c2 = (t() - k(2)) * (t() - k(2));
        UniPoly expected({c2, k(-2) * c2, c2});  // (tau-2)^2 (C-1)^2
        CHECK(phi == expected);
    }
    SUBCASE("Phi at co-slopes 3 and 5 of the third state") {
        Equation P3 = state_after(seg({{Exponent(1), k(1)}, {tau(), k(1)}, {Exponent(2), k(1)}}));
        NewtonPolygon poly = build_polygon(c, build_cloud(c, P3));
        UniPoly phi3 = characteristic_polynomial(c, P3, Exponent(3),
                                                 element_of_coslope(c, poly, Exponent(3)));
        Scalar c3 = (t() - k(3)) * (t() - k(3));
        CHECK(phi3 == UniPoly({Scalar(), k(-1) * c3, c3}));  // (tau-3)^2 C(C-1)

        UniPoly phi5 = characteristic_polynomial(c, P3, Exponent(5),
                                                 element_of_coslope(c, poly, Exponent(5)));
        CHECK(phi5 == UniPoly({(t() - k(4)) * (t() - k(4)), (t() - k(3)) * (k(5) - t())}));
        RootList roots = poly_roots_exact(phi5);
        REQUIRE(roots.roots.size() == 1);
        CHECK(roots.roots[0].first == d5());
    }
    SUBCASE("root sets where the printed constants disagree with expansion") {
        // Phi at co-slope 1 of the original equation: direct expansion gives the
        // constant (tau-1)^2, and the root set is {1} with multiplicity 2.
        NewtonPolygon poly = build_polygon(c, build_cloud(c, P().equation));
        UniPoly phi = characteristic_polynomial(c, P().equation, Exponent(1),
                                                element_of_coslope(c, poly, Exponent(1)));
        RootList roots = poly_roots_exact(phi);
        REQUIRE(roots.roots.size() == 1);
        CHECK(roots.roots[0].first == k(1));
        CHECK(roots.roots[0].second == 2);
        Scalar c1 = (t() - k(1)) * (t() - k(1));
        CHECK(phi == UniPoly({c1, k(-2) * c1, c1}));

        // Psi at V=(0,2) of the first state: (T - tau)^2, root set {tau}
        Equation P1 = substitute_monomial(c, P().equation, k(1), Exponent(1));
        UniPoly psi = indicial_polynomial(c, P1, CloudPoint{Exponent(0), 2});
        RootList psi_roots = poly_roots_exact(psi);
        REQUIRE(psi_roots.roots.size() == 1);
        CHECK(psi_roots.roots[0].first == t());
        CHECK(psi_roots.roots[0].second == 2);
    }
    SUBCASE("cross-check of Phi coefficients against the brute expander") {
        Equation P3 = state_after(seg({{Exponent(1), k(1)}, {tau(), k(1)}, {Exponent(2), k(1)}}));
        BrutePoly terms = brute_from_equation(P3);
        // Phi_(P3;3) = sum over heights r of Psi_(alpha0 - 3r, r)(3) C^r with alpha0 = 6
        Scalar mu3 = exponent_to_scalar(Exponent(3));
        std::vector<Scalar> coeffs(3, Scalar());
        for (int r = 0; r <= 2; ++r) {
            Exponent alpha = Exponent(6) - Exponent(3).scaled(Rat(r));
            for (int a = 0; a <= r; ++a) {
                MultiIndex rho{r - a, a};
                Scalar pc = brute_coefficient_at(terms, 0, alpha, rho);
                if (pc.is_zero()) continue;
                coeffs[static_cast<size_t>(r)] =
                    coeffs[static_cast<size_t>(r)] + pc * mu3.pow(mi_weight(rho));
            }
        }
        NewtonPolygon poly = build_polygon(c, build_cloud(c, P3));
        UniPoly phi3 = characteristic_polynomial(c, P3, Exponent(3),
                                                 element_of_coslope(c, poly, Exponent(3)));
        CHECK(phi3 == UniPoly(coeffs));
    }
}

TEST_CASE("residual evaluation") {
    Ctx c = ctx();
    SUBCASE("euler linear example keeps only x^2") {
        Problem p = parse_problem("operator euler;\nequation 2*y0 - y1 - x + x^2;\n");
        Ctx pc{&p.syms, 8};
        GenSeries s = series_make(pc, {{Exponent(1), Scalar(Rat(1))}});
        GenSeries res = evaluate_residual(pc, p.equation, s);
        REQUIRE(res.terms.size() == 1);
        CHECK(res.terms[0].exp == Exponent(2));
    }
    SUBCASE("the parabola solves its equation") {
        Problem p = parse_problem("operator dx;\nequation y1^2 - 4*y0;\n");
        Ctx pc{&p.syms, 8};
        GenSeries s = series_make(pc, {{Exponent(2), Scalar(Rat(1))}});
        GenSeries res = evaluate_residual(pc, p.equation, s);
        CHECK(res.is_exact_zero());
    }
    SUBCASE("residual order exceeds the supporting-line value") {
        GenSeries z4 = seg({{Exponent(1), k(1)}, {tau(), k(1)}, {Exponent(2), k(1)},
                            {Exponent(3), k(1)}});
        GenSeries res = evaluate_residual(c, P().equation, z4);
        REQUIRE(!res.terms.empty());
        CHECK(series_ord(res) == Exponent(8));
        // strictly above the supporting-line value alpha0 = 3 + 1*3 + ... = 6
        CHECK(exp_less(Exponent(6), series_ord(res), c));
        // and the state's constant part agrees with direct evaluation
        Equation P4 = state_after(z4);
        CHECK(series_equal(res, P4.constant_part()));
    }
}

TEST_CASE("derivation identity over the substituted equation") {
    // D_j(P[s]_rho) = sum_kappa (rho_kappa + 1) P[s]_(rho+e_kappa) D_j(s^(kappa))
    Rng rng(43);
    Ctx c = ctx();
    int tau_id = P().syms.find("tau");
    std::vector<OperatorKind> ops{OperatorKind::dx(), OperatorKind::euler(),
                                  OperatorKind::qdiff(Scalar(Rat(2)))};
    int done = 0;
    for (int i = 0; done < 200 && i < 1000; ++i) {
        const OperatorKind& op = ops[static_cast<size_t>(rng.uniform(0, 2))];
        Equation eq = random_equation(c, rng, P(), op);
        // segment over {1, tau} with integer rational parts (q-safe)
        std::vector<SeriesTerm> terms;
        int n = rng.uniform(1, 2);
        for (int j = 0; j < n; ++j) {
            Exponent e(Rat(rng.uniform(0, 3)));
            if (rng.uniform(0, 1)) e = e + tau(rng.nonzero_rat(2));
            terms.push_back({e, Scalar(rng.nonzero_gaussian())});
        }
        GenSeries s = series_make(c, std::move(terms));
        if (s.terms.empty()) continue;
        Equation sub = substitute_polynomial(c, eq, s);
        ++done;
        size_t width = static_cast<size_t>(eq.order) + 1;
        for (const auto& [rho, f] : sub.coeffs) {
            (void)f;
            GenSeries lhs = formal_derivation(sub.coeff(rho), tau_id);
            GenSeries rhs;
            for (size_t kappa = 0; kappa < width; ++kappa) {
                MultiIndex up = rho;
                ++up[kappa];
                GenSeries dk = formal_derivation(
                    apply_operator(c, s, op, static_cast<int>(kappa)), tau_id);
                GenSeries term = series_mul(c, sub.coeff(up), dk);
                term = series_scale(term, Scalar(Rat(rho[kappa] + 1)));
                rhs = series_add(c, rhs, term);
            }
            CHECK(series_equal(lhs, rhs));
        }
    }
    CHECK(done >= 200);
}

TEST_CASE("sum-zero relations at the third state's border") {
    Ctx c = ctx();
    Equation P3 = state_after(seg({{Exponent(1), k(1)}, {tau(), k(1)}, {Exponent(2), k(1)}}));
    Scalar tau_s = t();
    // points on the border elements of co-slopes 3 and 5 with height >= 1
    struct Case { Exponent alpha; int r; } cases[] = {{Exponent(0), 2}, {Exponent(3), 1}};
    for (const auto& cs : cases) {
        for (int a = 0; a <= cs.r - 1; ++a) {
            MultiIndex rho{cs.r - 1 - a, a};
            Scalar sum;
            for (int kappa = 0; kappa <= 1; ++kappa) {
                MultiIndex up = rho;
                ++up[static_cast<size_t>(kappa)];
                // Euler: <tau>_kappa = tau^kappa
                Scalar factor = tau_s.pow(kappa);
                sum = sum + Scalar(Rat(rho[static_cast<size_t>(kappa)] + 1)) * factor *
                                equation_coefficient_at(P3, cs.alpha, up);
            }
            CHECK(sum.is_zero());
        }
    }
}
