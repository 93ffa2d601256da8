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

}  // namespace

TEST_CASE("comparison: tau against rationals") {
    CHECK(exponent_compare(tau(), Exponent(2), ctx()) == Cmp::Less);
    CHECK(exponent_compare(Exponent(1) + tau(), tau() + Exponent(1), ctx()) == Cmp::Equal);
    // 2*tau = pi > 3
    CHECK(exponent_compare(tau(Rat(2)), Exponent(3), ctx()) == Cmp::Greater);
    CHECK(exponent_compare(Exponent(1), tau(), ctx()) == Cmp::Less);
}

TEST_CASE("comparison needs refinable enclosures") {
    Problem q = tau_problem();
    TranscSymbol a;
    a.name = "blur";
    a.enclosure = RatInterval{Rat(1), Rat(2)};
    int id = q.syms.add(a);
    Ctx c{&q.syms, 4};
    CHECK_THROWS_AS(exponent_compare(Exponent::generator(id), Exponent(Rat(3, 2)), c),
                    OrderUndecidable);
}

TEST_CASE("exponent arithmetic") {
    Exponent four_tau = Exponent(4) + tau();
    CHECK(four_tau - tau() == Exponent(4));
    // co-slope of the hull segment (0,2) -> (3,1)
    Exponent diff = Exponent(3) - Exponent(0);
    CHECK(diff.scaled(Rat(1, 2 - 1)) == Exponent(3));
    // the x^(4+tau) step of the second branch: ((7+tau) - 3) / (1 - 0)
    Exponent seven_tau = Exponent(7) + tau();
    CHECK((seven_tau - Exponent(3)).scaled(Rat(1)) == Exponent(4) + tau());
}

TEST_CASE("exponent to scalar and back") {
    Scalar s = exponent_to_scalar(Exponent(1) + tau());
    CHECK(s == Scalar(Rat(1)) + sym(P(), "tau"));
    CHECK(exponent_to_scalar(Exponent(2)) == Scalar(Rat(2)));

    auto back = scalar_to_exponent(s, P().syms);
    REQUIRE(back.has_value());
    CHECK(*back == Exponent(1) + tau());
    CHECK_FALSE(scalar_to_exponent(sym(P(), "tau") * sym(P(), "tau"), P().syms).has_value());
    CHECK_FALSE(scalar_to_exponent(Scalar::imaginary_unit(), P().syms).has_value());
}

TEST_CASE("euler operator factor of x^tau is tau") {
    Ctx c = ctx();
    Scalar f = op_factor(c, OperatorKind::euler(), tau(), 1);
    CHECK(f == sym(P(), "tau"));
}

TEST_CASE("rational rank quotients") {
    Exponent t = tau();
    SUBCASE("integer support absorbs the rationals") {
        std::vector<Exponent> num{Exponent(1), t, Exponent(2), Exponent(3), Exponent(4) + t};
        std::vector<Exponent> den{Exponent(0), Exponent(1), Exponent(2)};
        CHECK(rational_rank_quotient(num, den) == 1);
    }
    SUBCASE("two independent vectors") {
        CHECK(rational_rank_quotient({Exponent(1), t}, {}) == 2);
    }
    SUBCASE("rationals modulo rationals") {
        CHECK(rational_rank_quotient({Exponent(1), Exponent(Rat(3, 2)), Exponent(Rat(7, 3))},
                                     {Exponent(1)}) == 0);
    }
    SUBCASE("zero alone spans nothing") {
        CHECK(rational_rank_quotient({Exponent(0)}, {}) == 0);
        CHECK(rational_rank_quotient({t}, {Exponent(0)}) == 1);
    }
}

TEST_CASE("trichotomy on random exponent pairs") {
    Rng rng(5);
    Ctx c = ctx();
    for (int i = 0; i < 200; ++i) {
        Exponent a = random_exponent(rng, P());
        Exponent b = random_exponent(rng, P());
        Cmp ab = exponent_compare(a, b, c);
        Cmp ba = exponent_compare(b, a, c);
        int count = (ab == Cmp::Less) + (ab == Cmp::Equal) + (ab == Cmp::Greater);
        CHECK(count == 1);
        if (ab == Cmp::Less) CHECK(ba == Cmp::Greater);
        if (ab == Cmp::Equal) {
            CHECK(ba == Cmp::Equal);
            CHECK(a == b);
        }
    }
}

TEST_CASE("order is translation invariant") {
    Rng rng(6);
    Ctx c = ctx();
    for (int i = 0; i < 200; ++i) {
        Exponent a = random_exponent(rng, P());
        Exponent b = random_exponent(rng, P());
        Exponent d = random_exponent(rng, P());
        if (exponent_compare(a, b, c) == Cmp::Less)
            CHECK(exponent_compare(a + d, b + d, c) == Cmp::Less);
    }
}

TEST_CASE("rank is additive over the quotient") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        std::vector<Exponent> num, den;
        int nn = rng.uniform(0, 4), nd = rng.uniform(0, 4);
        for (int j = 0; j < nn; ++j) num.push_back(random_exponent(rng, P()));
        for (int j = 0; j < nd; ++j) den.push_back(random_exponent(rng, P()));
        std::vector<Exponent> joint = num;
        joint.insert(joint.end(), den.begin(), den.end());
        CHECK(rational_rank_quotient(num, den) ==
              rational_rank(joint) - rational_rank(den));
    }
}

TEST_CASE("rendering") {
    CHECK(exponent_render(Exponent(4) + tau(), P().syms) == "4 + tau");
    CHECK(exponent_render(tau(Rat(-1)), P().syms) == "-tau");
    CHECK(exponent_render(Exponent(Rat(3, 2)), P().syms) == "3/2");
    CHECK(exponent_render(Exponent(0), P().syms) == "0");
}
