#include <doctest.h>

#include "surfsym/gcd.hpp"
#include "surfsym/resultant.hpp"

using namespace surfsym;

namespace {

MultiPoly T() { return MultiPoly::variable(Var::t); }
MultiPoly S() { return MultiPoly::variable(Var::s); }
MultiPoly U() { return MultiPoly::variable(Var::u); }
MultiPoly V() { return MultiPoly::variable(Var::v); }
MultiPoly C(long n) { return MultiPoly::constant(Rational(n)); }

bool equal_up_to_sign(const MultiPoly& a, const MultiPoly& b) { return a == b || a == -b; }

/// equality up to a nonzero rational factor
bool proportional(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.primitive_part() == b.primitive_part();
}

MultiPoly random_poly(RandomStream& rng, int maxdeg, int nterms, bool with_u = false) {
    MultiPoly p;
    for (int i = 0; i < nterms; ++i) {
        Monomial m = Monomial::var(Var::t, static_cast<unsigned>(rng.below(maxdeg + 1))) *
                     Monomial::var(Var::s, static_cast<unsigned>(rng.below(maxdeg + 1)));
        if (with_u) m = m * Monomial::var(Var::u, static_cast<unsigned>(rng.below(maxdeg + 1)));
        p += MultiPoly::term(m, rng.rational(9));
    }
    return p;
}

}  // namespace

TEST_CASE("gcd: common factor by construction") {
    // gcd(t^2 - s^2, t - s) = t - s
    MultiPoly g = gcd_poly(T() * T() - S() * S(), T() - S());
    CHECK(g == T() - S());
}

TEST_CASE("gcd with zero is the primitive part") {
    MultiPoly p = C(6) * T() - C(9) * S();
    CHECK(gcd_poly(p, MultiPoly::zero()) == C(2) * T() - C(3) * S());
    CHECK(gcd_poly(MultiPoly::zero(), p) == C(2) * T() - C(3) * S());
    CHECK(gcd_poly(MultiPoly::zero(), MultiPoly::zero()).is_zero());
}

TEST_CASE("gcd of planted products") {
    // expand (t^2+1)(t+s) and (t^2+1)(t-s) by ring arithmetic; gcd must be the
    // planted factor, and it must divide both inputs exactly
    MultiPoly f = T() * T() + C(1);
    MultiPoly a = f * (T() + S());
    MultiPoly b = f * (T() - S());
    MultiPoly g = gcd_poly(a, b);
    CHECK(g == f);
    CHECK(g.divides(a));
    CHECK(g.divides(b));
}

TEST_CASE("gcd divides both inputs exactly (random products)") {
    RandomStream rng(11);
    for (int i = 0; i < 25; ++i) {
        MultiPoly common = random_poly(rng, 2, 3);
        MultiPoly a = common * random_poly(rng, 2, 3);
        MultiPoly b = common * random_poly(rng, 2, 3);
        if (a.is_zero() || b.is_zero()) continue;
        MultiPoly g = gcd_poly(a, b);
        CHECK(g.divides(a));
        CHECK(g.divides(b));
        if (!common.is_constant()) CHECK(common.primitive_part().divides(g));
    }
}

TEST_CASE("squarefree_part examples") {
    // (t-1)^3 -> t-1
    MultiPoly p = (T() - C(1)).pow(3);
    CHECK(squarefree_part(p, Var::t) == T() - C(1));
    // t^2 + 1 already squarefree
    CHECK(squarefree_part(T() * T() + C(1), Var::t) == T() * T() + C(1));
    // (u-t)^2 (u+s) -> (u-t)(u+s), expanded via ring ops
    MultiPoly q = (U() - T()).pow(2) * (U() + S());
    CHECK(equal_up_to_sign(squarefree_part(q, Var::u), (U() - T()) * (U() + S())));
}

TEST_CASE("resultant: linear eliminations") {
    // Res_v(v - t, v - s) = t - s up to sign
    CHECK(equal_up_to_sign(resultant(V() - T(), V() - S(), Var::v), T() - S()));
    // Res_v(v^2 - t, v) = -t up to sign
    CHECK(equal_up_to_sign(resultant(V() * V() - T(), V(), Var::v), T()));
}

TEST_CASE("resultant: product formula oracle") {
    // p = (v-t)(v-1), q = (v-s)(v-2); both monic in v, so
    // Res_v = prod over root pairs (alpha - beta) = (t-s)(t-2)(1-s)(1-2)
    MultiPoly p = (V() - T()) * (V() - C(1));
    MultiPoly q = (V() - S()) * (V() - C(2));
    MultiPoly expect = (T() - S()) * (T() - C(2)) * (C(1) - S()) * C(-1);
    CHECK(equal_up_to_sign(resultant(p, q, Var::v), expect));
}

TEST_CASE("resultant: var-free operand raised to the other degree") {
    MultiPoly p = T() + S();  // free of v
    MultiPoly q = V() * V() * V() - T();
    CHECK(resultant(p, q, Var::v) == p.pow(3));
}

TEST_CASE("resultant: both inputs zero is an error") {
    CHECK_THROWS_AS(resultant(MultiPoly::zero(), MultiPoly::zero(), Var::v), Error);
}

TEST_CASE("resultant agrees with Bareiss elimination of the Sylvester matrix") {
    RandomStream rng(23);
    for (int i = 0; i < 12; ++i) {
        MultiPoly p = random_poly(rng, 2, 4, true);
        MultiPoly q = random_poly(rng, 2, 4, true);
        if (p.degree(Var::u) < 1 || q.degree(Var::u) < 1) continue;
        CHECK(resultant(p, q, Var::u) == resultant_bareiss(p, q, Var::u));
    }
}

TEST_CASE("resultant vanishes iff common factor in the variable") {
    RandomStream rng(37);
    int planted = 0, coprime = 0;
    for (int i = 0; i < 30 && (planted < 8 || coprime < 8); ++i) {
        MultiPoly a = random_poly(rng, 2, 3, true);
        MultiPoly b = random_poly(rng, 2, 3, true);
        if (a.degree(Var::u) < 1 || b.degree(Var::u) < 1) continue;
        MultiPoly common = U() - random_poly(rng, 1, 2);
        MultiPoly r_planted = resultant(a * common, b * common, Var::u);
        CHECK(r_planted.is_zero());
        ++planted;
        MultiPoly r = resultant(a, b, Var::u);
        MultiPoly g = gcd_poly(a, b);
        if (g.degree(Var::u) < 1) {
            CHECK_FALSE(r.is_zero());
            ++coprime;
        } else {
            CHECK(r.is_zero());
        }
    }
    CHECK(planted >= 8);
    CHECK(coprime >= 8);
}

TEST_CASE("tuned resultant equals the exact one") {
    RandomStream rng(51);
    for (int i = 0; i < 8; ++i) {
        MultiPoly p = random_poly(rng, 2, 4, true) * (V() * V() + C(1)) + V() * T();
        MultiPoly q = random_poly(rng, 2, 3, true) * V() + U() * S();
        if (p.degree(Var::v) < 1 || q.degree(Var::v) < 1) continue;
        RandomStream r2(1000 + i);
        CHECK(resultant_tuned(p, q, Var::v, r2) == resultant(p, q, Var::v));
    }
}
