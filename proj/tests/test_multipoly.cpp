#include <doctest.h>

#include "surfsym/multipoly.hpp"
#include "surfsym/rational.hpp"

using namespace surfsym;

namespace {

MultiPoly T() { return MultiPoly::variable(Var::t); }
MultiPoly S() { return MultiPoly::variable(Var::s); }
MultiPoly U() { return MultiPoly::variable(Var::u); }
MultiPoly C(long n) { return MultiPoly::constant(Rational(n)); }

MultiPoly random_poly(RandomStream& rng, int maxdeg, int nterms) {
    MultiPoly p;
    for (int i = 0; i < nterms; ++i) {
        unsigned et = static_cast<unsigned>(rng.below(maxdeg + 1));
        unsigned es = static_cast<unsigned>(rng.below(maxdeg + 1));
        unsigned eu = static_cast<unsigned>(rng.below(maxdeg + 1));
        Monomial m = Monomial::var(Var::t, et) * Monomial::var(Var::s, es) * Monomial::var(Var::u, eu);
        p += MultiPoly::term(m, rng.rational(9));
    }
    return p;
}

}  // namespace

TEST_CASE("graded lex term order") {
    MultiPoly p = T() * T() + T() * S() + S() + C(3);
    CHECK(p.leading_monomial() == Monomial::var(Var::t, 2));
    CHECK(p.total_degree() == 2);
    CHECK(p.degree(Var::t) == 2);
    CHECK(p.degree(Var::s) == 1);
    // t^2 > t*s (lex at equal degree), s > 3
    CHECK(p.terms()[1].m == (Monomial::var(Var::t) * Monomial::var(Var::s)));
    CHECK(p.terms()[2].m == Monomial::var(Var::s));
    CHECK(p.terms()[3].m.is_one());
}

TEST_CASE("exact ring arithmetic round trips") {
    RandomStream rng(7);
    for (int i = 0; i < 60; ++i) {
        MultiPoly p = random_poly(rng, 4, 6);
        MultiPoly q = random_poly(rng, 4, 6);
        CHECK((p + q) - q == p);
        if (!q.is_zero()) {
            auto back = (p * q).divide_exact(q);
            REQUIRE(back.has_value());
            CHECK(*back == p);
        }
    }
}

TEST_CASE("derivative and evaluation") {
    // d/dt (t^3 s - 2 t s^2) = 3 t^2 s - 2 s^2
    MultiPoly p = T().pow(3) * S() - C(2) * T() * S() * S();
    MultiPoly expect = C(3) * T().pow(2) * S() - C(2) * S().pow(2);
    CHECK(p.derivative(Var::t) == expect);
    CHECK(p.eval2(Rational(2), Rational(3)) == Rational(2 * 2 * 2 * 3 - 2 * 2 * 9));
}

TEST_CASE("partial evaluation keeps remaining variables") {
    MultiPoly p = T() * U() + S();
    MultiPoly at_u1 = p.eval_var(Var::u, Rational(1));
    CHECK(at_u1 == T() + S());
}

TEST_CASE("rename t,s -> u,v") {
    MultiPoly p = T().pow(2) + S();
    MultiPoly r = p.rename_ts_to_uv();
    CHECK(r == MultiPoly::variable(Var::u).pow(2) + MultiPoly::variable(Var::v));
    CHECK_FALSE(r.uses(Var::t));
}

TEST_CASE("content and primitive part") {
    // 4/3 t - 2/3 -> content 2/3, primitive 2t - 1
    MultiPoly p = MultiPoly::term(Monomial::var(Var::t), make_rational(4, 3)) +
                  MultiPoly::constant(make_rational(-2, 3));
    CHECK(p.content() == make_rational(2, 3));
    CHECK(p.primitive_part() == C(2) * T() - C(1));
    // negative leading coefficient: content carries the sign
    MultiPoly n = -p;
    CHECK(n.content() == make_rational(-2, 3));
    CHECK(n.primitive_part() == C(2) * T() - C(1));
}

TEST_CASE("exact division failure is detected") {
    CHECK_FALSE((T() * T() + C(1)).divide_exact(T() + C(1)).has_value());
    CHECK((T() * T() - C(1)).divide_exact(T() + C(1)).has_value());
}

TEST_CASE("subst_poly composes") {
    // p(t) = t^2 + 1 at t = s + 1 -> s^2 + 2s + 2
    MultiPoly p = T() * T() + C(1);
    MultiPoly got = p.subst_poly(Var::t, S() + C(1));
    CHECK(got == S() * S() + C(2) * S() + C(2));
}

TEST_CASE("string form is canonical") {
    MultiPoly p = C(-1) * T().pow(2) + S() - C(3);
    CHECK(p.str() == "-t^2 + s - 3");
    CHECK(MultiPoly::zero().str() == "0");
}
