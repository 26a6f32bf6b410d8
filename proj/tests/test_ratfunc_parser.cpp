#include <doctest.h>

#include "surfsym/parser.hpp"
#include "surfsym/ratfunc.hpp"

using namespace surfsym;

namespace {

MultiPoly T() { return MultiPoly::variable(Var::t); }
MultiPoly S() { return MultiPoly::variable(Var::s); }
MultiPoly C(long n) { return MultiPoly::constant(Rational(n)); }

}  // namespace

TEST_CASE("rational functions reduce to lowest terms") {
    // (t^2 - s^2) / (t - s) = t + s
    RationalFunction f(T() * T() - S() * S(), T() - S());
    CHECK(f.is_polynomial());
    CHECK(f.num() == T() + S());
    // denominator sign is normalized positive
    RationalFunction g(T(), -(T() * T() + C(1)));
    CHECK(g.den() == T() * T() + C(1));
    CHECK(g.num() == -T());
}

TEST_CASE("field arithmetic identities") {
    RationalFunction f(T(), T() * T() + S() * S());
    RationalFunction g(S() + C(1), T() - S());
    CHECK((f + g) - g == f);
    CHECK((f * g) / g == f);
    CHECK((f / g) * g == f);
}

TEST_CASE("derivative quotient rule") {
    // d/dt [t / (t^2+1)] = (1 - t^2) / (t^2+1)^2
    RationalFunction f(T(), T() * T() + C(1));
    RationalFunction expect(C(1) - T() * T(), (T() * T() + C(1)).pow(2));
    CHECK(f.derivative(Var::t) == expect);
}

TEST_CASE("composition with a rational pair") {
    // f(t,s) = t^2 + s at (t/(1+s), s-1): ((t/(1+s))^2 + s - 1
    RationalFunction f(T() * T() + S(), MultiPoly::one());
    RationalFunction g1(T(), C(1) + S());
    RationalFunction g2(S() - C(1), MultiPoly::one());
    RationalFunction got = compose_ts(f, g1, g2);
    RationalFunction expect = g1 * g1 + g2;
    CHECK(got == expect);
}

TEST_CASE("substitute_pair clears denominators consistently") {
    // xi(t,s,u,v) = u*v - t*s vanishes under (u,v) = (t,s)
    MultiPoly xi = MultiPoly::variable(Var::u) * MultiPoly::variable(Var::v) - T() * S();
    RationalFunction psi1 = RationalFunction::variable(Var::t);
    RationalFunction psi2 = RationalFunction::variable(Var::s);
    CHECK(substitute_pair(RationalFunction(xi), psi1, psi2).is_zero());
}

TEST_CASE("parser: toric surface row") {
    SurfaceFile f = parse_surface("x = (t^2, t/s, s)\n");
    CHECK(f.name == "x");
    CHECK(f.components[0] == RationalFunction(T() * T()));
    CHECK(f.components[1] == RationalFunction(T(), S()));
    CHECK(f.components[2] == RationalFunction(S()));
}

TEST_CASE("parser: plane with hints and comments") {
    SurfaceFile f = parse_surface(
        "# a plane\n"
        "plane = (t, s, 0)\n"
        "mode = general\n"
        "degree_bound = 3\n"
        "seed = 9\n"
        "pn = off\n");
    CHECK(f.name == "plane");
    CHECK(f.mode == PipelineMode::general);
    CHECK(f.degree_bound == 3);
    CHECK(f.seed == 9);
    CHECK(f.pn == PnMode::off);
}

TEST_CASE("parser: exact fractions and precedence") {
    RationalFunction f = parse_expression("1/3*t + 2^3 - (t + s)/2");
    // 1/3 t + 8 - (t+s)/2 = -t/6 - s/2 + 8
    RationalFunction expect =
        RationalFunction(T(), MultiPoly::constant(Rational(6))) * Rational(-1) +
        RationalFunction(MultiPoly::constant(Rational(8))) -
        RationalFunction(S(), MultiPoly::constant(Rational(2)));
    CHECK(f == expect);
}

TEST_CASE("parser: errors carry position") {
    CHECK_THROWS_AS(parse_surface("x = (t, s\n"), Error);
    CHECK_THROWS_AS(parse_expression("t + q"), Error);
    CHECK_THROWS_AS(parse_expression("t / (s - s)"), Error);
    CHECK_THROWS_AS(parse_expression("t s"), Error);  // implicit multiplication
    try {
        parse_expression("t + q");
    } catch (const Error& e) {
        CHECK(e.code() == errc::parse_error);
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
        CHECK(std::string(e.what()).find("unknown identifier") != std::string::npos);
    }
}

TEST_CASE("serialized forms re-parse to the same function") {
    RationalFunction f(-T(), T() * T() + S() * S());
    CHECK(parse_expression(f.str()) == f);
    RationalFunction g(C(3) * T() - C(1), C(5) * S() + C(7));
    CHECK(parse_expression(g.str()) == g);
}
