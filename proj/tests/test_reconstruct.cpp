#include <doctest.h>

#include "surfsym/reconstruct.hpp"

using namespace surfsym;

namespace {

MultiPoly T() { return MultiPoly::variable(Var::t); }
MultiPoly S() { return MultiPoly::variable(Var::s); }
MultiPoly C(long n) { return MultiPoly::constant(Rational(n)); }

std::vector<Sample> sample_function(const RationalFunction& f, std::size_t n, RandomStream& rng) {
    std::vector<Sample> out;
    while (out.size() < n) {
        Rational tv = rng.rational(25), sv = rng.rational(25);
        bool dup = false;
        for (const auto& s : out)
            if (s.t == tv && s.s == sv) dup = true;
        if (dup) continue;
        auto v = f.eval2(tv, sv);
        if (!v) continue;
        out.push_back({tv, sv, *v});
    }
    return out;
}

RationalFunction random_ratfunc(RandomStream& rng, int deg) {
    auto rand_poly = [&](bool nonzero) {
        MultiPoly p;
        for (int tries = 0; tries < 40; ++tries) {
            for (int i = 0; i < 4; ++i) {
                unsigned a = static_cast<unsigned>(rng.below(deg + 1));
                unsigned b = static_cast<unsigned>(rng.below(deg + 1 - a));
                p += MultiPoly::term(Monomial::var(Var::t, a) * Monomial::var(Var::s, b),
                                     rng.rational(6));
            }
            if (!nonzero || !p.is_zero()) break;
        }
        return p;
    };
    MultiPoly num = rand_poly(false);
    MultiPoly den = rand_poly(true);
    return RationalFunction(num, den);
}

}  // namespace

TEST_CASE("reconstruct a known function: t/(t^2+s^2)") {
    RationalFunction f(T(), T() * T() + S() * S());
    RandomStream rng(5);
    auto samples = sample_function(f, 20, rng);
    CHECK(reconstruct_rational_function(samples, 2) == f);
}

TEST_CASE("reconstruct -t from 6 points at bound 1") {
    RationalFunction f(-T(), MultiPoly::one());
    RandomStream rng(8);
    auto samples = sample_function(f, 6, rng);
    CHECK(reconstruct_rational_function(samples, 1) == f);
}

TEST_CASE("inconsistent samples raise no-consistent-branch") {
    // values of sqrt(t^2+s^2) at points where it is rational, one perturbed
    std::vector<Sample> samples = {
        {Rational(0), Rational(1), Rational(0)},    // perturbed from 1
        {Rational(3), Rational(4), Rational(5)},    {Rational(6), Rational(8), Rational(10)},
        {Rational(5), Rational(12), Rational(13)},  {Rational(8), Rational(15), Rational(17)},
        {Rational(20), Rational(21), Rational(29)}, {Rational(9), Rational(12), Rational(15)},
        {Rational(12), Rational(16), Rational(20)}, {Rational(7), Rational(24), Rational(25)},
        {Rational(9), Rational(40), Rational(41)},
    };
    CHECK_THROWS_AS(reconstruct_rational_function(samples, 1), Error);
}

TEST_CASE("round trip on random rational functions up to degree 4") {
    RandomStream rng(99);
    int done = 0;
    for (int i = 0; i < 300 && done < 100; ++i) {
        RationalFunction f = random_ratfunc(rng, 2);
        if (f.num().is_zero()) continue;
        int bound = 4;
        RandomStream srng(1000 + i);
        auto samples =
            sample_function(f, static_cast<std::size_t>((bound + 1) * (bound + 2)) + 10, srng);
        CHECK(reconstruct_rational_function(samples, bound) == f);
        ++done;
    }
    CHECK(done == 100);
}

TEST_CASE("pade recovers a branch from its taylor series") {
    // f = (1 + t - s) / (1 - t*s); the series comes from inv_trunc
    MultiPoly num = C(1) + T() - S();
    MultiPoly den = C(1) - T() * S();
    int bound = 2, prec = 2 * bound + 1;
    MultiPoly ser = series::mul_trunc(num, series::inv_trunc(den, prec), prec);
    auto got = pade_from_series(ser, {Var::t, Var::s}, bound);
    REQUIRE(got.has_value());
    CHECK(*got == RationalFunction(num, den));
}

TEST_CASE("series inverse is exact to the requested order") {
    MultiPoly f = C(1) + T() * C(3) - S() * S() + T() * S();
    int prec = 7;
    MultiPoly g = series::inv_trunc(f, prec);
    MultiPoly prod = series::mul_trunc(f, g, prec);
    CHECK(prod == C(1));
}
