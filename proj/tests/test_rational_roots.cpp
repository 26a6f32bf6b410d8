#include <doctest.h>

#include <algorithm>

#include "surfsym/upoly.hpp"

using namespace surfsym;

namespace {

MultiPoly U() { return MultiPoly::variable(Var::u); }
MultiPoly C(long n) { return MultiPoly::constant(Rational(n)); }

bool same_roots(std::vector<Rational> got, std::vector<Rational> want) {
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    return got == want;
}

}  // namespace

TEST_CASE("rational roots: factorable quadratic") {
    // 2u^2 - u - 1 = (u - 1)(2u + 1)
    auto roots = rational_roots_univar(C(2) * U() * U() - U() - C(1));
    CHECK(same_roots(roots, {Rational(1), make_rational(-1, 2)}));
}

TEST_CASE("rational roots: none for u^2 + 1") {
    CHECK(rational_roots_univar(U() * U() + C(1)).empty());
}

TEST_CASE("rational roots: cubic verified by substitution") {
    // 6u^3 - 5u^2 - 2u + 1; candidates verified by exact substitution
    MultiPoly p = C(6) * U().pow(3) - C(5) * U() * U() - C(2) * U() + C(1);
    auto roots = rational_roots_univar(p);
    CHECK(same_roots(roots, {Rational(1), make_rational(1, 3), make_rational(-1, 2)}));
    for (const auto& r : roots) CHECK(p.eval_var(Var::u, r).is_zero());
}

TEST_CASE("rational roots: multiplicities discarded, zero root found") {
    MultiPoly p = U().pow(2) * (U() - C(3)).pow(3) * (C(5) * U() + C(2));
    auto roots = rational_roots_univar(p);
    CHECK(same_roots(roots, {Rational(0), Rational(3), make_rational(-2, 5)}));
}

TEST_CASE("rational roots: large coefficients (modular path)") {
    // plant roots with tall numerators/denominators times an irrational part
    MultiPoly p = (C(97) * U() - C(1234577)) * (C(1000003) * U() + C(999983)) *
                  (U() * U() + C(7));
    auto roots = rational_roots_univar(p);
    CHECK(same_roots(roots, {make_rational(1234577, 97), make_rational(-999983, 1000003)}));
}

TEST_CASE("random planted roots round trip") {
    RandomStream rng(31337);
    for (int i = 0; i < 20; ++i) {
        std::vector<Rational> want;
        MultiPoly p = C(1);
        for (int k = 0; k < 3; ++k) {
            Rational r = rng.rational(30);
            if (std::find(want.begin(), want.end(), r) != want.end()) continue;
            want.push_back(r);
            p = p * (MultiPoly::constant(Rational(r.get_den())) * U() -
                     MultiPoly::constant(Rational(r.get_num())));
        }
        p = p * (U() * U() + C(1));
        CHECK(same_roots(rational_roots_univar(p), want));
    }
}
