#include <doctest.h>

#include "surfsym/diffgeo.hpp"
#include "test_util.hpp"

using namespace surfsym;
using namespace surfsym::testutil;

namespace {

const char* kSphere[3] = {"(1 - t^2 - s^2)/(1 + t^2 + s^2)", "2*t/(1 + t^2 + s^2)",
                          "2*s/(1 + t^2 + s^2)"};

SurfaceParam sphere() { return SurfaceParam::create(surf(kSphere[0], kSphere[1], kSphere[2])); }

SurfaceParam plane() { return SurfaceParam::create(surf("t", "s", "0")); }

SurfaceParam saddle() { return SurfaceParam::create(surf("t", "s", "t*s")); }

RFVec3 random_surface(RandomStream& rng) {
    for (;;) {
        RFVec3 x;
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
            MultiPoly p;
            for (int k = 0; k < 4; ++k) {
                unsigned a = static_cast<unsigned>(rng.below(3));
                unsigned b = static_cast<unsigned>(rng.below(3 - std::min(2u, a)));
                p += MultiPoly::term(Monomial::var(Var::t, a) * Monomial::var(Var::s, b),
                                     rng.rational(4));
            }
            x[i] = RationalFunction(p);
        }
        if (is_zero(cross(derivative(x, Var::t), derivative(x, Var::s)))) continue;
        (void)ok;
        return x;
    }
}

}  // namespace

TEST_CASE("normal: plane and paraboloid") {
    auto n = normal_unnormalized(plane());
    CHECK(n[0].is_zero());
    CHECK(n[1].is_zero());
    CHECK(n[2] == RationalFunction::constant(1));

    auto p = SurfaceParam::create(surf("t", "s", "t^2 + s^2"));
    auto np = normal_unnormalized(p);
    CHECK(np[0] == rf("-2*t"));
    CHECK(np[1] == rf("-2*s"));
    CHECK(np[2] == RationalFunction::constant(1));
}

TEST_CASE("normal is orthogonal to both partials (ellipsoid of the worked example)") {
    auto e = SurfaceParam::create(surf("2*(1 - s^2 - t^2)/(s^2 + t^2 + 1)",
                                       "-2*t/(s^2 + t^2 + 1)", "8*s/(s^2 + t^2 + 1)"));
    auto n = normal_unnormalized(e);
    CHECK(dot(n, derivative(e.components(), Var::t)).is_zero());
    CHECK(dot(n, derivative(e.components(), Var::s)).is_zero());
}

TEST_CASE("fundamental forms: plane, stereographic sphere, saddle") {
    auto fp = fundamental_forms(plane());
    CHECK(fp.E == RationalFunction::constant(1));
    CHECK(fp.F.is_zero());
    CHECK(fp.G == RationalFunction::constant(1));
    CHECK(fp.L2.is_zero());
    CHECK(fp.M2.is_zero());
    CHECK(fp.N2.is_zero());

    // stereographic sphere is conformal: E = G = 4/(1+t^2+s^2)^2, F = 0
    auto fs = fundamental_forms(sphere());
    RationalFunction conf = rf("4") / rf("(1 + t^2 + s^2)^2");
    CHECK(fs.E == conf);
    CHECK(fs.G == conf);
    CHECK(fs.F.is_zero());

    auto fz = fundamental_forms(saddle());
    CHECK(fz.E == rf("1 + s^2"));
    CHECK(fz.F == rf("t*s"));
    CHECK(fz.G == rf("1 + t^2"));
    CHECK(fz.L2.is_zero());
    CHECK(fz.M2 == RationalFunction::constant(1));
    CHECK(fz.N2.is_zero());
}

TEST_CASE("Lagrange identity: EG - F^2 = |x_t x x_s|^2") {
    RandomStream rng(17);
    int done = 0;
    for (int i = 0; i < 40 && done < 12; ++i) {
        RFVec3 x = random_surface(rng);
        RFVec3 n = cross(derivative(x, Var::t), derivative(x, Var::s));
        RFVec3 xt = derivative(x, Var::t), xs = derivative(x, Var::s);
        RationalFunction lhs = dot(xt, xt) * dot(xs, xs) - dot(xt, xs) * dot(xt, xs);
        CHECK(lhs == dot(n, n));
        ++done;
    }
    CHECK(done == 12);
}

TEST_CASE("gauss curvature: unit sphere 1, plane 0, tangent developable 0") {
    CHECK(gauss_curvature(sphere()) == RationalFunction::constant(1));
    CHECK(gauss_curvature(plane()).is_zero());
    // tangent developable of the twisted cubic: u + s u', u = (t, t^2, t^3)
    auto tang = SurfaceParam::create(
        surf("t + s", "t^2 + s*2*t", "t^3 + s*3*t^2"), /*check_proper=*/false);
    CHECK(gauss_curvature(tang).is_zero());
}

TEST_CASE("mean curvature squared: sphere 1, plane 0, saddle formula") {
    CHECK(mean_curvature_squared(sphere()) == RationalFunction::constant(1));
    CHECK(mean_curvature_squared(plane()).is_zero());
    // saddle: from the forms above, H^2 = t^2 s^2 / (1 + t^2 + s^2)^3
    CHECK(mean_curvature_squared(saddle()) == rf("t^2*s^2") / rf("(1 + t^2 + s^2)^3"));
}

TEST_CASE("pn detection") {
    auto w = pn_check(plane());
    REQUIRE(w.has_value());
    CHECK(*w == RationalFunction::constant(1));
    // paraboloid: Wsq = 1 + 4t^2 + 4s^2 is squarefree, not a square
    CHECK_FALSE(pn_check(SurfaceParam::create(surf("t", "s", "t^2 + s^2"))).has_value());
    // sphere is PN
    auto ws = pn_check(sphere());
    REQUIRE(ws.has_value());
    CHECK((*ws) * (*ws) == fundamental_forms(sphere()).Wsq);
}

TEST_CASE("pn witness squares to Wsq whenever present") {
    RandomStream rng(23);
    for (int i = 0; i < 10; ++i) {
        RFVec3 x = random_surface(rng);
        SurfaceParam sp = [&] {
            try {
                return SurfaceParam::create(x, false);
            } catch (const Error&) {
                return plane();
            }
        }();
        auto f = fundamental_forms(sp);
        auto w = pn_check(f);
        if (w) CHECK((*w) * (*w) == f.Wsq);
    }
}

TEST_CASE("curvature and torsion of the twisted cubic") {
    auto c = CurveParam::create({rf("t"), rf("t^2"), rf("t^3")});
    // frozen closed forms, checked against the defining identities below
    CHECK(curve_curvature_sq(c) ==
          rf("4*(9*t^4 + 9*t^2 + 1)") / rf("(9*t^4 + 4*t^2 + 1)^3"));
    CHECK(curve_torsion(c) == rf("3") / rf("9*t^4 + 9*t^2 + 1"));
    // identity: kappa^2 |c'|^6 = |c' x c''|^2
    RFVec3 d1 = derivative(c.components(), Var::t);
    RFVec3 d2 = derivative(d1, Var::t);
    CHECK(curve_curvature_sq(c) * dot(d1, d1).pow(3) == dot(cross(d1, d2), cross(d1, d2)));
}

TEST_CASE("unit circle: kappa^2 = 1, torsion 0") {
    auto c = CurveParam::create(
        {rf("(1 - t^2)/(1 + t^2)"), rf("2*t/(1 + t^2)"), RationalFunction::constant(0)});
    CHECK(curve_curvature_sq(c) == RationalFunction::constant(1));
    CHECK(curve_torsion(c).is_zero());
}

TEST_CASE("line raises curve-is-line") {
    auto c = CurveParam::create({rf("t"), rf("2*t"), rf("3*t")});
    CHECK_THROWS_AS(curve_curvature_sq(c), Error);
    CHECK_THROWS_AS(curve_torsion(c), Error);
}

TEST_CASE("curvatures are invariant under rational isometries") {
    RandomStream rng(29);
    int done = 0;
    for (int i = 0; i < 60 && done < 10; ++i) {
        RFVec3 x = random_surface(rng);
        SurfaceParam sp = [&]() -> SurfaceParam {
            try {
                return SurfaceParam::create(x, false);
            } catch (const Error&) {
                return plane();
            }
        }();
        if (sp.components()[0] == rf("t") && sp.components()[2].is_zero()) continue;
        QMat3 A = random_orthogonal(rng);
        QVec3 b{rng.rational(4), rng.rational(4), rng.rational(4)};
        SurfaceParam moved = SurfaceParam::create(apply_matrix(A, sp.components(), b), false);
        CHECK(gauss_curvature(moved) == gauss_curvature(sp));
        CHECK(mean_curvature_squared(moved) == mean_curvature_squared(sp));
        ++done;
    }
    CHECK(done == 10);
}

TEST_CASE("curvatures are covariant under affine reparametrization") {
    RandomStream rng(31);
    int done = 0;
    for (int i = 0; i < 60 && done < 10; ++i) {
        RFVec3 x = random_surface(rng);
        SurfaceParam sp = [&]() -> SurfaceParam {
            try {
                return SurfaceParam::create(x, false);
            } catch (const Error&) {
                return plane();
            }
        }();
        // invertible affine psi
        Rational a = rng.nonzero_rational(4), b = rng.rational(4), e = rng.rational(4);
        Rational c = rng.rational(4), d = rng.nonzero_rational(4), f = rng.rational(4);
        if (a * d - b * c == 0) continue;
        RationalFunction p1 = rf("t") * a + rf("s") * b + RationalFunction::constant(e);
        RationalFunction p2 = rf("t") * c + rf("s") * d + RationalFunction::constant(f);
        RFVec3 comp{compose_ts(sp.components()[0], p1, p2),
                    compose_ts(sp.components()[1], p1, p2),
                    compose_ts(sp.components()[2], p1, p2)};
        SurfaceParam re = [&]() -> SurfaceParam {
            try {
                return SurfaceParam::create(comp, false);
            } catch (const Error&) {
                return plane();
            }
        }();
        if (re.components()[0] == rf("t") && re.components()[2].is_zero()) continue;
        CHECK(gauss_curvature(re) == compose_ts(gauss_curvature(sp), p1, p2));
        CHECK(mean_curvature_squared(re) == compose_ts(mean_curvature_squared(sp), p1, p2));
        ++done;
    }
    CHECK(done == 10);
}
