#include <doctest.h>

#include "surfsym/ruled.hpp"
#include "test_util.hpp"

using namespace surfsym;
using namespace surfsym::testutil;

namespace {

// x5 of the ruled-surface examples: (4 + s(t+1)^2, 1 + s(t+1), t + s)
SurfaceParam x5() {
    return SurfaceParam::create(
        surf("4 + s*(t + 1)^2", "1 + s*(t + 1)", "t + s"));
}

RuledSurface tangent_developable_twisted_cubic() {
    // u = (t, t^2, t^3), v = u'
    RuledSurface r;
    r.directrix = {rf("t"), rf("t^2"), rf("t^3")};
    r.ruling = {rf("1"), rf("2*t"), rf("3*t^2")};
    return r;
}

}  // namespace

TEST_CASE("detect_standard_form on x5 and the saddle; quadratic-in-s is rejected") {
    auto r = detect_standard_form(x5());
    REQUIRE(r.has_value());
    CHECK(r->directrix[0] == rf("4"));
    CHECK(r->directrix[1] == rf("1"));
    CHECK(r->directrix[2] == rf("t"));
    CHECK(r->ruling[0] == rf("(t + 1)^2"));
    CHECK(r->ruling[1] == rf("t + 1"));
    CHECK(r->ruling[2] == rf("1"));

    auto saddle = detect_standard_form(SurfaceParam::create(surf("t", "s", "t*s")));
    REQUIRE(saddle.has_value());
    CHECK(saddle->directrix[1].is_zero());
    CHECK(saddle->ruling[1] == rf("1"));

    auto ell = detect_standard_form(SurfaceParam::create(
        surf("2*(1 - s^2 - t^2)/(s^2 + t^2 + 1)", "-2*t/(s^2 + t^2 + 1)",
             "8*s/(s^2 + t^2 + 1)")));
    CHECK_FALSE(ell.has_value());
}

TEST_CASE("classify: x5 is not developable (mixed product check)") {
    auto r = detect_standard_form(x5());
    // oracle: [u', v, v'] = -(t+1)^2, not identically zero
    RationalFunction mp = mixed_product(derivative(r->directrix, Var::t), r->ruling,
                                        derivative(r->ruling, Var::t));
    CHECK(mp == -rf("(t + 1)^2"));
    CHECK(classify_developable(*r).tag == DevelopableClass::Tag::not_developable);
}

TEST_CASE("classify: cylinder over a parabola") {
    RuledSurface r;
    r.directrix = {rf("t"), rf("t^2"), rf("0")};
    r.ruling = {rf("0"), rf("0"), rf("1")};
    auto cls = classify_developable(r);
    CHECK(cls.tag == DevelopableClass::Tag::cylindrical);
    REQUIRE(cls.direction.has_value());
    CHECK((*cls.direction)[2] == 1);
    CHECK_THROWS_AS(striction_line(r), Error);
}

TEST_CASE("classify: cone and plane") {
    RuledSurface cone;
    cone.directrix = {rf("1"), rf("2"), rf("3")};  // vertex shifted to (1,2,3)
    cone.ruling = {rf("t"), rf("t^2"), rf("1")};
    auto cls = classify_developable(cone);
    CHECK(cls.tag == DevelopableClass::Tag::conical);
    REQUIRE(cls.vertex.has_value());
    CHECK((*cls.vertex)[0] == 1);
    CHECK((*cls.vertex)[1] == 2);
    CHECK((*cls.vertex)[2] == 3);

    RuledSurface plane;
    plane.directrix = {rf("t"), rf("2*t"), rf("0")};
    plane.ruling = {rf("1"), rf("t"), rf("0")};
    CHECK(classify_developable(plane).tag == DevelopableClass::Tag::planar);
}

TEST_CASE("classify: tangent developable of the twisted cubic") {
    auto r = tangent_developable_twisted_cubic();
    CHECK(classify_developable(r).tag == DevelopableClass::Tag::tangential);
    // the directrix is already the striction line
    CurveParam c = striction_line(r);
    CHECK(c.components()[0] == r.directrix[0]);
    CHECK(c.components()[1] == r.directrix[1]);
    CHECK(c.components()[2] == r.directrix[2]);
}

TEST_CASE("striction line of x5 satisfies the defining orthogonality") {
    auto r = detect_standard_form(x5());
    CurveParam c = striction_line(*r);
    // c' is orthogonal to the derivative of the normalized ruling direction:
    // c' . (v'(v.v) - v(v.v')) = 0 in cleared rational form
    RFVec3 vp = derivative(r->ruling, Var::t);
    RFVec3 nd = dot(r->ruling, r->ruling) * vp - dot(r->ruling, vp) * r->ruling;
    CHECK(dot(derivative(c.components(), Var::t), nd).is_zero());
}

TEST_CASE("striction is invariant under isometries and directrix changes") {
    RandomStream rng(71);
    int done = 0;
    for (int i = 0; i < 40 && done < 8; ++i) {
        // random non-cylindrical ruled surface of small degree
        RuledSurface r;
        for (int k = 0; k < 3; ++k) {
            MultiPoly pu, pv;
            for (int d = 0; d <= 2; ++d) {
                pu += MultiPoly::variable(Var::t, static_cast<unsigned>(d)) *
                      MultiPoly::constant(rng.rational(4));
                pv += MultiPoly::variable(Var::t, static_cast<unsigned>(d)) *
                      MultiPoly::constant(rng.rational(4));
            }
            r.directrix[k] = RationalFunction(pu);
            r.ruling[k] = RationalFunction(pv);
        }
        if (is_zero(r.ruling)) continue;
        if (is_zero(cross(r.ruling, derivative(r.ruling, Var::t)))) continue;
        RFVec3 c;
        try {
            c = detail::striction_vector(r);
        } catch (const Error&) {
            continue;
        }
        // equivariance: striction of (A u + b, A v) is A c + b
        QMat3 A = random_orthogonal(rng);
        QVec3 b{rng.rational(4), rng.rational(4), rng.rational(4)};
        RuledSurface moved;
        moved.directrix = apply_matrix(A, r.directrix, b);
        moved.ruling = apply_matrix(A, r.ruling, {Rational(0), Rational(0), Rational(0)});
        RFVec3 cm = detail::striction_vector(moved);
        RFVec3 expect = apply_matrix(A, c, b);
        CHECK(cm[0] == expect[0]);
        CHECK(cm[1] == expect[1]);
        CHECK(cm[2] == expect[2]);
        // directrix independence: replace u by u + lambda(t) v
        MultiPoly lam = MultiPoly::variable(Var::t) * MultiPoly::constant(rng.rational(3)) +
                        MultiPoly::constant(rng.rational(3));
        RuledSurface shifted;
        shifted.directrix = r.directrix + RationalFunction(lam) * r.ruling;
        shifted.ruling = r.ruling;
        RFVec3 cs = detail::striction_vector(shifted);
        CHECK(cs[0] == c[0]);
        CHECK(cs[1] == c[1]);
        CHECK(cs[2] == c[2]);
        ++done;
    }
    CHECK(done == 8);
}

TEST_CASE("curve symmetries: twisted cubic has exactly the sign flip") {
    auto c = CurveParam::create({rf("t"), rf("t^2"), rf("t^3")});
    auto result = curve_symmetries(c);
    CHECK_FALSE(result.infinite);
    REQUIRE(result.symmetries.size() == 2);
    bool has_id = false, has_flip = false;
    for (const auto& s : result.symmetries) {
        if (s.isometry.is_identity()) has_id = true;
        Isometry flip = Isometry::identity();
        flip.A[0][0] = -1;
        flip.A[2][2] = -1;
        if (s.isometry == flip) {
            has_flip = true;
            // phi = -t
            CHECK(s.reparam.as_function() == rf("-t"));
        }
    }
    CHECK(has_id);
    CHECK(has_flip);
}

TEST_CASE("curve symmetries: unit circle and lines signal infinite") {
    auto circle = CurveParam::create(
        {rf("(1 - t^2)/(1 + t^2)"), rf("2*t/(1 + t^2)"), rf("0")});
    CHECK(curve_symmetries(circle).infinite);
    auto line = CurveParam::create({rf("t"), rf("2*t"), rf("3*t")});
    CHECK(curve_symmetries(line).infinite);
}

TEST_CASE("curve symmetries reject non-proper input") {
    auto c = CurveParam::create({rf("t^2"), rf("t^4"), rf("t^6")});
    CHECK_THROWS_AS(curve_symmetries(c), Error);
}

TEST_CASE("lift: tangent developable lifts every striction symmetry") {
    auto r = tangent_developable_twisted_cubic();
    auto result = ruled_symmetries(r);
    CHECK_FALSE(result.fallback.has_value());
    CHECK(result.symmetries.size() == 2);
    for (const auto& rec : result.symmetries) {
        CHECK(rec.provenance == Provenance::ruled_pipeline);
        CHECK(rec.reparam.verified);
        CHECK(is_orthogonal(rec.isometry.A));
    }
}

TEST_CASE("lift rejects a ruling field broken on purpose") {
    // striction line of the twisted cubic tangent surface with an asymmetric
    // ruling attached: the curve symmetry t -> -t no longer maps rulings to
    // rulings, so the lift must fail
    RuledSurface r;
    r.directrix = {rf("t"), rf("t^2"), rf("t^3")};
    r.ruling = {rf("1"), rf("t + 1"), rf("t^2")};
    MobiusTransform phi{Rational(-1), Rational(0), Rational(0), Rational(1)};
    Isometry flip = Isometry::identity();
    flip.A[0][0] = -1;
    flip.A[2][2] = -1;
    CHECK_FALSE(lift_to_surface(r, phi, flip, false));
    CHECK(lift_to_surface(r, MobiusTransform::identity(), Isometry::identity(), false));
}

TEST_CASE("ruled pipeline: x5 has exactly 2 symmetries") {
    auto r = detect_standard_form(x5());
    auto result = ruled_symmetries(*r);
    CHECK_FALSE(result.fallback.has_value());
    CHECK(result.symmetries.size() == 2);
}

TEST_CASE("ruled pipeline falls back when the striction line is a line") {
    // Pluecker conoid k=1: ((1-t^2)s/(1+t^2), 2ts/(1+t^2), 4t(1-t^2)/(1+t^2)^2)
    bool proper_warn = false;
    auto x = SurfaceParam::create(surf("(1 - t^2)*s/(1 + t^2)", "2*t*s/(1 + t^2)",
                                       "4*t*(1 - t^2)/(1 + t^2)^2"),
                                  true, &proper_warn);
    CHECK(proper_warn);  // the conoid chart is 2:1
    auto r = detect_standard_form(x);
    REQUIRE(r.has_value());
    auto result = ruled_symmetries(*r);
    REQUIRE(result.fallback.has_value());
    CHECK(*result.fallback == RuledFallback::striction_degenerate);
}
