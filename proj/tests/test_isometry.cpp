#include <doctest.h>

#include "surfsym/isometry.hpp"
#include "test_util.hpp"

using namespace surfsym;
using namespace surfsym::testutil;

namespace {

SurfaceParam saddle() { return SurfaceParam::create(surf("t", "s", "t*s")); }

Isometry diag(int a, int b, int c) {
    Isometry f = Isometry::identity();
    f.A[0][0] = a;
    f.A[1][1] = b;
    f.A[2][2] = c;
    f.det_sign = a * b * c;
    return f;
}

}  // namespace

TEST_CASE("compose and invert") {
    RandomStream rng(3);
    for (int i = 0; i < 20; ++i) {
        Isometry f;
        auto m = random_orthogonal(rng);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) f.A[r][c] = m[r][c];
        f.b = {rng.rational(5), rng.rational(5), rng.rational(5)};
        f.det_sign = det3(f.A) == 1 ? 1 : -1;
        CHECK(compose(f, invert(f)) == Isometry::identity());
        CHECK(compose(Isometry::identity(), f) == f);
        CHECK(is_orthogonal(compose(f, f).A));
    }
    // diag(-1,1,-1) * diag(1,-1,-1) = diag(-1,-1,1), by direct product
    CHECK(compose(diag(-1, 1, -1), diag(1, -1, -1)) == diag(-1, -1, 1));
}

TEST_CASE("solve_isometry: identity candidate gives the identity map") {
    CremonaCandidate id{rf("t"), rf("s")};
    id.verified = true;
    auto f = solve_isometry(saddle(), id);
    REQUIRE(f.has_value());
    CHECK(f->is_identity());
    CHECK(f->det_sign == 1);
}

TEST_CASE("solve_isometry: swap candidate on the saddle") {
    CremonaCandidate swap_cand{rf("s"), rf("t")};
    swap_cand.verified = true;
    auto f = solve_isometry(saddle(), swap_cand);
    REQUIRE(f.has_value());
    // (t,s,ts) -> (s,t,st) is the reflection swapping x and y
    CHECK(f->A[0][1] == 1);
    CHECK(f->A[1][0] == 1);
    CHECK(f->A[2][2] == 1);
    CHECK(f->A[0][0] == 0);
    CHECK(f->b[0] == 0);
    CHECK(f->det_sign == -1);
}

TEST_CASE("solve_isometry rejects a non-symmetry candidate") {
    CremonaCandidate bad{rf("2*t"), rf("s")};
    bad.verified = true;
    CHECK_FALSE(solve_isometry(saddle(), bad).has_value());
}

TEST_CASE("curve isometries: twisted cubic under t -> -t") {
    RFVec3 c = {rf("t"), rf("t^2"), rf("t^3")};
    RFVec3 y = {rf("-t"), rf("t^2"), rf("-t^3")};
    auto fs = solve_curve_isometries(c, y);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0] == diag(-1, 1, -1));
}

TEST_CASE("curve isometries: planar curve gives the two mirror solutions") {
    // planar cubic in the z=0 plane; identity reparametrization is matched by
    // both the identity and the reflection through the plane
    RFVec3 c = {rf("t"), rf("t^2 + t^3"), rf("0")};
    auto fs = solve_curve_isometries(c, c);
    REQUIRE(fs.size() == 2);
    bool has_id = false, has_mirror = false;
    for (const auto& f : fs) {
        if (f.is_identity()) has_id = true;
        if (f == diag(1, 1, -1)) has_mirror = true;
    }
    CHECK(has_id);
    CHECK(has_mirror);
}

TEST_CASE("group closure: identity alone, full diagonal group, broken set") {
    std::vector<SymmetryRecord> only_id{{Isometry::identity(), {}, Provenance::general_pipeline,
                                         XiSource::general}};
    auto rep = group_closure_check(only_id);
    CHECK(rep.closed);
    CHECK(rep.order == 1);
    CHECK(rep.contains_identity);

    // the eight sign matrices form (Z/2)^3: composing any two stays inside
    std::vector<SymmetryRecord> eight;
    for (int a : {1, -1})
        for (int b : {1, -1})
            for (int c : {1, -1})
                eight.push_back({diag(a, b, c), {}, Provenance::general_pipeline,
                                 XiSource::general});
    rep = group_closure_check(eight);
    CHECK(rep.closed);
    CHECK(rep.order == 8);

    // 90-degree rotation about x without its square: not closed
    Isometry rot = Isometry::identity();
    rot.A[1][1] = 0;
    rot.A[1][2] = -1;
    rot.A[2][1] = 1;
    rot.A[2][2] = 0;
    std::vector<SymmetryRecord> broken{
        {Isometry::identity(), {}, Provenance::general_pipeline, XiSource::general},
        {rot, {}, Provenance::general_pipeline, XiSource::general}};
    rep = group_closure_check(broken);
    CHECK_FALSE(rep.closed);
    CHECK_FALSE(rep.missing.empty());
}

TEST_CASE("isometries returned are exactly orthogonal with det sign recorded") {
    CremonaCandidate id{rf("t"), rf("s")};
    for (const char* p1 : {"s", "-t", "-s"}) {
        for (const char* p2 : {"t", "-s", "s"}) {
            CremonaCandidate cand{rf(p1), rf(p2)};
            auto f = solve_isometry(saddle(), cand);
            if (!f) continue;
            CHECK(is_orthogonal(f->A));
            Rational d = det3(f->A);
            CHECK((d == 1 || d == -1));
            CHECK(f->det_sign == (d == 1 ? 1 : -1));
        }
    }
}
