/// Ruled surfaces: standard-form detection, developable classification, the
/// striction line, space-curve symmetries via Moebius transformations, and
/// the lift of curve symmetries back to the surface.
#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "surfsym/cremona.hpp"
#include "surfsym/diffgeo.hpp"
#include "surfsym/isometry.hpp"

namespace surfsym {

struct MobiusTransform {
    Rational a, b, c, d;  // t -> (a t + b)/(c t + d), ad - bc != 0

    static MobiusTransform identity() { return {Rational(1), Rational(0), Rational(0), Rational(1)}; }

    RationalFunction as_function() const {
        MultiPoly num = MultiPoly::variable(Var::t) * a + MultiPoly::constant(b);
        MultiPoly den = MultiPoly::variable(Var::t) * c + MultiPoly::constant(d);
        return RationalFunction(num, den);
    }

    RationalFunction derivative() const {
        MultiPoly den = MultiPoly::variable(Var::t) * c + MultiPoly::constant(d);
        return RationalFunction(MultiPoly::constant(a * d - b * c), den * den);
    }

    /// Recognize a rational function as a Moebius transformation.
    static std::optional<MobiusTransform> from_function(const RationalFunction& f) {
        if (f.num().degree(Var::t) > 1 || f.den().degree(Var::t) > 1) return std::nullopt;
        if (f.support() & ~(1u << var_index(Var::t))) return std::nullopt;
        auto coeff = [](const MultiPoly& p, unsigned e) {
            for (const auto& t : p.terms())
                if (t.m.exp(Var::t) == e && t.m.degree() == e) return t.c;
            return Rational(0);
        };
        MobiusTransform m{coeff(f.num(), 1), coeff(f.num(), 0), coeff(f.den(), 1),
                          coeff(f.den(), 0)};
        if (m.a * m.d - m.b * m.c == 0) return std::nullopt;
        return m;
    }
};

/// Standard parametrization u(t) + s v(t).  The ruling direction may be a
/// constant vector, so it is kept as raw components rather than a CurveParam.
struct RuledSurface {
    RFVec3 directrix;  // u(t)
    RFVec3 ruling;     // v(t), not identically zero
};

struct DevelopableClass {
    enum class Tag { not_developable, planar, cylindrical, conical, tangential };
    Tag tag = Tag::not_developable;
    std::optional<QVec3> direction;  // cylindrical: common ruling direction
    std::optional<QVec3> vertex;     // conical: the fixed point
};

inline const char* developable_name(DevelopableClass::Tag t) {
    switch (t) {
        case DevelopableClass::Tag::not_developable: return "not developable";
        case DevelopableClass::Tag::planar: return "planar";
        case DevelopableClass::Tag::cylindrical: return "cylindrical";
        case DevelopableClass::Tag::conical: return "conical";
        case DevelopableClass::Tag::tangential: return "tangential";
    }
    return "?";
}

/// Read off u(t) = x(t,0) and v(t) = dx/ds when every component is a
/// polynomial of degree <= 1 in s; absent otherwise.
inline std::optional<RuledSurface> detect_standard_form(const SurfaceParam& x) {
    RuledSurface r;
    for (int i = 0; i < 3; ++i) {
        const RationalFunction& c = x.components()[i];
        if (c.den().uses(Var::s)) return std::nullopt;
        if (c.num().degree(Var::s) > 1) return std::nullopt;
        r.ruling[i] = c.derivative(Var::s);
        r.directrix[i] = RationalFunction(c.num().eval_var(Var::s, Rational(0)), c.den());
    }
    if (is_zero(r.ruling)) return std::nullopt;
    return r;
}

namespace detail {

/// Raw striction expression c = u - ((v x v')(v x u'))/|v x v'|^2 v.
inline RFVec3 striction_vector(const RuledSurface& r) {
    RFVec3 vp = derivative(r.ruling, Var::t);
    RFVec3 up = derivative(r.directrix, Var::t);
    RFVec3 vxvp = cross(r.ruling, vp);
    RationalFunction denom = dot(vxvp, vxvp);
    if (denom.is_zero()) fail(errc::striction_undefined, "striction undefined for cylindrical");
    RationalFunction coeff = dot(vxvp, cross(r.ruling, up)) / denom;
    return r.directrix - coeff * r.ruling;
}

/// Direction of a vector field that is constant up to scale, as an exact
/// primitive integer vector.
inline std::optional<QVec3> constant_direction(const RFVec3& v) {
    // v x v' must vanish for the direction to be constant
    if (!is_zero(cross(v, derivative(v, Var::t)))) return std::nullopt;
    RandomStream rng(0xd12ec7);
    for (int tries = 0; tries < 64; ++tries) {
        auto val = eval1(v, rng.rational(10));
        if (!val) continue;
        if ((*val)[0] == 0 && (*val)[1] == 0 && (*val)[2] == 0) continue;
        Integer den_lcm = 1;
        for (int i = 0; i < 3; ++i) den_lcm = lcm(den_lcm, (*val)[i].get_den());
        Integer g = 0;
        QVec3 out;
        for (int i = 0; i < 3; ++i) {
            Integer num = (*val)[i].get_num() * (den_lcm / (*val)[i].get_den());
            out[i] = Rational(num);
            g = gcd(g, num);
        }
        int lead = out[0] != 0 ? 0 : (out[1] != 0 ? 1 : 2);
        if (out[lead] < 0) g = -g;
        for (int i = 0; i < 3; ++i) out[i] /= Rational(g);
        return out;
    }
    return std::nullopt;
}

/// Does one affine equation a.x + d = 0 hold on the whole surface?
inline bool surface_is_planar(const RFVec3& x) {
    RandomStream rng(0x91a9e);
    QMatrix rows;
    int got = 0;
    while (got < 12) {
        auto p = eval2(x, rng.rational(9), rng.rational(9));
        if (!p) continue;
        rows.push_back({(*p)[0], (*p)[1], (*p)[2], Rational(1)});
        ++got;
    }
    auto basis = nullspace(std::move(rows));
    for (const auto& cand : basis) {
        RationalFunction lhs = x[0] * cand[0] + x[1] * cand[1] + x[2] * cand[2] +
                               RationalFunction::constant(cand[3]);
        if (lhs.is_zero()) return true;
    }
    return false;
}

}  // namespace detail

/// Developable classification by the mixed product [u', v, v'].
inline DevelopableClass classify_developable(const RuledSurface& r) {
    DevelopableClass out;
    RFVec3 vp = derivative(r.ruling, Var::t);
    RFVec3 up = derivative(r.directrix, Var::t);
    if (!mixed_product(up, r.ruling, vp).is_zero()) {
        out.tag = DevelopableClass::Tag::not_developable;
        return out;
    }
    RFVec3 x;  // induced surface u + s v
    for (int i = 0; i < 3; ++i)
        x[i] = r.directrix[i] + RationalFunction::variable(Var::s) * r.ruling[i];
    if (detail::surface_is_planar(x)) {
        out.tag = DevelopableClass::Tag::planar;
        return out;
    }
    if (auto dir = detail::constant_direction(r.ruling)) {
        out.tag = DevelopableClass::Tag::cylindrical;
        out.direction = dir;
        return out;
    }
    RFVec3 c = detail::striction_vector(r);
    if (is_zero(derivative(c, Var::t))) {
        out.tag = DevelopableClass::Tag::conical;
        QVec3 vert;
        for (int i = 0; i < 3; ++i) vert[i] = c[i].constant_value();
        out.vertex = vert;
        return out;
    }
    out.tag = DevelopableClass::Tag::tangential;
    return out;
}

/// The line of striction as a curve.  Its derivative is orthogonal to the
/// derivative of the *normalized* ruling direction; in rational form,
/// c' . (v' (v.v) - v (v.v')) = 0, which reduces to c'.v' = 0 when |v| is
/// constant.
inline CurveParam striction_line(const RuledSurface& r) {
    RFVec3 c = detail::striction_vector(r);
    RFVec3 vp = derivative(r.ruling, Var::t);
    RFVec3 dir_deriv = dot(r.ruling, r.ruling) * vp - dot(r.ruling, vp) * r.ruling;
    if (!dot(derivative(c, Var::t), dir_deriv).is_zero())
        fail(errc::internal, "striction line lost its defining orthogonality");
    return CurveParam::create(c);
}

// ---------------------------------------------------------------------------
// Space-curve symmetries.

struct CurveSymmetry {
    MobiusTransform reparam;
    Isometry isometry;
};

struct CurveSymmetryResult {
    bool infinite = false;  // the curve is a line or a circle
    std::vector<CurveSymmetry> symmetries;
    bool warning = false;
};

/// All symmetries of a proper rational space curve, by matching kappa^2 and
/// +-tau under a Moebius reparametrization.
inline CurveSymmetryResult curve_symmetries(const CurveParam& c, int degree_bound = 4,
                                            std::uint64_t seed = 1) {
    CurveSymmetryResult out;
    RFVec3 d1 = derivative(c.components(), Var::t);
    RFVec3 d2 = derivative(d1, Var::t);
    if (is_zero(cross(d1, d2))) {
        out.infinite = true;  // a straight line
        return out;
    }
    RationalFunction kappa2 = curve_curvature_sq(c);
    RationalFunction tau = curve_torsion(c);
    if (kappa2.is_constant() && tau.is_zero()) {
        out.infinite = true;  // a circle
        return out;
    }
    if (!curve_is_proper(c.components())) fail(errc::not_proper, "input not proper");

    auto cross_match_w = [](const RationalFunction& f, bool sum) {
        MultiPoly n2 = f.num().rename(Var::t, Var::w);
        MultiPoly d2w = f.den().rename(Var::t, Var::w);
        MultiPoly m = sum ? f.num() * d2w + n2 * f.den() : f.num() * d2w - n2 * f.den();
        return m.is_zero() ? m : squarefree_all(m.primitive_part());
    };

    MultiPoly xi1 = cross_match_w(kappa2, false);
    for (bool minus : {false, true}) {
        MultiPoly xi2 = cross_match_w(tau, minus);
        MultiPoly g = gcd_poly(xi1, xi2);
        if (g.is_zero() || g.degree(Var::w) < 1) continue;
        g = squarefree_part(g, Var::w);
        std::vector<RationalFunction> phis;
        if (g.degree(Var::w) == 1) {
            auto cs = g.coefficients_in(Var::w);
            phis.push_back(RationalFunction(-cs[0], cs[1]));
        } else {
            bool warn = false;
            phis = extract_branches(g, Var::w, degree_bound, 64, seed, &warn);
            out.warning = out.warning || warn;
        }
        for (const auto& phi_fn : phis) {
            auto mob = MobiusTransform::from_function(phi_fn);
            if (!mob) continue;  // only Moebius reparametrizations can match
            RFVec3 y;
            for (int i = 0; i < 3; ++i) y[i] = compose_t(c.components()[i], phi_fn);
            for (const Isometry& f : solve_curve_isometries(c.components(), y)) {
                bool dup = false;
                for (const auto& known : out.symmetries)
                    dup = dup || (known.isometry == f &&
                                  known.reparam.as_function() == phi_fn);
                if (!dup) out.symmetries.push_back({*mob, f});
            }
        }
    }
    std::sort(out.symmetries.begin(), out.symmetries.end(),
              [](const CurveSymmetry& a, const CurveSymmetry& b) {
                  return a.isometry.key() < b.isometry.key();
              });
    return out;
}

// ---------------------------------------------------------------------------
// Lifting curve symmetries to the surface.

/// With the striction line as directrix, (phi, f) lifts iff rulings map to
/// rulings: A v(t) parallel to v(phi(t)).  Tangential surfaces always lift.
inline bool lift_to_surface(const RuledSurface& r, const MobiusTransform& phi, const Isometry& f,
                            bool tangential = false) {
    if (tangential) return true;
    RationalFunction phi_fn = phi.as_function();
    RFVec3 av;
    for (int i = 0; i < 3; ++i)
        av[i] = r.ruling[0] * f.A[i][0] + r.ruling[1] * f.A[i][1] + r.ruling[2] * f.A[i][2];
    RFVec3 w;
    for (int i = 0; i < 3; ++i) w[i] = compose_t(r.ruling[i], phi_fn);
    return is_zero(cross(av, w));
}

enum class RuledFallback {
    planar,
    cylindrical,
    conical,
    striction_degenerate,  // the striction line is a line or a circle
};

struct RuledResult {
    std::vector<SymmetryRecord> symmetries;
    std::vector<CurveSymmetry> curve_only;  // striction symmetries that do not lift
    std::optional<RuledFallback> fallback;
    DevelopableClass classification;
    bool warning = false;
};

/// The ruled pipeline: classify, take the striction line, compute its
/// symmetries, and lift the ones that preserve the rulings.  The returned
/// reparametrizations are expressed in the coordinates of the input
/// parametrization u + s v and verified symbolically against it.
inline RuledResult ruled_symmetries(const RuledSurface& r, int degree_bound = 4,
                                    std::uint64_t seed = 1) {
    RuledResult out;
    out.classification = classify_developable(r);
    using Tag = DevelopableClass::Tag;
    switch (out.classification.tag) {
        case Tag::planar: out.fallback = RuledFallback::planar; return out;
        case Tag::cylindrical: out.fallback = RuledFallback::cylindrical; return out;
        case Tag::conical: out.fallback = RuledFallback::conical; return out;
        default: break;
    }
    bool tangential = out.classification.tag == Tag::tangential;

    CurveParam strict = striction_line(r);
    CurveSymmetryResult curve = curve_symmetries(strict, degree_bound, seed);
    out.warning = curve.warning;
    if (curve.infinite) {
        out.fallback = RuledFallback::striction_degenerate;
        return out;
    }

    // input directrix u = c + lambda v; lambda is rational
    RationalFunction lambda;
    {
        RFVec3 diff = r.directrix - strict.components();
        lambda = RationalFunction(MultiPoly::zero());
        for (int i = 0; i < 3 && lambda.is_zero(); ++i)
            if (!r.ruling[i].is_zero()) lambda = diff[i] / r.ruling[i];
        // consistency: diff must be lambda * v
        RFVec3 check = diff - lambda * r.ruling;
        if (!is_zero(check)) fail(errc::internal, "directrix does not sit on the ruling family");
    }

    RFVec3 x;  // the input parametrization
    for (int i = 0; i < 3; ++i)
        x[i] = r.directrix[i] + RationalFunction::variable(Var::s) * r.ruling[i];

    for (const auto& cs : curve.symmetries) {
        if (!lift_to_surface(r, cs.reparam, cs.isometry, tangential)) {
            out.curve_only.push_back(cs);
            continue;
        }
        RationalFunction phi_fn = cs.reparam.as_function();
        // rho from A v = rho * (v o phi)
        RFVec3 av;
        for (int i = 0; i < 3; ++i)
            av[i] = r.ruling[0] * cs.isometry.A[i][0] + r.ruling[1] * cs.isometry.A[i][1] +
                    r.ruling[2] * cs.isometry.A[i][2];
        RFVec3 vphi;
        for (int i = 0; i < 3; ++i) vphi[i] = compose_t(r.ruling[i], phi_fn);
        RationalFunction rho;
        bool rho_ok = false;
        for (int i = 0; i < 3 && !rho_ok; ++i) {
            if (vphi[i].is_zero()) continue;
            rho = av[i] / vphi[i];
            rho_ok = true;
        }
        if (!rho_ok) {
            out.curve_only.push_back(cs);
            continue;
        }
        // psi in input coordinates: psi2 = rho s + (lambda rho - lambda o phi)
        RationalFunction mu = lambda * rho - compose_t(lambda, phi_fn);
        RationalFunction psi2 =
            rho * RationalFunction::variable(Var::s) + mu;
        CremonaCandidate cand{phi_fn, psi2, false};
        // full symbolic commutation check on the input parametrization
        RFVec3 fx = cs.isometry.apply(x);
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            RationalFunction xpsi = compose_ts(x[i], cand.psi1, cand.psi2);
            if (fx[i] != xpsi) ok = false;
        }
        if (!ok) {
            out.curve_only.push_back(cs);
            continue;
        }
        cand.verified = true;
        SymmetryRecord rec;
        rec.isometry = cs.isometry;
        rec.reparam = cand;
        rec.provenance = Provenance::ruled_pipeline;
        out.symmetries.push_back(std::move(rec));
    }
    std::sort(out.symmetries.begin(), out.symmetries.end(),
              [](const SymmetryRecord& a, const SymmetryRecord& b) {
                  return a.isometry.key() < b.isometry.key();
              });
    return out;
}

}  // namespace surfsym
