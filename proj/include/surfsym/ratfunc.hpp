/// Reduced rational functions: num/den with gcd(num, den) = 1 and the
/// denominator normalized to positive leading coefficient.
#pragma once

#include <array>
#include <cassert>
#include <optional>
#include <string>

#include "surfsym/gcd.hpp"
#include "surfsym/multipoly.hpp"

namespace surfsym {

class RationalFunction {
  public:
    RationalFunction() : num_(MultiPoly::zero()), den_(MultiPoly::one()) {}

    RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) fail(errc::degenerate_parametrization, "zero denominator");
        reduce();
    }

    /* implicit */ RationalFunction(const MultiPoly& p) : num_(p), den_(MultiPoly::one()) {}

    static RationalFunction constant(const Rational& c) {
        return RationalFunction(MultiPoly::constant(c));
    }
    static RationalFunction variable(Var v) { return RationalFunction(MultiPoly::variable(v)); }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    Rational constant_value() const {
        assert(is_constant());
        if (num_.is_zero()) return Rational(0);
        return num_.constant_value() / den_.constant_value();
    }

    bool is_polynomial() const { return den_.is_constant(); }

    unsigned support() const { return num_.support() | den_.support(); }
    bool uses(Var v) const { return num_.uses(v) || den_.uses(v); }

    int degree_max() const { return std::max(num_.total_degree(), den_.total_degree()); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) fail(errc::degenerate_parametrization, "division by zero function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    RationalFunction operator*(const Rational& c) const {
        return RationalFunction(num_ * c, den_);
    }

    bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    RationalFunction pow(unsigned e) const { return RationalFunction(num_.pow(e), den_.pow(e)); }

    /// Quotient rule, reduced.
    RationalFunction derivative(Var v) const {
        return RationalFunction(num_.derivative(v) * den_ - num_ * den_.derivative(v),
                                den_ * den_);
    }

    std::optional<Rational> eval(const std::array<std::optional<Rational>, kNumVars>& vals) const {
        MultiPoly d = den_.eval_partial(vals);
        assert(d.is_constant());
        if (d.is_zero()) return std::nullopt;
        MultiPoly n = num_.eval_partial(vals);
        assert(n.is_constant());
        return n.constant_value() / d.constant_value();
    }

    std::optional<Rational> eval2(const Rational& tv, const Rational& sv) const {
        std::array<std::optional<Rational>, kNumVars> vals{};
        vals[var_index(Var::t)] = tv;
        vals[var_index(Var::s)] = sv;
        return eval(vals);
    }

    std::optional<Rational> eval1(const Rational& tv) const {
        std::array<std::optional<Rational>, kNumVars> vals{};
        vals[var_index(Var::t)] = tv;
        return eval(vals);
    }

    RationalFunction rename(Var from, Var to) const {
        return RationalFunction(num_.rename(from, to), den_.rename(from, to));
    }

    std::string str() const {
        if (is_polynomial()) return num_.str();
        std::string n = num_.str(), d = den_.str();
        if (num_.term_count() > 1) n = "(" + n + ")";
        if (den_.term_count() > 1) d = "(" + d + ")";
        return n + "/" + d;
    }

    bool less_than(const RationalFunction& o) const {
        if (num_ != o.num_) return num_.less_than(o.num_);
        return den_.less_than(o.den_);
    }

  private:
    MultiPoly num_, den_;

    void reduce() {
        if (num_.is_zero()) {
            den_ = MultiPoly::one();
            return;
        }
        MultiPoly g = gcd_poly(num_, den_);
        if (!g.is_constant()) {
            num_ = *num_.divide_exact(g);
            den_ = *den_.divide_exact(g);
        }
        // positive leading coefficient on the denominator, content absorbed
        Rational dc = den_.content();
        den_ = den_ / dc;
        num_ = num_ / dc;
    }
};

/// Substitute var -> n/d into p and clear denominators:
/// returns d^(deg_var p) * p|_{var = n/d}.
inline MultiPoly substitute_rational_cleared(const MultiPoly& p, Var var, const MultiPoly& n,
                                             const MultiPoly& d) {
    if (!p.uses(var)) return p;
    auto cs = p.coefficients_in(var);
    MultiPoly acc = cs.back();
    for (std::size_t k = cs.size() - 1; k-- > 0;) acc = acc * n + cs[k] * d.pow(static_cast<unsigned>(cs.size() - 1 - k));
    return acc;
}

/// Substitute (u, v) -> (psi1, psi2) into a rational function of (t, s, u, v).
inline RationalFunction substitute_pair(const RationalFunction& f, const RationalFunction& psi1,
                                        const RationalFunction& psi2) {
    int du = std::max({f.num().degree(Var::u), f.den().degree(Var::u), 0});
    int dv = std::max({f.num().degree(Var::v), f.den().degree(Var::v), 0});
    auto clear2 = [&](const MultiPoly& p) {
        MultiPoly step = substitute_rational_cleared(p, Var::u, psi1.num(), psi1.den());
        // rebalance so both num and den are cleared by the same power
        int ku = p.degree(Var::u) < 0 ? 0 : p.degree(Var::u);
        if (ku < du) step = step * psi1.den().pow(static_cast<unsigned>(du - ku));
        MultiPoly step2 = substitute_rational_cleared(step, Var::v, psi2.num(), psi2.den());
        int kv = step.degree(Var::v) < 0 ? 0 : step.degree(Var::v);
        if (kv < dv) step2 = step2 * psi2.den().pow(static_cast<unsigned>(dv - kv));
        return step2;
    };
    return RationalFunction(clear2(f.num()), clear2(f.den()));
}

/// Compose a rational function of (t, s) with the map (t,s) -> (g1, g2).
inline RationalFunction compose_ts(const RationalFunction& f, const RationalFunction& g1,
                                   const RationalFunction& g2) {
    RationalFunction lifted(f.num().rename_ts_to_uv(), f.den().rename_ts_to_uv());
    return substitute_pair(lifted, g1, g2);
}

/// Compose a univariate rational function of t with t -> g.
inline RationalFunction compose_t(const RationalFunction& f, const RationalFunction& g) {
    assert(!f.uses(Var::s));
    return compose_ts(f, g, RationalFunction::variable(Var::s));
}

// ---------------------------------------------------------------------------
// 3-vectors of rational functions (parametrization components).

using RFVec3 = std::array<RationalFunction, 3>;
using QVec3 = std::array<Rational, 3>;

inline RFVec3 operator+(const RFVec3& a, const RFVec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline RFVec3 operator-(const RFVec3& a, const RFVec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline RFVec3 operator*(const RationalFunction& f, const RFVec3& a) {
    return {f * a[0], f * a[1], f * a[2]};
}

inline RationalFunction dot(const RFVec3& a, const RFVec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline RFVec3 cross(const RFVec3& a, const RFVec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline RationalFunction mixed_product(const RFVec3& a, const RFVec3& b, const RFVec3& c) {
    return dot(a, cross(b, c));
}

inline RFVec3 derivative(const RFVec3& a, Var v) {
    return {a[0].derivative(v), a[1].derivative(v), a[2].derivative(v)};
}

inline bool is_zero(const RFVec3& a) { return a[0].is_zero() && a[1].is_zero() && a[2].is_zero(); }

inline std::optional<QVec3> eval2(const RFVec3& a, const Rational& tv, const Rational& sv) {
    QVec3 out;
    for (int i = 0; i < 3; ++i) {
        auto v = a[i].eval2(tv, sv);
        if (!v) return std::nullopt;
        out[i] = *v;
    }
    return out;
}

inline std::optional<QVec3> eval1(const RFVec3& a, const Rational& tv) {
    QVec3 out;
    for (int i = 0; i < 3; ++i) {
        auto v = a[i].eval1(tv);
        if (!v) return std::nullopt;
        out[i] = *v;
    }
    return out;
}

}  // namespace surfsym
