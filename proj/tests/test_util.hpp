// Shared helpers for the test suites: parsing shortcuts and random rational
// isometries built from integer quaternions.
#pragma once

#include <array>

#include "surfsym/parser.hpp"
#include "surfsym/ratfunc.hpp"

namespace surfsym::testutil {

inline RationalFunction rf(const std::string& text) { return parse_expression(text); }

inline RFVec3 surf(const std::string& a, const std::string& b, const std::string& c) {
    return {rf(a), rf(b), rf(c)};
}

using QMat3 = std::array<std::array<Rational, 3>, 3>;

/// Rotation matrix of a nonzero integer quaternion; exactly orthogonal with
/// determinant +1.
inline QMat3 quaternion_rotation(long a, long b, long c, long d) {
    Rational n(a * a + b * b + c * c + d * d);
    QMat3 m;
    m[0][0] = Rational(a * a + b * b - c * c - d * d) / n;
    m[0][1] = Rational(2 * (b * c - a * d)) / n;
    m[0][2] = Rational(2 * (b * d + a * c)) / n;
    m[1][0] = Rational(2 * (b * c + a * d)) / n;
    m[1][1] = Rational(a * a - b * b + c * c - d * d) / n;
    m[1][2] = Rational(2 * (c * d - a * b)) / n;
    m[2][0] = Rational(2 * (b * d - a * c)) / n;
    m[2][1] = Rational(2 * (c * d + a * b)) / n;
    m[2][2] = Rational(a * a - b * b - c * c + d * d) / n;
    return m;
}

inline QMat3 random_orthogonal(RandomStream& rng) {
    long a = 0, b = 0, c = 0, d = 0;
    while (a == 0 && b == 0 && c == 0 && d == 0) {
        a = rng.int_in(5);
        b = rng.int_in(5);
        c = rng.int_in(5);
        d = rng.int_in(5);
    }
    QMat3 m = quaternion_rotation(a, b, c, d);
    if (rng.below(2) == 0) {
        // reflect: negate the last column; determinant flips to -1
        for (int i = 0; i < 3; ++i) m[i][2] = -m[i][2];
    }
    return m;
}

inline RFVec3 apply_matrix(const QMat3& m, const RFVec3& x, const QVec3& shift) {
    RFVec3 out;
    for (int i = 0; i < 3; ++i) {
        out[i] = x[0] * m[i][0] + x[1] * m[i][1] + x[2] * m[i][2] +
                 RationalFunction::constant(shift[i]);
    }
    return out;
}

}  // namespace surfsym::testutil
