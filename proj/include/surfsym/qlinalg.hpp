/// Dense exact linear algebra over Q: reduced row echelon form, nullspace,
/// and consistent-system solving.  Sizes here are tiny (dozens of unknowns).
#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "surfsym/rational.hpp"

namespace surfsym {

using QMatrix = std::vector<std::vector<Rational>>;
using QVector = std::vector<Rational>;

/// In-place RREF; returns pivot columns.
inline std::vector<int> rref(QMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        Rational inv = Rational(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

/// Basis of the right nullspace of m (cols unknowns).
inline std::vector<QVector> nullspace(QMatrix m) {
    if (m.empty()) return {};
    std::size_t cols = m[0].size();
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<QVector> basis;
    for (std::size_t freec = 0; freec < cols; ++freec) {
        if (is_pivot[freec]) continue;
        QVector v(cols, Rational(0));
        v[freec] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            // row k has pivot at pivots[k]
            v[static_cast<std::size_t>(pivots[k])] = -m[k][freec];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

struct LinearSolution {
    QVector particular;            // one solution
    std::vector<QVector> kernel;   // homogeneous solutions
};

/// Solve m x = rhs exactly; nullopt when inconsistent.
inline std::optional<LinearSolution> solve_linear(QMatrix m, QVector rhs) {
    assert(m.size() == rhs.size());
    if (m.empty()) return LinearSolution{{}, {}};
    std::size_t cols = m[0].size();
    QMatrix aug = std::move(m);
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
    std::vector<int> pivots = rref(aug);
    // inconsistent iff a pivot lands in the augmented column
    if (!pivots.empty() && pivots.back() == static_cast<int>(cols)) return std::nullopt;
    LinearSolution sol;
    sol.particular.assign(cols, Rational(0));
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        sol.particular[static_cast<std::size_t>(pivots[k])] = aug[k][cols];
        is_pivot[static_cast<std::size_t>(pivots[k])] = true;
    }
    for (std::size_t freec = 0; freec < cols; ++freec) {
        if (is_pivot[freec]) continue;
        QVector v(cols, Rational(0));
        v[freec] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[static_cast<std::size_t>(pivots[k])] = -aug[k][freec];
        sol.kernel.push_back(std::move(v));
    }
    return sol;
}

}  // namespace surfsym
