/// Monomials over the fixed variable universe {t, s, u, v, w}.
///
/// Exponents are packed into one 64-bit word (12 bits per variable, t in the
/// highest slot) so that plain lexicographic comparison of the packed word is
/// the lex order with t > s > u > v > w; the term order used everywhere is
/// graded lex on top of that.
#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <string>

namespace surfsym {

enum class Var : std::uint8_t { t = 0, s = 1, u = 2, v = 3, w = 4 };

inline constexpr int kNumVars = 5;
inline constexpr unsigned kMaxExp = 0xFFF;  // 12 bits per variable

inline const char* var_name(Var v) {
    static const char* names[kNumVars] = {"t", "s", "u", "v", "w"};
    return names[static_cast<int>(v)];
}

inline int var_index(Var v) { return static_cast<int>(v); }

inline Var var_from_index(int i) {
    assert(i >= 0 && i < kNumVars);
    return static_cast<Var>(i);
}

struct Monomial {
    std::uint64_t key = 0;

    static constexpr int shift(int i) { return 12 * (kNumVars - 1 - i); }

    unsigned exp(Var v) const { return (key >> shift(var_index(v))) & kMaxExp; }
    unsigned exp(int i) const { return (key >> shift(i)) & kMaxExp; }

    unsigned degree() const {
        unsigned d = 0;
        for (int i = 0; i < kNumVars; ++i) d += exp(i);
        return d;
    }

    static Monomial one() { return Monomial{}; }

    static Monomial var(Var v, unsigned e = 1) {
        assert(e <= kMaxExp);
        Monomial m;
        m.key = static_cast<std::uint64_t>(e) << shift(var_index(v));
        return m;
    }

    static Monomial from_exponents(const std::array<unsigned, kNumVars>& e) {
        Monomial m;
        for (int i = 0; i < kNumVars; ++i) {
            assert(e[i] <= kMaxExp);
            m.key |= static_cast<std::uint64_t>(e[i]) << shift(i);
        }
        return m;
    }

    bool is_one() const { return key == 0; }

    bool divides(const Monomial& o) const {
        for (int i = 0; i < kNumVars; ++i)
            if (exp(i) > o.exp(i)) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        r.key = key + o.key;
        assert(([&] {
            for (int i = 0; i < kNumVars; ++i)
                if (exp(i) + o.exp(i) > kMaxExp) return false;
            return true;
        }()));
        return r;
    }

    /// Exact quotient; caller guarantees divisibility.
    Monomial operator/(const Monomial& o) const {
        assert(o.divides(*this));
        Monomial r;
        r.key = key - o.key;
        return r;
    }

    bool operator==(const Monomial& o) const { return key == o.key; }
    bool operator!=(const Monomial& o) const { return key != o.key; }

    /// Graded lex: compare total degree first, ties by packed lex word.
    bool operator<(const Monomial& o) const {
        unsigned da = degree(), db = o.degree();
        if (da != db) return da < db;
        return key < o.key;
    }

    std::string str() const {
        std::string out;
        for (int i = 0; i < kNumVars; ++i) {
            unsigned e = exp(i);
            if (e == 0) continue;
            if (!out.empty()) out += "*";
            out += var_name(var_from_index(i));
            if (e > 1) out += "^" + std::to_string(e);
        }
        return out.empty() ? "1" : out;
    }
};

}  // namespace surfsym
