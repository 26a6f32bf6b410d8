/// Exact coefficient arithmetic: arbitrary-precision integers and reduced
/// rationals, plus the deterministic random streams used for sampling.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace surfsym {

using Integer  = mpz_class;
using Rational = mpq_class;

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Serialization used by the JSON report: always "num/den", denominator kept
/// even when it is 1, so re-parsing is unambiguous.
inline std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// ---------------------------------------------------------------------------
// Deterministic random streams.  All sampling in the library flows through
// RandomStream so a (seed, usage-site) pair reproduces exactly.

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : rng_(seed) {}

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return rng_.next() % n; }

    /// Uniform integer in [-range, range].
    long int_in(long range) {
        return static_cast<long>(below(2 * static_cast<std::uint64_t>(range) + 1)) - range;
    }

    /// Small rational with numerator in [-h, h] and denominator in [1, h].
    /// Heights stay small so downstream exact arithmetic stays cheap.
    Rational rational(long h = 12) {
        long num = int_in(h);
        long den = static_cast<long>(below(static_cast<std::uint64_t>(h))) + 1;
        return make_rational(num, den);
    }

    /// Nonzero variant of rational().
    Rational nonzero_rational(long h = 12) {
        for (;;) {
            Rational q = rational(h);
            if (q != 0) return q;
        }
    }

    /// Independent substream; the parent is advanced exactly once.
    RandomStream split() { return RandomStream(rng_.next() ^ 0xd1b54a32d192ed03ULL); }

  private:
    SplitMix64 rng_;
};

}  // namespace surfsym
