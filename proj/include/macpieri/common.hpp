#pragma once

// Shared scalar basics: arbitrary-precision rationals (GMP), error types used
// to separate "identity failed / implementation bug" from "unlucky sample
// point", and a deterministic RNG whose output stream is pinned by the
// mt19937_64 specification (no distribution objects, their sequences are
// implementation-defined).

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace macpieri {

using Rational = mpq_class;
using Integer = mpz_class;

// Internal exactness violation: a division that had to be exact left a
// remainder, a normalization invariant broke, etc. Always a bug.
struct ExactError : std::runtime_error {
    explicit ExactError(const std::string& msg) : std::runtime_error(msg) {}
};

// A denominator vanished while evaluating at a concrete sample point. In
// sampled verification this signals "resample", not "wrong".
struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& msg) : std::runtime_error(msg) {}
};

// A linear system whose solution space was required to be one-dimensional
// was not. Symbolically this is a convention bug; at a sample point it can
// also mean the point was degenerate.
struct SingularSystem : std::runtime_error {
    explicit SingularSystem(const std::string& msg) : std::runtime_error(msg) {}
};

#define MACPIERI_CHECK(cond, msg)                     \
    do {                                              \
        if (!(cond)) throw ::macpieri::ExactError(msg); \
    } while (0)

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational pow_rational(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Rational b = base;
    long k = e;
    if (k < 0) {
        if (b == 0) throw PoleError("0 raised to a negative power");
        b = Rational(1) / b;
        k = -k;
    }
    Rational acc(1);
    while (k > 0) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

inline std::string rational_str(const Rational& r) { return r.get_str(); }

// FNV-1a, used for stable cache filenames.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Deterministic RNG helper. Values are reduced by modulo; the slight bias is
// irrelevant for test-case generation and keeps the byte stream identical
// across standard libraries.
class DetRng {
  public:
    explicit DetRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    // Uniform-ish in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        return bound == 0 ? 0 : gen_() % bound;
    }

    long range(long lo, long hi) {  // inclusive ends
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace macpieri
