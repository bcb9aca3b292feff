#pragma once

// The concept every coefficient scalar must satisfy, plus the one operation
// whose meaning genuinely differs between the symbolic and the sampled field:
// obtaining a quantity "with q and t inverted". Symbolically that is the
// substitution q -> 1/q, t -> 1/t applied to the computed result; at a sample
// point the substitution has to happen before computing, by re-running the
// computation at (1/q0, 1/t0).

#include <concepts>
#include <string>

#include "macpieri/qt_scalar.hpp"
#include "macpieri/sampled.hpp"

namespace macpieri {

template <class S>
concept CoeffScalar = requires(const S a, const S b, long e) {
    { S() } -> std::same_as<S>;
    { S::from_int(e) } -> std::same_as<S>;
    { S::qt_mono(e, e) } -> std::same_as<S>;
    { a + b } -> std::same_as<S>;
    { a - b } -> std::same_as<S>;
    { a * b } -> std::same_as<S>;
    { a / b } -> std::same_as<S>;
    { -a } -> std::same_as<S>;
    { a.inverse() } -> std::same_as<S>;
    { a.pow(e) } -> std::same_as<S>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.is_one() } -> std::convertible_to<bool>;
    { a.to_string() } -> std::same_as<std::string>;
    { a.degree_measure() } -> std::convertible_to<int>;
};

template <CoeffScalar S>
struct ScalarTraits;

template <>
struct ScalarTraits<QTScalar> {
    static constexpr bool sampled = false;

    // Symbolic values carry their own parameters; there is only one context.
    static unsigned long long context_token() { return 0; }

    // Substitute q -> 1/q, t -> 1/t in an already-computed value.
    static QTScalar invert_value(const QTScalar& v) { return v.invert_params(); }

    template <class F>
    static auto computed_at_inverted_params(F&& compute) {
        auto result = compute();
        result.map_coefficients([](const QTScalar& c) { return c.invert_params(); });
        return result;
    }
};

template <>
struct ScalarTraits<SampledScalar> {
    static constexpr bool sampled = true;

    // Sampled values are only meaningful relative to the installed point.
    static unsigned long long context_token() { return current_sample_context().token; }

    static SampledScalar invert_value(const SampledScalar&) {
        throw ExactError("a sampled value cannot be parameter-inverted after the fact");
    }

    template <class F>
    static auto computed_at_inverted_params(F&& compute) {
        ScopedInvertedSample guard;
        return compute();
    }
};

static_assert(CoeffScalar<QTScalar>);
static_assert(CoeffScalar<SampledScalar>);

}  // namespace macpieri
