#pragma once

// Coefficient scalars specialized at a concrete rational point (q0, t0). The
// point lives in thread-local state so that the templated algebra can ask for
// q and t without every signature carrying a context; verification workers
// each install their own point. Division by zero here means the sample point
// hit a pole and the caller should resample.

#include <atomic>

#include "macpieri/common.hpp"

namespace macpieri {

struct SampleContext {
    Rational q0;
    Rational t0;
    bool active = false;
    // Distinguishes one installed point from another so that caches keyed on
    // numeric values can tell contexts apart without storing the rationals.
    unsigned long long token = 0;
};

namespace detail {
inline thread_local SampleContext tls_sample_context;
inline std::atomic<unsigned long long> sample_context_counter{0};
inline unsigned long long next_sample_token() {
    return ++sample_context_counter;
}
}

inline SampleContext& current_sample_context() { return detail::tls_sample_context; }

class ScopedSampleContext {
  public:
    ScopedSampleContext(const Rational& q0, const Rational& t0)
        : saved_(detail::tls_sample_context) {
        detail::tls_sample_context = SampleContext{q0, t0, true, detail::next_sample_token()};
    }
    ~ScopedSampleContext() { detail::tls_sample_context = saved_; }
    ScopedSampleContext(const ScopedSampleContext&) = delete;
    ScopedSampleContext& operator=(const ScopedSampleContext&) = delete;

  private:
    SampleContext saved_;
};

// Temporarily replaces (q0, t0) by (1/q0, 1/t0); computing any parameter-
// rational quantity under this guard yields its value with q, t inverted.
class ScopedInvertedSample {
  public:
    ScopedInvertedSample() : saved_(detail::tls_sample_context) {
        MACPIERI_CHECK(saved_.active, "no sample point installed");
        if (saved_.q0 == 0 || saved_.t0 == 0)
            throw PoleError("cannot invert a sample coordinate equal to zero");
        detail::tls_sample_context = SampleContext{Rational(1) / saved_.q0,
                                                   Rational(1) / saved_.t0, true,
                                                   detail::next_sample_token()};
    }
    ~ScopedInvertedSample() { detail::tls_sample_context = saved_; }
    ScopedInvertedSample(const ScopedInvertedSample&) = delete;
    ScopedInvertedSample& operator=(const ScopedInvertedSample&) = delete;

  private:
    SampleContext saved_;
};

class SampledScalar {
  public:
    SampledScalar() : v_(0) {}
    explicit SampledScalar(long v) : v_(v) {}
    explicit SampledScalar(const Rational& v) : v_(v) {}

    static SampledScalar from_int(long v) { return SampledScalar(v); }

    static SampledScalar qt_mono(long a, long b) {
        const SampleContext& ctx = detail::tls_sample_context;
        MACPIERI_CHECK(ctx.active, "no sample point installed");
        return SampledScalar(pow_rational(ctx.q0, a) * pow_rational(ctx.t0, b));
    }

    static SampledScalar q() { return qt_mono(1, 0); }
    static SampledScalar t() { return qt_mono(0, 1); }

    const Rational& value() const { return v_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    bool operator==(const SampledScalar& o) const { return v_ == o.v_; }
    bool operator!=(const SampledScalar& o) const { return !(*this == o); }

    SampledScalar operator-() const { return SampledScalar(Rational(-v_)); }
    SampledScalar operator+(const SampledScalar& o) const { return SampledScalar(Rational(v_ + o.v_)); }
    SampledScalar operator-(const SampledScalar& o) const { return SampledScalar(Rational(v_ - o.v_)); }
    SampledScalar operator*(const SampledScalar& o) const { return SampledScalar(Rational(v_ * o.v_)); }

    SampledScalar inverse() const {
        if (v_ == 0) throw PoleError("division by zero at the sample point");
        return SampledScalar(Rational(1) / v_);
    }

    SampledScalar operator/(const SampledScalar& o) const { return *this * o.inverse(); }

    SampledScalar pow(long e) const {
        if (e < 0 && v_ == 0) throw PoleError("division by zero at the sample point");
        return SampledScalar(pow_rational(v_, e));
    }

    int degree_measure() const { return 0; }

    std::string to_string() const { return rational_str(v_); }

  private:
    Rational v_;
};

}  // namespace macpieri
