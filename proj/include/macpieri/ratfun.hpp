#pragma once

// Rational functions in the z variables with coefficients in S, kept as
// unreduced numerator/denominator pairs. They exist for one purpose: summing
// structured kernels whose total is known to be a polynomial, after which
// to_polynomial() performs the exact division (and aborts loudly if the
// cancellation fails, since that means a formula was transcribed wrong).

#include "macpieri/laurent.hpp"

namespace macpieri {

template <CoeffScalar S>
class RationalFunction {
  public:
    explicit RationalFunction(int nvars)
        : num_(LaurentPoly<S>::zero(nvars)), den_(LaurentPoly<S>::one(nvars)) {}

    RationalFunction(LaurentPoly<S> num, LaurentPoly<S> den)
        : num_(std::move(num)), den_(std::move(den)) {
        MACPIERI_CHECK(!den_.is_zero(), "rational function with zero denominator");
    }

    static RationalFunction from_poly(LaurentPoly<S> p) {
        int n = p.nvars();
        return RationalFunction(std::move(p), LaurentPoly<S>::one(n));
    }

    static RationalFunction one(int nvars) { return from_poly(LaurentPoly<S>::one(nvars)); }

    const LaurentPoly<S>& num() const { return num_; }
    const LaurentPoly<S>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFunction operator*(const RationalFunction& o) const {
        return RationalFunction(num_ * o.num_, den_ * o.den_);
    }

    RationalFunction operator+(const RationalFunction& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        if (den_ == o.den_) return RationalFunction(num_ + o.num_, den_);
        return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }

    RationalFunction operator-() const { return RationalFunction(-num_, den_); }
    RationalFunction operator-(const RationalFunction& o) const { return *this + (-o); }

    LaurentPoly<S> to_polynomial() const { return num_.divided_exact(den_); }

  private:
    LaurentPoly<S> num_;
    LaurentPoly<S> den_;
};

}  // namespace macpieri
