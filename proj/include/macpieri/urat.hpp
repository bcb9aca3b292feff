#pragma once

// Univariate rational functions over Q, in canonical form: numerator and
// denominator coprime, denominator monic. That makes equality a plain
// representation comparison. The same type serves as Q(q) (the inner level
// of the two-variable coefficient field) and as Q(s) for limit taking.

#include <utility>

#include "macpieri/upoly.hpp"

namespace macpieri {

class URat {
  public:
    URat() : num_(), den_(UPoly(Rational(1))) {}
    explicit URat(const Rational& c) : num_(UPoly(c)), den_(UPoly(Rational(1))) {}
    URat(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static URat variable() { return URat(UPoly::variable(), UPoly(Rational(1))); }

    // x^k for any integer k.
    static URat var_pow(long k) {
        if (k >= 0) return URat(UPoly::monomial(static_cast<int>(k), Rational(1)), UPoly(Rational(1)));
        return URat(UPoly(Rational(1)), UPoly::monomial(static_cast<int>(-k), Rational(1)));
    }

    const UPoly& num() const { return num_; }
    const UPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    bool operator==(const URat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const URat& o) const { return !(*this == o); }

    URat operator-() const {
        URat r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    // Addition keeps the result canonical without a full renormalization:
    // with coprime num/den on both sides and g = gcd(den, o.den), the only
    // factor the cross-multiplied sum can share with the combined denominator
    // divides g, so one small gcd finishes the reduction (and a coprime pair
    // of denominators needs no reduction at all).
    URat operator+(const URat& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        URat r;
        UPoly g = UPoly::gcd(den_, o.den_);
        if (g.is_one()) {
            r.num_ = num_ * o.den_ + o.num_ * den_;
            if (r.num_.is_zero()) return URat();
            r.den_ = den_ * o.den_;
            return r;
        }
        UPoly d2r = o.den_.divided_exact(g);
        UPoly s = num_ * d2r + o.num_ * den_.divided_exact(g);
        if (s.is_zero()) return URat();
        UPoly h = UPoly::gcd(s, g);
        if (h.is_one()) {
            r.num_ = std::move(s);
            r.den_ = den_ * d2r;
        } else {
            r.num_ = s.divided_exact(h);
            r.den_ = den_.divided_exact(h) * d2r;
        }
        return r;
    }

    URat operator-(const URat& o) const { return *this + (-o); }

    URat operator*(const URat& o) const {
        // Cross-reduce before multiplying to keep degrees down.
        UPoly g1 = UPoly::gcd(num_, o.den_);
        UPoly g2 = UPoly::gcd(o.num_, den_);
        UPoly n = num_.divided_exact(g1) * o.num_.divided_exact(g2);
        UPoly d = den_.divided_exact(g2) * o.den_.divided_exact(g1);
        URat r;
        r.num_ = n;
        r.den_ = d;
        r.make_den_monic();
        return r;
    }

    URat inverse() const {
        MACPIERI_CHECK(!is_zero(), "inverse of zero rational function");
        URat r;
        r.num_ = den_;
        r.den_ = num_;
        r.make_den_monic();
        return r;
    }

    URat operator/(const URat& o) const { return *this * o.inverse(); }

    // Substitute x -> 1/x.
    URat subst_inv_var() const {
        if (is_zero()) return *this;
        int dn = num_.degree();
        int dd = den_.degree();
        UPoly n = num_.reversed();
        UPoly d = den_.reversed();
        if (dd >= dn)
            n = n.shifted_up(dd - dn);
        else
            d = d.shifted_up(dn - dd);
        return URat(std::move(n), std::move(d));
    }

    // Substitute x -> x^k, k >= 1.
    URat subst_pow(int k) const { return URat(num_.subst_pow(k), den_.subst_pow(k)); }

    Rational eval(const Rational& x) const {
        Rational d = den_.eval(x);
        if (d == 0) throw PoleError("rational function has a pole at the sample point");
        return num_.eval(x) / d;
    }

    // Value at x = 1 of a function known to extend there; canonical form has
    // already cancelled every common (x-1) factor, so a vanishing denominator
    // is a genuine pole.
    Rational limit_at_one() const {
        Rational d = den_.eval(Rational(1));
        if (d == 0) throw PoleError("pole at 1 survives cancellation; limit does not exist");
        return num_.eval(Rational(1)) / d;
    }

    int degree_measure() const { return std::max(num_.degree(), den_.degree()); }

  private:
    void normalize() {
        MACPIERI_CHECK(!den_.is_zero(), "rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = UPoly(Rational(1));
            return;
        }
        UPoly g = UPoly::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_.divided_exact(g);
            den_ = den_.divided_exact(g);
        }
        make_den_monic();
    }

    void make_den_monic() {
        MACPIERI_CHECK(!den_.is_zero(), "rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = UPoly(Rational(1));
            return;
        }
        Rational lc = den_.leading();
        if (lc != 1) {
            Rational inv = Rational(1) / lc;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    UPoly num_;
    UPoly den_;
};

}  // namespace macpieri
