#pragma once

// Dense univariate polynomials over Q. Used twice: as polynomials in q (the
// inner level of the coefficient field) and as polynomials in the limit
// variable s when specializing q = s^alpha, t = s.

#include <algorithm>
#include <vector>

#include "macpieri/common.hpp"

namespace macpieri {

class UPoly {
  public:
    UPoly() = default;
    explicit UPoly(const Rational& c) {
        if (c != 0) coeffs_.push_back(c);
    }

    static UPoly variable() { return UPoly::monomial(1, Rational(1)); }

    static UPoly monomial(int deg, const Rational& c) {
        UPoly p;
        if (c != 0) {
            p.coeffs_.assign(static_cast<size_t>(deg) + 1, Rational(0));
            p.coeffs_.back() = c;
        }
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is -1 by convention here.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Rational& operator[](size_t i) const { return coeffs_[i]; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    const Rational& leading() const {
        MACPIERI_CHECK(!is_zero(), "leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

    bool operator==(const UPoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    UPoly operator+(const UPoly& o) const {
        UPoly r;
        r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
        for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i];
        for (size_t i = 0; i < o.coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
        r.trim();
        return r;
    }

    UPoly operator-(const UPoly& o) const { return *this + (-o); }

    UPoly operator*(const UPoly& o) const {
        if (is_zero() || o.is_zero()) return UPoly();
        UPoly r;
        r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            for (size_t j = 0; j < o.coeffs_.size(); ++j)
                r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
        }
        r.trim();
        return r;
    }

    UPoly scaled(const Rational& c) const {
        if (c == 0) return UPoly();
        UPoly r = *this;
        for (auto& x : r.coeffs_) x *= c;
        return r;
    }

    // Quotient and remainder over the field Q.
    static void divrem(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
        MACPIERI_CHECK(!b.is_zero(), "univariate division by zero");
        q = UPoly();
        r = a;
        int db = b.degree();
        if (r.degree() >= db)
            q.coeffs_.assign(static_cast<size_t>(r.degree() - db) + 1, Rational(0));
        while (!r.is_zero() && r.degree() >= db) {
            int k = r.degree() - db;
            Rational c = r.leading() / b.leading();
            q.coeffs_[static_cast<size_t>(k)] = c;
            for (int i = 0; i <= db; ++i)
                r.coeffs_[static_cast<size_t>(k + i)] -= c * b.coeffs_[static_cast<size_t>(i)];
            r.trim();
        }
        q.trim();
    }

    UPoly divided_exact(const UPoly& b) const {
        UPoly q, r;
        divrem(*this, b, q, r);
        MACPIERI_CHECK(r.is_zero(), "univariate division was not exact");
        return q;
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        return scaled(Rational(1) / leading());
    }

    // Monic gcd. Runs a primitive pseudo-remainder sequence over the
    // integers rather than Euclid over Q: clearing denominators once and
    // stripping integer content after every pseudo-remainder keeps
    // coefficient sizes polynomial instead of exploding through repeated
    // rational normalization.
    static UPoly gcd(const UPoly& a, const UPoly& b) {
        if (a.is_zero()) return b.monic();
        if (b.is_zero()) return a.monic();
        std::vector<Integer> A = a.primitive_integer();
        std::vector<Integer> B = b.primitive_integer();
        if (A.size() < B.size()) std::swap(A, B);
        while (!B.empty()) {
            // Integer pseudo-remainder: repeatedly R := lc(B) R - lc(R) x^k B.
            std::vector<Integer> R = std::move(A);
            const Integer& lb = B.back();
            while (R.size() >= B.size()) {
                Integer lr = R.back();
                size_t k = R.size() - B.size();
                for (size_t i = 0; i + 1 < R.size(); ++i) R[i] *= lb;
                for (size_t i = 0; i + 1 < B.size(); ++i) R[k + i] -= lr * B[i];
                R.pop_back();
                while (!R.empty() && R.back() == 0) R.pop_back();
            }
            A = std::move(B);
            make_primitive(R);
            B = std::move(R);
        }
        UPoly g;
        g.coeffs_.assign(A.begin(), A.end());
        return g.monic();
    }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    // p(x) -> p(x^k), k >= 1.
    UPoly subst_pow(int k) const {
        MACPIERI_CHECK(k >= 1, "subst_pow wants a positive exponent");
        if (is_zero() || k == 1) return *this;
        UPoly r;
        r.coeffs_.assign(static_cast<size_t>(degree()) * k + 1, Rational(0));
        for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i * k] = coeffs_[i];
        r.trim();
        return r;
    }

    // Coefficient reversal: x^deg * p(1/x).
    UPoly reversed() const {
        UPoly r = *this;
        std::reverse(r.coeffs_.begin(), r.coeffs_.end());
        r.trim();
        return r;
    }

    UPoly shifted_up(int k) const {  // multiply by x^k, k >= 0
        if (is_zero() || k == 0) return *this;
        UPoly r;
        r.coeffs_.assign(static_cast<size_t>(k), Rational(0));
        r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
        return r;
    }

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    // Coefficients with denominators cleared and integer content removed
    // (empty for zero). Exact up to a positive rational factor, which is all
    // a gcd computation needs.
    std::vector<Integer> primitive_integer() const {
        Integer L(1);
        for (const Rational& c : coeffs_) {
            Integer m;
            mpz_lcm(m.get_mpz_t(), L.get_mpz_t(), c.get_den().get_mpz_t());
            L = m;
        }
        std::vector<Integer> out(coeffs_.size());
        for (size_t i = 0; i < coeffs_.size(); ++i)
            out[i] = Integer(coeffs_[i].get_num() * (L / coeffs_[i].get_den()));
        make_primitive(out);
        return out;
    }

    static void make_primitive(std::vector<Integer>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
        if (v.empty()) return;
        Integer g(0);
        for (const Integer& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g > 1)
            for (Integer& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }

    std::vector<Rational> coeffs_;  // coeffs_[i] multiplies x^i; empty means 0
};

}  // namespace macpieri
