#pragma once

// The exact coefficient field Q(q,t), represented in nested form: a fraction
// of polynomials in t whose coefficients are canonical rational functions in
// q. Canonical form: the two t-polynomials are coprime over Q(q) and the
// denominator is monic in t; every inner Q(q) element is itself reduced with
// monic denominator. Equality is then representation equality.
//
// The public string form is different: both sides are cleared to integer
// bivariate polynomials, normalized by content and by the sign of the
// denominator's leading term, and printed in descending deglex order with q
// weighted before t, e.g. "(q*t - 1)/(t - 1)". parse() accepts that grammar
// (and general +,-,*,/,^ expressions in q and t).

#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "macpieri/urat.hpp"

namespace macpieri {

// Polynomials in t over Q(q).
class TPoly {
  public:
    TPoly() = default;
    explicit TPoly(const URat& c) {
        if (!c.is_zero()) coeffs_.push_back(c);
    }

    static TPoly monomial(int deg, const URat& c) {
        TPoly p;
        if (!c.is_zero()) {
            p.coeffs_.assign(static_cast<size_t>(deg) + 1, URat());
            p.coeffs_.back() = c;
        }
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<URat>& coeffs() const { return coeffs_; }
    const URat& leading() const {
        MACPIERI_CHECK(!is_zero(), "leading coefficient of zero polynomial");
        return coeffs_.back();
    }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }

    bool operator==(const TPoly& o) const { return coeffs_ == o.coeffs_; }

    TPoly operator-() const {
        TPoly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    TPoly operator+(const TPoly& o) const {
        TPoly r;
        r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), URat());
        for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i];
        for (size_t i = 0; i < o.coeffs_.size(); ++i) r.coeffs_[i] = r.coeffs_[i] + o.coeffs_[i];
        r.trim();
        return r;
    }

    TPoly operator-(const TPoly& o) const { return *this + (-o); }

    TPoly operator*(const TPoly& o) const {
        if (is_zero() || o.is_zero()) return TPoly();
        TPoly r;
        r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, URat());
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            for (size_t j = 0; j < o.coeffs_.size(); ++j)
                r.coeffs_[i + j] = r.coeffs_[i + j] + coeffs_[i] * o.coeffs_[j];
        }
        r.trim();
        return r;
    }

    TPoly scaled(const URat& c) const {
        if (c.is_zero()) return TPoly();
        TPoly r = *this;
        for (auto& x : r.coeffs_) x = x * c;
        r.trim();
        return r;
    }

    static void divrem(const TPoly& a, const TPoly& b, TPoly& q, TPoly& r) {
        MACPIERI_CHECK(!b.is_zero(), "division by zero in Q(q)[t]");
        q = TPoly();
        r = a;
        int db = b.degree();
        if (r.degree() >= db)
            q.coeffs_.assign(static_cast<size_t>(r.degree() - db) + 1, URat());
        URat blead_inv = b.leading().inverse();
        while (!r.is_zero() && r.degree() >= db) {
            int k = r.degree() - db;
            URat c = r.leading() * blead_inv;
            q.coeffs_[static_cast<size_t>(k)] = c;
            for (int i = 0; i <= db; ++i)
                r.coeffs_[static_cast<size_t>(k + i)] =
                    r.coeffs_[static_cast<size_t>(k + i)] - c * b.coeffs_[static_cast<size_t>(i)];
            r.trim();
        }
        q.trim();
    }

    TPoly divided_exact(const TPoly& b) const {
        TPoly q, r;
        divrem(*this, b, q, r);
        MACPIERI_CHECK(r.is_zero(), "division in Q(q)[t] was not exact");
        return q;
    }

    TPoly monic() const {
        if (is_zero()) return *this;
        return scaled(leading().inverse());
    }

    // Monic gcd over Q(q)[t] via a primitive pseudo-remainder sequence:
    // inner denominators are cleared once, coefficients stay fraction-free
    // polynomials throughout, and content is stripped after every
    // pseudo-remainder. This sidesteps the coefficient blowup of the
    // Euclidean algorithm over the fraction field.
    static TPoly gcd(const TPoly& a, const TPoly& b) {
        if (a.is_zero()) return b.monic();
        if (b.is_zero()) return a.monic();
        std::vector<UPoly> A = a.primitive_cleared();
        std::vector<UPoly> B = b.primitive_cleared();
        if (A.size() < B.size()) std::swap(A, B);
        while (!B.empty()) {
            std::vector<UPoly> R = std::move(A);
            const UPoly& lb = B.back();
            while (R.size() >= B.size()) {
                UPoly lr = R.back();
                size_t k = R.size() - B.size();
                for (size_t i = 0; i + 1 < R.size(); ++i) R[i] = R[i] * lb;
                for (size_t i = 0; i + 1 < B.size(); ++i) R[k + i] = R[k + i] - lr * B[i];
                R.pop_back();
                while (!R.empty() && R.back().is_zero()) R.pop_back();
            }
            A = std::move(B);
            strip_content(R);
            B = std::move(R);
        }
        TPoly g;
        g.coeffs_.reserve(A.size());
        const UPoly& lead = A.back();
        for (const UPoly& c : A) g.coeffs_.emplace_back(c, lead);
        return g;
    }

    TPoly shifted_up(int k) const {  // multiply by t^k, k >= 0
        if (is_zero() || k == 0) return *this;
        TPoly r;
        r.coeffs_.assign(static_cast<size_t>(k), URat());
        r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
        return r;
    }

    // Coefficients mapped through q -> 1/q, then reversed in t. Multiplying
    // the original by t^degree and substituting (1/q, 1/t) gives exactly this.
    TPoly qinv_reversed() const {
        TPoly r;
        r.coeffs_.resize(coeffs_.size());
        for (size_t i = 0; i < coeffs_.size(); ++i)
            r.coeffs_[coeffs_.size() - 1 - i] = coeffs_[i].subst_inv_var();
        r.trim();
        return r;
    }

    int degree_measure() const {
        int m = 0;
        for (size_t i = 0; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero())
                m = std::max(m, static_cast<int>(i) + coeffs_[i].degree_measure());
        return m;
    }

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    // A unit multiple (over Q(q)) of *this whose coefficients are plain
    // polynomials: multiply through by the lcm of the coefficient
    // denominators, then remove the polynomial content.
    std::vector<UPoly> primitive_cleared() const {
        UPoly L(Rational(1));
        for (const URat& c : coeffs_)
            if (!c.is_zero() && !c.den().is_one())
                L = (L * c.den()).divided_exact(UPoly::gcd(L, c.den()));
        std::vector<UPoly> out(coeffs_.size());
        for (size_t i = 0; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero())
                out[i] = coeffs_[i].num() * L.divided_exact(coeffs_[i].den());
        strip_content(out);
        return out;
    }

    static void strip_content(std::vector<UPoly>& v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
        if (v.empty()) return;
        UPoly g;
        for (const UPoly& c : v) {
            if (c.is_zero()) continue;
            g = UPoly::gcd(g, c);
            if (g.is_one()) break;
        }
        if (!g.is_one())
            for (UPoly& c : v)
                if (!c.is_zero()) c = c.divided_exact(g);
    }

    std::vector<URat> coeffs_;
};

class QTScalar {
  public:
    QTScalar() : num_(), den_(TPoly(URat(Rational(1)))) {}
    explicit QTScalar(long v) : QTScalar(Rational(v)) {}
    explicit QTScalar(const Rational& v)
        : num_(TPoly(URat(v))), den_(TPoly(URat(Rational(1)))) {}
    QTScalar(TPoly num, TPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static QTScalar from_int(long v) { return QTScalar(v); }
    static QTScalar q() { return qt_mono(1, 0); }
    static QTScalar t() { return qt_mono(0, 1); }

    // q^a * t^b for any integers a, b; built directly in canonical form.
    static QTScalar qt_mono(long a, long b) {
        QTScalar r;
        URat qa = URat::var_pow(a);
        if (b >= 0) {
            r.num_ = TPoly::monomial(static_cast<int>(b), qa);
            r.den_ = TPoly(URat(Rational(1)));
        } else {
            r.num_ = TPoly(qa);
            r.den_ = TPoly::monomial(static_cast<int>(-b), URat(Rational(1)));
        }
        return r;
    }

    const TPoly& num() const { return num_; }
    const TPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    bool operator==(const QTScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const QTScalar& o) const { return !(*this == o); }

    QTScalar operator-() const {
        QTScalar r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    // Addition without full renormalization: any factor the cross-multiplied
    // sum shares with the combined denominator divides gcd(den, o.den), so
    // only that (usually small or trivial) gcd has to be computed.
    QTScalar operator+(const QTScalar& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        QTScalar r;
        if (den_ == o.den_) {
            TPoly s = num_ + o.num_;
            if (s.is_zero()) return QTScalar();
            if (den_.is_one()) {
                r.num_ = std::move(s);
                r.den_ = den_;
                return r;
            }
            TPoly h = TPoly::gcd(s, den_);
            if (h.is_one()) {
                r.num_ = std::move(s);
                r.den_ = den_;
            } else {
                r.num_ = s.divided_exact(h);
                r.den_ = den_.divided_exact(h);
            }
            return r;
        }
        TPoly g = TPoly::gcd(den_, o.den_);
        if (g.is_one()) {
            r.num_ = num_ * o.den_ + o.num_ * den_;
            if (r.num_.is_zero()) return QTScalar();
            r.den_ = den_ * o.den_;
            return r;
        }
        TPoly d2r = o.den_.divided_exact(g);
        TPoly s = num_ * d2r + o.num_ * den_.divided_exact(g);
        if (s.is_zero()) return QTScalar();
        TPoly h = TPoly::gcd(s, g);
        if (h.is_one()) {
            r.num_ = std::move(s);
            r.den_ = den_ * d2r;
        } else {
            r.num_ = s.divided_exact(h);
            r.den_ = den_.divided_exact(h) * d2r;
        }
        return r;
    }

    QTScalar operator-(const QTScalar& o) const { return *this + (-o); }

    QTScalar operator*(const QTScalar& o) const {
        if (is_zero() || o.is_zero()) return QTScalar();
        TPoly g1 = TPoly::gcd(num_, o.den_);
        TPoly g2 = TPoly::gcd(o.num_, den_);
        QTScalar r;
        r.num_ = num_.divided_exact(g1) * o.num_.divided_exact(g2);
        r.den_ = den_.divided_exact(g2) * o.den_.divided_exact(g1);
        r.make_den_monic();
        return r;
    }

    QTScalar inverse() const {
        MACPIERI_CHECK(!is_zero(), "inverse of the zero scalar");
        QTScalar r;
        r.num_ = den_;
        r.den_ = num_;
        r.make_den_monic();
        return r;
    }

    QTScalar operator/(const QTScalar& o) const { return *this * o.inverse(); }

    QTScalar pow(long e) const {
        if (e == 0) return QTScalar(1);
        QTScalar b = e < 0 ? inverse() : *this;
        long k = e < 0 ? -e : e;
        QTScalar acc(1);
        while (k > 0) {
            if (k & 1) acc = acc * b;
            b = b * b;
            k >>= 1;
        }
        return acc;
    }

    // The substitution q -> 1/q, t -> 1/t (a field automorphism).
    QTScalar invert_params() const {
        if (is_zero()) return *this;
        int dn = num_.degree();
        int dd = den_.degree();
        TPoly n = num_.qinv_reversed();
        TPoly d = den_.qinv_reversed();
        if (dd >= dn)
            n = n.shifted_up(dd - dn);
        else
            d = d.shifted_up(dn - dd);
        return QTScalar(std::move(n), std::move(d));
    }

    Rational eval_at(const Rational& q0, const Rational& t0) const {
        Rational dv = eval_tpoly(den_, q0, t0);
        if (dv == 0) throw PoleError("denominator vanishes at the sample point");
        return eval_tpoly(num_, q0, t0) / dv;
    }

    // Specialize q = s^alpha, t = s; the result is a rational function in s.
    URat to_s_param(int alpha) const {
        MACPIERI_CHECK(alpha >= 1, "alpha must be a positive integer");
        URat n = s_of_tpoly(num_, alpha);
        URat d = s_of_tpoly(den_, alpha);
        if (d.is_zero()) throw ExactError("canonical denominator specialized to zero");
        return n / d;
    }

    int degree_measure() const {
        return std::max(num_.degree_measure(), den_.degree_measure());
    }

    std::string to_string() const;
    static QTScalar parse(const std::string& text);

  private:
    void normalize() {
        MACPIERI_CHECK(!den_.is_zero(), "scalar with zero denominator");
        if (num_.is_zero()) {
            den_ = TPoly(URat(Rational(1)));
            return;
        }
        TPoly g = TPoly::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_.divided_exact(g);
            den_ = den_.divided_exact(g);
        }
        make_den_monic();
    }

    void make_den_monic() {
        MACPIERI_CHECK(!den_.is_zero(), "scalar with zero denominator");
        if (num_.is_zero()) {
            den_ = TPoly(URat(Rational(1)));
            return;
        }
        URat lead = den_.leading();
        if (!lead.is_one()) {
            URat inv = lead.inverse();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    static Rational eval_tpoly(const TPoly& p, const Rational& q0, const Rational& t0) {
        Rational acc(0);
        const auto& cs = p.coeffs();
        for (size_t i = cs.size(); i-- > 0;) acc = acc * t0 + cs[i].eval(q0);
        return acc;
    }

    static URat s_of_tpoly(const TPoly& p, int alpha) {
        URat acc;
        URat svar = URat::variable();
        const auto& cs = p.coeffs();
        for (size_t i = cs.size(); i-- > 0;)
            acc = acc * svar + cs[i].subst_pow(alpha);
        return acc;
    }

    TPoly num_;
    TPoly den_;
};

// ---------------------------------------------------------------------------
// Canonical bivariate rendering.

namespace detail {

// (q-exponent, t-exponent) -> integer coefficient.
using BivariateInt = std::map<std::pair<int, int>, Integer>;

inline UPoly upoly_lcm(const UPoly& a, const UPoly& b) {
    return (a * b).divided_exact(UPoly::gcd(a, b)).monic();
}

// Clear the inner Q(q) denominators of both sides simultaneously, preserving
// the value of the fraction, and return (num, den) as rational-coefficient
// bivariate maps.
inline void clear_inner(const TPoly& num, const TPoly& den,
                        std::map<std::pair<int, int>, Rational>& nout,
                        std::map<std::pair<int, int>, Rational>& dout) {
    UPoly L(Rational(1));
    for (const auto& c : num.coeffs())
        if (!c.is_zero()) L = upoly_lcm(L, c.den());
    for (const auto& c : den.coeffs())
        if (!c.is_zero()) L = upoly_lcm(L, c.den());
    auto emit = [&L](const TPoly& p, std::map<std::pair<int, int>, Rational>& out) {
        const auto& cs = p.coeffs();
        for (size_t j = 0; j < cs.size(); ++j) {
            if (cs[j].is_zero()) continue;
            UPoly cleared = cs[j].num() * L.divided_exact(cs[j].den());
            for (int a = 0; a <= cleared.degree(); ++a) {
                const Rational& c = cleared[static_cast<size_t>(a)];
                if (c != 0) out[{a, static_cast<int>(j)}] = c;
            }
        }
    };
    emit(num, nout);
    emit(den, dout);
}

// deglex with q weighted before t, descending.
inline bool deglex_less(const std::pair<int, int>& a, const std::pair<int, int>& b) {
    int da = a.first + a.second, db = b.first + b.second;
    if (da != db) return da < db;
    return a.first < b.first;
}

inline std::string bivariate_to_string(const BivariateInt& p) {
    if (p.empty()) return "0";
    std::vector<std::pair<std::pair<int, int>, Integer>> terms(p.begin(), p.end());
    std::sort(terms.begin(), terms.end(),
              [](const auto& x, const auto& y) { return deglex_less(y.first, x.first); });
    std::string out;
    bool first = true;
    for (const auto& [mono, coeff] : terms) {
        Integer mag = abs(coeff);
        bool neg = coeff < 0;
        std::string body;
        std::string ms;
        if (mono.first > 0) ms += (mono.first == 1) ? "q" : "q^" + std::to_string(mono.first);
        if (mono.second > 0) {
            if (!ms.empty()) ms += "*";
            ms += (mono.second == 1) ? "t" : "t^" + std::to_string(mono.second);
        }
        if (ms.empty())
            body = mag.get_str();
        else if (mag == 1)
            body = ms;
        else
            body = mag.get_str() + "*" + ms;
        if (first) {
            out = (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

inline size_t bivariate_terms(const BivariateInt& p) { return p.size(); }

}  // namespace detail

inline std::string QTScalar::to_string() const {
    if (is_zero()) return "0";
    std::map<std::pair<int, int>, Rational> nr, dr;
    detail::clear_inner(num_, den_, nr, dr);
    // Clear rational coefficient denominators.
    Integer D(1);
    for (const auto& [m, c] : nr) {
        (void)m;
        Integer g;
        mpz_lcm(g.get_mpz_t(), D.get_mpz_t(), c.get_den().get_mpz_t());
        D = g;
    }
    for (const auto& [m, c] : dr) {
        (void)m;
        Integer g;
        mpz_lcm(g.get_mpz_t(), D.get_mpz_t(), c.get_den().get_mpz_t());
        D = g;
    }
    detail::BivariateInt ni, di;
    for (const auto& [m, c] : nr) ni[m] = Integer(c.get_num() * (D / c.get_den()));
    for (const auto& [m, c] : dr) di[m] = Integer(c.get_num() * (D / c.get_den()));
    // Remove the common integer content.
    Integer G(0);
    for (const auto& [m, c] : ni) {
        (void)m;
        mpz_gcd(G.get_mpz_t(), G.get_mpz_t(), c.get_mpz_t());
    }
    for (const auto& [m, c] : di) {
        (void)m;
        mpz_gcd(G.get_mpz_t(), G.get_mpz_t(), c.get_mpz_t());
    }
    if (G > 1) {
        for (auto& [m, c] : ni) c /= G;
        for (auto& [m, c] : di) c /= G;
    }
    // Sign convention: the deglex-leading denominator coefficient is positive.
    auto lead_it = di.begin();
    for (auto it = di.begin(); it != di.end(); ++it)
        if (detail::deglex_less(lead_it->first, it->first)) lead_it = it;
    if (lead_it->second < 0) {
        for (auto& [m, c] : ni) c = -c;
        for (auto& [m, c] : di) c = -c;
    }
    bool den_is_one = di.size() == 1 && di.begin()->first == std::pair<int, int>{0, 0} &&
                      di.begin()->second == 1;
    std::string ns = detail::bivariate_to_string(ni);
    if (den_is_one) return ns;
    std::string ds = detail::bivariate_to_string(di);
    if (detail::bivariate_terms(ni) > 1) ns = "(" + ns + ")";
    // Everything after '/' must read as one factor, so a denominator that is
    // itself a product also needs parentheses.
    if (ds.find(' ') != std::string::npos || ds.find('*') != std::string::npos)
        ds = "(" + ds + ")";
    return ns + "/" + ds;
}

// ---------------------------------------------------------------------------
// Parsing. Accepts +, -, *, /, ^, parentheses, integers, q, t.

namespace detail {

class ScalarParser {
  public:
    explicit ScalarParser(const std::string& s) : s_(s) {}

    QTScalar run() {
        QTScalar v = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

  private:
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("scalar parse error at offset " + std::to_string(pos_) +
                                    ": " + why);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    QTScalar expr() {
        bool neg = false;
        skip();
        while (eat('-')) neg = !neg;
        QTScalar v = term();
        if (neg) v = -v;
        for (;;) {
            if (eat('+'))
                v = v + term();
            else if (eat('-'))
                v = v - term();
            else
                return v;
        }
    }

    QTScalar term() {
        QTScalar v = factor();
        for (;;) {
            if (eat('*'))
                v = v * factor();
            else if (eat('/'))
                v = v / factor();
            else
                return v;
        }
    }

    QTScalar factor() {
        QTScalar v = atom();
        if (eat('^')) {
            bool neg = eat('-');
            long e = integer();
            v = v.pow(neg ? -e : e);
        }
        return v;
    }

    QTScalar atom() {
        char c = peek();
        if (c == '(') {
            eat('(');
            QTScalar v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (c == 'q') {
            ++pos_;
            return QTScalar::q();
        }
        if (c == 't') {
            ++pos_;
            return QTScalar::t();
        }
        if (c == '-') {
            eat('-');
            return -atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return QTScalar(integer());
        fail("expected an atom");
    }

    long integer() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return std::stol(s_.substr(start, pos_ - start));
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace detail

inline QTScalar QTScalar::parse(const std::string& text) {
    return detail::ScalarParser(text).run();
}

}  // namespace macpieri
