#pragma once

// Sparse Laurent polynomials in n variables z_1..z_n over a coefficient
// scalar S. Terms live in a std::map keyed by exponent vectors (negative
// exponents allowed), so iteration order, equality and rendering are all
// deterministic. Exact division is available both for the structured Hecke
// denominators (z_i - z_{i+1}) and, with a termination guard, for general
// divisors known to divide exactly.

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "macpieri/composition.hpp"
#include "macpieri/scalar_traits.hpp"

namespace macpieri {

template <CoeffScalar S>
class LaurentPoly {
  public:
    using ExpVec = std::vector<int>;
    using TermMap = std::map<ExpVec, S>;

    explicit LaurentPoly(int nvars = 0) : nvars_(nvars) {}

    static LaurentPoly zero(int nvars) { return LaurentPoly(nvars); }

    static LaurentPoly constant(int nvars, const S& c) {
        LaurentPoly p(nvars);
        p.add_term(ExpVec(static_cast<size_t>(nvars), 0), c);
        return p;
    }

    static LaurentPoly one(int nvars) { return constant(nvars, S::from_int(1)); }

    static LaurentPoly monomial(ExpVec exps, const S& c) {
        LaurentPoly p(static_cast<int>(exps.size()));
        p.add_term(std::move(exps), c);
        return p;
    }

    // z_i, 1-based.
    static LaurentPoly variable(int nvars, int i) {
        ExpVec e(static_cast<size_t>(nvars), 0);
        e[static_cast<size_t>(i - 1)] = 1;
        return monomial(std::move(e), S::from_int(1));
    }

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t num_terms() const { return terms_.size(); }

    S coeff(const ExpVec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? S() : it->second;
    }

    S coeff(const Composition& c) const { return coeff(c.parts); }

    void add_term(ExpVec e, const S& c) {
        MACPIERI_CHECK(static_cast<int>(e.size()) == nvars_, "exponent arity mismatch");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(std::move(e), c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool operator==(const LaurentPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly operator-() const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    LaurentPoly operator+(const LaurentPoly& o) const {
        MACPIERI_CHECK(nvars_ == o.nvars_, "variable count mismatch");
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }

    LaurentPoly operator*(const LaurentPoly& o) const {
        MACPIERI_CHECK(nvars_ == o.nvars_, "variable count mismatch");
        LaurentPoly r(nvars_);
        for (const auto& [e1, c1] : terms_) {
            for (const auto& [e2, c2] : o.terms_) {
                ExpVec e = e1;
                for (size_t k = 0; k < e.size(); ++k) e[k] += e2[k];
                r.add_term(std::move(e), c1 * c2);
            }
        }
        return r;
    }

    LaurentPoly scaled(const S& c) const {
        LaurentPoly r(nvars_);
        if (c.is_zero()) return r;
        for (const auto& [e, cc] : terms_) {
            S prod = cc * c;
            if (!prod.is_zero()) r.terms_.emplace(e, prod);
        }
        return r;
    }

    LaurentPoly mul_monomial(const ExpVec& shift, const S& c) const {
        MACPIERI_CHECK(static_cast<int>(shift.size()) == nvars_, "exponent arity mismatch");
        LaurentPoly r(nvars_);
        if (c.is_zero()) return r;
        for (const auto& [e, cc] : terms_) {
            ExpVec ne = e;
            for (size_t k = 0; k < ne.size(); ++k) ne[k] += shift[k];
            S prod = cc * c;
            if (!prod.is_zero()) r.terms_.emplace(std::move(ne), prod);
        }
        return r;
    }

    template <class F>
    void map_coefficients(F&& f) {
        TermMap out;
        for (auto& [e, c] : terms_) {
            S nc = f(c);
            if (!nc.is_zero()) out.emplace(e, std::move(nc));
        }
        terms_ = std::move(out);
    }

    // Rebuild every term through f(exponents, coeff) -> (exponents, coeff).
    template <class F>
    LaurentPoly transformed(F&& f) const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            auto [ne, nc] = f(e, c);
            r.add_term(std::move(ne), nc);
        }
        return r;
    }

    long total_degree(const ExpVec& e) const {
        long d = 0;
        for (int x : e) d += x;
        return d;
    }

    bool is_polynomial() const {
        for (const auto& [e, c] : terms_) {
            (void)c;
            for (int x : e)
                if (x < 0) return false;
        }
        return true;
    }

    long max_total_degree() const {
        MACPIERI_CHECK(!is_zero(), "degree of the zero polynomial");
        long best = 0;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            (void)c;
            long d = total_degree(e);
            if (first || d > best) best = d;
            first = false;
        }
        return best;
    }

    bool is_homogeneous(long* deg_out = nullptr) const {
        if (is_zero()) return true;
        long d = total_degree(terms_.begin()->first);
        for (const auto& [e, c] : terms_) {
            (void)c;
            if (total_degree(e) != d) return false;
        }
        if (deg_out) *deg_out = d;
        return true;
    }

    LaurentPoly homogeneous_component(long d) const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) == d) r.terms_.emplace(e, c);
        return r;
    }

    std::vector<long> degrees_present() const {
        std::vector<long> ds;
        for (const auto& [e, c] : terms_) {
            (void)c;
            long d = total_degree(e);
            if (std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(d);
        }
        std::sort(ds.begin(), ds.end());
        return ds;
    }

    // Terms of maximal total degree.
    LaurentPoly top_component() const {
        if (is_zero()) return *this;
        return homogeneous_component(max_total_degree());
    }

    LaurentPoly truncated_to_degree(long d) const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) <= d) r.terms_.emplace(e, c);
        return r;
    }

    // Substitute z_k -> 1/z_k for every variable.
    LaurentPoly inverted_vars() const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            ExpVec ne = e;
            for (int& x : ne) x = -x;
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    // Substitute z_k -> z_{n+1-k} for every variable.
    LaurentPoly reversed_vars() const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            ExpVec ne(e.rbegin(), e.rend());
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    LaurentPoly swapped_vars(int i, int j) const {  // 1-based
        return transformed([&](const ExpVec& e, const S& c) {
            ExpVec ne = e;
            std::swap(ne[static_cast<size_t>(i - 1)], ne[static_cast<size_t>(j - 1)]);
            return std::make_pair(std::move(ne), c);
        });
    }

    // f(Iz): positions cycle backwards along I and the first element picks up
    // z_{t_s}/q, matching iz_action on coordinate vectors.
    LaurentPoly substituted_iz(const IndexSet& I) const {
        int s = static_cast<int>(I.size());
        return transformed([&](const ExpVec& e, const S& c) {
            ExpVec ne = e;
            for (int u = 1; u < s; ++u)
                ne[static_cast<size_t>(I[static_cast<size_t>(u - 1)] - 1)] =
                    e[static_cast<size_t>(I[static_cast<size_t>(u)] - 1)];
            int a1 = e[static_cast<size_t>(I[0] - 1)];
            ne[static_cast<size_t>(I[static_cast<size_t>(s - 1)] - 1)] = a1;
            return std::make_pair(std::move(ne), c * S::qt_mono(-a1, 0));
        });
    }

    S evaluate(const std::vector<S>& point) const {
        MACPIERI_CHECK(static_cast<int>(point.size()) == nvars_, "point arity mismatch");
        S acc;
        for (const auto& [e, c] : terms_) {
            S term = c;
            for (size_t k = 0; k < e.size(); ++k)
                if (e[k] != 0) term = term * point[k].pow(e[k]);
            acc = acc + term;
        }
        return acc;
    }

    // Exact division, throwing if the divisor does not divide. Inputs are
    // first shifted to honest polynomials (monomials are units), after which
    // any quotient step that would need a negative exponent disproves
    // divisibility immediately; an iteration cap backstops termination.
    LaurentPoly divided_exact(const LaurentPoly& g) const {
        MACPIERI_CHECK(nvars_ == g.nvars_, "variable count mismatch");
        MACPIERI_CHECK(!g.is_zero(), "division by the zero polynomial");
        if (is_zero()) return LaurentPoly(nvars_);

        ExpVec fshift = min_exponents();
        ExpVec gshift = g.min_exponents();
        LaurentPoly f0 = shifted_down(fshift);
        LaurentPoly g0 = g.shifted_down(gshift);

        // Leading term of g0 in the lex order given by map iteration
        // (largest key = rbegin).
        auto glead = *g0.terms_.rbegin();
        S glead_inv = glead.second.inverse();

        LaurentPoly quot(nvars_);
        LaurentPoly rem = f0;
        long guard = 200000;
        while (!rem.is_zero()) {
            MACPIERI_CHECK(guard-- > 0, "exact division did not terminate; divisor does not divide");
            auto rlead = *rem.terms_.rbegin();
            ExpVec m = rlead.first;
            bool negative = false;
            for (size_t k = 0; k < m.size(); ++k) {
                m[k] -= glead.first[k];
                if (m[k] < 0) negative = true;
            }
            MACPIERI_CHECK(!negative, "exact division failed: divisor does not divide");
            S c = rlead.second * glead_inv;
            quot.add_term(m, c);
            rem = rem - g0.mul_monomial(m, c);
        }
        // Undo the shifts: quotient gains z^{fshift - gshift}.
        ExpVec back = fshift;
        for (size_t k = 0; k < back.size(); ++k) back[k] -= gshift[k];
        return quot.shifted_up(back);
    }

    // Diagnostic rendering in raw map order; the user-facing degrevlex
    // rendering lives in render.hpp.
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.to_string() + ")";
            for (size_t k = 0; k < e.size(); ++k)
                if (e[k] != 0)
                    out += "*z" + std::to_string(k + 1) +
                           (e[k] == 1 ? "" : "^" + std::to_string(e[k]));
        }
        return out;
    }

  private:
    ExpVec min_exponents() const {
        ExpVec m(static_cast<size_t>(nvars_), 0);
        bool first = true;
        for (const auto& [e, c] : terms_) {
            (void)c;
            for (size_t k = 0; k < e.size(); ++k)
                m[k] = first ? e[k] : std::min(m[k], e[k]);
            first = false;
        }
        return m;
    }

    LaurentPoly shifted_down(const ExpVec& s) const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            ExpVec ne = e;
            for (size_t k = 0; k < ne.size(); ++k) ne[k] -= s[k];
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    LaurentPoly shifted_up(const ExpVec& s) const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            ExpVec ne = e;
            for (size_t k = 0; k < ne.size(); ++k) ne[k] += s[k];
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    int nvars_;
    TermMap terms_;
};

// e_k(z_1, ..., z_n).
template <CoeffScalar S>
LaurentPoly<S> elementary_symmetric(int n, int k) {
    MACPIERI_CHECK(0 <= k && k <= n, "elementary symmetric degree out of range");
    LaurentPoly<S> r(n);
    std::vector<int> idx(static_cast<size_t>(k));
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == k) {
            std::vector<int> e(static_cast<size_t>(n), 0);
            for (int i : idx) e[static_cast<size_t>(i)] = 1;
            r.add_term(std::move(e), S::from_int(1));
            return;
        }
        for (int i = start; i < n; ++i) {
            idx[static_cast<size_t>(depth)] = i;
            self(self, i + 1, depth + 1);
        }
    };
    if (k == 0)
        r = LaurentPoly<S>::one(n);
    else
        rec(rec, 0, 0);
    return r;
}

// z^eta as a monomial.
template <CoeffScalar S>
LaurentPoly<S> monomial_of(const Composition& eta) {
    return LaurentPoly<S>::monomial(eta.parts, S::from_int(1));
}

}  // namespace macpieri
