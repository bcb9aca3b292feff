#pragma once

// Closed-form branching data for the products z_i E_eta, e_1 E_eta and
// e_{n-1} E_eta in the basis {E_nu(z; q^{-1}, t^{-1})}, together with the
// modulus-(+1) generalized binomial coefficients and the matching evaluation
// formula for E*_eta(nu-bar).
//
// The building blocks are the scalar kernel factors
//     a-hat(x, y) = (t - 1) x / (x - y),   b-hat(x, y) = (x - t y) / (x - y)
// and their products over an index set I = {t_1 < ... < t_s}:
//     A_I  = a-hat(v_{t_s}/q, v_{t_1}) prod_{u<s} a-hat(v_{t_u}, v_{t_{u+1}})
//     B_I  = (v_{t_s} - t^{1-n}) prod_{j<t_1} b-hat(v_{t_s}/q, v_j)
//              prod_u prod_{t_u<j<t_{u+1}} b-hat(v_{t_u}, v_j)
//     B~_I = prod_u prod_{t_{u-1}<j<t_u} b-hat(v_{t_u}, v_j)
//              prod_{j>t_s} b-hat(q v_{t_1}, v_j) * (q v_{t_1} - t^{1-n})
// with the selector factors chi / chi~ singling out one i in I. Everything
// here evaluates at explicit points (typically spectral vectors); the
// polynomial-coefficient versions used by the kernel-operator expansion live
// with the operators.
//
// All expansion coefficients are stated for E(.; q^{-1}, t^{-1}); callers
// working at (q, t) invert the parameters of every coefficient.

#include <algorithm>
#include <optional>
#include <vector>

#include "macpieri/common.hpp"
#include "macpieri/composition.hpp"
#include "macpieri/macdonald.hpp"

namespace macpieri {

template <CoeffScalar S>
S a_hat(const S& x, const S& y) {
    return ((S::qt_mono(0, 1) - S::from_int(1)) * x) / (x - y);
}

template <CoeffScalar S>
S b_hat(const S& x, const S& y) {
    return (x - S::qt_mono(0, 1) * y) / (x - y);
}

namespace detail {
// 1-based position lookup into a point vector.
template <CoeffScalar S>
const S& at(const std::vector<S>& v, int pos) {
    return v[static_cast<size_t>(pos - 1)];
}
}  // namespace detail

template <CoeffScalar S>
S A_I_at(const std::vector<S>& v, const IndexSet& I) {
    MACPIERI_CHECK(!I.empty(), "index set must be nonempty");
    S acc = a_hat(detail::at(v, I.back()) / S::qt_mono(1, 0), detail::at(v, I.front()));
    for (size_t u = 0; u + 1 < I.size(); ++u)
        acc = acc * a_hat(detail::at(v, I[u]), detail::at(v, I[u + 1]));
    return acc;
}

template <CoeffScalar S>
S B_I_at(const std::vector<S>& v, const IndexSet& I) {
    MACPIERI_CHECK(!I.empty(), "index set must be nonempty");
    int n = static_cast<int>(v.size());
    S last_over_q = detail::at(v, I.back()) / S::qt_mono(1, 0);
    S acc = detail::at(v, I.back()) - S::qt_mono(0, 1 - n);
    for (int j = 1; j < I.front(); ++j) acc = acc * b_hat(last_over_q, detail::at(v, j));
    for (size_t u = 0; u < I.size(); ++u) {
        int hi = (u + 1 < I.size()) ? I[u + 1] : n + 1;
        for (int j = I[u] + 1; j < hi; ++j)
            acc = acc * b_hat(detail::at(v, I[u]), detail::at(v, j));
    }
    return acc;
}

template <CoeffScalar S>
S chi_I_at(const std::vector<S>& v, const IndexSet& I, int i) {
    auto pos = std::find(I.begin(), I.end(), i);
    MACPIERI_CHECK(pos != I.end(), "selector index must lie in the index set");
    S denom = (pos == I.begin())
                  ? a_hat(detail::at(v, I.back()) / S::qt_mono(1, 0), detail::at(v, i))
                  : a_hat(detail::at(v, *(pos - 1)), detail::at(v, i));
    return S::from_int(1) / denom;
}

template <CoeffScalar S>
S r_I_at(const std::vector<S>& v, const IndexSet& I, int i) {
    return chi_I_at(v, I, i) * A_I_at(v, I) * B_I_at(v, I);
}

template <CoeffScalar S>
S Btilde_I_at(const std::vector<S>& v, const IndexSet& I) {
    MACPIERI_CHECK(!I.empty(), "index set must be nonempty");
    int n = static_cast<int>(v.size());
    S first_times_q = S::qt_mono(1, 0) * detail::at(v, I.front());
    S acc = first_times_q - S::qt_mono(0, 1 - n);
    for (size_t u = 0; u < I.size(); ++u) {
        int lo = (u == 0) ? 1 : I[u - 1] + 1;
        for (int j = lo; j < I[u]; ++j)
            acc = acc * b_hat(detail::at(v, I[u]), detail::at(v, j));
    }
    for (int j = I.back() + 1; j <= n; ++j)
        acc = acc * b_hat(first_times_q, detail::at(v, j));
    return acc;
}

template <CoeffScalar S>
S chitilde_I_at(const std::vector<S>& v, const IndexSet& I, int i) {
    auto pos = std::find(I.begin(), I.end(), i);
    MACPIERI_CHECK(pos != I.end(), "selector index must lie in the index set");
    S denom = (pos + 1 == I.end())
                  ? a_hat(detail::at(v, i), S::qt_mono(1, 0) * detail::at(v, I.front()))
                  : a_hat(detail::at(v, i), detail::at(v, *(pos + 1)));
    return detail::at(v, i) / denom;
}

// ---------------------------------------------------------------------------
// Pieri expansions.

template <CoeffScalar S>
struct PieriTerm {
    Composition target;  // c_I applied to the source composition
    IndexSet subset;
    S coefficient;       // nonzero; zero terms are dropped before emission
};

namespace detail {
// Canonical emission order (ascending total order on targets), plus the
// loud-failure guard for the assumption that distinct maximal index sets
// reach distinct successors.
template <CoeffScalar S>
void finalize_terms(std::vector<PieriTerm<S>>& terms) {
    std::sort(terms.begin(), terms.end(),
              [](const PieriTerm<S>& a, const PieriTerm<S>& b) {
                  return total_less(a.target, b.target);
              });
    for (size_t k = 0; k + 1 < terms.size(); ++k)
        MACPIERI_CHECK(terms[k].target != terms[k + 1].target,
                       "two index sets produced the same successor");
}
}  // namespace detail

// z_i E_eta(z; q^{-1}, t^{-1}) =
//   sum over maximal I containing i of
//   chi~_I^{i}(eta-bar) A_I(eta-bar) B~_I(eta-bar) k_eta / k_{c_I(eta)}
//   E_{c_I(eta)}(z; q^{-1}, t^{-1}).
template <CoeffScalar S>
std::vector<PieriTerm<S>> expand_zi(const Composition& eta, int i) {
    MACPIERI_CHECK(1 <= i && i <= eta.n(), "coordinate index out of range");
    auto etabar = spectral_vector<S>(eta);
    S keta = k_eta<S>(eta);
    std::vector<PieriTerm<S>> out;
    for (const IndexSet& I : maximal_subsets(eta)) {
        if (!std::binary_search(I.begin(), I.end(), i)) continue;
        Composition nu = c_I(eta, I);
        S coeff = chitilde_I_at(etabar, I, i) * A_I_at(etabar, I) *
                  Btilde_I_at(etabar, I) * keta / k_eta<S>(nu);
        if (coeff.is_zero()) continue;
        out.push_back({std::move(nu), I, std::move(coeff)});
    }
    detail::finalize_terms(out);
    return out;
}

// The branching coefficient a_{eta, c_I(eta)} of e_1 E_eta:
//   -(q - 1) d'_eta(q^{-1}, t^{-1}) A_I(eta-bar) B~_I(eta-bar)
//     / (q^{eta_{min I} + 1} (t - 1) d'_{c_I(eta)}(q^{-1}, t^{-1})).
template <CoeffScalar S>
S e1_coefficient(const Composition& eta, const IndexSet& I) {
    MACPIERI_CHECK(!I.empty(), "index set must be nonempty");
    auto etabar = spectral_vector<S>(eta);
    S one = S::from_int(1);
    S num = -(S::qt_mono(1, 0) - one) * d_prime<S>(eta, true) * A_I_at(etabar, I) *
            Btilde_I_at(etabar, I);
    S den = S::qt_mono(eta[I.front()] + 1, 0) * (S::qt_mono(0, 1) - one) *
            d_prime<S>(c_I(eta, I), true);
    return num / den;
}

template <CoeffScalar S>
std::vector<PieriTerm<S>> expand_e1(const Composition& eta) {
    std::vector<PieriTerm<S>> out;
    for (const IndexSet& I : maximal_subsets(eta)) {
        S coeff = e1_coefficient<S>(eta, I);
        if (coeff.is_zero()) continue;
        out.push_back({c_I(eta, I), I, std::move(coeff)});
    }
    detail::finalize_terms(out);
    return out;
}

// e_{n-1} E_eta via the e_1 expansion of the complementary composition:
// with eta' = eta - (min(eta)^n) and nu = (-eta' + (max(eta')^n))^R, each
// maximal I for nu contributes a_{nu, c_I(nu)} on the target
// -c_I(nu)^R + ((max(nu) + 1)^n) + (min(eta)^n).
template <CoeffScalar S>
std::vector<PieriTerm<S>> expand_en_minus_1(const Composition& eta) {
    int n = eta.n();
    MACPIERI_CHECK(n >= 2, "the e_{n-1} expansion needs at least two variables");
    int base = eta.min_part();
    Composition etap = eta.shifted(-base);
    int mx = etap.max_part();
    std::vector<int> nup(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) nup[static_cast<size_t>(i - 1)] = mx - etap[n + 1 - i];
    Composition nu{std::move(nup)};
    std::vector<PieriTerm<S>> out;
    for (const IndexSet& I : maximal_subsets(nu)) {
        S coeff = e1_coefficient<S>(nu, I);
        if (coeff.is_zero()) continue;
        Composition cnu = c_I(nu, I);
        std::vector<int> lam(static_cast<size_t>(n));
        for (int i = 1; i <= n; ++i)
            lam[static_cast<size_t>(i - 1)] = mx + 1 - cnu[n + 1 - i] + base;
        out.push_back({Composition{std::move(lam)}, I, std::move(coeff)});
    }
    detail::finalize_terms(out);
    return out;
}

// ---------------------------------------------------------------------------
// Generalized binomial coefficients (nu over eta) for |nu| = |eta| + 1.

// Closed form: -A_I(eta-bar) B~_I(eta-bar) / (t - 1) when nu = c_I(eta) for a
// (necessarily unique) maximal I, and 0 when nu is not a successor of eta.
template <CoeffScalar S>
S binom_succ(const Composition& nu, const Composition& eta) {
    MACPIERI_CHECK(nu.n() == eta.n(), "compositions must have the same length");
    MACPIERI_CHECK(nu.modulus() == eta.modulus() + 1,
                   "the closed form covers |nu| = |eta| + 1 only");
    std::optional<IndexSet> found;
    for (const IndexSet& I : maximal_subsets(eta)) {
        if (c_I(eta, I) != nu) continue;
        MACPIERI_CHECK(!found, "successor reached from two maximal index sets");
        found = I;
    }
    if (!found) return S::from_int(0);
    auto etabar = spectral_vector<S>(eta);
    return -(A_I_at(etabar, *found) * Btilde_I_at(etabar, *found)) /
           (S::qt_mono(0, 1) - S::from_int(1));
}

// The defining evaluation ratio E*_eta(nu-bar) / E*_eta(eta-bar), valid for
// arbitrary moduli (it vanishes for |nu| <= |eta|, nu != eta).
template <CoeffScalar S>
S binom_general(MacdonaldBuilder<S>& builder, const Composition& nu,
                const Composition& eta) {
    return builder.binom(nu, eta);
}

// E*_eta(nu-bar) in closed form for |nu| = |eta| + 1: the binomial times the
// principal evaluation k_eta.
template <CoeffScalar S>
S estar_eval_formula(const Composition& nu, const Composition& eta) {
    return binom_succ<S>(nu, eta) * k_eta<S>(eta);
}

}  // namespace macpieri
