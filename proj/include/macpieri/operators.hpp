#pragma once

// The operator suite acting on LaurentPoly<S>:
//
//   s_i        swap z_i, z_{i+1}
//   tau_i      z_i -> q z_i
//   Delta      f(z) -> f(z_n/q, z_1, ..., z_{n-1})
//   omega      f(z) -> f(q z_n, z_1, ..., z_{n-1})   (= s_{n-1}...s_1 tau_1)
//   Phi        (z_n - t^{1-n}) Delta
//   T_i        t + (t z_i - z_{i+1})/(z_i - z_{i+1}) (s_i - 1)
//   T_i^{-1}   t^{-1} - 1 + t^{-1} T_i
//   H_i        (t-1) z_i/(z_i - z_{i+1}) + (z_i - t z_{i+1})/(z_i - z_{i+1}) s_i
//   Hbar_i     (t-1) z_{i+1}/(z_i - z_{i+1}) + (z_i - t z_{i+1})/(z_i - z_{i+1}) s_i
//   Y_i        t^{-(n-i)} T_i ... T_{n-1} omega T_1^{-1} ... T_{i-1}^{-1}
//   Xi_i       z_i^{-1} + z_i^{-1} H_i ... H_{n-1} Phi H_1 ... H_{i-1}
//   Ztilde_i   z_i Xi_i - 1 = H_i ... H_{n-1} Phi H_1 ... H_{i-1}
//   Z_i        t^{-binom(n,2)} (z_i Xi_i - 1) Xi_1 ... (omit i) ... Xi_n
//   M          scale the degree-d part by q^{-binom(d,2)}
//
// Operator words always apply their rightmost factor first. The divided
// differences stay exact: numerators are assembled first and divided by
// (z_i - z_{i+1}) with a remainder check.
//
// Ztilde_i also has an expansion form as a sum over index sets I containing
// i of r_I(z) f(Iz) with r_I = chi_I^{(i)} A_I B_I; both forms are exposed so
// they can be played against each other.

#include "macpieri/composition.hpp"
#include "macpieri/laurent.hpp"
#include "macpieri/ratfun.hpp"

namespace macpieri {

template <CoeffScalar S>
LaurentPoly<S> apply_si(const LaurentPoly<S>& f, int i) {
    MACPIERI_CHECK(1 <= i && i < f.nvars(), "s_i index out of range");
    return f.swapped_vars(i, i + 1);
}

template <CoeffScalar S>
LaurentPoly<S> apply_tau(const LaurentPoly<S>& f, int i) {
    MACPIERI_CHECK(1 <= i && i <= f.nvars(), "tau_i index out of range");
    return f.transformed([&](const std::vector<int>& e, const S& c) {
        return std::make_pair(e, c * S::qt_mono(e[static_cast<size_t>(i - 1)], 0));
    });
}

namespace detail {

// Shared rotation: first argument becomes z_n scaled by q^{qpow}, argument
// k >= 2 becomes z_{k-1}.
template <CoeffScalar S>
LaurentPoly<S> rotate_first_to_last(const LaurentPoly<S>& f, int qpow) {
    return f.transformed([&](const std::vector<int>& e, const S& c) {
        std::vector<int> ne(e.size());
        for (size_t k = 1; k < e.size(); ++k) ne[k - 1] = e[k];
        ne[e.size() - 1] = e[0];
        return std::make_pair(std::move(ne), c * S::qt_mono(qpow * e[0], 0));
    });
}

}  // namespace detail

template <CoeffScalar S>
LaurentPoly<S> apply_delta(const LaurentPoly<S>& f) {
    return detail::rotate_first_to_last(f, -1);
}

template <CoeffScalar S>
LaurentPoly<S> apply_omega(const LaurentPoly<S>& f) {
    return detail::rotate_first_to_last(f, +1);
}

template <CoeffScalar S>
LaurentPoly<S> apply_phi(const LaurentPoly<S>& f) {
    int n = f.nvars();
    LaurentPoly<S> zn = LaurentPoly<S>::variable(n, n);
    LaurentPoly<S> shift = LaurentPoly<S>::constant(n, S::qt_mono(0, 1 - n));
    return (zn - shift) * apply_delta(f);
}

namespace detail {

template <CoeffScalar S>
LaurentPoly<S> vandermonde_pair(int n, int i) {
    return LaurentPoly<S>::variable(n, i) - LaurentPoly<S>::variable(n, i + 1);
}

}  // namespace detail

template <CoeffScalar S>
LaurentPoly<S> apply_Ti(const LaurentPoly<S>& f, int i) {
    MACPIERI_CHECK(1 <= i && i < f.nvars(), "T_i index out of range");
    int n = f.nvars();
    LaurentPoly<S> zi = LaurentPoly<S>::variable(n, i);
    LaurentPoly<S> zi1 = LaurentPoly<S>::variable(n, i + 1);
    S t = S::qt_mono(0, 1);
    LaurentPoly<S> diff = apply_si(f, i) - f;
    LaurentPoly<S> quot = diff.divided_exact(detail::vandermonde_pair<S>(n, i));
    return f.scaled(t) + (zi.scaled(t) - zi1) * quot;
}

template <CoeffScalar S>
LaurentPoly<S> apply_Ti_inv(const LaurentPoly<S>& f, int i) {
    S tinv = S::qt_mono(0, -1);
    return f.scaled(tinv - S::from_int(1)) + apply_Ti(f, i).scaled(tinv);
}

template <CoeffScalar S>
LaurentPoly<S> apply_Hi(const LaurentPoly<S>& f, int i) {
    MACPIERI_CHECK(1 <= i && i < f.nvars(), "H_i index out of range");
    int n = f.nvars();
    LaurentPoly<S> zi = LaurentPoly<S>::variable(n, i);
    LaurentPoly<S> zi1 = LaurentPoly<S>::variable(n, i + 1);
    S t = S::qt_mono(0, 1);
    LaurentPoly<S> numer =
        zi.scaled(t - S::from_int(1)) * f + (zi - zi1.scaled(t)) * apply_si(f, i);
    return numer.divided_exact(detail::vandermonde_pair<S>(n, i));
}

template <CoeffScalar S>
LaurentPoly<S> apply_Hbar(const LaurentPoly<S>& f, int i) {
    MACPIERI_CHECK(1 <= i && i < f.nvars(), "Hbar_i index out of range");
    int n = f.nvars();
    LaurentPoly<S> zi = LaurentPoly<S>::variable(n, i);
    LaurentPoly<S> zi1 = LaurentPoly<S>::variable(n, i + 1);
    S t = S::qt_mono(0, 1);
    LaurentPoly<S> numer =
        zi1.scaled(t - S::from_int(1)) * f + (zi - zi1.scaled(t)) * apply_si(f, i);
    return numer.divided_exact(detail::vandermonde_pair<S>(n, i));
}

template <CoeffScalar S>
LaurentPoly<S> apply_Yi(const LaurentPoly<S>& f, int i) {
    int n = f.nvars();
    MACPIERI_CHECK(1 <= i && i <= n, "Y_i index out of range");
    LaurentPoly<S> g = f;
    for (int j = i - 1; j >= 1; --j) g = apply_Ti_inv(g, j);
    g = apply_omega(g);
    for (int j = n - 1; j >= i; --j) g = apply_Ti(g, j);
    return g.scaled(S::qt_mono(0, -(n - i)));
}

namespace detail {

// The word H_i ... H_{n-1} Phi H_1 ... H_{i-1}.
template <CoeffScalar S>
LaurentPoly<S> hecke_phi_word(const LaurentPoly<S>& f, int i) {
    int n = f.nvars();
    LaurentPoly<S> g = f;
    for (int j = i - 1; j >= 1; --j) g = apply_Hi(g, j);
    g = apply_phi(g);
    for (int j = n - 1; j >= i; --j) g = apply_Hi(g, j);
    return g;
}

}  // namespace detail

template <CoeffScalar S>
LaurentPoly<S> apply_Xi(const LaurentPoly<S>& f, int i) {
    int n = f.nvars();
    MACPIERI_CHECK(1 <= i && i <= n, "Xi_i index out of range");
    std::vector<int> inv_zi(static_cast<size_t>(n), 0);
    inv_zi[static_cast<size_t>(i - 1)] = -1;
    return (f + detail::hecke_phi_word(f, i)).mul_monomial(inv_zi, S::from_int(1));
}

template <CoeffScalar S>
LaurentPoly<S> apply_Ztilde_direct(const LaurentPoly<S>& f, int i) {
    int n = f.nvars();
    MACPIERI_CHECK(1 <= i && i <= n, "Ztilde_i index out of range");
    return detail::hecke_phi_word(f, i);
}

template <CoeffScalar S>
LaurentPoly<S> apply_Zi(const LaurentPoly<S>& f, int i) {
    int n = f.nvars();
    MACPIERI_CHECK(1 <= i && i <= n, "Z_i index out of range");
    LaurentPoly<S> g = f;
    for (int j = n; j >= 1; --j)
        if (j != i) g = apply_Xi(g, j);
    g = apply_Ztilde_direct(g, i);
    return g.scaled(S::qt_mono(0, -(static_cast<long>(n) * (n - 1) / 2)));
}

template <CoeffScalar S>
LaurentPoly<S> apply_M(const LaurentPoly<S>& f) {
    LaurentPoly<S> r(f.nvars());
    for (long d : f.degrees_present()) {
        long c2 = d * (d - 1) / 2;
        r = r + f.homogeneous_component(d).scaled(S::qt_mono(-c2, 0));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Kernel factors for the expansion form of Ztilde, as rational functions in
// z. Arguments x, y are monomials (or monomial-scaled variables).

template <CoeffScalar S>
RationalFunction<S> a_hat_rf(const LaurentPoly<S>& x, const LaurentPoly<S>& y) {
    S t1 = S::qt_mono(0, 1) - S::from_int(1);
    return RationalFunction<S>(x.scaled(t1), x - y);
}

template <CoeffScalar S>
RationalFunction<S> a_hat_rf_inverse(const LaurentPoly<S>& x, const LaurentPoly<S>& y) {
    S t1 = S::qt_mono(0, 1) - S::from_int(1);
    return RationalFunction<S>(x - y, x.scaled(t1));
}

template <CoeffScalar S>
RationalFunction<S> b_hat_rf(const LaurentPoly<S>& x, const LaurentPoly<S>& y) {
    S t = S::qt_mono(0, 1);
    return RationalFunction<S>(x - y.scaled(t), x - y);
}

namespace detail {

template <CoeffScalar S>
LaurentPoly<S> zvar(int n, int j) { return LaurentPoly<S>::variable(n, j); }

// z_{t_s}/q.
template <CoeffScalar S>
LaurentPoly<S> zlast_over_q(int n, const IndexSet& I) {
    return zvar<S>(n, I.back()).scaled(S::qt_mono(-1, 0));
}

}  // namespace detail

// A_I(z) = a-hat(z_{t_s}/q, z_{t_1}) prod_{u<s} a-hat(z_{t_u}, z_{t_{u+1}}).
template <CoeffScalar S>
RationalFunction<S> A_I_rf(int n, const IndexSet& I) {
    RationalFunction<S> acc =
        a_hat_rf<S>(detail::zlast_over_q<S>(n, I), detail::zvar<S>(n, I.front()));
    for (size_t u = 0; u + 1 < I.size(); ++u)
        acc = acc * a_hat_rf<S>(detail::zvar<S>(n, I[u]), detail::zvar<S>(n, I[u + 1]));
    return acc;
}

// B_I(z) = (z_{t_s} - t^{1-n}) prod_{j < t_1} b-hat(z_{t_s}/q, z_j)
//          prod_{u<=s} prod_{t_u < j < t_{u+1}} b-hat(z_{t_u}, z_j),
// with t_{s+1} = n + 1.
template <CoeffScalar S>
RationalFunction<S> B_I_rf(int n, const IndexSet& I) {
    LaurentPoly<S> last = detail::zvar<S>(n, I.back());
    RationalFunction<S> acc = RationalFunction<S>::from_poly(
        last - LaurentPoly<S>::constant(n, S::qt_mono(0, 1 - n)));
    for (int j = 1; j < I.front(); ++j)
        acc = acc * b_hat_rf<S>(detail::zlast_over_q<S>(n, I), detail::zvar<S>(n, j));
    int s = static_cast<int>(I.size());
    for (int u = 1; u <= s; ++u) {
        int hi = (u == s) ? n + 1 : I[static_cast<size_t>(u)];
        for (int j = I[static_cast<size_t>(u - 1)] + 1; j < hi; ++j)
            acc = acc * b_hat_rf<S>(detail::zvar<S>(n, I[static_cast<size_t>(u - 1)]),
                                    detail::zvar<S>(n, j));
    }
    return acc;
}

// chi_I^{(i)}(z): 1/a-hat(z_{t_{k-1}}, z_i) when i = t_k with k >= 2, and
// 1/a-hat(z_{t_s}/q, z_i) when i = t_1.
template <CoeffScalar S>
RationalFunction<S> chi_I_rf(int n, const IndexSet& I, int i) {
    auto pos = std::find(I.begin(), I.end(), i);
    MACPIERI_CHECK(pos != I.end(), "chi_I requires i in I");
    if (pos == I.begin())
        return a_hat_rf_inverse<S>(detail::zlast_over_q<S>(n, I), detail::zvar<S>(n, i));
    int prev = *(pos - 1);
    return a_hat_rf_inverse<S>(detail::zvar<S>(n, prev), detail::zvar<S>(n, i));
}

template <CoeffScalar S>
RationalFunction<S> r_I_rf(int n, const IndexSet& I, int i) {
    return chi_I_rf<S>(n, I, i) * A_I_rf<S>(n, I) * B_I_rf<S>(n, I);
}

// Ztilde_i as sum_{I contains i} r_I^{(i)}(z) f(Iz). The sum of fractions is
// a polynomial; the final division checks that.
template <CoeffScalar S>
LaurentPoly<S> apply_Ztilde_expansion(const LaurentPoly<S>& f, int i) {
    int n = f.nvars();
    MACPIERI_CHECK(1 <= i && i <= n, "Ztilde_i index out of range");
    RationalFunction<S> acc(n);
    for (const auto& I : nonempty_subsets(n)) {
        if (std::find(I.begin(), I.end(), i) == I.end()) continue;
        acc = acc + r_I_rf<S>(n, I, i) * RationalFunction<S>::from_poly(f.substituted_iz(I));
    }
    return acc.to_polynomial();
}

}  // namespace macpieri
