#pragma once

// The classical degeneration q = s^alpha, t = s, s -> 1 of the e_1 branching
// coefficients. In the limit the multiplicative kernel factors become the
// additive ones
//     a(x, y) = 1/(alpha (x - y)),   b(x, y) = (x - y - 1/alpha)/(x - y),
// the spectral vector becomes eta_i - l'_eta(i)/alpha, and the hook product
// becomes d'_alpha = prod over cells of (alpha (arm + 1) + leg). The limit of
// the coefficient a_{eta, c_I(eta)} is
//     -alpha^2 d'_{alpha,eta} A_{alpha,I} B~_{alpha,I} / d'_{alpha,c_I(eta)}
// with A and B~ evaluated at the additive spectral point.
//
// Both routes are implemented: the closed additive form (jack_coefficient)
// and the honest limit of the exact q,t coefficient (macdonald_limit), so
// each pins the other. alpha is restricted to positive integers, which keeps
// q = s^alpha polynomial in s.
//
// Convention note: the multiplicative-to-additive dictionary sends q^m t^l to
// m + l/alpha (the substitution t = q^{1/alpha} forces the 1/alpha onto the
// t-exponent); the limit agreement below is what pins this choice.

#include <vector>

#include "macpieri/common.hpp"
#include "macpieri/composition.hpp"
#include "macpieri/pieri.hpp"
#include "macpieri/qt_scalar.hpp"

namespace macpieri {

inline Rational jack_a(const Rational& x, const Rational& y, long alpha) {
    MACPIERI_CHECK(alpha >= 1, "alpha must be a positive integer");
    Rational d = (x - y) * alpha;
    MACPIERI_CHECK(d != 0, "pole in the additive kernel factor");
    return Rational(1) / d;
}

inline Rational jack_b(const Rational& x, const Rational& y, long alpha) {
    MACPIERI_CHECK(alpha >= 1, "alpha must be a positive integer");
    Rational d = x - y;
    MACPIERI_CHECK(d != 0, "pole in the additive kernel factor");
    return (d - make_rational(1, alpha)) / d;
}

// The additive spectral point: entries eta_i - l'_eta(i)/alpha.
inline std::vector<Rational> jack_spectral(const Composition& eta, long alpha) {
    MACPIERI_CHECK(alpha >= 1, "alpha must be a positive integer");
    std::vector<Rational> v;
    v.reserve(static_cast<size_t>(eta.n()));
    for (int i = 1; i <= eta.n(); ++i)
        v.push_back(Rational(eta[i]) - make_rational(leg_colength(eta, i), alpha));
    return v;
}

inline Rational jack_d_prime(const Composition& eta, long alpha) {
    MACPIERI_CHECK(alpha >= 1, "alpha must be a positive integer");
    Rational acc(1);
    for (const auto& cell : diagram_cells(eta))
        acc *= Rational(alpha * (arm(eta, cell.i, cell.j) + 1) + leg(eta, cell.i, cell.j));
    return acc;
}

inline Rational jack_A_I(const std::vector<Rational>& v, const IndexSet& I, long alpha) {
    MACPIERI_CHECK(!I.empty(), "index set must be nonempty");
    auto at = [&v](int pos) -> const Rational& { return v[static_cast<size_t>(pos - 1)]; };
    Rational acc = jack_a(at(I.back()) - 1, at(I.front()), alpha);
    for (size_t u = 0; u + 1 < I.size(); ++u)
        acc *= jack_a(at(I[u]), at(I[u + 1]), alpha);
    return acc;
}

inline Rational jack_Btilde_I(const std::vector<Rational>& v, const IndexSet& I, long alpha) {
    MACPIERI_CHECK(!I.empty(), "index set must be nonempty");
    int n = static_cast<int>(v.size());
    auto at = [&v](int pos) -> const Rational& { return v[static_cast<size_t>(pos - 1)]; };
    Rational first_up = at(I.front()) + 1;
    Rational acc = first_up + make_rational(n - 1, alpha);
    for (size_t u = 0; u < I.size(); ++u) {
        int lo = (u == 0) ? 1 : I[u - 1] + 1;
        for (int j = lo; j < I[u]; ++j) acc *= jack_b(at(I[u]), at(j), alpha);
    }
    for (int j = I.back() + 1; j <= n; ++j) acc *= jack_b(first_up, at(j), alpha);
    return acc;
}

// The additive closed form for the branching coefficient of e_1 E_eta(z; alpha)
// on E_{c_I(eta)}(z; alpha).
inline Rational jack_coefficient(const Composition& eta, const IndexSet& I, long alpha) {
    auto v = jack_spectral(eta, alpha);
    Rational acc = -Rational(alpha) * Rational(alpha) * jack_d_prime(eta, alpha);
    acc *= jack_A_I(v, I, alpha) * jack_Btilde_I(v, I, alpha);
    return acc / jack_d_prime(c_I(eta, I), alpha);
}

// The same number obtained without the additive dictionary: specialize the
// exact q,t coefficient at q = s^alpha, t = s and evaluate the limit s -> 1.
inline Rational macdonald_limit(const Composition& eta, const IndexSet& I, long alpha) {
    MACPIERI_CHECK(alpha >= 1 && alpha <= static_cast<long>(1) << 20,
                   "alpha must be a (reasonably small) positive integer");
    return e1_coefficient<QTScalar>(eta, I).to_s_param(static_cast<int>(alpha)).limit_at_one();
}

}  // namespace macpieri
