// Acceptance gate: one pass/fail line per criterion, all checks exact
// (rational / rational-function equality, zero tolerance). Returns 0 iff
// every criterion passes.

#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "macpieri/composition.hpp"
#include "macpieri/expansion.hpp"
#include "macpieri/jack.hpp"
#include "macpieri/laurent.hpp"
#include "macpieri/macdonald.hpp"
#include "macpieri/operators.hpp"
#include "macpieri/pieri.hpp"
#include "macpieri/qt_scalar.hpp"
#include "macpieri/sampled.hpp"

using namespace macpieri;

namespace {

using P = LaurentPoly<QTScalar>;

// Exhaustive composition range per variable count: modulus <= 4 for n <= 2,
// modulus <= 3 for n = 3.
std::vector<Composition> full_range(int n) {
    return compositions_up_to_modulus(n, n <= 2 ? 4 : 3);
}

template <CoeffScalar S>
Expansion<S> as_expansion(const std::vector<PieriTerm<S>>& terms) {
    Expansion<S> e;
    for (const auto& term : terms) e.add(term.target, term.coefficient);
    return e;
}

// Sample points for the numeric half of the kernel-identity check: reject
// (q0, t0) with q0^a t0^b = 1 for any small (a, b) != (0, 0) so spectral
// values stay distinct and denominators stay nonzero.
bool admissible_point(const Rational& q0, const Rational& t0, int n) {
    for (long a = -6; a <= 6; ++a)
        for (long b = -(2L * n + 2); b <= 2L * n + 2; ++b) {
            if (a == 0 && b == 0) continue;
            if (pow_rational(q0, a) * pow_rational(t0, b) == 1) return false;
        }
    return true;
}

std::pair<Rational, Rational> draw_point(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<long> d(2, 97);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Rational q0 = make_rational(d(rng), d(rng));
        Rational t0 = make_rational(d(rng), d(rng));
        if (admissible_point(q0, t0, n)) return {q0, t0};
    }
    throw ExactError("could not draw an admissible sample point");
}

template <CoeffScalar S>
LaurentPoly<S> random_poly(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> part(0, 3), coeff(1, 9);
    LaurentPoly<S> f(n);
    for (int k = 0; k < 3; ++k) {
        std::vector<int> e(static_cast<size_t>(n));
        do {
            for (int& x : e) x = part(rng);
        } while (std::accumulate(e.begin(), e.end(), 0) > 3);
        f = f + LaurentPoly<S>::monomial(e, S::from_int(coeff(rng)));
    }
    return f;
}

}  // namespace

int main() {
    std::cout << "acceptance: exact checks only (zero tolerance)\n";
    int failures = 0;
    MacdonaldBuilder<QTScalar> B;  // shared so interpolation work is reused

    auto criterion = [&](int idx, const std::string& what, auto&& body) {
        bool ok = false;
        std::string note;
        try {
            ok = body();
        } catch (const std::exception& e) {
            ok = false;
            note = std::string(" (exception: ") + e.what() + ")";
        }
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << idx << ": " << what << note
                  << std::endl;
        if (!ok) ++failures;
    };

    criterion(1, "closed-form e_1 expansion equals change-of-basis oracle", [&] {
        for (int n = 1; n <= 3; ++n) {
            P e1 = elementary_symmetric<QTScalar>(n, 1);
            for (const Composition& eta : full_range(n)) {
                Expansion<QTScalar> oracle =
                    B.expand_in_E(e1 * B.E(eta, ParamKind::Inverted), ParamKind::Inverted);
                if (!(as_expansion(expand_e1<QTScalar>(eta)) == oracle)) return false;
            }
        }
        return true;
    });

    criterion(2, "closed-form z_i expansions equal oracle and sum to e_1", [&] {
        for (int n = 1; n <= 3; ++n)
            for (const Composition& eta : full_range(n)) {
                Expansion<QTScalar> sum;
                for (int i = 1; i <= n; ++i) {
                    auto terms = expand_zi<QTScalar>(eta, i);
                    Expansion<QTScalar> oracle = B.expand_in_E(
                        P::variable(n, i) * B.E(eta, ParamKind::Inverted), ParamKind::Inverted);
                    if (!(as_expansion(terms) == oracle)) return false;
                    for (const auto& term : terms) sum.add(term.target, term.coefficient);
                }
                if (!(sum == as_expansion(expand_e1<QTScalar>(eta)))) return false;
            }
        return true;
    });

    criterion(3, "closed-form e_{n-1} expansion equals oracle; n=2 matches e_1 verbatim", [&] {
        for (int n = 2; n <= 3; ++n) {
            P en1 = elementary_symmetric<QTScalar>(n, n - 1);
            for (const Composition& eta : full_range(n)) {
                auto terms = expand_en_minus_1<QTScalar>(eta);
                Expansion<QTScalar> oracle =
                    B.expand_in_E(en1 * B.E(eta, ParamKind::Inverted), ParamKind::Inverted);
                if (!(as_expansion(terms) == oracle)) return false;
                if (n == 2) {
                    auto ref = expand_e1<QTScalar>(eta);
                    if (terms.size() != ref.size()) return false;
                    for (size_t k = 0; k < terms.size(); ++k) {
                        if (terms[k].target != ref[k].target) return false;
                        if (terms[k].coefficient.to_string() != ref[k].coefficient.to_string())
                            return false;
                    }
                }
            }
        }
        return true;
    });

    criterion(4, "principal evaluation E*_eta(eta-bar) equals its closed product form", [&] {
        for (int n = 1; n <= 3; ++n)
            for (const Composition& eta : full_range(n)) {
                auto ebar = spectral_vector<QTScalar>(eta);
                QTScalar product = d_prime<QTScalar>(eta, true);
                for (int i = 1; i <= n; ++i)
                    product = product * ebar[static_cast<size_t>(i - 1)].pow(eta[i]);
                if (!(B.estar_eval(eta, eta) == product)) return false;
                if (!(product == k_eta<QTScalar>(eta))) return false;
            }
        return true;
    });

    criterion(5, "binomial successor closed form equals evaluation ratio (zeros included)", [&] {
        long zero_cases = 0;
        for (int n = 1; n <= 3; ++n)
            for (const Composition& eta : full_range(n))
                for (const Composition& nu :
                     compositions_with_modulus(n, static_cast<int>(eta.modulus()) + 1)) {
                    QTScalar closed = binom_succ<QTScalar>(nu, eta);
                    if (closed.is_zero()) ++zero_cases;
                    if (!(closed == B.binom(nu, eta))) return false;
                }
        return zero_cases > 0;  // the range must exercise non-successor pairs
    });

    criterion(6, "kernel identity: direct rational action equals subset expansion", [&] {
        // Symbolic: every monomial of degree <= 2, every coordinate.
        for (int n = 1; n <= 3; ++n)
            for (const Composition& mu : compositions_up_to_modulus(n, 2))
                for (int i = 1; i <= n; ++i) {
                    P zmu = monomial_of<QTScalar>(mu);
                    if (!(apply_Ztilde_direct(zmu, i) == apply_Ztilde_expansion(zmu, i)))
                        return false;
                }
        // Numeric: random degree-<=3 inputs at five admissible sample points.
        std::mt19937_64 rng(20260816ULL);
        for (int n = 1; n <= 3; ++n)
            for (int point = 0; point < 5; ++point) {
                auto [q0, t0] = draw_point(rng, n);
                ScopedSampleContext ctx(q0, t0);
                LaurentPoly<SampledScalar> f = random_poly<SampledScalar>(n, rng);
                for (int i = 1; i <= n; ++i)
                    if (!(apply_Ztilde_direct(f, i) == apply_Ztilde_expansion(f, i)))
                        return false;
            }
        return true;
    });

    criterion(7, "eigenrelations for Y_i and Xi_i, plus Hecke relations on random inputs", [&] {
        for (int n = 1; n <= 3; ++n)
            for (const Composition& eta : full_range(n)) {
                auto ebar = spectral_vector<QTScalar>(eta);
                const P& e_std = B.E(eta, ParamKind::Standard);
                const P& estar = B.estar(eta);
                for (int i = 1; i <= n; ++i) {
                    const QTScalar& ev = ebar[static_cast<size_t>(i - 1)];
                    if (!(apply_Yi(e_std, i) == e_std.scaled(ev))) return false;
                    if (!(apply_Xi(estar, i) == estar.scaled(ev.inverse()))) return false;
                }
            }
        std::mt19937_64 rng(777ULL);
        QTScalar t = QTScalar::t(), tm1 = t - QTScalar::from_int(1);
        for (int n = 2; n <= 3; ++n)
            for (int trial = 0; trial < 4; ++trial) {
                P f = random_poly<QTScalar>(n, rng);
                for (int i = 1; i < n; ++i) {
                    P tf = apply_Ti(f, i);
                    if (!(apply_Ti(tf, i) == tf.scaled(tm1) + f.scaled(t))) return false;
                    if (!(apply_Ti_inv(tf, i) == f)) return false;
                    if (!(apply_Ti(apply_Ti_inv(f, i), i) == f)) return false;
                    P hf = apply_Hi(f, i);
                    if (!(apply_Hi(hf, i) == hf.scaled(tm1) + f.scaled(t))) return false;
                    P gf = -apply_Hbar(f, i);
                    if (!(-apply_Hbar(gf, i) == gf.scaled(tm1) + f.scaled(t))) return false;
                }
                if (n == 3) {
                    if (!(apply_Ti(apply_Ti(apply_Ti(f, 2), 1), 2) ==
                          apply_Ti(apply_Ti(apply_Ti(f, 1), 2), 1)))
                        return false;
                    if (!(apply_Hi(apply_Hi(apply_Hi(f, 2), 1), 2) ==
                          apply_Hi(apply_Hi(apply_Hi(f, 1), 2), 1)))
                        return false;
                }
            }
        return true;
    });

    criterion(8, "intertwiner: Z_i after Psi-M equals Psi-M after z_i on the E basis (n=2)", [&] {
        for (const Composition& eta : compositions_up_to_modulus(2, 2)) {
            const P f = B.E(eta, ParamKind::Standard);
            for (int i = 1; i <= 2; ++i) {
                P lhs = apply_Zi(apply_psi_m(B, f), i);
                P rhs = apply_psi_m(B, P::variable(2, i) * f);
                if (!(lhs == rhs)) return false;
            }
        }
        return true;
    });

    criterion(9, "Jack limit of e_1 coefficients matches the direct rational formula", [&] {
        for (int n = 1; n <= 3; ++n)
            for (const Composition& eta : compositions_up_to_modulus(n, 3))
                for (const IndexSet& I : maximal_subsets(eta))
                    for (long alpha = 1; alpha <= 3; ++alpha)
                        if (!(jack_coefficient(eta, I, alpha) == macdonald_limit(eta, I, alpha)))
                            return false;
        // Worked values: the coefficient of the target (0,1) from eta=(0,0)
        // is alpha/(alpha+1).
        Composition origin = parse_composition("0,0");
        Composition up = parse_composition("0,1");
        bool saw_target = false;
        for (const IndexSet& I : maximal_subsets(origin)) {
            if (c_I(origin, I) != up) continue;
            saw_target = true;
            if (!(jack_coefficient(origin, I, 2) == make_rational(2, 3))) return false;
            if (!(macdonald_limit(origin, I, 3) == make_rational(3, 4))) return false;
        }
        return saw_target;
    });

    criterion(10, "structural invariants: colength sum, triangularity, vanishing, shift, genfun", [&] {
        // Leg-colength sum over 1000 random compositions with n up to 8.
        std::mt19937_64 rng(424242ULL);
        std::uniform_int_distribution<int> nn(1, 8), pp(0, 5);
        for (int trial = 0; trial < 1000; ++trial) {
            int n = nn(rng);
            std::vector<int> parts(static_cast<size_t>(n));
            for (int& x : parts) x = pp(rng);
            Composition eta(parts);
            auto lv = leg_colength_vector(eta);
            if (std::accumulate(lv.begin(), lv.end(), 0L) != static_cast<long>(n) * (n - 1) / 2)
                return false;
        }
        // Triangularity and homogeneity of every built E_eta, both parameter
        // conventions, and the vanishing table of every built E*_eta.
        for (int n = 1; n <= 3; ++n)
            for (const Composition& eta : full_range(n)) {
                for (ParamKind kind : {ParamKind::Standard, ParamKind::Inverted}) {
                    const P& e = B.E(eta, kind);
                    if (!e.coeff(eta).is_one()) return false;
                    for (const auto& [exps, c] : e.terms()) {
                        Composition mu{exps};
                        if (mu.modulus() != eta.modulus()) return false;
                        if (mu != eta && !precedes(mu, eta)) return false;
                    }
                }
                for (const Composition& mu :
                     compositions_up_to_modulus(n, static_cast<int>(eta.modulus())))
                    if (mu != eta && !B.estar_eval(eta, mu).is_zero()) return false;
            }
        // Shift identity: multiplying by z_1...z_n raises every part by one.
        for (int n = 1; n <= 3; ++n) {
            P allvars = P::monomial(std::vector<int>(static_cast<size_t>(n), 1),
                                    QTScalar::from_int(1));
            for (const Composition& eta : compositions_up_to_modulus(n, n <= 2 ? 3 : 2))
                if (!(B.E(eta.shifted(1), ParamKind::Standard) ==
                      allvars * B.E(eta, ParamKind::Standard)))
                    return false;
        }
        // Degree-(|eta|+1) truncation of the binomial generating function.
        for (const Composition& eta : compositions_up_to_modulus(2, 2)) {
            int m = static_cast<int>(eta.modulus());
            QTScalar deta = d_prime<QTScalar>(eta, false);
            long leta = leg_sum(eta);
            P lhs = P::zero(2);
            for (const Composition& nu : compositions_up_to_modulus(2, m + 1)) {
                QTScalar coeff = B.binom(nu, eta) * QTScalar::qt_mono(0, leg_sum(nu) - leta) *
                                 deta / d_prime<QTScalar>(nu, false);
                if (coeff.is_zero()) continue;
                lhs = lhs + B.E(nu, ParamKind::Inverted).scaled(coeff);
            }
            const P& e = B.E(eta, ParamKind::Inverted);
            P rhs = e + (elementary_symmetric<QTScalar>(2, 1) * e)
                            .scaled(QTScalar::from_int(1) /
                                    (QTScalar::from_int(1) - QTScalar::q()));
            if (!(lhs == rhs)) return false;
        }
        return true;
    });

    std::cout << "acceptance: " << (10 - failures) << "/10 criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
