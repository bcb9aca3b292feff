#include "doctest.h"

#include "macpieri/operators.hpp"
#include "macpieri/qt_scalar.hpp"

using namespace macpieri;

namespace {

using P = LaurentPoly<QTScalar>;

QTScalar qt(const std::string& s) { return QTScalar::parse(s); }

P z(int n, int i) { return P::variable(n, i); }

P random_poly(DetRng& rng, int n, int max_deg, int nterms) {
    P p(n);
    for (int k = 0; k < nterms; ++k) {
        std::vector<int> e(static_cast<size_t>(n));
        for (int& x : e) x = static_cast<int>(rng.range(0, max_deg));
        long a = rng.range(-1, 1), b = rng.range(-1, 1);
        long c = rng.range(1, 4) * (rng.below(2) ? 1 : -1);
        p.add_term(e, QTScalar::from_int(c) * QTScalar::qt_mono(a, b));
    }
    return p;
}

// The explicit interpolation polynomial with index (0,1): z_2 - 1/t.
P estar01() {
    P p = z(2, 2);
    p.add_term(std::vector<int>{0, 0}, -qt("1/t"));
    return p;
}

// The explicit interpolation polynomial with index (1,0):
// z_1 - 1 - (t-1)/(1-q*t) * (z_2 - 1/t).
P estar10() {
    P p = z(2, 1);
    p.add_term(std::vector<int>{0, 0}, QTScalar::from_int(-1));
    QTScalar c = qt("(t - 1)/(1 - q*t)");
    p.add_term(std::vector<int>{0, 1}, -c);
    p.add_term(std::vector<int>{0, 0}, c * qt("1/t"));
    return p;
}

}  // namespace

TEST_CASE("rotation operators") {
    CHECK(apply_delta(z(2, 1)) == z(2, 2).scaled(qt("1/q")));
    CHECK(apply_delta(z(2, 2)) == z(2, 1));
    CHECK(apply_omega(z(2, 1)) == z(2, 2).scaled(qt("q")));
    CHECK(apply_omega(z(2, 2)) == z(2, 1));

    // Exponents ride along: delta(z_1^3 z_3) = (z_3/q)^3 z_2 for n = 3.
    P m = P::monomial(std::vector<int>{3, 0, 1}, QTScalar::from_int(1));
    CHECK(apply_delta(m) == P::monomial(std::vector<int>{0, 1, 3}, qt("1/q^3")));
    CHECK(apply_omega(m) == P::monomial(std::vector<int>{0, 1, 3}, qt("q^3")));

    CHECK(apply_tau(z(2, 1) + z(2, 2), 1) == z(2, 1).scaled(qt("q")) + z(2, 2));
}

TEST_CASE("phi raising operator") {
    // n = 1: Phi f = (z_1 - 1) f(z_1/q).
    CHECK(apply_phi(P::one(1)) == z(1, 1) - P::one(1));
    P f1 = z(1, 1) - P::one(1);
    CHECK(apply_phi(f1) == (z(1, 1) - P::one(1)) * (z(1, 1).scaled(qt("1/q")) - P::one(1)));

    // n = 2: Phi 1 = z_2 - 1/t, the interpolation polynomial for (0,1).
    CHECK(apply_phi(P::one(2)) == estar01());
}

TEST_CASE("Hecke operator on explicit inputs") {
    // T_1 z_2 = t z_1 + (t-1) z_2 for n = 2.
    CHECK(apply_Ti(z(2, 2), 1) == z(2, 1).scaled(qt("t")) + z(2, 2).scaled(qt("t - 1")));
    // Constants are scaled by t.
    CHECK(apply_Ti(P::one(2), 1) == P::constant(2, qt("t")));
    // Symmetric inputs likewise.
    P sym = z(2, 1) + z(2, 2);
    CHECK(apply_Ti(sym, 1) == sym.scaled(qt("t")));
}

TEST_CASE("Hecke quadratic and inverse relations") {
    DetRng rng(515253);
    for (int trial = 0; trial < 6; ++trial) {
        P f = random_poly(rng, 3, 3, 4);
        for (int i = 1; i <= 2; ++i) {
            // T^2 = (t-1) T + t.
            CHECK(apply_Ti(apply_Ti(f, i), i) ==
                  apply_Ti(f, i).scaled(qt("t - 1")) + f.scaled(qt("t")));
            CHECK(apply_Ti_inv(apply_Ti(f, i), i) == f);
            CHECK(apply_Ti(apply_Ti_inv(f, i), i) == f);
            // (H + 1)(H - t) = 0.
            P hf = apply_Hi(f, i);
            CHECK(apply_Hi(hf, i) == hf.scaled(qt("t - 1")) + f.scaled(qt("t")));
            // (-Hbar + 1)(-Hbar - t) = 0.
            P gf = -apply_Hbar(f, i);
            CHECK(-apply_Hbar(gf, i) == gf.scaled(qt("t - 1")) + f.scaled(qt("t")));
        }
    }
}

TEST_CASE("braid and distant commutation") {
    DetRng rng(616263);
    for (int trial = 0; trial < 4; ++trial) {
        P f = random_poly(rng, 3, 2, 4);
        CHECK(apply_Ti(apply_Ti(apply_Ti(f, 2), 1), 2) ==
              apply_Ti(apply_Ti(apply_Ti(f, 1), 2), 1));
        CHECK(apply_Hi(apply_Hi(apply_Hi(f, 2), 1), 2) ==
              apply_Hi(apply_Hi(apply_Hi(f, 1), 2), 1));
        CHECK(apply_Hbar(apply_Hbar(apply_Hbar(f, 2), 1), 2) ==
              apply_Hbar(apply_Hbar(apply_Hbar(f, 1), 2), 1));
    }
    P g = random_poly(rng, 4, 2, 5);
    CHECK(apply_Ti(apply_Ti(g, 3), 1) == apply_Ti(apply_Ti(g, 1), 3));
    CHECK(apply_Hi(apply_Hi(g, 3), 1) == apply_Hi(apply_Hi(g, 1), 3));
}

TEST_CASE("Cherednik operators act diagonally on known eigenfunctions") {
    // Y_i(1) = t^{-(i-1)}.
    for (int i = 1; i <= 3; ++i)
        CHECK(apply_Yi(P::one(3), i) == P::constant(3, QTScalar::qt_mono(0, -(i - 1))));

    // For n = 2, z_2 is the polynomial indexed by (0,1); spectrum (1/t, q).
    CHECK(apply_Yi(z(2, 2), 1) == z(2, 2).scaled(qt("1/t")));
    CHECK(apply_Yi(z(2, 2), 2) == z(2, 2).scaled(qt("q")));

    // The polynomial indexed by (1,0) is z_1 + (q*t - q)/(q*t - 1) z_2 with
    // spectrum (q, 1/t).
    P e10 = z(2, 1) + z(2, 2).scaled(qt("(q*t - q)/(q*t - 1)"));
    CHECK(apply_Yi(e10, 1) == e10.scaled(qt("q")));
    CHECK(apply_Yi(e10, 2) == e10.scaled(qt("1/t")));
}

TEST_CASE("Cherednik operators commute") {
    DetRng rng(717273);
    P f = random_poly(rng, 3, 2, 4);
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j)
            CHECK(apply_Yi(apply_Yi(f, j), i) == apply_Yi(apply_Yi(f, i), j));
}

TEST_CASE("descending Cherednik operator on explicit inputs") {
    // n = 1: Xi_1 fixes 1 and scales z - 1 by 1/q.
    CHECK(apply_Xi(P::one(1), 1) == P::one(1));
    P f1 = z(1, 1) - P::one(1);
    CHECK(apply_Xi(f1, 1) == f1.scaled(qt("1/q")));

    // n = 2 eigen relations on the interpolation polynomials: the
    // eigenvalue on index eta is the inverse spectral coordinate.
    CHECK(apply_Xi(estar01(), 1) == estar01().scaled(qt("t")));
    CHECK(apply_Xi(estar01(), 2) == estar01().scaled(qt("1/q")));
    CHECK(apply_Xi(P::one(2), 1) == P::one(2));
    CHECK(apply_Xi(P::one(2), 2) == P::one(2).scaled(qt("t")));

    // Xi operators commute.
    DetRng rng(818283);
    P f = random_poly(rng, 3, 2, 4);
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j)
            CHECK(apply_Xi(apply_Xi(f, j), i) == apply_Xi(apply_Xi(f, i), j));
}

TEST_CASE("kernel operator: word form vs explicit n = 1 formula") {
    // n = 1: Ztilde_1 f = (z_1 - 1) f(z_1/q).
    DetRng rng(919293);
    for (int trial = 0; trial < 4; ++trial) {
        P f = random_poly(rng, 1, 4, 3);
        P expect = (z(1, 1) - P::one(1)) * f.substituted_iz(IndexSet{1});
        CHECK(apply_Ztilde_direct(f, 1) == expect);
        CHECK(apply_Ztilde_expansion(f, 1) == expect);
    }
}

TEST_CASE("kernel operator: word form vs sum-over-index-sets form") {
    DetRng rng(101112);
    for (int n = 2; n <= 3; ++n) {
        // Monomials of small degree plus a random polynomial.
        std::vector<P> inputs;
        inputs.push_back(P::one(n));
        for (int i = 1; i <= n; ++i) inputs.push_back(z(n, i));
        inputs.push_back(z(n, 1) * z(n, n));
        inputs.push_back(random_poly(rng, n, 2, 3));
        for (const P& f : inputs)
            for (int i = 1; i <= n; ++i)
                CHECK(apply_Ztilde_direct(f, i) == apply_Ztilde_expansion(f, i));
    }
}

TEST_CASE("kernel operator compositions") {
    // z_i Xi_i - 1 agrees with the direct word.
    DetRng rng(111213);
    P f = random_poly(rng, 2, 3, 4);
    for (int i = 1; i <= 2; ++i) {
        std::vector<int> ei(2, 0);
        ei[static_cast<size_t>(i - 1)] = 1;
        P lhs = apply_Xi(f, i).mul_monomial(ei, QTScalar::from_int(1)) - f;
        CHECK(lhs == apply_Ztilde_direct(f, i));
    }

    // Z_i on an interpolation polynomial: Z_i E* = q^{-|eta|} (z_i - ebar_i) E*.
    P e01 = estar01();
    Composition eta01 = parse_composition("0,1");
    auto ebar = spectral_vector<QTScalar>(eta01);
    for (int i = 1; i <= 2; ++i) {
        P factor = z(2, i) - P::constant(2, ebar[static_cast<size_t>(i - 1)]);
        CHECK(apply_Zi(e01, i) == (factor * e01).scaled(qt("1/q")));
    }
}

TEST_CASE("raising operator vanishing at spectral points") {
    // (Phi E*_eta)(lambda-bar) = 0 whenever lambda_n = 0 (the leading factor
    // z_n - t^{1-n} dies there) and whenever |lambda| <= |eta|.
    P f = apply_phi(estar10());
    for (const char* s : {"0,0", "1,0", "0,1", "2,0"}) {
        Composition lam = parse_composition(s);
        CHECK(f.evaluate(spectral_vector<QTScalar>(lam)).is_zero());
    }
    // Phi raises (1,0) to (0,2): Phi E*_{(1,0)} = q E*_{(0,2)}, so it is
    // emphatically not identically zero.
    CHECK_FALSE(f.is_zero());
}

TEST_CASE("degree-graded scaling operator") {
    P f = z(1, 1) * z(1, 1) + z(1, 1) + P::one(1);
    P expect = z(1, 1) * z(1, 1) + z(1, 1).scaled(qt("1")) + P::one(1);
    // Degree 2 picks up q^{-1}; degrees 0 and 1 are fixed.
    expect = z(1, 1) * z(1, 1);
    expect = expect.scaled(qt("1/q")) + z(1, 1) + P::one(1);
    CHECK(apply_M(f) == expect);

    P g = z(2, 1) * z(2, 1) * z(2, 2);  // degree 3 -> q^{-3}
    CHECK(apply_M(g) == g.scaled(qt("1/q^3")));
    CHECK(apply_M(P::zero(2)).is_zero());
}
