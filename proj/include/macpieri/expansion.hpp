#pragma once

// Expansions of polynomials in a composition-indexed basis: a sparse map
// from compositions to coefficients. The E-basis expansion peels terms in
// descending triangularity order, which works because each basis element is
// z^eta plus terms supported on strictly preceding compositions.

#include <map>

#include "macpieri/composition.hpp"
#include "macpieri/laurent.hpp"

namespace macpieri {

template <CoeffScalar S>
struct Expansion {
    std::map<Composition, S> terms;

    bool operator==(const Expansion& o) const { return terms == o.terms; }

    void add(const Composition& c, const S& v) {
        if (v.is_zero()) return;
        auto [it, inserted] = terms.emplace(c, v);
        if (!inserted) {
            it->second = it->second + v;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    S coeff(const Composition& c) const {
        auto it = terms.find(c);
        return it == terms.end() ? S() : it->second;
    }
};

// Reads a genuine polynomial off as {composition: coefficient}.
template <CoeffScalar S>
Expansion<S> expand_in_monomials(const LaurentPoly<S>& f) {
    MACPIERI_CHECK(f.is_polynomial(), "monomial expansion needs non-negative exponents");
    Expansion<S> e;
    for (const auto& [exps, c] : f.terms()) e.add(Composition{exps}, c);
    return e;
}

// Expands f in the basis build(nu), nu running over compositions. Works one
// homogeneous component at a time: within modulus m the basis elements are
// triangular with respect to precedes(), so peeling coefficients in
// descending total_less order is exact. Throws if a nonzero remainder
// survives, since that means f was not in the span.
template <CoeffScalar S, class EBuild>
Expansion<S> expand_in_basis(const LaurentPoly<S>& f, EBuild&& build) {
    MACPIERI_CHECK(f.is_polynomial(), "basis expansion needs non-negative exponents");
    Expansion<S> result;
    int n = f.nvars();
    for (long d : f.degrees_present()) {
        LaurentPoly<S> rem = f.homogeneous_component(d);
        std::vector<Composition> basis = compositions_with_modulus(n, static_cast<int>(d));
        std::sort(basis.begin(), basis.end(),
                  [](const Composition& a, const Composition& b) { return total_less(b, a); });
        for (const Composition& nu : basis) {
            if (rem.is_zero()) break;
            S c = rem.coeff(nu);
            if (c.is_zero()) continue;
            result.add(nu, c);
            rem = rem - build(nu).scaled(c);
        }
        MACPIERI_CHECK(rem.is_zero(), "polynomial is not in the span of the basis");
    }
    return result;
}

}  // namespace macpieri
