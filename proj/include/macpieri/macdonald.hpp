#pragma once

// Construction of the interpolation polynomials E*_eta(z; q, t) and the
// homogeneous polynomials E_eta, plus independent oracle constructions used
// to cross-check them.
//
// Primary route for E*: the recursion
//   E*_0 = 1;
//   if eta_n >= 1, with mu = (eta_n - 1, eta_1, ..., eta_{n-1}):
//       E*_eta = q^{eta_n - 1} Phi E*_mu;
//   else (eta nonzero, eta_n = 0), with k the largest index with eta_k > 0
//   and mu = s_k eta (which has the ascent mu_k < mu_{k+1}):
//       E*_eta = H_k E*_mu - (t - 1)/(1 - delta_{k,mu}(q^{-1}, t^{-1})) E*_mu.
//
// E_eta at inverted parameters is the top homogeneous component of E*_eta;
// the standard-parameter version is the same computation carried out at
// inverted parameters.
//
// Oracles: a linear solve of the defining vanishing conditions for E*, and
// the joint eigenproblem for the commuting operators Y_i for E. Both go
// through the exact nullspace solver and validate the conventions
// independently of the recursion.

#include <map>
#include <tuple>
#include <utility>

#include "macpieri/composition.hpp"
#include "macpieri/expansion.hpp"
#include "macpieri/laurent.hpp"
#include "macpieri/linalg.hpp"
#include "macpieri/operators.hpp"

namespace macpieri {

enum class ParamKind { Standard, Inverted };

inline const char* param_kind_name(ParamKind k) {
    return k == ParamKind::Standard ? "std" : "inv";
}

template <CoeffScalar S>
class MacdonaldBuilder {
  public:
    // E*_eta(z; q, t) by the raising/exchange recursion. Memoized per
    // composition (and per sample context when S is sampled).
    const LaurentPoly<S>& estar(const Composition& eta) {
        auto key = std::make_pair(eta.parts, ScalarTraits<S>::context_token());
        auto it = estar_memo_.find(key);
        if (it != estar_memo_.end()) return it->second;
        LaurentPoly<S> val = build_estar(eta);
        return estar_memo_.emplace(std::move(key), std::move(val)).first->second;
    }

    // Installs a precomputed E* polynomial (typically deserialized from the
    // disk cache) under the current scalar context so estar() can skip the
    // recursion. The caller vouches for correctness of the polynomial.
    void preload_estar(const Composition& eta, LaurentPoly<S> poly) {
        auto key = std::make_pair(eta.parts, ScalarTraits<S>::context_token());
        estar_memo_.emplace(std::move(key), std::move(poly));
    }

    bool has_estar(const Composition& eta) const {
        auto key = std::make_pair(eta.parts, ScalarTraits<S>::context_token());
        return estar_memo_.find(key) != estar_memo_.end();
    }

    // E_eta(z; q, t) for Standard, E_eta(z; q^{-1}, t^{-1}) for Inverted.
    const LaurentPoly<S>& E(const Composition& eta, ParamKind kind) {
        auto key = std::make_tuple(eta.parts, static_cast<int>(kind),
                                   ScalarTraits<S>::context_token());
        auto it = e_memo_.find(key);
        if (it != e_memo_.end()) return it->second;
        LaurentPoly<S> val;
        if (kind == ParamKind::Inverted) {
            val = estar(eta).top_component();
        } else {
            val = ScalarTraits<S>::computed_at_inverted_params(
                [&] { return estar(eta).top_component(); });
        }
        return e_memo_.emplace(std::move(key), std::move(val)).first->second;
    }

    // E*_eta(mu-bar).
    S estar_eval(const Composition& eta, const Composition& mu) {
        return estar(eta).evaluate(spectral_vector<S>(mu));
    }

    // Generalized binomial coefficient: E*_eta(nu-bar) / E*_eta(eta-bar).
    S binom(const Composition& nu, const Composition& eta) {
        return estar_eval(eta, nu) / estar_eval(eta, eta);
    }

    Expansion<S> expand_in_E(const LaurentPoly<S>& f, ParamKind kind) {
        return expand_in_basis(f, [&](const Composition& nu) -> const LaurentPoly<S>& {
            return E(nu, kind);
        });
    }

    // ------------------------------------------------------------------
    // Oracle constructions.

    // E*_eta as the one-dimensional space of polynomials of degree <= |eta|
    // vanishing at mu-bar for every mu != eta with |mu| <= |eta|, normalized
    // to have coefficient 1 on z^eta.
    LaurentPoly<S> estar_from_linear_system(const Composition& eta) {
        int n = eta.n();
        int m = static_cast<int>(eta.modulus());
        std::vector<Composition> basis = compositions_up_to_modulus(n, m);
        Matrix<S> sys;
        for (const Composition& mu : basis) {
            if (mu == eta) continue;
            auto mubar = spectral_vector<S>(mu);
            std::vector<S> row;
            row.reserve(basis.size());
            for (const Composition& nu : basis) {
                S val = S::from_int(1);
                for (int i = 1; i <= n; ++i)
                    if (nu[i] != 0) val = val * mubar[static_cast<size_t>(i - 1)].pow(nu[i]);
                row.push_back(val);
            }
            sys.push_back(std::move(row));
        }
        if (sys.empty()) {
            // Modulus zero leaves no vanishing conditions and a single
            // basis element, so the solution space is already spanned.
            std::vector<S> x(basis.size(), S::from_int(1));
            return combine(basis, normalized_at(basis, x, eta));
        }
        std::vector<S> x = nullspace_dim1(sys);
        return combine(basis, normalized_at(basis, x, eta));
    }

    // E_eta as the joint eigenfunction of the Y_i with eigenvalues eta-bar_i
    // inside span{z^nu : nu = eta or nu precedes eta}, normalized to have
    // coefficient 1 on z^eta.
    LaurentPoly<S> E_from_eigenproblem(const Composition& eta, ParamKind kind) {
        if (kind == ParamKind::Standard) return eigen_solve(eta);
        return ScalarTraits<S>::computed_at_inverted_params([&] { return eigen_solve(eta); });
    }

  private:
    LaurentPoly<S> build_estar(const Composition& eta) {
        int n = eta.n();
        MACPIERI_CHECK(n >= 1, "empty composition");
        if (eta.modulus() == 0) return LaurentPoly<S>::one(n);
        if (eta[n] >= 1) {
            std::vector<int> mp(static_cast<size_t>(n));
            mp[0] = eta[n] - 1;
            for (int i = 1; i < n; ++i) mp[static_cast<size_t>(i)] = eta[i];
            Composition mu{std::move(mp)};
            // Phi E*_mu carries leading coefficient q^{-mu_1} on z^eta, so
            // the normalized polynomial needs the opposite power.
            return apply_phi(estar(mu)).scaled(S::qt_mono(eta[n] - 1, 0));
        }
        int k = n;
        while (eta[k] == 0) --k;
        std::vector<int> mp = eta.parts;
        std::swap(mp[static_cast<size_t>(k - 1)], mp[static_cast<size_t>(k)]);
        Composition mu{std::move(mp)};
        const LaurentPoly<S>& em = estar(mu);
        auto [a, b] = delta_exponents(mu, k);
        S delta_inv = S::qt_mono(-a, -b);
        S corr = (S::qt_mono(0, 1) - S::from_int(1)) / (S::from_int(1) - delta_inv);
        return apply_Hi(em, k) - em.scaled(corr);
    }

    LaurentPoly<S> eigen_solve(const Composition& eta) {
        int n = eta.n();
        int m = static_cast<int>(eta.modulus());
        std::vector<Composition> basis;
        for (const Composition& nu : compositions_with_modulus(n, m))
            if (preceq(nu, eta)) basis.push_back(nu);
        size_t dim = basis.size();
        auto index_of = [&](const std::vector<int>& exps) {
            for (size_t k = 0; k < dim; ++k)
                if (basis[k].parts == exps) return k;
            throw ExactError("operator left the triangular span");
        };
        auto ebar = spectral_vector<S>(eta);
        Matrix<S> sys;
        for (int i = 1; i <= n; ++i) {
            Matrix<S> block(dim, std::vector<S>(dim, S::from_int(0)));
            for (size_t j = 0; j < dim; ++j) {
                LaurentPoly<S> img = apply_Yi(monomial_of<S>(basis[j]), i);
                for (const auto& [exps, c] : img.terms()) block[index_of(exps)][j] = c;
            }
            for (size_t k = 0; k < dim; ++k) {
                block[k][k] = block[k][k] - ebar[static_cast<size_t>(i - 1)];
                sys.push_back(std::move(block[k]));
            }
        }
        std::vector<S> x = nullspace_dim1(sys);
        return combine(basis, normalized_at(basis, x, eta));
    }

    // Scale the solution vector so the eta coordinate is 1.
    std::vector<S> normalized_at(const std::vector<Composition>& basis, std::vector<S> x,
                                 const Composition& eta) {
        size_t at = basis.size();
        for (size_t k = 0; k < basis.size(); ++k)
            if (basis[k] == eta) at = k;
        MACPIERI_CHECK(at < basis.size(), "normalization index missing from basis");
        if (x[at].is_zero())
            throw SingularSystem("solution has zero leading coefficient");
        S inv = x[at].inverse();
        for (S& v : x) v = v * inv;
        return x;
    }

    LaurentPoly<S> combine(const std::vector<Composition>& basis, const std::vector<S>& x) {
        LaurentPoly<S> out(basis.front().n());
        for (size_t k = 0; k < basis.size(); ++k)
            out = out + monomial_of<S>(basis[k]).scaled(x[k]);
        return out;
    }

    std::map<std::pair<std::vector<int>, unsigned long long>, LaurentPoly<S>> estar_memo_;
    std::map<std::tuple<std::vector<int>, int, unsigned long long>, LaurentPoly<S>> e_memo_;
};

// The linear map sending E_eta(z; q^{-1}, t^{-1}) to E*_eta(z; q, t),
// precomposed with the degree-graded scaling; this composite intertwines
// multiplication by z_i with the operator Z_i.
template <CoeffScalar S>
LaurentPoly<S> apply_psi_m(MacdonaldBuilder<S>& builder, const LaurentPoly<S>& f) {
    LaurentPoly<S> mf = apply_M(f);
    Expansion<S> ex = builder.expand_in_E(mf, ParamKind::Inverted);
    LaurentPoly<S> out(f.nvars());
    for (const auto& [nu, c] : ex.terms) out = out + builder.estar(nu).scaled(c);
    return out;
}

}  // namespace macpieri
