#include "macpieri/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <thread>
#include <type_traits>
#include <utility>

#include "macpieri/cache.hpp"
#include "macpieri/composition.hpp"
#include "macpieri/jack.hpp"
#include "macpieri/macdonald.hpp"
#include "macpieri/operators.hpp"
#include "macpieri/pieri.hpp"
#include "macpieri/qt_scalar.hpp"
#include "macpieri/render.hpp"
#include "macpieri/sampled.hpp"
#include "macpieri/scalar_traits.hpp"

namespace macpieri {

const std::vector<std::string>& all_verify_suites() {
    static const std::vector<std::string> suites{
        "hecke",    "eigen", "vanishing", "keta", "ztilde",   "intertwine",
        "zi",       "e1",    "en1",       "binom", "evalstar", "genfun",
        "jack",     "shift", "inversion"};
    return suites;
}

std::optional<std::string> validate_verify_options(const VerifyOptions& opt) {
    for (const std::string& s : opt.suites) {
        const auto& all = all_verify_suites();
        if (std::find(all.begin(), all.end(), s) == all.end())
            return "unknown suite '" + s + "'";
    }
    for (int n : opt.ns)
        if (n < 1 || n > 6) return "variable count out of range: " + std::to_string(n);
    if (opt.max_modulus < -1 || opt.max_modulus > 8)
        return "max modulus out of range: " + std::to_string(opt.max_modulus);
    if (opt.jobs < 1 || opt.jobs > 256) return "jobs out of range: " + std::to_string(opt.jobs);
    return std::nullopt;
}

namespace {

// The disk cache, if any, for the duration of one run_verify call. Loads
// are concurrent-safe; stores serialize inside PolyCache.
const PolyCache* g_cache = nullptr;

template <CoeffScalar S>
void warm_one(MacdonaldBuilder<S>& builder, const Composition& eta) {
    if constexpr (std::is_same_v<S, QTScalar>) {
        if (g_cache != nullptr) cached_estar(builder, eta, g_cache);
    } else {
        (void)builder;
        (void)eta;
    }
}

template <CoeffScalar S>
void warm_range(MacdonaldBuilder<S>& builder, int n, int max_mod) {
    if constexpr (std::is_same_v<S, QTScalar>) {
        if (g_cache != nullptr)
            for (const Composition& c : compositions_up_to_modulus(n, max_mod))
                cached_estar(builder, c, g_cache);
    } else {
        (void)builder;
        (void)n;
        (void)max_mod;
    }
}

using CaseBody = std::function<std::optional<std::string>()>;

struct CaseSpec {
    std::string suite;
    std::string descriptor;
    int n = 1;
    int sample_points = 3;
    CaseBody symbolic;
    CaseBody sampled;
};

template <class F>
CaseSpec make_case(std::string suite, std::string descriptor, int n, F body,
                   int sample_points = 3) {
    CaseSpec c;
    c.suite = std::move(suite);
    c.descriptor = std::move(descriptor);
    c.n = n;
    c.sample_points = sample_points;
    c.symbolic = [body]() { return body.template operator()<QTScalar>(); };
    c.sampled = [body]() { return body.template operator()<SampledScalar>(); };
    return c;
}

// ---------------------------------------------------------------------
// Failure-detail rendering.

template <CoeffScalar S>
std::string sides(const LaurentPoly<S>& lhs, const LaurentPoly<S>& rhs) {
    return "lhs = " + poly_to_text(lhs) + " ; rhs = " + poly_to_text(rhs);
}

template <CoeffScalar S>
std::string sides(const S& lhs, const S& rhs) {
    return "lhs = " + lhs.to_string() + " ; rhs = " + rhs.to_string();
}

template <CoeffScalar S>
std::string one_line(const Expansion<S>& e) {
    std::string out = "{";
    bool first = true;
    for (const auto& [comp, c] : sorted_terms(e)) {
        if (!first) out += ", ";
        first = false;
        out += comp.to_string() + ": " + c.to_string();
    }
    return out + "}";
}

template <CoeffScalar S>
Expansion<S> to_expansion(const std::vector<PieriTerm<S>>& terms) {
    Expansion<S> e;
    for (const auto& t : terms) e.add(t.target, t.coefficient);
    return e;
}

std::string nstr(int n) { return std::to_string(n); }

// ---------------------------------------------------------------------
// Suite case enumeration. Every add_* appends cases in a deterministic
// order; descriptors are unique within a run and double as seed material.

void add_hecke(std::vector<CaseSpec>& out, int n, int mm) {
    if (n < 2) return;
    for (const Composition& mu : compositions_up_to_modulus(n, std::min(mm, 2))) {
        out.push_back(make_case(
            "hecke", "n=" + nstr(n) + " mu=" + mu.to_string(), n,
            [mu, n]<CoeffScalar S>() -> std::optional<std::string> {
                LaurentPoly<S> f = monomial_of<S>(mu);
                S t = S::qt_mono(0, 1);
                S one = S::from_int(1);
                for (int i = 1; i < n; ++i) {
                    LaurentPoly<S> tf = apply_Ti(f, i);
                    if (apply_Ti(tf, i) != tf.scaled(t - one) + f.scaled(t))
                        return "T_" + nstr(i) + " quadratic relation failed";
                    if (apply_Ti_inv(tf, i) != f) return "T_" + nstr(i) + " inverse failed";
                    LaurentPoly<S> hf = apply_Hi(f, i);
                    if (apply_Hi(hf, i) != hf.scaled(t - one) + f.scaled(t))
                        return "H_" + nstr(i) + " quadratic relation failed";
                    LaurentPoly<S> gf = -apply_Hbar(f, i);
                    if (-apply_Hbar(gf, i) != gf.scaled(t - one) + f.scaled(t))
                        return "Hbar_" + nstr(i) + " quadratic relation failed";
                }
                for (int i = 1; i + 1 < n; ++i) {
                    if (apply_Ti(apply_Ti(apply_Ti(f, i + 1), i), i + 1) !=
                        apply_Ti(apply_Ti(apply_Ti(f, i), i + 1), i))
                        return "T braid relation failed at i=" + nstr(i);
                    if (apply_Hi(apply_Hi(apply_Hi(f, i + 1), i), i + 1) !=
                        apply_Hi(apply_Hi(apply_Hi(f, i), i + 1), i))
                        return "H braid relation failed at i=" + nstr(i);
                }
                for (int i = 1; i < n; ++i)
                    for (int j = i + 2; j < n; ++j)
                        if (apply_Ti(apply_Ti(f, j), i) != apply_Ti(apply_Ti(f, i), j))
                            return "distant commutation failed at (" + nstr(i) + "," + nstr(j) + ")";
                return std::nullopt;
            }));
    }
}

void add_eigen(std::vector<CaseSpec>& out, int n, int mm) {
    for (const Composition& eta : compositions_up_to_modulus(n, mm)) {
        out.push_back(make_case(
            "eigen", "n=" + nstr(n) + " eta=" + eta.to_string(), n,
            [eta, n]<CoeffScalar S>() -> std::optional<std::string> {
                MacdonaldBuilder<S> B;
                warm_one(B, eta);
                const LaurentPoly<S>& e = B.E(eta, ParamKind::Standard);
                auto ebar = spectral_vector<S>(eta);
                for (int i = 1; i <= n; ++i) {
                    LaurentPoly<S> lhs = apply_Yi(e, i);
                    LaurentPoly<S> rhs = e.scaled(ebar[static_cast<size_t>(i - 1)]);
                    if (lhs != rhs) return "Y_" + nstr(i) + " eigenrelation failed: " + sides(lhs, rhs);
                }
                const LaurentPoly<S>& es = B.estar(eta);
                for (int i = 1; i <= n; ++i) {
                    LaurentPoly<S> lhs = apply_Xi(es, i);
                    LaurentPoly<S> rhs = es.scaled(ebar[static_cast<size_t>(i - 1)].inverse());
                    if (lhs != rhs)
                        return "Xi_" + nstr(i) + " eigenrelation failed: " + sides(lhs, rhs);
                }
                return std::nullopt;
            }));
    }
}

void add_vanishing(std::vector<CaseSpec>& out, int n, int mm) {
    for (const Composition& eta : compositions_up_to_modulus(n, mm)) {
        out.push_back(make_case(
            "vanishing", "n=" + nstr(n) + " eta=" + eta.to_string(), n,
            [eta, n]<CoeffScalar S>() -> std::optional<std::string> {
                MacdonaldBuilder<S> B;
                warm_one(B, eta);
                int m = static_cast<int>(eta.modulus());
                for (const Composition& mu : compositions_up_to_modulus(n, m)) {
                    if (mu == eta) continue;
                    S v = B.estar_eval(eta, mu);
                    if (!v.is_zero())
                        return "E*(" + eta.to_string() + ") at mu=" + mu.to_string() +
                               " is " + v.to_string() + ", expected 0";
                }
                return std::nullopt;
            }));
    }
}

void add_keta(std::vector<CaseSpec>& out, int n, int mm) {
    for (const Composition& eta : compositions_up_to_modulus(n, mm)) {
        out.push_back(make_case(
            "keta", "n=" + nstr(n) + " eta=" + eta.to_string(), n,
            [eta]<CoeffScalar S>() -> std::optional<std::string> {
                MacdonaldBuilder<S> B;
                warm_one(B, eta);
                S lhs = B.estar_eval(eta, eta);
                S rhs = k_eta<S>(eta);
                if (lhs != rhs) return "principal evaluation mismatch: " + sides(lhs, rhs);
                return std::nullopt;
            }));
    }
}

void add_ztilde(std::vector<CaseSpec>& out, int n, int mm, bool sampled) {
    int deg = std::min(mm, sampled ? 3 : 2);
    for (const Composition& mu : compositions_up_to_modulus(n, deg)) {
        out.push_back(make_case(
            "ztilde", "n=" + nstr(n) + " mu=" + mu.to_string(), n,
            [mu, n]<CoeffScalar S>() -> std::optional<std::string> {
                LaurentPoly<S> f = monomial_of<S>(mu);
                for (int i = 1; i <= n; ++i) {
                    LaurentPoly<S> lhs = apply_Ztilde_direct(f, i);
                    LaurentPoly<S> rhs = apply_Ztilde_expansion(f, i);
                    if (lhs != rhs)
                        return "kernel expansion differs from the operator word at i=" + nstr(i) +
                               ": " + sides(lhs, rhs);
                }
                return std::nullopt;
            },
            /*sample_points=*/5));
    }
}

void add_intertwine(std::vector<CaseSpec>& out, int n, int mm) {
    if (n != 2) return;
    for (const Composition& mu : compositions_up_to_modulus(2, std::min(mm, 2))) {
        out.push_back(make_case(
            "intertwine", "n=2 mu=" + mu.to_string(), 2,
            [mu]<CoeffScalar S>() -> std::optional<std::string> {
                MacdonaldBuilder<S> B;
                warm_range(B, 2, static_cast<int>(mu.modulus()) + 1);
                LaurentPoly<S> f = monomial_of<S>(mu);
                for (int i = 1; i <= 2; ++i) {
                    LaurentPoly<S> lhs = apply_Zi(apply_psi_m(B, f), i);
                    LaurentPoly<S> rhs = apply_psi_m(B, LaurentPoly<S>::variable(2, i) * f);
                    if (lhs != rhs)
                        return "Z_" + nstr(i) + " does not intertwine with z_" + nstr(i) + ": " +
                               sides(lhs, rhs);
                }
                return std::nullopt;
            }));
    }
}

void add_zi(std::vector<CaseSpec>& out, int n, int mm) {
    for (const Composition& eta : compositions_up_to_modulus(n, mm)) {
        for (int i = 1; i <= n; ++i) {
            out.push_back(make_case(
                "zi", "n=" + nstr(n) + " eta=" + eta.to_string() + " i=" + nstr(i), n,
                [eta, n, i]<CoeffScalar S>() -> std::optional<std::string> {
                    MacdonaldBuilder<S> B;
                    warm_range(B, n, static_cast<int>(eta.modulus()) + 1);
                    Expansion<S> closed = to_expansion(expand_zi<S>(eta, i));
                    Expansion<S> oracle = B.expand_in_E(
                        LaurentPoly<S>::variable(n, i) * B.E(eta, ParamKind::Inverted),
                        ParamKind::Inverted);
                    if (!(closed == oracle))
                        return "closed form " + one_line(closed) + " vs oracle " + one_line(oracle);
                    return std::nullopt;
                }));
        }
        out.push_back(make_case(
            "zi", "n=" + nstr(n) + " eta=" + eta.to_string() + " sum", n,
            [eta, n]<CoeffScalar S>() -> std::optional<std::string> {
                Expansion<S> total;
                for (int i = 1; i <= n; ++i)
                    for (const auto& term : expand_zi<S>(eta, i))
                        total.add(term.target, term.coefficient);
                Expansion<S> e1 = to_expansion(expand_e1<S>(eta));
                if (!(total == e1))
                    return "sum of coordinate expansions " + one_line(total) +
                           " differs from the e_1 expansion " + one_line(e1);
                return std::nullopt;
            }));
    }
}

void add_e1(std::vector<CaseSpec>& out, int n, int mm) {
    for (const Composition& eta : compositions_up_to_modulus(n, mm)) {
        out.push_back(make_case(
            "e1", "n=" + nstr(n) + " eta=" + eta.to_string(), n,
            [eta, n]<CoeffScalar S>() -> std::optional<std::string> {
                MacdonaldBuilder<S> B;
                warm_range(B, n, static_cast<int>(eta.modulus()) + 1);
                Expansion<S> closed = to_expansion(expand_e1<S>(eta));
                Expansion<S> oracle = B.expand_in_E(
                    elementary_symmetric<S>(n, 1) * B.E(eta, ParamKind::Inverted),
                    ParamKind::Inverted);
                if (!(closed == oracle))
                    return "closed form " + one_line(closed) + " vs oracle " + one_line(oracle);
                return std::nullopt;
            }));
    }
}

void add_en1(std::vector<CaseSpec>& out, int n, int mm) {
    if (n < 2) return;
    for (const Composition& eta : compositions_up_to_modulus(n, mm)) {
        out.push_back(make_case(
            "en1", "n=" + nstr(n) + " eta=" + eta.to_string(), n,
            [eta, n]<CoeffScalar S>() -> std::optional<std::string> {
                MacdonaldBuilder<S> B;
                warm_range(B, n, static_cast<int>(eta.modulus()) + n - 1);
                Expansion<S> closed = to_expansion(expand_en_minus_1<S>(eta));
                Expansion<S> oracle = B.expand_in_E(
                    elementary_symmetric<S>(n, n - 1) * B.E(eta, ParamKind::Inverted),
                    ParamKind::Inverted);
                if (!(closed == oracle))
                    return "closed form " + one_line(closed) + " vs oracle " + one_line(oracle);
                return std::nullopt;
            }));
    }
}

void add_binom(std::vector<CaseSpec>& out, int n, int mm) {
    for (const Composition& eta : compositions_up_to_modulus(n, mm)) {
        out.push_back(make_case(
            "binom", "n=" + nstr(n) + " eta=" + eta.to_string(), n,
            [eta, n]<CoeffScalar S>() -> std::optional<std::string> {
                MacdonaldBuilder<S> B;
                warm_one(B, eta);
                int m = static_cast<int>(eta.modulus());
                for (const Composition& nu : compositions_with_modulus(n, m + 1)) {
                    S closed = binom_succ<S>(nu, eta);
                    S ratio = B.binom(nu, eta);
                    if (closed != ratio)
                        return "binomial at nu=" + nu.to_string() + ": " + sides(closed, ratio);
                }
                return std::nullopt;
            }));
    }
}

void add_evalstar(std::vector<CaseSpec>& out, int n, int mm) {
    for (const Composition& eta : compositions_up_to_modulus(n, mm)) {
        out.push_back(make_case(
            "evalstar", "n=" + nstr(n) + " eta=" + eta.to_string(), n,
            [eta, n]<CoeffScalar S>() -> std::optional<std::string> {
                MacdonaldBuilder<S> B;
                warm_one(B, eta);
                int m = static_cast<int>(eta.modulus());
                for (const Composition& nu : compositions_with_modulus(n, m + 1)) {
                    S closed = estar_eval_formula<S>(nu, eta);
                    S direct = B.estar_eval(eta, nu);
                    if (closed != direct)
                        return "evaluation at nu=" + nu.to_string() + ": " + sides(closed, direct);
                }
                return std::nullopt;
            }));
    }
}

void add_genfun(std::vector<CaseSpec>& out, int n, int mm) {
    if (n != 2) return;
    for (const Composition& eta : compositions_up_to_modulus(2, std::min(mm, 2))) {
        out.push_back(make_case(
            "genfun", "n=2 eta=" + eta.to_string(), 2,
            [eta]<CoeffScalar S>() -> std::optional<std::string> {
                MacdonaldBuilder<S> B;
                int m = static_cast<int>(eta.modulus());
                warm_range(B, 2, m + 1);
                S deta = d_prime<S>(eta, false);
                long leta = leg_sum(eta);
                LaurentPoly<S> lhs = LaurentPoly<S>::zero(2);
                for (const Composition& nu : compositions_up_to_modulus(2, m + 1)) {
                    S coeff = B.binom(nu, eta) * S::qt_mono(0, leg_sum(nu) - leta) * deta /
                              d_prime<S>(nu, false);
                    if (coeff.is_zero()) continue;
                    lhs = lhs + B.E(nu, ParamKind::Inverted).scaled(coeff);
                }
                const LaurentPoly<S>& e = B.E(eta, ParamKind::Inverted);
                S denom = S::from_int(1) - S::qt_mono(1, 0);
                LaurentPoly<S> rhs =
                    e + (elementary_symmetric<S>(2, 1) * e).scaled(S::from_int(1) / denom);
                if (lhs != rhs) return "generating-function truncation: " + sides(lhs, rhs);
                return std::nullopt;
            }));
    }
}

void add_jack(std::vector<CaseSpec>& out, int n, int mm) {
    for (const Composition& eta : compositions_up_to_modulus(n, std::min(mm, 3))) {
        for (long alpha = 1; alpha <= 3; ++alpha) {
            out.push_back(make_case(
                "jack",
                "n=" + nstr(n) + " eta=" + eta.to_string() + " alpha=" + std::to_string(alpha), n,
                [eta, alpha]<CoeffScalar S>() -> std::optional<std::string> {
                    // Exact rational computation; independent of the scalar
                    // and of any installed sample point.
                    for (const IndexSet& I : maximal_subsets(eta)) {
                        Rational closed = jack_coefficient(eta, I, alpha);
                        Rational lim = macdonald_limit(eta, I, alpha);
                        if (closed != lim)
                            return "I={" + index_set_to_string(I) + "}: additive form " +
                                   rational_str(closed) + " vs parameter limit " + rational_str(lim);
                    }
                    return std::nullopt;
                }));
        }
    }
}

void add_shift(std::vector<CaseSpec>& out, int n, int mm) {
    for (const Composition& eta : compositions_up_to_modulus(n, mm)) {
        out.push_back(make_case(
            "shift", "n=" + nstr(n) + " eta=" + eta.to_string(), n,
            [eta, n]<CoeffScalar S>() -> std::optional<std::string> {
                MacdonaldBuilder<S> B;
                warm_one(B, eta);
                warm_one(B, eta.shifted(1));
                LaurentPoly<S> all =
                    LaurentPoly<S>::monomial(std::vector<int>(static_cast<size_t>(n), 1),
                                             S::from_int(1));
                LaurentPoly<S> lhs = all * B.E(eta, ParamKind::Standard);
                const LaurentPoly<S>& rhs = B.E(eta.shifted(1), ParamKind::Standard);
                if (lhs != rhs) return "shift identity failed: " + sides(lhs, rhs);
                return std::nullopt;
            }));
    }
}

void add_inversion(std::vector<CaseSpec>& out, int n, int mm) {
    for (const Composition& eta : compositions_up_to_modulus(n, mm)) {
        out.push_back(make_case(
            "inversion", "n=" + nstr(n) + " eta=" + eta.to_string(), n,
            [eta, n]<CoeffScalar S>() -> std::optional<std::string> {
                MacdonaldBuilder<S> B;
                warm_one(B, eta);
                int m = eta.max_part();
                LaurentPoly<S> lhs =
                    B.E(eta, ParamKind::Standard).reversed_vars().inverted_vars();
                lhs = lhs.mul_monomial(std::vector<int>(static_cast<size_t>(n), m),
                                       S::from_int(1));
                std::vector<int> target(static_cast<size_t>(n));
                for (int i = 1; i <= n; ++i)
                    target[static_cast<size_t>(i - 1)] = m - eta[n + 1 - i];
                Composition tc{std::move(target)};
                warm_one(B, tc);
                const LaurentPoly<S>& rhs = B.E(tc, ParamKind::Standard);
                if (lhs != rhs) return "inversion identity failed: " + sides(lhs, rhs);
                return std::nullopt;
            }));
    }
}

std::vector<CaseSpec> build_cases(const VerifyOptions& opt) {
    std::vector<std::string> suites = opt.suites;
    if (suites.empty()) suites = all_verify_suites();
    // Canonical suite order regardless of how the user listed them.
    std::vector<std::string> ordered;
    for (const std::string& s : all_verify_suites())
        if (std::find(suites.begin(), suites.end(), s) != suites.end()) ordered.push_back(s);

    std::vector<int> ns = opt.ns;
    if (ns.empty()) ns = {1, 2, 3};
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    auto mm_for = [&](int n) { return opt.max_modulus >= 0 ? opt.max_modulus : (n <= 2 ? 4 : 3); };

    std::vector<CaseSpec> cases;
    for (const std::string& suite : ordered) {
        for (int n : ns) {
            int mm = mm_for(n);
            if (suite == "hecke") add_hecke(cases, n, mm);
            else if (suite == "eigen") add_eigen(cases, n, mm);
            else if (suite == "vanishing") add_vanishing(cases, n, mm);
            else if (suite == "keta") add_keta(cases, n, mm);
            else if (suite == "ztilde") add_ztilde(cases, n, mm, opt.sampled);
            else if (suite == "intertwine") add_intertwine(cases, n, mm);
            else if (suite == "zi") add_zi(cases, n, mm);
            else if (suite == "e1") add_e1(cases, n, mm);
            else if (suite == "en1") add_en1(cases, n, mm);
            else if (suite == "binom") add_binom(cases, n, mm);
            else if (suite == "evalstar") add_evalstar(cases, n, mm);
            else if (suite == "genfun") add_genfun(cases, n, mm);
            else if (suite == "jack") add_jack(cases, n, mm);
            else if (suite == "shift") add_shift(cases, n, mm);
            else if (suite == "inversion") add_inversion(cases, n, mm);
        }
    }
    return cases;
}

// ---------------------------------------------------------------------
// Execution.

struct CaseOutcome {
    bool pass = false;
    bool infrastructure = false;
    std::string detail;
};

unsigned long long case_seed(const VerifyOptions& opt, const CaseSpec& c) {
    return fnv1a64(std::to_string(opt.seed) + "|" + c.suite + "|" + c.descriptor);
}

// Accept a sample point only when no small power product q^a t^b equals 1;
// such coincidences collapse distinct spectral vectors and poison the
// denominators the identities divide by.
bool admissible_point(const Rational& q0, const Rational& t0, int n, int mm) {
    int amax = mm + 4;
    int bmax = 2 * n + 2;
    for (int a = -amax; a <= amax; ++a) {
        for (int b = -bmax; b <= bmax; ++b) {
            if (a == 0 && b == 0) continue;
            if (pow_rational(q0, a) * pow_rational(t0, b) == 1) return false;
        }
    }
    return true;
}

std::pair<Rational, Rational> draw_point(std::mt19937_64& rng, int n, int mm) {
    std::uniform_int_distribution<int> d(2, 97);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Rational q0 = make_rational(d(rng), d(rng));
        Rational t0 = make_rational(d(rng), d(rng));
        if (admissible_point(q0, t0, n, mm)) return {q0, t0};
    }
    throw ExactError("could not draw an admissible sample point");
}

CaseOutcome run_one(const CaseSpec& c, const VerifyOptions& opt, int mm) {
    if (!opt.sampled) {
        try {
            auto fail = c.symbolic();
            if (fail) return {false, false, *fail};
            return {true, false, ""};
        } catch (const std::exception& e) {
            return {false, false, std::string("exception: ") + e.what()};
        }
    }
    CaseOutcome out;
    try {
        std::mt19937_64 rng(case_seed(opt, c));
        std::string points;
        int accepted = 0;
        int attempts = 0;
        while (accepted < c.sample_points) {
            if (++attempts > 20 + c.sample_points)
                return {false, true, "resample cap exceeded (persistent poles or singular systems)"};
            auto [q0, t0] = draw_point(rng, c.n, mm);
            try {
                ScopedSampleContext ctx(q0, t0);
                auto fail = c.sampled();
                if (fail)
                    return {false, false,
                            "at (q,t)=(" + rational_str(q0) + ", " + rational_str(t0) + "): " + *fail};
                ++accepted;
                points += (accepted == 1 ? "" : " ") + std::string("(") + rational_str(q0) + ", " +
                          rational_str(t0) + ")";
            } catch (const PoleError&) {
                continue;
            } catch (const SingularSystem&) {
                continue;
            }
        }
        return {true, false, "points " + points};
    } catch (const std::exception& e) {
        return {false, false, std::string("exception: ") + e.what()};
    }
}

struct ConventionGuard {
    explicit ConventionGuard(bool minus) : saved_(lprime_minus_convention()) {
        set_lprime_minus_convention(minus);
    }
    ~ConventionGuard() { set_lprime_minus_convention(saved_); }
    ConventionGuard(const ConventionGuard&) = delete;
    ConventionGuard& operator=(const ConventionGuard&) = delete;

  private:
    bool saved_;
};

}  // namespace

VerifySummary run_verify(const VerifyOptions& opt) {
    if (auto err = validate_verify_options(opt)) throw ExactError("invalid options: " + *err);

    ConventionGuard convention(opt.lprime_minus);
    // Cases get independent builders, so share fully-built interpolation
    // polynomials through a cache: the disk layer only for plain symbolic
    // runs (records must not depend on the convention toggle, and sampled
    // coefficients are context-bound), a memory-only cache otherwise.
    std::unique_ptr<PolyCache> cache;
    if (!opt.lprime_minus && !opt.sampled)
        cache = std::make_unique<PolyCache>(opt.cache_dir);
    else
        cache = std::make_unique<PolyCache>();
    g_cache = cache.get();

    std::vector<CaseSpec> cases = build_cases(opt);
    int mm_max = opt.max_modulus >= 0 ? opt.max_modulus : 4;

    std::vector<CaseOutcome> outcomes(cases.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t k = next.fetch_add(1);
            if (k >= cases.size()) break;
            outcomes[k] = run_one(cases[k], opt, mm_max);
        }
    };
    int jobs = std::max(1, opt.jobs);
    if (jobs == 1 || cases.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<size_t>(jobs));
        for (int j = 0; j < jobs; ++j) threads.emplace_back(worker);
        for (std::thread& th : threads) th.join();
    }
    g_cache = nullptr;

    VerifySummary summary;
    summary.results.reserve(cases.size());
    for (size_t k = 0; k < cases.size(); ++k) {
        VerifyResult r;
        r.suite = cases[k].suite;
        r.descriptor = cases[k].descriptor;
        r.pass = outcomes[k].pass;
        r.infrastructure = outcomes[k].infrastructure;
        r.detail = outcomes[k].detail;
        if (r.pass) ++summary.passed;
        else if (r.infrastructure) ++summary.infrastructure;
        else ++summary.failed;
        summary.results.push_back(std::move(r));
    }
    return summary;
}

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t k = 0; k < parts.size(); ++k) {
        if (k) out += sep;
        out += parts[k];
    }
    return out;
}

std::vector<std::string> effective_suites(const VerifyOptions& opt) {
    if (opt.suites.empty()) return all_verify_suites();
    std::vector<std::string> ordered;
    for (const std::string& s : all_verify_suites())
        if (std::find(opt.suites.begin(), opt.suites.end(), s) != opt.suites.end())
            ordered.push_back(s);
    return ordered;
}

std::vector<int> effective_ns(const VerifyOptions& opt) {
    std::vector<int> ns = opt.ns.empty() ? std::vector<int>{1, 2, 3} : opt.ns;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return ns;
}

}  // namespace

std::string verify_report_text(const VerifyOptions& opt, const VerifySummary& s) {
    std::string out = "verify: mode=" + std::string(opt.sampled ? "sampled" : "symbolic");
    if (opt.sampled) out += " seed=" + std::to_string(opt.seed);
    out += " suites=" + join(effective_suites(opt), ",");
    std::vector<std::string> nstrs;
    for (int n : effective_ns(opt)) nstrs.push_back(std::to_string(n));
    out += " n=" + join(nstrs, ",");
    out += " max_modulus=" +
           (opt.max_modulus >= 0 ? std::to_string(opt.max_modulus) : std::string("default"));
    if (opt.lprime_minus) out += " lprime_minus=on";
    out += "\n";

    std::map<std::string, std::pair<int, int>> per_suite;  // suite -> {passed, total}
    for (const VerifyResult& r : s.results) {
        auto& tally = per_suite[r.suite];
        ++tally.second;
        if (r.pass) ++tally.first;
        if (r.pass) {
            out += "pass " + r.suite + " " + r.descriptor;
            if (!r.detail.empty()) out += " :: " + r.detail;
        } else if (r.infrastructure) {
            out += "ERROR " + r.suite + " " + r.descriptor + " :: " + r.detail;
        } else {
            out += "FAIL " + r.suite + " " + r.descriptor + " :: " + r.detail;
        }
        out += "\n";
    }
    for (const std::string& suite : effective_suites(opt)) {
        auto it = per_suite.find(suite);
        if (it == per_suite.end()) continue;
        out += "suite " + suite + ": " + std::to_string(it->second.first) + "/" +
               std::to_string(it->second.second) + " passed\n";
    }
    out += "total: " + std::to_string(s.passed) + "/" + std::to_string(s.results.size()) +
           " passed, " + std::to_string(s.failed) + " failed, " +
           std::to_string(s.infrastructure) + " infrastructure errors\n";
    out += std::string("result: ") + (s.exit_code() == 0 ? "PASS" : "FAIL") + "\n";
    return out;
}

nlohmann::ordered_json verify_report_json(const VerifyOptions& opt, const VerifySummary& s) {
    nlohmann::ordered_json j;
    j["mode"] = opt.sampled ? "sampled" : "symbolic";
    if (opt.sampled) j["seed"] = opt.seed;
    j["suites"] = effective_suites(opt);
    j["n"] = effective_ns(opt);
    if (opt.max_modulus >= 0) j["max_modulus"] = opt.max_modulus;
    else j["max_modulus"] = nullptr;
    j["lprime_minus"] = opt.lprime_minus;
    nlohmann::ordered_json cases = nlohmann::ordered_json::array();
    for (const VerifyResult& r : s.results) {
        nlohmann::ordered_json c;
        c["suite"] = r.suite;
        c["case"] = r.descriptor;
        c["status"] = r.pass ? "pass" : (r.infrastructure ? "error" : "fail");
        if (!r.detail.empty()) c["detail"] = r.detail;
        cases.push_back(std::move(c));
    }
    j["cases"] = std::move(cases);
    nlohmann::ordered_json summary;
    summary["total"] = s.results.size();
    summary["passed"] = s.passed;
    summary["failed"] = s.failed;
    summary["infrastructure"] = s.infrastructure;
    j["summary"] = std::move(summary);
    j["ok"] = s.exit_code() == 0;
    return j;
}

}  // namespace macpieri
