#pragma once

// User-facing rendering: polynomials as human-readable text with terms in
// descending degree-reverse-lexicographic order, basis expansions as
// "composition: coefficient" lines, and JSON documents for machine
// consumption. Everything here is deterministic so that outputs can be
// compared byte-for-byte across runs.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "macpieri/composition.hpp"
#include "macpieri/expansion.hpp"
#include "macpieri/laurent.hpp"
#include "macpieri/pieri.hpp"

namespace macpieri {

using Json = nlohmann::ordered_json;

// Degree first, then reverse-lexicographic on the exponent difference: a
// term beats another of equal degree when the last nonzero entry of the
// exponent difference is negative. This puts z1^2 before z1*z2 before z2^2.
inline bool degrevlex_greater(const std::vector<int>& a, const std::vector<int>& b) {
    long da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da > db;
    for (size_t k = a.size(); k-- > 0;) {
        int d = a[k] - b[k];
        if (d != 0) return d < 0;
    }
    return false;
}

inline std::string monomial_string(const std::vector<int>& exps) {
    std::string s;
    for (size_t k = 0; k < exps.size(); ++k) {
        if (exps[k] == 0) continue;
        if (!s.empty()) s += "*";
        s += "z" + std::to_string(k + 1);
        if (exps[k] != 1) s += "^" + std::to_string(exps[k]);
    }
    return s;
}

namespace detail {

// A coefficient printed next to "*z..." needs parentheses whenever its
// canonical string is not a single multiplicative atom.
inline std::string coefficient_factor(const std::string& cs) {
    bool wrap = cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos;
    return wrap ? "(" + cs + ")" : cs;
}

inline void append_signed(std::string& out, const std::string& term) {
    if (out.empty()) {
        out = term;
    } else if (!term.empty() && term[0] == '-') {
        out += " - " + term.substr(1);
    } else {
        out += " + " + term;
    }
}

}  // namespace detail

template <CoeffScalar S>
std::string poly_to_text(const LaurentPoly<S>& f) {
    if (f.is_zero()) return "0";
    std::vector<const std::pair<const std::vector<int>, S>*> terms;
    terms.reserve(f.num_terms());
    for (const auto& term : f.terms()) terms.push_back(&term);
    std::sort(terms.begin(), terms.end(),
              [](const auto* a, const auto* b) { return degrevlex_greater(a->first, b->first); });

    std::string out;
    for (const auto* term : terms) {
        const std::string mono = monomial_string(term->first);
        const S& c = term->second;
        std::string piece;
        if (mono.empty()) {
            std::string cs = c.to_string();
            piece = cs.find(' ') != std::string::npos ? "(" + cs + ")" : cs;
        } else if (c.is_one()) {
            piece = mono;
        } else if ((-c).is_one()) {
            piece = "-" + mono;
        } else {
            piece = detail::coefficient_factor(c.to_string()) + "*" + mono;
        }
        detail::append_signed(out, piece);
    }
    return out;
}

// Uniform term-list form for expansions in a composition-indexed basis,
// sorted ascending in the order the construction refines.
template <CoeffScalar S>
using TermList = std::vector<std::pair<Composition, S>>;

template <CoeffScalar S>
TermList<S> sorted_terms(const Expansion<S>& e) {
    TermList<S> out(e.terms.begin(), e.terms.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return total_less(a.first, b.first); });
    return out;
}

template <CoeffScalar S>
TermList<S> sorted_terms(const std::vector<PieriTerm<S>>& terms) {
    TermList<S> out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.emplace_back(t.target, t.coefficient);
    // Already ascending from the expansion routines, but do not rely on it.
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return total_less(a.first, b.first); });
    return out;
}

template <CoeffScalar S>
std::string terms_to_text(const TermList<S>& terms) {
    std::string out;
    for (const auto& [comp, c] : terms) {
        out += comp.to_string() + ": " + c.to_string() + "\n";
    }
    return out;
}

// JSON document for an expansion over a composition-indexed basis. The
// "params" field records whether coefficients are rational in (q, t) or in
// the inverted parameters; "basis" is "E", "Estar" or "monomial".
template <CoeffScalar S>
Json expansion_json(std::string_view params, std::string_view basis, const Composition& source,
                    const TermList<S>& terms) {
    Json j;
    j["params"] = params;
    j["basis"] = basis;
    j["source"] = source.parts;
    Json arr = Json::array();
    for (const auto& [comp, c] : terms) {
        Json t;
        t["comp"] = comp.parts;
        t["coeff"] = c.to_string();
        arr.push_back(std::move(t));
    }
    j["terms"] = std::move(arr);
    return j;
}

// Polynomial as a monomial-basis document; term order matches poly_to_text.
template <CoeffScalar S>
Json poly_json(std::string_view params, const Composition& source, const LaurentPoly<S>& f) {
    Json j;
    j["params"] = params;
    j["basis"] = "monomial";
    j["source"] = source.parts;
    std::vector<const std::pair<const std::vector<int>, S>*> terms;
    terms.reserve(f.num_terms());
    for (const auto& term : f.terms()) terms.push_back(&term);
    std::sort(terms.begin(), terms.end(),
              [](const auto* a, const auto* b) { return degrevlex_greater(a->first, b->first); });
    Json arr = Json::array();
    for (const auto* term : terms) {
        Json t;
        t["comp"] = term->first;
        t["coeff"] = term->second.to_string();
        arr.push_back(std::move(t));
    }
    j["terms"] = std::move(arr);
    return j;
}

// Scalar result (principal evaluations, binomial coefficients, limits).
inline Json scalar_json(std::string_view kind, std::string_view params, const std::string& value) {
    Json j;
    j["kind"] = kind;
    j["params"] = params;
    j["value"] = value;
    return j;
}

}  // namespace macpieri
