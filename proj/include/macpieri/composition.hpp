#pragma once

// Compositions (finite sequences of non-negative integers), their diagrams
// and statistics, the dominance-style partial order, spectral vectors, and
// the index-set machinery (maximal / comaximal subsets, the successor map
// c_I, and the twisted action I. on coordinate vectors).
//
// Conventions fixed here and relied on everywhere else:
//   - positions are 1-based in the API, matching the algebra;
//   - leg colength uses the plus convention
//         l'_eta(i) = #{j < i : eta_j >= eta_i} + #{j > i : eta_j > eta_i},
//     the unique sign choice with sum_i l'_eta(i) = n(n-1)/2 (a debug toggle
//     flips the second sign so the failure mode stays demonstrable);
//   - the spectral vector is eta-bar_i = q^{eta_i} t^{-l'_eta(i)}.

#include <algorithm>
#include <atomic>
#include <numeric>
#include <string>
#include <vector>

#include "macpieri/common.hpp"
#include "macpieri/scalar_traits.hpp"

namespace macpieri {

struct Composition {
    std::vector<int> parts;

    Composition() = default;
    explicit Composition(std::vector<int> p) : parts(std::move(p)) {
        for (int x : parts) MACPIERI_CHECK(x >= 0, "composition parts must be non-negative");
    }

    int n() const { return static_cast<int>(parts.size()); }
    long modulus() const { return std::accumulate(parts.begin(), parts.end(), 0L); }
    int operator[](int i) const { return parts[static_cast<size_t>(i - 1)]; }  // 1-based

    bool operator==(const Composition& o) const { return parts == o.parts; }
    bool operator!=(const Composition& o) const { return !(*this == o); }
    bool operator<(const Composition& o) const {  // container ordering only
        if (parts.size() != o.parts.size()) return parts.size() < o.parts.size();
        return parts < o.parts;
    }

    // Decreasing rearrangement eta+.
    Composition sorted_desc() const {
        Composition r = *this;
        std::sort(r.parts.begin(), r.parts.end(), std::greater<int>());
        return r;
    }

    Composition reversed() const {
        Composition r = *this;
        std::reverse(r.parts.begin(), r.parts.end());
        return r;
    }

    Composition shifted(int c) const {  // add c to every part
        Composition r = *this;
        for (int& x : r.parts) {
            x += c;
            MACPIERI_CHECK(x >= 0, "shift would make a part negative");
        }
        return r;
    }

    int min_part() const {
        MACPIERI_CHECK(!parts.empty(), "empty composition");
        return *std::min_element(parts.begin(), parts.end());
    }

    int max_part() const {
        MACPIERI_CHECK(!parts.empty(), "empty composition");
        return *std::max_element(parts.begin(), parts.end());
    }

    std::string to_string() const {
        std::string s;
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts[i]);
        }
        return s;
    }
};

inline Composition parse_composition(const std::string& text) {
    std::vector<int> parts;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string piece = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad composition \"" + text + "\"");
        parts.push_back(std::stoi(piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return Composition(parts);
}

// ---------------------------------------------------------------------------
// Statistics.

namespace detail {
// Debug-only toggle between the plus convention (correct) and the minus
// variant; exposed so the verify harness can demonstrate that the minus
// variant breaks the joint eigenproblem.
inline std::atomic<bool> lprime_minus_convention{false};
}  // namespace detail

inline void set_lprime_minus_convention(bool on) { detail::lprime_minus_convention.store(on); }
inline bool lprime_minus_convention() { return detail::lprime_minus_convention.load(); }

inline int leg_colength(const Composition& eta, int i) {
    int c = 0;
    for (int j = 1; j < i; ++j)
        if (eta[j] >= eta[i]) ++c;
    int after = 0;
    for (int j = i + 1; j <= eta.n(); ++j)
        if (eta[j] > eta[i]) ++after;
    return lprime_minus_convention() ? c - after : c + after;
}

inline std::vector<int> leg_colength_vector(const Composition& eta) {
    std::vector<int> v(static_cast<size_t>(eta.n()));
    for (int i = 1; i <= eta.n(); ++i) v[static_cast<size_t>(i - 1)] = leg_colength(eta, i);
    return v;
}

// eta-bar_i = q^{eta_i} t^{-l'_eta(i)}.
template <CoeffScalar S>
std::vector<S> spectral_vector(const Composition& eta) {
    std::vector<S> v;
    v.reserve(static_cast<size_t>(eta.n()));
    for (int i = 1; i <= eta.n(); ++i)
        v.push_back(S::qt_mono(eta[i], -leg_colength(eta, i)));
    return v;
}

// Exponents (a, b) with eta-bar_i / eta-bar_{i+1} = q^a t^b.
inline std::pair<long, long> delta_exponents(const Composition& eta, int i) {
    return {eta[i] - eta[i + 1],
            leg_colength(eta, i + 1) - leg_colength(eta, i)};
}

// Diagram cells are (row i, column j) with 1 <= j <= eta_i.
struct DiagramCell {
    int i;
    int j;
};

inline std::vector<DiagramCell> diagram_cells(const Composition& eta) {
    std::vector<DiagramCell> cells;
    for (int i = 1; i <= eta.n(); ++i)
        for (int j = 1; j <= eta[i]; ++j) cells.push_back({i, j});
    return cells;
}

inline int arm(const Composition& eta, int i, int j) { return eta[i] - j; }

inline int leg(const Composition& eta, int i, int j) {
    int c = 0;
    for (int k = i + 1; k <= eta.n(); ++k)
        if (j <= eta[k] && eta[k] <= eta[i]) ++c;
    for (int k = 1; k < i; ++k)
        if (j <= eta[k] + 1 && eta[k] + 1 <= eta[i]) ++c;
    return c;
}

inline long leg_sum(const Composition& eta) {
    long s = 0;
    for (const auto& cell : diagram_cells(eta)) s += leg(eta, cell.i, cell.j);
    return s;
}

// d'_eta = prod over cells of (1 - q^{a+1} t^l), or with both exponents
// negated when inverted is set (the (q^{-1}, t^{-1}) specialization).
template <CoeffScalar S>
S d_prime(const Composition& eta, bool inverted) {
    S acc = S::from_int(1);
    for (const auto& cell : diagram_cells(eta)) {
        long a = arm(eta, cell.i, cell.j) + 1;
        long l = leg(eta, cell.i, cell.j);
        S mono = inverted ? S::qt_mono(-a, -l) : S::qt_mono(a, l);
        acc = acc * (S::from_int(1) - mono);
    }
    return acc;
}

// The principal evaluation of the interpolation polynomial at its own
// spectral point, in closed form:
//   k_eta = (prod_i eta-bar_i^{eta_i}) * d'_eta(q^{-1}, t^{-1}).
template <CoeffScalar S>
S k_eta(const Composition& eta) {
    S acc = d_prime<S>(eta, true);
    for (int i = 1; i <= eta.n(); ++i)
        acc = acc * S::qt_mono(static_cast<long>(eta[i]) * eta[i],
                               -static_cast<long>(leg_colength(eta, i)) * eta[i]);
    return acc;
}

// ---------------------------------------------------------------------------
// Orders.

// Partial-sum comparison on equal-length integer tuples: a < b iff a != b and
// every prefix sum of b - a is non-negative. On partitions this is dominance.
inline bool partial_sum_less(const std::vector<int>& a, const std::vector<int>& b) {
    if (a == b) return false;
    long acc = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        acc += b[i] - a[i];
        if (acc < 0) return false;
    }
    return acc == 0;
}

// The triangularity order: mu precedes eta iff they have equal modulus and
// either mu+ < eta+ (dominance) or mu+ = eta+ with mu < eta (partial sums).
inline bool precedes(const Composition& mu, const Composition& eta) {
    if (mu.n() != eta.n() || mu.modulus() != eta.modulus()) return false;
    Composition mp = mu.sorted_desc();
    Composition ep = eta.sorted_desc();
    if (mp != ep) return partial_sum_less(mp.parts, ep.parts);
    return partial_sum_less(mu.parts, eta.parts);
}

inline bool preceq(const Composition& mu, const Composition& eta) {
    return mu == eta || precedes(mu, eta);
}

// A deterministic linear extension of precedes(), used to fix expansion
// order. Between distinct orbits, compare eta+ by the sign of the last
// nonzero entry of the difference (this refines dominance); within an orbit,
// plain lexicographic comparison refines the partial-sum order.
inline bool total_less(const Composition& mu, const Composition& eta) {
    if (mu.n() != eta.n()) return mu.n() < eta.n();
    long mm = mu.modulus(), me = eta.modulus();
    if (mm != me) return mm < me;
    Composition mp = mu.sorted_desc();
    Composition ep = eta.sorted_desc();
    if (mp != ep) {
        for (size_t i = mp.parts.size(); i-- > 0;) {
            int d = mp.parts[i] - ep.parts[i];
            if (d != 0) return d > 0;
        }
    }
    return mu.parts < eta.parts;
}

// All compositions of modulus m with n parts, in lexicographic order.
inline std::vector<Composition> compositions_with_modulus(int n, int m) {
    std::vector<Composition> out;
    std::vector<int> cur(static_cast<size_t>(n), 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == n) {
            if (remaining == 0) out.emplace_back(cur);
            return;
        }
        if (pos == n - 1) {
            cur[static_cast<size_t>(pos)] = remaining;
            out.emplace_back(cur);
            cur[static_cast<size_t>(pos)] = 0;
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[static_cast<size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
        cur[static_cast<size_t>(pos)] = 0;
    };
    rec(rec, 0, m);
    return out;
}

inline std::vector<Composition> compositions_up_to_modulus(int n, int m) {
    std::vector<Composition> out;
    for (int k = 0; k <= m; ++k) {
        auto layer = compositions_with_modulus(n, k);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Index sets.

// Sorted 1-based positions t_1 < ... < t_s.
using IndexSet = std::vector<int>;

inline std::string index_set_to_string(const IndexSet& I) {
    std::string s;
    for (size_t i = 0; i < I.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(I[i]);
    }
    return s;
}

// All nonempty subsets of {1..n}, each as a sorted position list, ordered
// lexicographically by that list.
inline std::vector<IndexSet> nonempty_subsets(int n) {
    std::vector<IndexSet> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        IndexSet I;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) I.push_back(i + 1);
        out.push_back(std::move(I));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// I is maximal with respect to eta: inside each gap strictly before an
// element t_u no part equals eta_{t_u}, and after t_s no part equals
// eta_{t_1} + 1.
inline bool is_maximal(const Composition& eta, const IndexSet& I) {
    int s = static_cast<int>(I.size());
    MACPIERI_CHECK(s >= 1, "index set must be nonempty");
    for (int u = 1; u <= s; ++u) {
        int lo = (u == 1) ? 1 : I[static_cast<size_t>(u - 2)] + 1;
        for (int j = lo; j < I[static_cast<size_t>(u - 1)]; ++j)
            if (eta[j] == eta[I[static_cast<size_t>(u - 1)]]) return false;
    }
    for (int j = I[static_cast<size_t>(s - 1)] + 1; j <= eta.n(); ++j)
        if (eta[j] == eta[I[0]] + 1) return false;
    return true;
}

// I is comaximal with respect to eta: inside each gap strictly after an
// element t_u no part equals eta_{t_u}, before t_1 no part equals
// eta_{t_s} - 1, and eta_{t_s} is nonzero.
inline bool is_comaximal(const Composition& eta, const IndexSet& I) {
    int s = static_cast<int>(I.size());
    MACPIERI_CHECK(s >= 1, "index set must be nonempty");
    int n = eta.n();
    for (int u = 1; u <= s; ++u) {
        int hi = (u == s) ? n + 1 : I[static_cast<size_t>(u)];
        for (int j = I[static_cast<size_t>(u - 1)] + 1; j < hi; ++j)
            if (eta[j] == eta[I[static_cast<size_t>(u - 1)]]) return false;
    }
    for (int j = 1; j < I[0]; ++j)
        if (eta[j] == eta[I[static_cast<size_t>(s - 1)]] - 1) return false;
    return eta[I[static_cast<size_t>(s - 1)]] != 0;
}

inline std::vector<IndexSet> maximal_subsets(const Composition& eta) {
    std::vector<IndexSet> out;
    for (auto& I : nonempty_subsets(eta.n()))
        if (is_maximal(eta, I)) out.push_back(I);
    return out;
}

inline std::vector<IndexSet> comaximal_subsets(const Composition& eta) {
    std::vector<IndexSet> out;
    for (auto& I : nonempty_subsets(eta.n()))
        if (is_comaximal(eta, I)) out.push_back(I);
    return out;
}

// The successor c_I(eta): parts cycle backwards along I and the first element
// of the cycle receives eta_{t_1} + 1 at position t_s; modulus grows by one.
inline Composition c_I(const Composition& eta, const IndexSet& I) {
    Composition nu = eta;
    int s = static_cast<int>(I.size());
    for (int k = 1; k < s; ++k)
        nu.parts[static_cast<size_t>(I[static_cast<size_t>(k - 1)] - 1)] =
            eta[I[static_cast<size_t>(k)]];
    nu.parts[static_cast<size_t>(I[static_cast<size_t>(s - 1)] - 1)] = eta[I[0]] + 1;
    return nu;
}

// The twisted action on coordinate vectors: (Iz)_{t_u} = z_{t_{u-1}} for
// u >= 2, (Iz)_{t_1} = z_{t_s}/q, identity off I.
template <CoeffScalar S>
std::vector<S> iz_action(const IndexSet& I, const std::vector<S>& z) {
    std::vector<S> w = z;
    int s = static_cast<int>(I.size());
    for (int u = 2; u <= s; ++u)
        w[static_cast<size_t>(I[static_cast<size_t>(u - 1)] - 1)] =
            z[static_cast<size_t>(I[static_cast<size_t>(u - 2)] - 1)];
    w[static_cast<size_t>(I[0] - 1)] =
        z[static_cast<size_t>(I[static_cast<size_t>(s - 1)] - 1)] / S::qt_mono(1, 0);
    return w;
}

}  // namespace macpieri
