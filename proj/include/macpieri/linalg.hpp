#pragma once

// Exact dense linear algebra over a coefficient field S. The only consumer
// is the one-dimensional-nullspace solve used to pin down a polynomial from
// linear conditions, so that is all this implements.

#include <vector>

#include "macpieri/scalar_traits.hpp"

namespace macpieri {

template <CoeffScalar S>
using Matrix = std::vector<std::vector<S>>;

// Reduce `m` in place to reduced row echelon form; returns pivot column of
// each pivot row. Pivot selection prefers the entry of smallest
// degree_measure in the column to keep intermediate fractions small.
template <CoeffScalar S>
std::vector<int> rref(Matrix<S>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t best = rows;
        long best_measure = 0;
        for (size_t r = rank; r < rows; ++r) {
            if (m[r][col].is_zero()) continue;
            long measure = m[r][col].degree_measure();
            if (best == rows || measure < best_measure) {
                best = r;
                best_measure = measure;
            }
        }
        if (best == rows) continue;
        std::swap(m[rank], m[best]);
        S inv = m[rank][col].inverse();
        for (size_t c = col; c < cols; ++c) m[rank][c] = m[rank][c] * inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col].is_zero()) continue;
            S factor = m[r][col];
            for (size_t c = col; c < cols; ++c)
                m[r][c] = m[r][c] - factor * m[rank][c];
        }
        pivots.push_back(static_cast<int>(col));
        ++rank;
    }
    return pivots;
}

// Solve m x = 0 expecting a one-dimensional solution space; the free
// variable is set to 1. Throws SingularSystem if the nullity is not 1.
template <CoeffScalar S>
std::vector<S> nullspace_dim1(Matrix<S> m) {
    MACPIERI_CHECK(!m.empty(), "nullspace of an empty system");
    size_t cols = m[0].size();
    std::vector<int> pivots = rref(m);
    size_t nullity = cols - pivots.size();
    if (nullity != 1)
        throw SingularSystem("expected nullity 1, got " + std::to_string(nullity));
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
    size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    std::vector<S> x(cols, S::from_int(0));
    x[free_col] = S::from_int(1);
    for (size_t r = 0; r < pivots.size(); ++r)
        x[static_cast<size_t>(pivots[r])] = -m[r][free_col];
    return x;
}

}  // namespace macpieri
