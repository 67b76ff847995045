#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "capgap/field.hpp"

namespace capgap {

using FpMatrix = std::vector<std::vector<Fp>>;

/// Reduced row echelon form in place; returns pivot column per pivot row.
inline std::vector<std::size_t> rref(FpMatrix& A) {
    std::vector<std::size_t> pivots;
    if (A.empty()) return pivots;
    const std::size_t rows = A.size(), cols = A[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && A[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(A[sel], A[r]);
        Fp inv = A[r][c].inv();
        for (auto& x : A[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c].is_zero()) continue;
            Fp f = A[i][c];
            for (std::size_t j = 0; j < cols; ++j) A[i][j] -= f * A[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// One nonzero vector in the kernel of A, or nullopt if A has full column rank.
inline std::optional<std::vector<Fp>> kernel_vector(FpMatrix A, const PrimeField& F) {
    if (A.empty()) return std::nullopt;
    const std::size_t cols = A[0].size();
    auto pivots = rref(A);
    if (pivots.size() == cols) return std::nullopt;
    // first free column
    std::size_t free_col = 0;
    {
        std::vector<bool> is_pivot(cols, false);
        for (auto c : pivots) is_pivot[c] = true;
        while (is_pivot[free_col]) ++free_col;
    }
    std::vector<Fp> x(cols, F.zero());
    x[free_col] = F.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -A[r][free_col];
    return x;
}

/// Unique solution of a square nonsingular system A x = b; nullopt if singular.
inline std::optional<std::vector<Fp>> solve_linear(FpMatrix A, std::vector<Fp> b, const PrimeField& F) {
    const std::size_t n = A.size();
    for (std::size_t i = 0; i < n; ++i) A[i].push_back(b[i]);
    auto pivots = rref(A);
    if (pivots.size() != n) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        if (pivots[i] != i) return std::nullopt;  // pivot in the b column: inconsistent/singular
    std::vector<Fp> x(n, F.zero());
    for (std::size_t i = 0; i < n; ++i) x[i] = A[i][n];
    return x;
}

/// Affine solution set of A x = b: a particular solution plus a basis of the
/// kernel. nullopt if inconsistent.
struct AffineSolution {
    std::vector<Fp> base;
    std::vector<std::vector<Fp>> directions;
};

inline std::optional<AffineSolution> solve_affine(FpMatrix A, std::vector<Fp> b, const PrimeField& F) {
    if (A.empty()) return std::nullopt;
    const std::size_t rows = A.size(), cols = A[0].size();
    for (std::size_t i = 0; i < rows; ++i) A[i].push_back(b[i]);
    auto pivots = rref(A);
    for (auto c : pivots)
        if (c == cols) return std::nullopt;  // 0 = 1 row
    std::vector<bool> is_pivot(cols, false);
    std::vector<std::size_t> pivot_row(cols, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        is_pivot[pivots[r]] = true;
        pivot_row[pivots[r]] = r;
    }
    AffineSolution sol;
    sol.base.assign(cols, F.zero());
    for (std::size_t c = 0; c < cols; ++c)
        if (is_pivot[c]) sol.base[c] = A[pivot_row[c]][cols];
    for (std::size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Fp> dir(cols, F.zero());
        dir[fc] = F.one();
        for (std::size_t c = 0; c < cols; ++c)
            if (is_pivot[c]) dir[c] = -A[pivot_row[c]][fc];
        sol.directions.push_back(std::move(dir));
    }
    return sol;
}

}  // namespace capgap
