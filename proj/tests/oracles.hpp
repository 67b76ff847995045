#pragma once

// Brute-force oracles shared by the unit tests and the acceptance suite.
// These stay independent of the decoders and distance formulas they check.

#include <optional>
#include <vector>

#include "capgap/linalg.hpp"
#include "capgap/poly.hpp"

namespace capgap::oracles {

inline std::size_t matrix_rank(FpMatrix A) { return rref(A).size(); }

/// Exact minimum Hamming weight of the nonzero codewords of the linear code
/// spanned by the columns of the n x k evaluation matrix M. Two exhaustive
/// strategies: enumerate messages up to scaling when that is small, else
/// search zero supports from large to small (a nonzero codeword vanishing on
/// a row subset Z exists iff rank(M_Z) < rank(M)).
inline long long min_weight_exact(const FpMatrix& M, const PrimeField& F, bool force_support_search = false) {
    const std::size_t n = M.size();
    if (n == 0) return 0;
    const std::size_t k = M[0].size();
    const u64 p = F.modulus();

    double projective = 1;
    bool small = !force_support_search;
    for (std::size_t i = 0; i + 1 < k && small; ++i) {
        projective *= static_cast<double>(p);
        if (projective > 2e6) small = false;
    }

    if (small) {
        long long best = -1;
        // first nonzero coefficient normalized to 1; weight is scale-invariant
        for (std::size_t lead = 0; lead < k; ++lead) {
            std::vector<u64> coeff(k, 0);
            coeff[lead] = 1;
            for (;;) {
                long long w = 0;
                for (std::size_t r = 0; r < n; ++r) {
                    Fp acc = F.zero();
                    for (std::size_t c = lead; c < k; ++c)
                        if (coeff[c]) acc += M[r][c] * F.from_raw(coeff[c]);
                    if (!acc.is_zero()) ++w;
                }
                if (w > 0 && (best < 0 || w < best)) best = w;
                std::size_t i = lead + 1;
                while (i < k && ++coeff[i] == p) coeff[i++] = 0;
                if (i == k) break;
            }
        }
        return best < 0 ? 0 : best;
    }

    const std::size_t full_rank = matrix_rank(M);
    for (std::size_t w = n; w-- > 0;) {
        // all w-subsets of rows
        std::vector<std::size_t> idx(w);
        for (std::size_t i = 0; i < w; ++i) idx[i] = i;
        for (;;) {
            FpMatrix sub;
            sub.reserve(w);
            for (auto i : idx) sub.push_back(M[i]);
            if (matrix_rank(std::move(sub)) < full_rank) return static_cast<long long>(n - w);
            // next combination
            std::size_t j = w;
            while (j-- > 0) {
                if (idx[j] + (w - j) < n) {
                    ++idx[j];
                    for (std::size_t t = j + 1; t < w; ++t) idx[t] = idx[t - 1] + 1;
                    break;
                }
                if (j == 0) {
                    j = w + 1;
                    break;
                }
            }
            if (j == w + 1 || w == 0) break;
        }
    }
    return static_cast<long long>(n);
}

/// Evaluation matrix of the degree-<=d monomial basis at the given points.
inline FpMatrix evaluation_matrix(const std::vector<std::vector<Fp>>& points, std::size_t m, unsigned d,
                                  const PrimeField& F) {
    auto monos = monomials_up_to_degree(m, d);
    FpMatrix M;
    M.reserve(points.size());
    for (const auto& x : points) {
        std::vector<Fp> row;
        row.reserve(monos.size());
        for (const auto& e : monos) {
            Fp t = F.one();
            for (std::size_t i = 0; i < m; ++i)
                if (e[i]) t *= x[i].pow(e[i]);
            row.push_back(t);
        }
        M.push_back(std::move(row));
    }
    return M;
}

}  // namespace capgap::oracles
