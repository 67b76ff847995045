#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "capgap/linalg.hpp"
#include "capgap/poly.hpp"

namespace capgap {

/// A received symbol: a field element or an erasure mark.
using Symbol = std::optional<Fp>;

/// Weight of an error-and-erasure pattern: twice the errors plus the erasures.
inline long long pattern_weight(std::span<const Symbol> received, std::span<const Fp> codeword) {
    if (received.size() != codeword.size()) throw std::invalid_argument("pattern_weight: length mismatch");
    long long w = 0;
    for (std::size_t i = 0; i < received.size(); ++i) {
        if (!received[i])
            w += 1;
        else if (*received[i] != codeword[i])
            w += 2;
    }
    return w;
}

/// Reed-Solomon code: degree-bounded univariate polynomials evaluated at n
/// distinct points, n > degree. Distance n - degree.
struct RSParams {
    int degree;
    std::vector<Fp> points;

    RSParams(int d, std::vector<Fp> pts) : degree(d), points(std::move(pts)) {
        if (degree < 0) throw std::invalid_argument("RSParams: negative degree");
        if (points.size() <= static_cast<std::size_t>(degree))
            throw std::invalid_argument("RSParams: need more points than the degree");
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                if (points[i] == points[j]) throw std::invalid_argument("RSParams: points not distinct");
    }

    std::size_t length() const noexcept { return points.size(); }
    long long distance() const noexcept { return static_cast<long long>(points.size()) - degree; }
};

inline std::vector<Fp> rs_encode(const UniPoly& f, const RSParams& params) {
    if (f.degree() > params.degree) throw std::invalid_argument("rs_encode: degree too high");
    std::vector<Fp> out;
    out.reserve(params.points.size());
    for (const auto& x : params.points) out.push_back(f.evaluate(x));
    return out;
}

/// Berlekamp-Welch unique decoding from errors and erasures. Returns the
/// codeword polynomial whenever one lies at pattern weight < n - degree of the
/// received word; FAIL (nullopt) is a normal outcome otherwise.
inline std::optional<UniPoly> bw_decode(std::span<const Symbol> r, const RSParams& params) {
    const std::size_t n = params.length();
    if (r.size() != n) throw std::invalid_argument("bw_decode: length mismatch");
    const PrimeField F(params.points[0].modulus());
    const int d = params.degree;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i)
        if (r[i]) kept.push_back(i);
    const long long np = static_cast<long long>(kept.size());
    if (np <= d) return std::nullopt;
    const long long e = (np - d - 1) / 2;
    const std::size_t ncols = static_cast<std::size_t>(d + e + 1 + e + 1);
    FpMatrix A;
    A.reserve(kept.size());
    for (auto idx : kept) {
        const Fp& x = params.points[idx];
        const Fp& y = *r[idx];
        std::vector<Fp> row;
        row.reserve(ncols);
        Fp xp = F.one();
        for (long long j = 0; j <= d + e; ++j) {
            row.push_back(xp);
            xp *= x;
        }
        xp = F.one();
        for (long long j = 0; j <= e; ++j) {
            row.push_back(-(y * xp));
            xp *= x;
        }
        A.push_back(std::move(row));
    }
    auto ker = kernel_vector(std::move(A), F);
    if (!ker) return std::nullopt;
    std::vector<Fp> ncoef(ker->begin(), ker->begin() + (d + e + 1));
    std::vector<Fp> ecoef(ker->begin() + (d + e + 1), ker->end());
    UniPoly N(F, std::move(ncoef)), E(F, std::move(ecoef));
    if (E.is_zero()) return std::nullopt;
    auto [q, rem] = divrem(N, E);
    if (!rem.is_zero() || q.degree() > d) return std::nullopt;
    auto cw = rs_encode(q, params);
    if (pattern_weight(r, cw) >= params.distance()) return std::nullopt;
    return q;
}
inline std::optional<UniPoly> bw_decode(const std::vector<Symbol>& r, const RSParams& params) {
    return bw_decode(std::span<const Symbol>(r), params);
}

// ---------------------------------------------------------------------------
// Reed-Solomon over the polynomial ring F_p[X_1..X_{m-1}]: messages are
// m-variate polynomials f(X, Y) of total degree <= d, encoded as
// (f(X, L_1(X)), ..., f(X, L_t(X))) for t distinct affine forms L_i.
// ---------------------------------------------------------------------------

struct PolyRingRSParams {
    std::size_t nvars;              // m - 1
    int degree;                     // d
    std::vector<AffineForm> forms;  // t distinct forms over nvars variables

    PolyRingRSParams(std::size_t nv, int d, std::vector<AffineForm> fs)
        : nvars(nv), degree(d), forms(std::move(fs)) {
        if (degree < 0) throw std::invalid_argument("PolyRingRSParams: negative degree");
        if (forms.size() <= static_cast<std::size_t>(degree))
            throw std::invalid_argument("PolyRingRSParams: need more forms than the degree");
        for (const auto& f : forms)
            if (f.nvars() != nvars) throw std::invalid_argument("PolyRingRSParams: form arity mismatch");
        for (std::size_t i = 0; i < forms.size(); ++i)
            for (std::size_t j = i + 1; j < forms.size(); ++j)
                if (forms[i] == forms[j]) throw std::invalid_argument("PolyRingRSParams: forms not distinct");
    }

    std::size_t length() const noexcept { return forms.size(); }
    long long distance() const noexcept { return static_cast<long long>(forms.size()) - degree; }
};

using RingSymbol = std::optional<MultiPoly>;
using PolyMatrix = std::vector<std::vector<MultiPoly>>;

namespace detail {

/// Fraction-free (Bareiss) determinant of a square matrix over F_p[X].
inline MultiPoly poly_determinant(PolyMatrix A, const PrimeField& F, std::size_t nvars) {
    const std::size_t n = A.size();
    if (n == 0) return MultiPoly::constant(F, nvars, F.one());
    MultiPoly prev = MultiPoly::constant(F, nvars, F.one());
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && A[piv][k].is_zero()) ++piv;
        if (piv == n) return MultiPoly(F, nvars);  // zero determinant
        if (piv != k) {
            std::swap(A[piv], A[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly num = A[i][j] * A[k][k] - A[i][k] * A[k][j];
                if (num.is_zero()) {
                    A[i][j] = num;
                    continue;
                }
                auto q = poly_divide(num, prev);
                if (!q) throw std::logic_error("poly_determinant: Bareiss division not exact");
                A[i][j] = *q;
            }
            A[i][k] = MultiPoly(F, nvars);
        }
        prev = A[k][k];
    }
    MultiPoly det = A[n - 1][n - 1];
    return negate ? -det : det;
}

}  // namespace detail

/// A nonzero kernel vector of a matrix over F_p[X_1..X_k] (fraction-free:
/// pivots located by plain elimination over the fraction field, the vector
/// assembled from Cramer minors of the original matrix). nullopt when the
/// matrix has full column rank. Coordinate degrees are bounded by rank * D
/// for entry degrees <= D; the product M v = 0 is verified before returning.
inline std::optional<std::vector<MultiPoly>> kernel_vector_polyring(const PolyMatrix& M, const PrimeField& F,
                                                                    std::size_t nvars) {
    if (M.empty()) return std::nullopt;
    const std::size_t rows = M.size(), cols = M[0].size();
    // forward elimination over the fraction field to locate pivot rows/cols;
    // fraction-free row updates keep entries polynomial
    PolyMatrix W = M;
    std::vector<std::size_t> pivot_rows, pivot_cols;
    MultiPoly prev = MultiPoly::constant(F, nvars, F.one());
    std::size_t r = 0;
    std::vector<std::size_t> row_of(rows);
    for (std::size_t i = 0; i < rows; ++i) row_of[i] = i;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && W[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(W[sel], W[r]);
        std::swap(row_of[sel], row_of[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                MultiPoly num = W[i][j] * W[r][c] - W[i][c] * W[r][j];
                if (num.is_zero()) {
                    W[i][j] = num;
                    continue;
                }
                auto q = poly_divide(num, prev);
                if (!q) throw std::logic_error("kernel_vector_polyring: Bareiss division not exact");
                W[i][j] = *q;
            }
            W[i][c] = MultiPoly(F, nvars);
        }
        prev = W[r][c];
        pivot_rows.push_back(row_of[r]);
        pivot_cols.push_back(c);
        ++r;
    }
    if (pivot_cols.size() == cols) return std::nullopt;
    std::size_t free_col = 0;
    {
        std::vector<bool> is_pivot(cols, false);
        for (auto c : pivot_cols) is_pivot[c] = true;
        while (is_pivot[free_col]) ++free_col;
    }
    const std::size_t rank = pivot_cols.size();
    auto minor = [&](std::size_t replace_col, bool use_free) {
        PolyMatrix B(rank, std::vector<MultiPoly>(rank, MultiPoly(F, nvars)));
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < rank; ++j) {
                std::size_t col = (use_free && j == replace_col) ? free_col : pivot_cols[j];
                B[i][j] = M[pivot_rows[i]][col];
            }
        return detail::poly_determinant(std::move(B), F, nvars);
    };
    std::vector<MultiPoly> x(cols, MultiPoly(F, nvars));
    x[free_col] = minor(0, false);
    for (std::size_t j = 0; j < rank; ++j) x[pivot_cols[j]] = -minor(j, true);
    // verify M x = 0 exactly
    for (std::size_t i = 0; i < rows; ++i) {
        MultiPoly acc(F, nvars);
        for (std::size_t c = 0; c < cols; ++c)
            if (!x[c].is_zero() && !M[i][c].is_zero()) acc += M[i][c] * x[c];
        if (!acc.is_zero()) throw std::logic_error("kernel_vector_polyring: verification failed");
    }
    return x;
}

/// Berlekamp-Welch over the polynomial ring. Decodes f(X, Y), deg f <= d, from
/// coordinate polynomials with errors and erasures of weight < t - d.
inline std::optional<MultiPoly> bw_decode_polyring(std::span<const RingSymbol> r,
                                                   const PolyRingRSParams& params, const PrimeField& F) {
    const std::size_t t = params.length();
    const std::size_t nv = params.nvars;
    if (r.size() != t) throw std::invalid_argument("bw_decode_polyring: length mismatch");
    const int d = params.degree;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < t; ++i) {
        if (!r[i]) continue;
        if (r[i]->nvars() != nv || r[i]->field() != F)
            throw std::invalid_argument("bw_decode_polyring: malformed coordinate");
        if (r[i]->total_degree() > d) throw std::invalid_argument("bw_decode_polyring: coordinate degree too high");
        kept.push_back(i);
    }
    const long long tp = static_cast<long long>(kept.size());
    if (tp <= d) return std::nullopt;
    const long long e = (tp - d - 1) / 2;
    const std::size_t ncols = static_cast<std::size_t>(d + e + 1 + e + 1);
    PolyMatrix A;
    A.reserve(kept.size());
    for (auto idx : kept) {
        MultiPoly L = params.forms[idx].to_poly(F);
        std::vector<MultiPoly> row;
        row.reserve(ncols);
        MultiPoly lp = MultiPoly::constant(F, nv, F.one());
        for (long long j = 0; j <= d + e; ++j) {
            row.push_back(lp);
            lp = lp * L;
        }
        lp = MultiPoly::constant(F, nv, F.one());
        for (long long j = 0; j <= e; ++j) {
            row.push_back(-(*r[idx] * lp));
            lp = lp * L;
        }
        A.push_back(std::move(row));
    }
    auto ker = kernel_vector_polyring(A, F, nv);
    if (!ker) return std::nullopt;
    // assemble N(X, Y), E(X, Y) with Y as the last variable
    auto lift = [&](const MultiPoly& g, unsigned ypow) {
        MultiPoly out(F, nv + 1);
        for (const auto& [ex, c] : g.terms()) {
            Exponents e2 = ex;
            e2.push_back(ypow);
            out.add_term(e2, c);
        }
        return out;
    };
    MultiPoly N(F, nv + 1), E(F, nv + 1);
    for (long long j = 0; j <= d + e; ++j) N += lift((*ker)[static_cast<std::size_t>(j)], static_cast<unsigned>(j));
    for (long long j = 0; j <= e; ++j)
        E += lift((*ker)[static_cast<std::size_t>(d + e + 1 + j)], static_cast<unsigned>(j));
    if (E.is_zero()) return std::nullopt;
    auto f = poly_divide(N, E);
    if (!f || f->total_degree() > d) return std::nullopt;
    // acceptance: re-encode and check the weight against the distance
    long long w = 0;
    for (std::size_t i = 0; i < t; ++i) {
        if (!r[i]) {
            w += 1;
            continue;
        }
        if (restrict_to_hyperplane(*f, params.forms[i]) != *r[i]) w += 2;
    }
    if (w >= params.distance()) return std::nullopt;
    return f;
}
inline std::optional<MultiPoly> bw_decode_polyring(const std::vector<RingSymbol>& r,
                                                   const PolyRingRSParams& params, const PrimeField& F) {
    return bw_decode_polyring(std::span<const RingSymbol>(r), params, F);
}

}  // namespace capgap
