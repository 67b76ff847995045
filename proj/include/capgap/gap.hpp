#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "capgap/cap.hpp"  // binomial, Word
#include "capgap/gmd.hpp"
#include "capgap/linalg.hpp"
#include "capgap/poly.hpp"
#include "capgap/rs.hpp"

namespace capgap {

/// The unique common zero of m affine forms in m variables. A singular system
/// signals a general-position violation.
inline std::vector<Fp> intersect(std::span<const AffineForm> forms, const PrimeField& F) {
    if (forms.empty()) throw std::invalid_argument("intersect: no forms");
    const std::size_t m = forms[0].nvars();
    if (forms.size() != m) throw std::invalid_argument("intersect: need exactly m forms");
    FpMatrix A;
    std::vector<Fp> b;
    for (const auto& f : forms) {
        if (f.nvars() != m) throw std::invalid_argument("intersect: arity mismatch");
        A.push_back(f.coeffs);
        b.push_back(-f.constant);
    }
    auto x = solve_linear(std::move(A), std::move(b), F);
    if (!x) throw std::invalid_argument("intersect: singular system (hyperplanes not in general position)");
    return *x;
}

/// t affine hyperplanes in F^m in general position: every m of them meet in
/// exactly one point and no m+1 share a point. Checked exhaustively at
/// construction.
class HyperplaneFamily {
  public:
    HyperplaneFamily(const PrimeField& F, std::vector<AffineForm> forms,
                     std::optional<std::vector<Fp>> vandermonde_alphas = std::nullopt)
        : F_(F), forms_(std::move(forms)), alphas_(std::move(vandermonde_alphas)) {
        if (forms_.empty()) throw std::invalid_argument("HyperplaneFamily: empty");
        m_ = forms_[0].nvars();
        if (m_ == 0) throw std::invalid_argument("HyperplaneFamily: zero-dimensional");
        if (forms_.size() < m_) throw std::invalid_argument("HyperplaneFamily: need at least m hyperplanes");
        for (const auto& f : forms_) {
            if (f.nvars() != m_) throw std::invalid_argument("HyperplaneFamily: arity mismatch");
            if (f.is_constant()) throw std::invalid_argument("HyperplaneFamily: constant form");
        }
        verify_general_position();
    }

    const PrimeField& field() const noexcept { return F_; }
    std::size_t nvars() const noexcept { return m_; }
    std::size_t size() const noexcept { return forms_.size(); }
    const std::vector<AffineForm>& forms() const noexcept { return forms_; }
    const AffineForm& form(std::size_t i) const { return forms_.at(i); }
    const std::optional<std::vector<Fp>>& vandermonde_alphas() const noexcept { return alphas_; }

    std::vector<Fp> intersection(std::span<const int> subset) const {
        std::vector<AffineForm> sel;
        for (int i : subset) sel.push_back(forms_.at(static_cast<std::size_t>(i)));
        return intersect(sel, F_);
    }

  private:
    void verify_general_position() const {
        const std::size_t t = forms_.size();
        std::vector<int> idx(m_);
        for (std::size_t i = 0; i < m_; ++i) idx[i] = static_cast<int>(i);
        for (;;) {
            auto pt = intersection(idx);  // throws when singular
            for (std::size_t j = 0; j < t; ++j) {
                if (std::find(idx.begin(), idx.end(), static_cast<int>(j)) != idx.end()) continue;
                if (forms_[j].evaluate(pt).is_zero())
                    throw std::invalid_argument("HyperplaneFamily: m+1 hyperplanes share a point");
            }
            // next m-subset of [t]
            std::size_t k = m_;
            bool done = true;
            while (k-- > 0) {
                if (idx[k] + static_cast<int>(m_ - k) < static_cast<int>(t)) {
                    ++idx[k];
                    for (std::size_t s = k + 1; s < m_; ++s) idx[s] = idx[s - 1] + 1;
                    done = false;
                    break;
                }
            }
            if (done) break;
        }
    }

    PrimeField F_;
    std::size_t m_;
    std::vector<AffineForm> forms_;
    std::optional<std::vector<Fp>> alphas_;
};

/// The Vandermonde family: for each alpha the hyperplane
/// alpha^m - alpha^{m-1} X_1 + alpha^{m-2} X_2 - ... + (-1)^m X_m = 0.
/// The m-wise intersection of {L_alpha : alpha in J} has coordinates equal to
/// the elementary symmetric polynomials of J, with signs absorbed.
inline HyperplaneFamily vandermonde_family(const PrimeField& F, std::vector<Fp> alphas, std::size_t m) {
    if (alphas.size() < m) throw std::invalid_argument("vandermonde_family: need at least m alphas");
    for (std::size_t i = 0; i < alphas.size(); ++i)
        for (std::size_t j = i + 1; j < alphas.size(); ++j)
            if (alphas[i] == alphas[j]) throw std::invalid_argument("vandermonde_family: duplicate alphas");
    std::vector<AffineForm> forms;
    for (const auto& a : alphas) {
        AffineForm f;
        f.constant = a.pow(static_cast<u64>(m));
        for (std::size_t j = 1; j <= m; ++j) {
            Fp c = a.pow(static_cast<u64>(m - j));
            if (j % 2 == 1) c = -c;
            f.coeffs.push_back(c);
        }
        forms.push_back(std::move(f));
    }
    return HyperplaneFamily(F, std::move(forms), std::move(alphas));
}

/// All m-subsets of [t] in lexicographic order.
inline std::vector<std::vector<int>> subsets_lex(std::size_t t, std::size_t m) {
    std::vector<std::vector<int>> out;
    if (m > t) return out;
    std::vector<int> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = static_cast<int>(i);
    for (;;) {
        out.push_back(idx);
        std::size_t k = m;
        bool done = true;
        while (k-- > 0) {
            if (idx[k] + static_cast<int>(m - k) < static_cast<int>(t)) {
                ++idx[k];
                for (std::size_t s = k + 1; s < m; ++s) idx[s] = idx[s - 1] + 1;
                done = false;
                break;
            }
        }
        if (done) break;
    }
    return out;
}

/// Evaluation code on the m-wise intersection points of a hyperplane family.
/// Coordinates are indexed by the m-subsets of [t] in lexicographic order.
class GapCode {
  public:
    GapCode(HyperplaneFamily fam, int degree) : fam_(std::move(fam)), d_(degree) {
        if (d_ < 0) throw std::invalid_argument("GapCode: negative degree");
        if (fam_.size() < static_cast<std::size_t>(d_) + fam_.nvars())
            throw std::invalid_argument("GapCode: need t >= degree + m");
        subsets_ = subsets_lex(fam_.size(), fam_.nvars());
        for (std::size_t i = 0; i < subsets_.size(); ++i) {
            points_.push_back(fam_.intersection(subsets_[i]));
            pos_.emplace(subsets_[i], i);
        }
    }

    const HyperplaneFamily& family() const noexcept { return fam_; }
    const PrimeField& field() const noexcept { return fam_.field(); }
    std::size_t nvars() const noexcept { return fam_.nvars(); }
    std::size_t t() const noexcept { return fam_.size(); }
    int degree() const noexcept { return d_; }

    const std::vector<std::vector<int>>& subsets() const noexcept { return subsets_; }
    const std::vector<std::vector<Fp>>& points() const noexcept { return points_; }
    std::size_t block_length() const noexcept { return subsets_.size(); }
    u64 dimension() const { return binomial(static_cast<u64>(d_) + nvars(), nvars()); }
    u64 design_distance() const { return binomial(t() - static_cast<u64>(d_), nvars()); }

    std::size_t position(const std::vector<int>& subset) const {
        auto it = pos_.find(subset);
        if (it == pos_.end()) throw std::out_of_range("GapCode: unknown subset");
        return it->second;
    }

  private:
    HyperplaneFamily fam_;
    int d_;
    std::vector<std::vector<int>> subsets_;
    std::vector<std::vector<Fp>> points_;
    std::map<std::vector<int>, std::size_t> pos_;
};

inline Word gap_encode(const MultiPoly& f, const GapCode& code) {
    if (f.field() != code.field() || f.nvars() != code.nvars())
        throw std::invalid_argument("gap_encode: ring mismatch");
    if (f.total_degree() > code.degree()) throw std::invalid_argument("gap_encode: degree too high");
    Word out;
    out.reserve(code.block_length());
    for (const auto& x : code.points()) out.push_back(f.evaluate(x));
    return out;
}

/// Interpolation on a family with t = d + m exactly: the unique degree-d
/// polynomial matching all binom(d+m, m) values, built from the dual basis
/// P_x / P_x(x) with P_x the product of the forms avoiding x.
inline MultiPoly gap_interpolate(const std::vector<Fp>& values, const GapCode& code) {
    const std::size_t m = code.nvars();
    if (code.t() != static_cast<std::size_t>(code.degree()) + m)
        throw std::invalid_argument("gap_interpolate: requires t = degree + m");
    if (values.size() != code.block_length()) throw std::invalid_argument("gap_interpolate: length mismatch");
    const PrimeField& F = code.field();
    MultiPoly acc(F, m);
    for (std::size_t i = 0; i < code.block_length(); ++i) {
        if (values[i].is_zero()) continue;
        const auto& subset = code.subsets()[i];
        MultiPoly basis = MultiPoly::constant(F, m, 1);
        for (std::size_t j = 0; j < code.t(); ++j) {
            if (std::find(subset.begin(), subset.end(), static_cast<int>(j)) != subset.end()) continue;
            basis *= code.family().form(j).to_poly(F);
        }
        Fp denom = basis.evaluate(code.points()[i]);
        acc += basis * (values[i] * denom.inv());
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Coordinate normalization: express every hyperplane as X_m = L_i(X_1..X_{m-1})
// ---------------------------------------------------------------------------

namespace detail {

struct SolvedFamily {
    std::vector<AffineForm> lowered;          // L_i over m-1 variables
    std::optional<FpMatrix> transform;        // T with x = T x' when a change of basis was needed
    std::optional<FpMatrix> transform_inv;    // T^{-1}
};

inline FpMatrix matrix_inverse(const FpMatrix& T, const PrimeField& F) {
    const std::size_t n = T.size();
    FpMatrix A = T;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i].push_back(i == j ? F.one() : F.zero());
    auto piv = rref(A);
    if (piv.size() != n) throw std::invalid_argument("matrix_inverse: singular");
    FpMatrix inv(n, std::vector<Fp>(n, F.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = A[i][n + j];
    return inv;
}

/// Rewrite every form so its last coefficient is nonzero, changing basis when
/// necessary. For the Vandermonde family the last coefficient is (+-1) and no
/// change is needed.
inline SolvedFamily solve_for_last(const HyperplaneFamily& fam) {
    const PrimeField& F = fam.field();
    const std::size_t m = fam.nvars();
    const u64 p = F.modulus();
    SolvedFamily out;

    bool ok = true;
    for (const auto& f : fam.forms())
        if (f.coeffs[m - 1].is_zero()) ok = false;

    std::vector<AffineForm> forms = fam.forms();
    if (!ok) {
        // find u with a_i . u != 0 for every normal vector a_i
        std::vector<u64> u(m, 0);
        std::vector<Fp> uf;
        bool found = false;
        for (;;) {
            std::size_t i = 0;
            while (i < m && ++u[i] == p) u[i++] = 0;
            if (i == m) break;
            uf.clear();
            for (u64 c : u) uf.push_back(F.from_raw(c));
            bool good = true;
            for (const auto& f : fam.forms()) {
                Fp dot = F.zero();
                for (std::size_t j = 0; j < m; ++j) dot += f.coeffs[j] * uf[j];
                if (dot.is_zero()) {
                    good = false;
                    break;
                }
            }
            if (good) {
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("solve_for_last: field too small for a normalizing direction");
        // T: identity columns except the last, which is u; pick a row k with
        // u_k != 0 and drop e_k so T stays invertible
        std::size_t k = 0;
        while (uf[k].is_zero()) ++k;
        FpMatrix T(m, std::vector<Fp>(m, F.zero()));
        std::size_t col = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == k) continue;
            T[i][col] = F.one();
            ++col;
        }
        for (std::size_t i = 0; i < m; ++i) T[i][m - 1] = uf[i];
        out.transform = T;
        out.transform_inv = matrix_inverse(T, F);
        // transformed normal vectors: a' = T^T a (constant unchanged)
        for (auto& f : forms) {
            std::vector<Fp> a2(m, F.zero());
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t i = 0; i < m; ++i) a2[j] += T[i][j] * f.coeffs[i];
            f.coeffs = std::move(a2);
        }
    }

    for (const auto& f : forms) {
        Fp inv = (-f.coeffs[m - 1]).inv();
        AffineForm L;
        L.constant = f.constant * inv;
        for (std::size_t j = 0; j + 1 < m; ++j) L.coeffs.push_back(f.coeffs[j] * inv);
        out.lowered.push_back(std::move(L));
    }
    return out;
}

/// Map a polynomial decoded in normalized coordinates back: f(x) = f'(T^{-1} x).
inline MultiPoly untransform(const MultiPoly& fprime, const std::optional<FpMatrix>& Tinv) {
    if (!Tinv) return fprime;
    const PrimeField& F = fprime.field();
    const std::size_t m = fprime.nvars();
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < m; ++i) {
        MultiPoly img(F, m);
        for (std::size_t j = 0; j < m; ++j)
            if (!(*Tinv)[i][j].is_zero()) img += MultiPoly::variable(F, m, j) * (*Tinv)[i][j];
        images.push_back(std::move(img));
    }
    return substitute(fprime, images);
}

}  // namespace detail

/// The induced (m-1)-dimensional family on hyperplane i: the forms
/// L_j - L_i for j != i, living in the coordinates (X_1..X_{m-1}) of H_i.
/// `source[k]` is the index j behind the k-th form.
struct FamilyRestriction {
    HyperplaneFamily family;
    std::vector<int> source;
    AffineForm lift;  // L_i itself: a point a of H_i sits at (a, lift(a)) in normalized coordinates
    std::optional<FpMatrix> transform;  // basis change applied to the ambient family first, if any
};

inline FamilyRestriction restrict_family_to_hyperplane(const HyperplaneFamily& fam, std::size_t i) {
    const PrimeField& F = fam.field();
    const std::size_t m = fam.nvars();
    if (m < 2) throw std::invalid_argument("restrict_family_to_hyperplane: need m >= 2");
    if (i >= fam.size()) throw std::invalid_argument("restrict_family_to_hyperplane: index out of range");
    auto solved = detail::solve_for_last(fam);
    std::vector<AffineForm> sub;
    std::vector<int> source;
    for (std::size_t j = 0; j < fam.size(); ++j) {
        if (j == i) continue;
        AffineForm g;
        g.constant = solved.lowered[j].constant - solved.lowered[i].constant;
        for (std::size_t k = 0; k + 1 < m; ++k)
            g.coeffs.push_back(solved.lowered[j].coeffs[k] - solved.lowered[i].coeffs[k]);
        sub.push_back(std::move(g));
        source.push_back(static_cast<int>(j));
    }
    return FamilyRestriction{HyperplaneFamily(F, std::move(sub)), std::move(source), solved.lowered[i],
                             solved.transform};
}

// ---------------------------------------------------------------------------
// Decoding
// ---------------------------------------------------------------------------

namespace detail {

/// Shared skeleton of the geometric decoders: the word, viewed through the
/// intermediate code that repeats each coordinate once per incident
/// hyperplane, is a concatenated code with outer Reed-Solomon over
/// F_p[X_1..X_{m-1}] and inner codes decoded by `inner`. Erasure marks are
/// copied into every replica of a coordinate.
template <class InnerDecoder>
std::optional<MultiPoly> gap_decode_concatenated(const Word& r, const GapCode& code,
                                                 const std::vector<AffineForm>& lowered, InnerDecoder inner) {
    const PrimeField& F = code.field();
    const std::size_t m = code.nvars();
    const std::size_t t = code.t();
    const int d = code.degree();

    std::vector<std::vector<Symbol>> blocks(t);
    for (std::size_t i = 0; i < t; ++i) {
        std::vector<int> others;
        for (std::size_t j = 0; j < t; ++j)
            if (j != i) others.push_back(static_cast<int>(j));
        for (const auto& sub : subsets_lex(t - 1, m - 1)) {
            std::vector<int> big;
            for (int u : sub) big.push_back(others[static_cast<std::size_t>(u)]);
            big.push_back(static_cast<int>(i));
            std::sort(big.begin(), big.end());
            blocks[i].push_back(r[code.position(big)]);
        }
    }

    PolyRingRSParams outer(m - 1, d, lowered);
    ConcatenationSpec<MultiPoly, MultiPoly> spec;
    spec.outer_length = t;
    spec.outer_distance = outer.distance();
    spec.inner_distances.assign(t, static_cast<long long>(binomial(t - 1 - static_cast<u64>(d), m - 1)));
    spec.inner_decode = inner;
    spec.outer_decode = [&](const std::vector<std::optional<MultiPoly>>& z) {
        return bw_decode_polyring(std::vector<RingSymbol>(z.begin(), z.end()), outer, F);
    };
    spec.outer_encode = [&](const MultiPoly& f) {
        std::vector<MultiPoly> cw;
        cw.reserve(t);
        for (const auto& L : lowered) cw.push_back(restrict_to_hyperplane(f, L));
        return cw;
    };
    return gmd_decode(blocks, spec);
}

}  // namespace detail

/// Unique decoding of a bivariate geometric code from errors and erasures of
/// weight below binom(t-d, 2).
inline std::optional<MultiPoly> gap_decode_bivariate(const Word& r, const GapCode& code) {
    if (code.nvars() != 2) throw std::invalid_argument("gap_decode_bivariate: code is not bivariate");
    if (r.size() != code.block_length()) throw std::invalid_argument("gap_decode_bivariate: length mismatch");
    const std::size_t t = code.t();
    const int d = code.degree();
    auto solved = detail::solve_for_last(code.family());
    const auto& lowered = solved.lowered;

    // inner code i: plain Reed-Solomon on the first coordinates of the
    // intersection points with the other lines
    std::vector<std::vector<Fp>> inner_points(t);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) {
            if (j == i) continue;
            Fp denom = lowered[i].coeffs[0] - lowered[j].coeffs[0];
            inner_points[i].push_back((lowered[j].constant - lowered[i].constant) * denom.inv());
        }

    auto inner = [&](std::size_t i, std::span<const Symbol> block) -> std::optional<InnerDecoding<MultiPoly>> {
        RSParams params(d, inner_points[i]);
        auto g = bw_decode(block, params);
        if (!g) return std::nullopt;
        return InnerDecoding<MultiPoly>{to_multipoly(*g), rs_encode(*g, params)};
    };
    auto f = detail::gap_decode_concatenated(r, code, lowered, inner);
    if (!f) return std::nullopt;
    return detail::untransform(*f, solved.transform_inv);
}

/// Unique decoding of an m-variate geometric code from errors and erasures of
/// weight below binom(t-d, m); recurses through the hyperplane restrictions
/// and bottoms out in the bivariate decoder.
inline std::optional<MultiPoly> gap_decode(const Word& r, const GapCode& code) {
    const std::size_t m = code.nvars();
    if (r.size() != code.block_length()) throw std::invalid_argument("gap_decode: length mismatch");
    if (m == 1) {
        // each "hyperplane" is a point of F; the code is Reed-Solomon there
        std::vector<Fp> roots;
        for (const auto& f : code.family().forms()) roots.push_back(-f.constant / f.coeffs[0]);
        auto g = bw_decode(r, RSParams(code.degree(), roots));
        if (!g) return std::nullopt;
        return to_multipoly(*g);
    }
    if (m == 2) return gap_decode_bivariate(r, code);

    auto solved = detail::solve_for_last(code.family());
    const auto& lowered = solved.lowered;
    const std::size_t t = code.t();
    const int d = code.degree();

    // sub-family and sub-code for every block, built once
    std::vector<std::optional<GapCode>> subcodes(t);
    for (std::size_t i = 0; i < t; ++i) {
        std::vector<AffineForm> sub;
        for (std::size_t j = 0; j < t; ++j) {
            if (j == i) continue;
            AffineForm g;
            g.constant = lowered[j].constant - lowered[i].constant;
            for (std::size_t k = 0; k + 1 < m; ++k) g.coeffs.push_back(lowered[j].coeffs[k] - lowered[i].coeffs[k]);
            sub.push_back(std::move(g));
        }
        subcodes[i].emplace(HyperplaneFamily(code.field(), std::move(sub)), d);
    }

    auto inner = [&](std::size_t i, std::span<const Symbol> block) -> std::optional<InnerDecoding<MultiPoly>> {
        auto g = gap_decode(Word(block.begin(), block.end()), *subcodes[i]);
        if (!g) return std::nullopt;
        Word enc = gap_encode(*g, *subcodes[i]);
        std::vector<Fp> cw;
        cw.reserve(enc.size());
        for (const auto& s : enc) cw.push_back(*s);
        return InnerDecoding<MultiPoly>{*g, std::move(cw)};
    };
    auto f = detail::gap_decode_concatenated(r, code, lowered, inner);
    if (!f) return std::nullopt;
    return detail::untransform(*f, solved.transform_inv);
}

// ---------------------------------------------------------------------------
// Lines and planes of the intersection geometry
// ---------------------------------------------------------------------------

/// A line of the configuration: the intersection of m-1 hyperplanes. Member
/// points are listed by the index of the extra hyperplane through them,
/// ascending, each with its parameter on the stored (base, dir) chart.
struct GapLine {
    std::vector<int> defining;
    std::vector<Fp> base, dir;
    std::vector<int> through;        // the omitted hyperplane index per member point
    std::vector<Fp> params;          // parameter of each member point
    std::vector<std::size_t> point_pos;  // position of each member point in code order
};

inline std::vector<GapLine> enumerate_lines(const GapCode& code) {
    const PrimeField& F = code.field();
    const std::size_t m = code.nvars();
    const std::size_t t = code.t();
    std::vector<GapLine> lines;
    if (m < 2) throw std::invalid_argument("enumerate_lines: need m >= 2");
    for (const auto& J : subsets_lex(t, m - 1)) {
        GapLine ln;
        ln.defining = J;
        FpMatrix A;
        std::vector<Fp> b;
        for (int j : J) {
            A.push_back(code.family().form(static_cast<std::size_t>(j)).coeffs);
            b.push_back(-code.family().form(static_cast<std::size_t>(j)).constant);
        }
        auto sol = solve_affine(std::move(A), std::move(b), F);
        if (!sol || sol->directions.size() != 1)
            throw std::logic_error("enumerate_lines: intersection is not a line");
        std::vector<Fp> base = sol->base;
        std::vector<Fp> dir = sol->directions[0];
        // deterministic chart: scale so the first nonzero direction entry is 1
        std::size_t k = 0;
        while (dir[k].is_zero()) ++k;
        Fp scale = dir[k].inv();
        for (auto& c : dir) c *= scale;
        ln.base = base;
        ln.dir = dir;
        for (std::size_t j = 0; j < t; ++j) {
            if (std::find(J.begin(), J.end(), static_cast<int>(j)) != J.end()) continue;
            std::vector<int> subset = J;
            subset.push_back(static_cast<int>(j));
            std::sort(subset.begin(), subset.end());
            std::size_t pos = code.position(subset);
            const auto& pt = code.points()[pos];
            Fp z = (pt[k] - base[k]);  // dir[k] == 1
            ln.through.push_back(static_cast<int>(j));
            ln.params.push_back(z);
            ln.point_pos.push_back(pos);
        }
        lines.push_back(std::move(ln));
    }
    return lines;
}

/// A plane of the configuration: the intersection of m-2 hyperplanes, carrying
/// the induced two-dimensional family cut out by the remaining hyperplanes.
struct GapPlane {
    std::vector<int> defining;
    std::vector<Fp> base, dir1, dir2;
    std::vector<int> others;      // ambient hyperplane index per induced form
    std::vector<AffineForm> induced_forms;  // in the (z1, z2) chart, aligned with others
};

inline std::vector<GapPlane> enumerate_planes(const GapCode& code) {
    const PrimeField& F = code.field();
    const std::size_t m = code.nvars();
    const std::size_t t = code.t();
    if (m < 2) throw std::invalid_argument("enumerate_planes: need m >= 2");
    std::vector<GapPlane> planes;
    for (const auto& K : subsets_lex(t, m - 2)) {
        GapPlane pl;
        pl.defining = K;
        if (m == 2) {
            pl.base = {F.zero(), F.zero()};
            pl.dir1 = {F.one(), F.zero()};
            pl.dir2 = {F.zero(), F.one()};
        } else {
            FpMatrix A;
            std::vector<Fp> b;
            for (int j : K) {
                A.push_back(code.family().form(static_cast<std::size_t>(j)).coeffs);
                b.push_back(-code.family().form(static_cast<std::size_t>(j)).constant);
            }
            auto sol = solve_affine(std::move(A), std::move(b), F);
            if (!sol || sol->directions.size() != 2)
                throw std::logic_error("enumerate_planes: intersection is not a plane");
            pl.base = sol->base;
            pl.dir1 = sol->directions[0];
            pl.dir2 = sol->directions[1];
        }
        for (std::size_t j = 0; j < t; ++j) {
            if (std::find(K.begin(), K.end(), static_cast<int>(j)) != K.end()) continue;
            const AffineForm& Lj = code.family().form(j);
            AffineForm g;
            g.constant = Lj.evaluate(pl.base);
            Fp c1 = F.zero(), c2 = F.zero();
            for (std::size_t i = 0; i < m; ++i) {
                c1 += Lj.coeffs[i] * pl.dir1[i];
                c2 += Lj.coeffs[i] * pl.dir2[i];
            }
            g.coeffs = {c1, c2};
            pl.others.push_back(static_cast<int>(j));
            pl.induced_forms.push_back(std::move(g));
        }
        planes.push_back(std::move(pl));
    }
    return planes;
}

}  // namespace capgap
