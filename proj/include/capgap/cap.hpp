#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "capgap/gmd.hpp"
#include "capgap/poly.hpp"
#include "capgap/rs.hpp"

namespace capgap {

inline u64 binomial(u64 n, u64 k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    u128 r = 1;
    for (u64 i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    if (r > ~0ull) throw std::overflow_error("binomial: overflow");
    return static_cast<u64>(r);
}

/// Evaluation code on a combinatorial simplex: messages are m-variate
/// polynomials of total degree <= d, evaluated at every point
/// (a_{x_1}, ..., a_{x_m}) with x_1 + ... + x_m < l, for an ordered label set
/// A = {a_0, ..., a_{l-1}}. Codeword coordinates follow the lexicographic
/// order of the index vectors x.
class CapCode {
  public:
    CapCode(const PrimeField& F, std::size_t m, int degree, std::vector<Fp> labels)
        : F_(F), m_(m), d_(degree), labels_(std::move(labels)) {
        if (m_ == 0) throw std::invalid_argument("CapCode: need at least one variable");
        if (d_ < 0) throw std::invalid_argument("CapCode: negative degree");
        if (labels_.size() <= static_cast<std::size_t>(d_))
            throw std::invalid_argument("CapCode: need more labels than the degree");
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i].modulus() != F_.modulus()) throw std::invalid_argument("CapCode: label field mismatch");
            for (std::size_t j = i + 1; j < labels_.size(); ++j)
                if (labels_[i] == labels_[j]) throw std::invalid_argument("CapCode: labels not distinct");
        }
        build_domain();
    }

    static CapCode with_default_labels(const PrimeField& F, std::size_t m, int degree, unsigned ell) {
        if (F.modulus() < ell) throw std::invalid_argument("CapCode: field too small for labels 0..l-1");
        std::vector<Fp> lab;
        for (unsigned k = 0; k < ell; ++k) lab.push_back(F(static_cast<i64>(k)));
        return CapCode(F, m, degree, std::move(lab));
    }

    const PrimeField& field() const noexcept { return F_; }
    std::size_t nvars() const noexcept { return m_; }
    int degree() const noexcept { return d_; }
    unsigned ell() const noexcept { return static_cast<unsigned>(labels_.size()); }
    const std::vector<Fp>& labels() const noexcept { return labels_; }

    const std::vector<Exponents>& domain() const noexcept { return domain_; }
    std::size_t block_length() const noexcept { return domain_.size(); }
    u64 dimension() const { return binomial(static_cast<u64>(d_) + m_, m_); }
    u64 design_distance() const { return binomial(ell() - d_ + m_ - 1, m_); }

    std::vector<Fp> point(const Exponents& idx) const {
        std::vector<Fp> x;
        x.reserve(m_);
        for (unsigned c : idx) x.push_back(labels_.at(c));
        return x;
    }

    std::size_t position(const Exponents& idx) const {
        auto it = pos_.find(idx);
        if (it == pos_.end()) throw std::out_of_range("CapCode: index vector outside the simplex");
        return it->second;
    }

  private:
    void build_domain() {
        const unsigned l = ell();
        Exponents cur(m_, 0);
        for (;;) {
            if (exponents_degree(cur) < l) {
                domain_.push_back(cur);
                pos_.emplace(cur, domain_.size() - 1);
            }
            // next vector in lex order over {0..l-1}^m, pruning by degree
            std::size_t i = m_;
            bool done = true;
            while (i-- > 0) {
                if (++cur[i] < l) {
                    done = false;
                    break;
                }
                cur[i] = 0;
            }
            if (done) break;
        }
    }

    PrimeField F_;
    std::size_t m_;
    int d_;
    std::vector<Fp> labels_;
    std::vector<Exponents> domain_;
    std::map<Exponents, std::size_t> pos_;
};

using Word = std::vector<Symbol>;

inline Word cap_encode(const MultiPoly& f, const CapCode& code) {
    if (f.field() != code.field() || f.nvars() != code.nvars())
        throw std::invalid_argument("cap_encode: ring mismatch");
    if (f.total_degree() > code.degree()) throw std::invalid_argument("cap_encode: degree too high");
    Word out;
    out.reserve(code.block_length());
    for (const auto& idx : code.domain()) out.push_back(f.evaluate(code.point(idx)));
    return out;
}

namespace detail {

/// One peeling stage: view the word as a concatenated encoding of the
/// coefficient polynomial c_v attached to the current top monomial
/// X_1^{v_1}...X_{m-1}^{v_{m-1}} (the last variable indexes outer blocks),
/// and recover c_v with the uneven GMD decoder.
std::optional<UniPoly> cap_stage(const Word& r, const CapCode& code, const Exponents& v);

/// Full recursive decode starting at monomial v; every coefficient beyond v
/// in the graded-lex order must be zero in the transmitted codeword.
inline std::optional<MultiPoly> cap_decode_from(const Word& r, const CapCode& code, Exponents v) {
    const PrimeField& F = code.field();
    const std::size_t m = code.nvars();
    if (r.size() != code.block_length()) throw std::invalid_argument("cap decode: word length mismatch");
    if (m == 1) {
        RSParams params(code.degree(), code.labels());
        auto g = bw_decode(r, params);
        if (!g) return std::nullopt;
        return to_multipoly(*g);
    }
    Word cur = r;
    MultiPoly result(F, m);
    std::optional<Exponents> vv = std::move(v);
    while (vv) {
        auto c = cap_stage(cur, code, *vv);
        if (!c) return std::nullopt;
        // accumulate c_v(X_m) * X^v and peel its evaluations off the word
        for (std::size_t k = 0; k < c->coeffs().size(); ++k) {
            if (c->coeffs()[k].is_zero()) continue;
            Exponents e = *vv;
            e.push_back(static_cast<unsigned>(k));
            result.add_term(e, c->coeffs()[k]);
        }
        for (std::size_t pos = 0; pos < cur.size(); ++pos) {
            if (!cur[pos]) continue;
            const Exponents& idx = code.domain()[pos];
            Fp mono = F.one();
            for (std::size_t i = 0; i + 1 < m; ++i)
                if ((*vv)[i]) mono *= code.labels()[idx[i]].pow((*vv)[i]);
            cur[pos] = *cur[pos] - c->evaluate(code.labels()[idx[m - 1]]) * mono;
        }
        vv = graded_lex_prev(*vv);
    }
    return result;
}

inline std::optional<UniPoly> cap_stage(const Word& r, const CapCode& code, const Exponents& v) {
    const PrimeField& F = code.field();
    const std::size_t m = code.nvars();
    const unsigned l = code.ell();
    const int k = static_cast<int>(exponents_degree(v));
    if (v.size() != m - 1 || k > code.degree())
        throw std::invalid_argument("cap_stage: bad stage monomial");

    // block i collects the coordinates with last index x_m = i, in the order
    // of the (m-1)-variable sub-simplex of side l - i
    std::vector<std::vector<Symbol>> blocks(l);
    std::vector<std::vector<Exponents>> block_idx(l);
    for (unsigned i = 0; i < l; ++i) {
        Exponents sub(m - 1, 0);
        for (;;) {
            if (exponents_degree(sub) < l - i) {
                Exponents full = sub;
                full.push_back(i);
                blocks[i].push_back(r[code.position(full)]);
                block_idx[i].push_back(sub);
            }
            std::size_t j = m - 1;
            bool done = true;
            while (j-- > 0) {
                if (++sub[j] < l) {
                    done = false;
                    break;
                }
                sub[j] = 0;
            }
            if (done) break;
        }
    }

    ConcatenationSpec<UniPoly, Fp> spec;
    spec.outer_length = l;
    spec.outer_distance = static_cast<long long>(l) - (code.degree() - k);
    for (unsigned i = 0; i < l; ++i) {
        long long di = static_cast<long long>(l) - i - k;  // |Simplex(m-1, l-i-k)|
        spec.inner_distances.push_back(di >= 1 ? static_cast<long long>(binomial(static_cast<u64>(di) + m - 2, m - 1))
                                               : 0);
    }
    spec.inner_decode = [&](std::size_t i, std::span<const Symbol> block) -> std::optional<InnerDecoding<Fp>> {
        const unsigned side = l - static_cast<unsigned>(i);
        if (side <= static_cast<unsigned>(k)) return std::nullopt;  // zero-distance block
        std::vector<Fp> prefix(code.labels().begin(), code.labels().begin() + side);
        if (m - 1 == 1) {
            RSParams params(k, prefix);
            auto g = bw_decode(block, params);
            if (!g) return std::nullopt;
            return InnerDecoding<Fp>{g->coeff(static_cast<std::size_t>(k)), rs_encode(*g, params)};
        }
        CapCode sub(F, m - 1, k, prefix);
        Exponents entry(m - 2, 0);
        entry[0] = static_cast<unsigned>(k);
        auto g = cap_decode_from(Word(block.begin(), block.end()), sub, entry);
        if (!g) return std::nullopt;
        std::vector<Fp> cw;
        cw.reserve(block.size());
        for (const auto& idx : sub.domain()) cw.push_back(g->evaluate(sub.point(idx)));
        return InnerDecoding<Fp>{coeff_of(*g, v), std::move(cw)};
    };
    RSParams outer(code.degree() - k, code.labels());
    spec.outer_decode = [&](const std::vector<std::optional<Fp>>& z) { return bw_decode(z, outer); };
    spec.outer_encode = [&](const UniPoly& c) { return rs_encode(c, outer); };
    return gmd_decode(blocks, spec);
}

}  // namespace detail

/// Recover the coefficient list [c_0, ..., c_k] of a bivariate codeword
/// f = sum c_i(X_1) X_2^i whose X_2-degree is at most k, from any error and
/// erasure pattern of weight below binom(l - d + 1, 2). The simplex is
/// symmetric in its coordinates, so the word is transposed to put the
/// block-indexing variable last and the generic stage machinery applies.
inline std::optional<std::vector<UniPoly>> cap_decode_bivariate(const Word& r, const CapCode& code, int k) {
    if (code.nvars() != 2) throw std::invalid_argument("cap_decode_bivariate: code is not bivariate");
    if (k < 0 || k > code.degree()) throw std::invalid_argument("cap_decode_bivariate: bad stage degree");
    if (r.size() != code.block_length()) throw std::invalid_argument("cap_decode_bivariate: word length mismatch");
    Word cur(r.size());
    for (std::size_t pos = 0; pos < r.size(); ++pos) {
        const Exponents& idx = code.domain()[pos];
        cur[code.position({idx[1], idx[0]})] = r[pos];
    }
    std::vector<UniPoly> coeffs(static_cast<std::size_t>(k) + 1, UniPoly(code.field()));
    for (int j = k; j >= 0; --j) {
        auto c = detail::cap_stage(cur, code, {static_cast<unsigned>(j)});
        if (!c) return std::nullopt;
        coeffs[static_cast<std::size_t>(j)] = *c;
        for (std::size_t pos = 0; pos < cur.size(); ++pos) {
            if (!cur[pos]) continue;
            const Exponents& idx = code.domain()[pos];  // transposed coordinates
            cur[pos] = *cur[pos] -
                       c->evaluate(code.labels()[idx[1]]) * code.labels()[idx[0]].pow(static_cast<u64>(j));
        }
    }
    return coeffs;
}

/// Unique decoding on the m-dimensional simplex, peeling monomials in
/// descending graded-lex order starting from X_1^d. Exact for every error and
/// erasure pattern of weight below the design distance.
inline std::optional<MultiPoly> cap_decode_simplex(const Word& r, const CapCode& code) {
    if (code.nvars() == 1) return detail::cap_decode_from(r, code, Exponents{});
    Exponents entry(code.nvars() - 1, 0);
    entry[0] = static_cast<unsigned>(code.degree());
    return detail::cap_decode_from(r, code, entry);
}

/// Stage-restricted variant: assumes every coefficient beyond v (graded-lex)
/// is zero in the transmitted codeword.
inline std::optional<MultiPoly> cap_decode_simplex(const Word& r, const CapCode& code, const Exponents& v) {
    return detail::cap_decode_from(r, code, v);
}

}  // namespace capgap
