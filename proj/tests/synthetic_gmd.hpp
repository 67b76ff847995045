#pragma once

// Synthetic concatenated code used to exercise the GMD engine directly:
// outer RS of degree outer_deg on points 0..N-1; inner code i embeds a symbol
// a as the evaluations of a * V_i(Z) on points 0..n_i-1, where V_i vanishes on
// the first k_i of them. Inner distance: n_i - k_i.

#include <utility>
#include <vector>

#include "capgap/gmd.hpp"

namespace capgap::testsupport {

struct SyntheticConcatenation {
    PrimeField F;
    int outer_deg;
    std::vector<std::pair<unsigned, unsigned>> inner;  // (n_i, k_i)

    SyntheticConcatenation(u64 p, int d, std::vector<std::pair<unsigned, unsigned>> in)
        : F(p), outer_deg(d), inner(std::move(in)) {}

    std::size_t N() const { return inner.size(); }

    RSParams outer_params() const {
        std::vector<Fp> pts;
        for (std::size_t i = 0; i < N(); ++i) pts.push_back(F(static_cast<i64>(i)));
        return RSParams(outer_deg, pts);
    }

    UniPoly vanisher(std::size_t i) const {
        UniPoly v = UniPoly::constant(F, F.one());
        for (unsigned j = 0; j < inner[i].second; ++j) v *= UniPoly(F, {-F(static_cast<i64>(j)), F.one()});
        return v;
    }

    RSParams inner_params(std::size_t i) const {
        std::vector<Fp> pts;
        for (unsigned j = 0; j < inner[i].first; ++j) pts.push_back(F(static_cast<i64>(j)));
        return RSParams(static_cast<int>(inner[i].second), pts);
    }

    std::vector<Fp> inner_encode(std::size_t i, const Fp& a) const {
        return rs_encode(vanisher(i) * a, inner_params(i));
    }

    std::vector<std::vector<Symbol>> encode(const UniPoly& msg) const {
        auto outer = rs_encode(msg, outer_params());
        std::vector<std::vector<Symbol>> blocks;
        for (std::size_t i = 0; i < N(); ++i) {
            auto cw = inner_encode(i, outer[i]);
            blocks.emplace_back(cw.begin(), cw.end());
        }
        return blocks;
    }

    ConcatenationSpec<UniPoly, Fp> spec() const {
        ConcatenationSpec<UniPoly, Fp> s;
        s.outer_length = N();
        s.outer_distance = outer_params().distance();
        for (std::size_t i = 0; i < N(); ++i)
            s.inner_distances.push_back(static_cast<long long>(inner[i].first) - inner[i].second);
        s.inner_decode = [this](std::size_t i, std::span<const Symbol> block) -> std::optional<InnerDecoding<Fp>> {
            auto params = inner_params(i);
            auto g = bw_decode(block, params);
            if (!g) return std::nullopt;
            auto q = divrem(*g, vanisher(i));
            if (!q.second.is_zero() || q.first.degree() > 0) return std::nullopt;
            return InnerDecoding<Fp>{q.first.coeff(0), rs_encode(*g, params)};
        };
        s.outer_decode = [this](const std::vector<std::optional<Fp>>& z) { return bw_decode(z, outer_params()); };
        s.outer_encode = [this](const UniPoly& m) { return rs_encode(m, outer_params()); };
        return s;
    }
};

}  // namespace capgap::testsupport
