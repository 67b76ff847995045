#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "capgap/rs.hpp"

namespace capgap {

/// Result of one inner decode: the outer symbol carried by the block and the
/// decoded inner codeword (used to measure the block's confidence).
template <class OuterSym>
struct InnerDecoding {
    OuterSym symbol;
    std::vector<Fp> codeword;
};

/// A concatenated code with possibly unequal inner distances, described
/// through decoder callbacks. Inner decoders must decode any pattern of
/// weight < d_i; the outer decoder must decode errors and erasures of weight
/// < D. Blocks may have different lengths, including zero.
template <class OuterMsg, class OuterSym>
struct ConcatenationSpec {
    std::size_t outer_length = 0;            // N
    long long outer_distance = 0;            // D
    std::vector<long long> inner_distances;  // d_1..d_N

    std::function<std::optional<InnerDecoding<OuterSym>>(std::size_t, std::span<const Symbol>)> inner_decode;
    std::function<std::optional<OuterMsg>(const std::vector<std::optional<OuterSym>>&)> outer_decode;
    std::function<std::vector<OuterSym>(const OuterMsg&)> outer_encode;

    /// Design distance: the sum of the D smallest inner distances.
    long long design_distance() const {
        if (inner_distances.size() != outer_length)
            throw std::invalid_argument("ConcatenationSpec: inner distance count mismatch");
        if (outer_distance < 0 || outer_distance > static_cast<long long>(outer_length))
            throw std::invalid_argument("ConcatenationSpec: bad outer distance");
        std::vector<long long> d = inner_distances;
        std::sort(d.begin(), d.end());
        long long s = 0;
        for (long long i = 0; i < outer_distance; ++i) s += d[static_cast<std::size_t>(i)];
        return s;
    }
};

/// Generalized minimum distance decoding with per-block distances. Each inner
/// decoder runs once; the confidence weight of block i is d_i - 2x_i - s_i
/// (mismatches of the decoded inner codeword, erasures in the block). Every
/// achieved weight is tried as an erasure threshold, in decreasing order, and
/// a candidate outer codeword is accepted when the blockwise certified weight
/// lower bound stays below the design distance:
///   - d_i = 0 blocks certify nothing;
///   - a failed inner decode certifies weight >= d_i;
///   - a block whose decoded symbol matches the candidate certifies 2x_i+s_i;
///   - a mismatching block certifies 2d_i - 2x_i - s_i.
/// Within the guaranteed radius the transmitted codeword is the unique one
/// passing this check.
template <class OuterMsg, class OuterSym>
std::optional<OuterMsg> gmd_decode(std::span<const std::vector<Symbol>> blocks,
                                   const ConcatenationSpec<OuterMsg, OuterSym>& spec) {
    const std::size_t N = spec.outer_length;
    if (blocks.size() != N) throw std::invalid_argument("gmd_decode: block count mismatch");
    const long long design = spec.design_distance();

    struct BlockState {
        std::optional<InnerDecoding<OuterSym>> dec;
        long long erasures = 0;
        long long mismatches = 0;  // x_i, defined when dec
        long long weight = 0;      // w_i
    };
    std::vector<BlockState> st(N);
    for (std::size_t i = 0; i < N; ++i) {
        const auto& b = blocks[i];
        auto& s = st[i];
        for (const auto& sym : b)
            if (!sym) ++s.erasures;
        s.dec = spec.inner_decode(i, b);
        const long long d_i = spec.inner_distances[i];
        if (s.dec) {
            if (s.dec->codeword.size() != b.size())
                throw std::logic_error("gmd_decode: inner codeword length mismatch");
            for (std::size_t j = 0; j < b.size(); ++j)
                if (b[j] && *b[j] != s.dec->codeword[j]) ++s.mismatches;
            // the certified weights below assume bounded-distance inner
            // decoders; an answer at weight >= d_i counts as a failure
            if (2 * s.mismatches + s.erasures >= d_i) s.dec.reset();
        }
        if (s.dec)
            s.weight = d_i - 2 * s.mismatches - s.erasures;
        else
            s.weight = -d_i - s.erasures;
    }

    std::vector<long long> thresholds;
    for (const auto& s : st) thresholds.push_back(s.weight);
    std::sort(thresholds.rbegin(), thresholds.rend());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    for (long long t : thresholds) {
        std::vector<std::optional<OuterSym>> z(N);
        for (std::size_t i = 0; i < N; ++i)
            if (st[i].dec && st[i].weight >= t) z[i] = st[i].dec->symbol;
        auto candidate = spec.outer_decode(z);
        if (!candidate) continue;
        auto outer_cw = spec.outer_encode(*candidate);
        if (outer_cw.size() != N) throw std::logic_error("gmd_decode: outer codeword length mismatch");
        long long certified = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const long long d_i = spec.inner_distances[i];
            if (d_i == 0) continue;
            if (!st[i].dec)
                certified += d_i;
            else if (st[i].dec->symbol == outer_cw[i])
                certified += 2 * st[i].mismatches + st[i].erasures;
            else
                certified += 2 * d_i - 2 * st[i].mismatches - st[i].erasures;
        }
        if (certified < design) return candidate;
    }
    return std::nullopt;
}

template <class OuterMsg, class OuterSym>
std::optional<OuterMsg> gmd_decode(const std::vector<std::vector<Symbol>>& blocks,
                                   const ConcatenationSpec<OuterMsg, OuterSym>& spec) {
    return gmd_decode(std::span<const std::vector<Symbol>>(blocks), spec);
}

}  // namespace capgap
