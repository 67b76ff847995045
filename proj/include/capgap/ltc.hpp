#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "capgap/gap.hpp"

namespace capgap {

/// Outcome of a local test run: an exact incidence tally or a sampled one.
struct TestReport {
    enum class Mode { line_point, plane_point };
    Mode mode = Mode::line_point;
    bool exact = true;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t rejected = 0;
    std::uint64_t total = 0;
    std::vector<std::uint64_t> per_object_rejections;  // per line/plane, exact mode only

    double rejection_probability() const {
        return total == 0 ? 0.0 : static_cast<double>(rejected) / static_cast<double>(total);
    }
};

/// A closest degree-d polynomial to a word on a line, as a total function.
/// Unique decoding first; exhaustive search with a deterministic tie rule
/// (lexicographically least coefficient vector) when the message space is
/// small; otherwise interpolation through the first d+1 coordinates.
inline UniPoly nearest_line_codeword(std::span<const Fp> values, std::span<const Fp> points, int d,
                                     const PrimeField& F) {
    if (values.size() != points.size()) throw std::invalid_argument("nearest_line_codeword: length mismatch");
    if (points.size() <= static_cast<std::size_t>(d))
        throw std::invalid_argument("nearest_line_codeword: need more points than the degree");
    RSParams params(d, std::vector<Fp>(points.begin(), points.end()));
    std::vector<Symbol> syms(values.begin(), values.end());
    if (auto g = bw_decode(syms, params)) return *g;

    double count = 1;
    for (int i = 0; i <= d; ++i) count *= static_cast<double>(F.modulus());
    if (count <= 1e6) {
        std::optional<UniPoly> best;
        long long best_dist = -1;
        std::vector<u64> coeff(static_cast<std::size_t>(d) + 1, 0);
        for (;;) {
            std::vector<Fp> cs;
            for (u64 c : coeff) cs.push_back(F.from_raw(c));
            UniPoly g(F, cs);
            long long dist = 0;
            for (std::size_t i = 0; i < values.size(); ++i)
                if (g.evaluate(points[i]) != values[i]) ++dist;
            if (best_dist < 0 || dist < best_dist) {
                best_dist = dist;
                best = g;  // enumeration order is lexicographic in (c_0..c_d)
            }
            std::size_t i = coeff.size();
            bool done = true;
            while (i-- > 0) {
                if (++coeff[i] < F.modulus()) {
                    done = false;
                    break;
                }
                coeff[i] = 0;
            }
            if (done) break;
        }
        return *best;
    }

    std::vector<std::pair<Fp, Fp>> pts;
    for (int i = 0; i <= d; ++i) pts.emplace_back(points[static_cast<std::size_t>(i)], values[static_cast<std::size_t>(i)]);
    return interpolate_univariate(F, pts);
}

namespace detail {

inline std::vector<UniPoly> fit_all_lines(const std::vector<Fp>& word, const GapCode& code,
                                          const std::vector<GapLine>& lines) {
    const PrimeField& F = code.field();
    std::vector<UniPoly> fits;
    fits.reserve(lines.size());
    for (const auto& ln : lines) {
        std::vector<Fp> values;
        for (auto pos : ln.point_pos) values.push_back(word[pos]);
        fits.push_back(nearest_line_codeword(values, ln.params, code.degree(), F));
    }
    return fits;
}

}  // namespace detail

/// Exact line-point test: fit the closest degree-d polynomial on every line
/// and tally disagreements over all (line, point) incidences.
inline TestReport line_point_test(const std::vector<Fp>& word, const GapCode& code) {
    if (word.size() != code.block_length()) throw std::invalid_argument("line_point_test: length mismatch");
    auto lines = enumerate_lines(code);
    auto fits = detail::fit_all_lines(word, code, lines);
    TestReport rep;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        std::uint64_t bad = 0;
        for (std::size_t k = 0; k < lines[li].point_pos.size(); ++k)
            if (fits[li].evaluate(lines[li].params[k]) != word[lines[li].point_pos[k]]) ++bad;
        rep.per_object_rejections.push_back(bad);
        rep.rejected += bad;
        rep.total += lines[li].point_pos.size();
    }
    return rep;
}

/// Sampled line-point test with an explicit seed: uniform line, then uniform
/// point on it (every line carries the same number of points).
inline TestReport line_point_test(const std::vector<Fp>& word, const GapCode& code, std::uint64_t trials,
                                  std::uint64_t seed) {
    if (word.size() != code.block_length()) throw std::invalid_argument("line_point_test: length mismatch");
    auto lines = enumerate_lines(code);
    std::vector<std::optional<UniPoly>> fits(lines.size());
    std::mt19937_64 rng(seed);
    TestReport rep;
    rep.exact = false;
    rep.trials = trials;
    rep.seed = seed;
    const PrimeField& F = code.field();
    for (std::uint64_t it = 0; it < trials; ++it) {
        std::size_t li = rng() % lines.size();
        const auto& ln = lines[li];
        if (!fits[li]) {
            std::vector<Fp> values;
            for (auto pos : ln.point_pos) values.push_back(word[pos]);
            fits[li] = nearest_line_codeword(values, ln.params, code.degree(), F);
        }
        std::size_t k = rng() % ln.point_pos.size();
        if (fits[li]->evaluate(ln.params[k]) != word[ln.point_pos[k]]) ++rep.rejected;
        ++rep.total;
    }
    return rep;
}

namespace detail {

/// Closest degree-d bivariate polynomial to a word on a plane's induced 2-D
/// code: unique decoding, then exhaustive search (lex-least tie rule), then
/// interpolation on the first d+2 induced lines.
inline MultiPoly nearest_plane_codeword(const std::vector<Fp>& values, const GapCode& sub) {
    const PrimeField& F = sub.field();
    const int d = sub.degree();
    Word syms(values.begin(), values.end());
    if (auto g = gap_decode_bivariate(syms, sub)) return *g;

    auto monos = monomials_up_to_degree(2, static_cast<unsigned>(d));
    double count = 1;
    for (std::size_t i = 0; i < monos.size(); ++i) count *= static_cast<double>(F.modulus());
    if (count <= 1e6) {
        std::optional<MultiPoly> best;
        long long best_dist = -1;
        std::vector<u64> coeff(monos.size(), 0);
        for (;;) {
            MultiPoly g(F, 2);
            for (std::size_t j = 0; j < monos.size(); ++j)
                if (coeff[j]) g.add_term(monos[j], F.from_raw(coeff[j]));
            long long dist = 0;
            for (std::size_t i = 0; i < values.size(); ++i)
                if (g.evaluate(sub.points()[i]) != values[i]) ++dist;
            if (best_dist < 0 || dist < best_dist) {
                best_dist = dist;
                best = g;
            }
            std::size_t i = coeff.size();
            bool done = true;
            while (i-- > 0) {
                if (++coeff[i] < F.modulus()) {
                    done = false;
                    break;
                }
                coeff[i] = 0;
            }
            if (done) break;
        }
        return *best;
    }

    // deterministic fallback: interpolate on the sub-family of the first
    // d+2 induced lines
    std::vector<AffineForm> forms(sub.family().forms().begin(),
                                  sub.family().forms().begin() + static_cast<std::ptrdiff_t>(d) + 2);
    GapCode interp(HyperplaneFamily(F, forms), d);
    std::vector<Fp> vals;
    for (const auto& pair : interp.subsets()) vals.push_back(values[sub.position(pair)]);
    return gap_interpolate(vals, interp);
}

}  // namespace detail

/// Exact plane-point test. For m = 2 the plane is the whole domain and the
/// report carries the plain distance to the nearest codeword.
inline TestReport plane_point_test(const std::vector<Fp>& word, const GapCode& code) {
    if (word.size() != code.block_length()) throw std::invalid_argument("plane_point_test: length mismatch");
    TestReport rep;
    rep.mode = TestReport::Mode::plane_point;
    auto planes = enumerate_planes(code);
    for (const auto& pl : planes) {
        GapCode sub(HyperplaneFamily(code.field(), pl.induced_forms), code.degree());
        std::vector<Fp> values;
        std::vector<std::size_t> big_pos;
        for (const auto& pair : sub.subsets()) {
            std::vector<int> big = pl.defining;
            for (int u : pair) big.push_back(pl.others[static_cast<std::size_t>(u)]);
            std::sort(big.begin(), big.end());
            big_pos.push_back(code.position(big));
            values.push_back(word[big_pos.back()]);
        }
        MultiPoly g = detail::nearest_plane_codeword(values, sub);
        std::uint64_t bad = 0;
        for (std::size_t k = 0; k < values.size(); ++k)
            if (g.evaluate(sub.points()[k]) != values[k]) ++bad;
        rep.per_object_rejections.push_back(bad);
        rep.rejected += bad;
        rep.total += values.size();
    }
    return rep;
}

/// Sampled plane-point test with an explicit seed.
inline TestReport plane_point_test(const std::vector<Fp>& word, const GapCode& code, std::uint64_t trials,
                                   std::uint64_t seed) {
    if (word.size() != code.block_length()) throw std::invalid_argument("plane_point_test: length mismatch");
    auto planes = enumerate_planes(code);
    std::mt19937_64 rng(seed);
    TestReport rep;
    rep.mode = TestReport::Mode::plane_point;
    rep.exact = false;
    rep.trials = trials;
    rep.seed = seed;
    struct Fitted {
        std::vector<Fp> values;
        std::vector<std::size_t> big_pos;
        std::optional<GapCode> sub;
        std::optional<MultiPoly> g;
    };
    std::vector<Fitted> cache(planes.size());
    for (std::uint64_t it = 0; it < trials; ++it) {
        std::size_t pi = rng() % planes.size();
        auto& c = cache[pi];
        if (!c.g) {
            const auto& pl = planes[pi];
            c.sub.emplace(HyperplaneFamily(code.field(), pl.induced_forms), code.degree());
            for (const auto& pair : c.sub->subsets()) {
                std::vector<int> big = pl.defining;
                for (int u : pair) big.push_back(pl.others[static_cast<std::size_t>(u)]);
                std::sort(big.begin(), big.end());
                c.big_pos.push_back(code.position(big));
                c.values.push_back(word[c.big_pos.back()]);
            }
            c.g = detail::nearest_plane_codeword(c.values, *c.sub);
        }
        std::size_t k = rng() % c.values.size();
        if (c.g->evaluate(c.sub->points()[k]) != c.values[k]) ++rep.rejected;
        ++rep.total;
    }
    return rep;
}

/// A disagreement between two line polynomials at their common point.
struct LineSystemCounterexample {
    std::size_t line1, line2;  // indices into enumerate_lines order
    std::size_t point_pos;     // position of the shared point in code order
};

/// Local characterization: degree-d polynomials per line that agree pairwise
/// at shared points extend to a unique global degree-d polynomial; otherwise
/// some witness pair of lines disagrees at a point. Requires t >= d + m.
inline std::variant<MultiPoly, LineSystemCounterexample> local_characterization_check(
    const std::vector<UniPoly>& line_polys, const GapCode& code) {
    const PrimeField& F = code.field();
    const std::size_t m = code.nvars();
    const int d = code.degree();
    auto lines = enumerate_lines(code);
    if (line_polys.size() != lines.size())
        throw std::invalid_argument("local_characterization_check: one polynomial per line required");
    for (const auto& g : line_polys)
        if (g.degree() > d) throw std::invalid_argument("local_characterization_check: degree too high");

    // incidence: for every point, the m lines through it and the parameters
    std::vector<std::vector<std::pair<std::size_t, Fp>>> at_point(code.block_length());
    for (std::size_t li = 0; li < lines.size(); ++li)
        for (std::size_t k = 0; k < lines[li].point_pos.size(); ++k)
            at_point[lines[li].point_pos[k]].emplace_back(li, lines[li].params[k]);

    std::vector<Fp> v(code.block_length(), F.zero());
    for (std::size_t pos = 0; pos < code.block_length(); ++pos) {
        const auto& inc = at_point[pos];
        Fp val = line_polys[inc[0].first].evaluate(inc[0].second);
        for (std::size_t k = 1; k < inc.size(); ++k) {
            Fp other = line_polys[inc[k].first].evaluate(inc[k].second);
            if (other != val) return LineSystemCounterexample{inc[0].first, inc[k].first, pos};
        }
        v[pos] = val;
    }

    // interpolate on the sub-family of the first d+m hyperplanes, then verify
    // globally; a failure after a clean pairwise check is an implementation bug
    std::vector<AffineForm> forms(code.family().forms().begin(),
                                  code.family().forms().begin() + d + static_cast<std::ptrdiff_t>(m));
    GapCode interp(HyperplaneFamily(F, forms), d);
    std::vector<Fp> vals;
    for (const auto& sub : interp.subsets()) vals.push_back(v[code.position(sub)]);
    MultiPoly f = gap_interpolate(vals, interp);
    for (std::size_t pos = 0; pos < code.block_length(); ++pos)
        if (f.evaluate(code.points()[pos]) != v[pos])
            throw std::logic_error("local_characterization_check: global interpolant misses a point");
    for (std::size_t li = 0; li < lines.size(); ++li)
        if (restrict_to_line(f, lines[li].base, lines[li].dir) != line_polys[li])
            throw std::logic_error("local_characterization_check: restriction mismatch after consistency");
    return f;
}

/// Per-hyperplane divisibility of restrictions versus global divisibility.
struct DivisibilityReport {
    std::vector<bool> restriction_divides;
    bool global_divides;
};

inline DivisibilityReport divisibility_experiment(const MultiPoly& E, const MultiPoly& P,
                                                  const HyperplaneFamily& fam) {
    if (E.is_zero()) throw std::invalid_argument("divisibility_experiment: zero divisor");
    const PrimeField& F = fam.field();
    const std::size_t m = fam.nvars();
    if (E.nvars() != m || P.nvars() != m) throw std::invalid_argument("divisibility_experiment: arity mismatch");
    auto solved = detail::solve_for_last(fam);
    MultiPoly Et = E, Pt = P;
    if (solved.transform) {
        std::vector<MultiPoly> images;
        for (std::size_t i = 0; i < m; ++i) {
            MultiPoly img(F, m);
            for (std::size_t j = 0; j < m; ++j)
                if (!(*solved.transform)[i][j].is_zero())
                    img += MultiPoly::variable(F, m, j) * (*solved.transform)[i][j];
            images.push_back(std::move(img));
        }
        Et = substitute(E, images);
        Pt = substitute(P, images);
    }
    DivisibilityReport rep;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        MultiPoly Ei = restrict_to_hyperplane(Et, solved.lowered[i]);
        MultiPoly Pi = restrict_to_hyperplane(Pt, solved.lowered[i]);
        rep.restriction_divides.push_back(Ei.is_zero() ? Pi.is_zero() : poly_divide(Pi, Ei).has_value());
    }
    rep.global_divides = poly_divide(P, E).has_value();
    return rep;
}

}  // namespace capgap
