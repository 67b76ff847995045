#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "capgap/poly.hpp"

namespace capgap {

/// Lattice point in N^m. Shares the representation of a monomial exponent
/// vector; shapes and zero sets live in the same index space.
using Point = std::vector<unsigned>;

inline bool is_downward_closed(const std::vector<Point>& pts) {
    std::set<Point> s(pts.begin(), pts.end());
    for (const auto& y : s) {
        Point x = y;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (y[i] == 0) continue;
            x[i] = y[i] - 1;
            if (!s.count(x)) return false;
            x[i] = y[i];
        }
    }
    return true;
}

/// A finite downward-closed subset of N^m, optionally labeled into F_p.
/// Labels map index k to the field element labels[k]; they must be pairwise
/// distinct and cover every coordinate that occurs.
class Shape {
  public:
    Shape(std::size_t dim, std::vector<Point> pts, std::vector<Fp> labels = {})
        : dim_(dim), pts_(std::move(pts)), labels_(std::move(labels)) {
        for (const auto& p : pts_)
            if (p.size() != dim_) throw std::invalid_argument("Shape: point dimension mismatch");
        std::sort(pts_.begin(), pts_.end());
        pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
        if (!is_downward_closed(pts_)) throw std::invalid_argument("Shape: point set is not downward closed");
        if (!labels_.empty()) validate_labels();
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return pts_.size(); }
    const std::vector<Point>& points() const noexcept { return pts_; }

    bool contains(const Point& p) const { return std::binary_search(pts_.begin(), pts_.end(), p); }

    unsigned max_coordinate() const {
        unsigned mx = 0;
        for (const auto& p : pts_)
            for (unsigned c : p) mx = std::max(mx, c);
        return mx;
    }

    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<Fp>& labels() const {
        if (labels_.empty()) throw std::logic_error("Shape: no labels attached");
        return labels_;
    }

    Shape with_labels(std::vector<Fp> labels) const {
        return Shape(dim_, pts_, std::move(labels));
    }

    /// Default labeling 0,1,...,max+1 into F_p; requires p > max coordinate.
    Shape with_default_labels(const PrimeField& F) const {
        unsigned need = pts_.empty() ? 1 : max_coordinate() + 1;
        if (F.modulus() < need) throw std::invalid_argument("Shape: field too small for default labels");
        std::vector<Fp> lab;
        for (unsigned k = 0; k < need; ++k) lab.push_back(F(static_cast<i64>(k)));
        return with_labels(std::move(lab));
    }

    /// Field coordinates of an index point under the labeling.
    std::vector<Fp> embed(const Point& p) const {
        const auto& lab = labels();
        std::vector<Fp> x;
        x.reserve(p.size());
        for (unsigned c : p) {
            if (c >= lab.size()) throw std::out_of_range("Shape: coordinate exceeds label set");
            x.push_back(lab[c]);
        }
        return x;
    }

  private:
    void validate_labels() const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            for (std::size_t j = i + 1; j < labels_.size(); ++j)
                if (labels_[i] == labels_[j]) throw std::invalid_argument("Shape: labels not distinct");
        if (!pts_.empty() && max_coordinate() >= labels_.size())
            throw std::invalid_argument("Shape: too few labels for the point set");
    }

    std::size_t dim_;
    std::vector<Point> pts_;
    std::vector<Fp> labels_;
};

inline Shape make_grid(std::size_t m, unsigned side) {
    if (m == 0 || side == 0) throw std::invalid_argument("make_grid: need m >= 1, side >= 1");
    std::vector<Point> pts;
    Point cur(m, 0);
    for (;;) {
        pts.push_back(cur);
        std::size_t i = m;
        while (i-- > 0) {
            if (++cur[i] < side) break;
            cur[i] = 0;
            if (i == 0) return Shape(m, std::move(pts));
        }
    }
}

/// {x in N^m : x_1 + ... + x_m < side}
inline Shape make_simplex(std::size_t m, unsigned side) {
    if (m == 0 || side == 0) throw std::invalid_argument("make_simplex: need m >= 1, side >= 1");
    std::vector<Point> pts;
    for (unsigned d = 0; d < side; ++d)
        for (auto& e : compositions_of(m, d)) pts.push_back(e);
    return Shape(m, std::move(pts));
}

/// {(x,y) in [side)^2 : x < side/2 or y < side/2}; side must be even.
inline Shape make_step(unsigned side) {
    if (side == 0 || side % 2 != 0) throw std::invalid_argument("make_step: side must be even and positive");
    std::vector<Point> pts;
    for (unsigned x = 0; x < side; ++x)
        for (unsigned y = 0; y < side; ++y)
            if (x < side / 2 || y < side / 2) pts.push_back({x, y});
    return Shape(2, std::move(pts));
}

struct RobustnessResult {
    long long value;       // Pi_d(S)
    Exponents minimizer;   // a composition attaining it
};

/// Exact d-robustness: the minimum over compositions d_1+...+d_m = d of the
/// number of points of S that dominate (d_1,...,d_m) coordinatewise.
inline RobustnessResult robustness(const Shape& S, unsigned d) {
    RobustnessResult best{-1, {}};
    for (const auto& comp : compositions_of(S.dim(), d)) {
        long long count = 0;
        for (const auto& p : S.points()) {
            bool dominates = true;
            for (std::size_t i = 0; i < p.size() && dominates; ++i)
                if (p[i] < comp[i]) dominates = false;
            if (dominates) ++count;
        }
        if (best.value < 0 || count < best.value) best = {count, comp};
    }
    return best;
}

/// Shifting operator sigma_axis: every slice in the given direction is
/// replaced by the initial segment of equal size. Preserves cardinality.
inline std::vector<Point> shift(const std::vector<Point>& Z, std::size_t axis) {
    std::map<Point, unsigned> slice_size;  // key: point with coordinate `axis` removed
    for (const auto& p : Z) {
        if (axis >= p.size()) throw std::invalid_argument("shift: axis out of range");
        Point key = p;
        key.erase(key.begin() + static_cast<std::ptrdiff_t>(axis));
        slice_size[key] += 1;
    }
    std::vector<Point> out;
    out.reserve(Z.size());
    for (const auto& [key, n] : slice_size) {
        for (unsigned v = 0; v < n; ++v) {
            Point p = key;
            p.insert(p.begin() + static_cast<std::ptrdiff_t>(axis), v);
            out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct MinNonzerosResult {
    long long min_count;
    MultiPoly witness;  // a nonzero polynomial attaining the minimum
};

/// Exhaustive minimum, over all nonzero m-variate polynomials of total degree
/// at most d, of the number of nonzero evaluations on the labeled shape.
/// Guard: refuses instances with more than 10^7 candidate polynomials.
inline MinNonzerosResult min_nonzeros_bruteforce(const Shape& S, unsigned d, const PrimeField& F) {
    const std::size_t m = S.dim();
    const u64 p = F.modulus();
    Shape labeled = S.has_labels() ? S : S.with_default_labels(F);
    auto monos = monomials_up_to_degree(m, d);
    const std::size_t k = monos.size();
    double candidates = 1;
    for (std::size_t i = 0; i < k; ++i) {
        candidates *= static_cast<double>(p);
        if (candidates > 1e7) throw std::invalid_argument("min_nonzeros_bruteforce: instance too large");
    }
    // value of each monomial at each point, computed once
    std::vector<std::vector<Fp>> vals(labeled.size(), std::vector<Fp>(k, F.zero()));
    for (std::size_t pi = 0; pi < labeled.size(); ++pi) {
        auto x = labeled.embed(labeled.points()[pi]);
        for (std::size_t j = 0; j < k; ++j) {
            Fp t = F.one();
            for (std::size_t i = 0; i < m; ++i)
                if (monos[j][i]) t *= x[i].pow(monos[j][i]);
            vals[pi][j] = t;
        }
    }
    std::vector<u64> coeff(k, 0);
    MinNonzerosResult best{static_cast<long long>(labeled.size()) + 1, MultiPoly(F, m)};
    for (;;) {
        // odometer step
        std::size_t i = 0;
        while (i < k && ++coeff[i] == p) coeff[i++] = 0;
        if (i == k) break;
        long long nonzeros = 0;
        for (std::size_t pi = 0; pi < labeled.size(); ++pi) {
            Fp acc = F.zero();
            for (std::size_t j = 0; j < k; ++j)
                if (coeff[j]) acc += F.from_raw(coeff[j]) * vals[pi][j];
            if (!acc.is_zero()) ++nonzeros;
        }
        if (nonzeros < best.min_count) {
            MultiPoly w(F, m);
            for (std::size_t j = 0; j < k; ++j)
                if (coeff[j]) w.add_term(monos[j], F.from_raw(coeff[j]));
            best = {nonzeros, w};
        }
    }
    return best;
}

/// Zero-pattern normal form check: the zeros of a nonzero f of degree <= d on
/// the labeled grid, after shifting in every axis, must fit inside L(d) for
/// some composition d of deg f. Returns that composition; nullopt signals an
/// implementation bug, not a valid outcome.
inline std::optional<Exponents> zero_pattern_check(const MultiPoly& f, const Shape& grid) {
    if (f.is_zero()) throw std::invalid_argument("zero_pattern_check: zero polynomial");
    const std::size_t m = grid.dim();
    if (f.nvars() != m) throw std::invalid_argument("zero_pattern_check: dimension mismatch");
    unsigned d = static_cast<unsigned>(f.total_degree());
    std::vector<Point> zeros;
    for (const auto& p : grid.points())
        if (f.evaluate(grid.embed(p)).is_zero()) zeros.push_back(p);
    // sigma_1 o sigma_2 o ... o sigma_m, rightmost applied first
    for (std::size_t axis = m; axis-- > 0;) zeros = shift(zeros, axis);
    for (const auto& comp : compositions_of(m, d)) {
        bool inside = true;
        for (const auto& z : zeros) {
            bool in_L = false;
            for (std::size_t i = 0; i < m && !in_L; ++i)
                if (z[i] < comp[i]) in_L = true;
            if (!in_L) {
                inside = false;
                break;
            }
        }
        if (inside) return comp;
    }
    return std::nullopt;
}

struct MinSizeResult {
    std::size_t size;
    Shape witness;
};

/// Smallest nonempty downward-closed S inside a box_w x box_h bounding box
/// with relative d-robustness at least delta_num/delta_den. Exhaustive over
/// the monotone height profiles of the box; boxes larger than 6x6 refused.
inline std::optional<MinSizeResult> min_size_search(unsigned d, long long delta_num, long long delta_den,
                                                    unsigned box_w, unsigned box_h) {
    if (box_w > 6 || box_h > 6) throw std::invalid_argument("min_size_search: box too large");
    if (delta_den <= 0) throw std::invalid_argument("min_size_search: bad delta");
    std::optional<MinSizeResult> best;
    std::vector<unsigned> h(box_w, 0);
    // enumerate non-increasing profiles h_0 >= h_1 >= ... lexicographically
    auto consider = [&]() {
        std::vector<Point> pts;
        for (unsigned x = 0; x < box_w; ++x)
            for (unsigned y = 0; y < h[x]; ++y) pts.push_back({x, y});
        if (pts.empty()) return;
        Shape S(2, pts);
        auto rob = robustness(S, d);
        // pi_d(S) >= delta  <=>  Pi_d * den >= num * |S|
        if (rob.value * delta_den >= delta_num * static_cast<long long>(S.size()))
            if (!best || S.size() < best->size) best = MinSizeResult{S.size(), S};
    };
    for (;;) {
        consider();
        // next profile: increment from the right, keeping monotonicity
        std::size_t i = box_w;
        while (i-- > 0) {
            unsigned cap = (i == 0) ? box_h : h[i - 1];
            if (h[i] < cap) {
                ++h[i];
                for (std::size_t j = i + 1; j < box_w; ++j) h[j] = 0;
                break;
            }
            if (i == 0) return best;
        }
    }
}

}  // namespace capgap
