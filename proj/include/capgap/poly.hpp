#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "capgap/field.hpp"

namespace capgap {

/// Exponent vector of a monomial; entry i is the power of X_{i+1}.
using Exponents = std::vector<unsigned>;

inline unsigned exponents_degree(const Exponents& v) {
    return std::accumulate(v.begin(), v.end(), 0u);
}

/// Graded lexicographic order: lower total degree first, ties broken by plain
/// lexicographic comparison of the exponent vectors.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        unsigned da = exponents_degree(a), db = exponents_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

/// Direct predecessor under the graded lexicographic order, or nullopt for the
/// all-zeros vector.
inline std::optional<Exponents> graded_lex_prev(const Exponents& v) {
    const std::size_t m = v.size();
    if (m == 0) return std::nullopt;
    unsigned d = exponents_degree(v);
    if (d == 0) return std::nullopt;
    Exponents w = v;
    // rightmost non-final position carrying mass
    std::size_t i = m;
    for (std::size_t j = m - 1; j-- > 0;) {
        if (w[j] > 0) {
            i = j;
            break;
        }
    }
    if (i == m) {
        // entire degree sits in the last coordinate: cross to the largest
        // vector of degree d-1
        std::fill(w.begin(), w.end(), 0u);
        w[0] = d - 1;
        return w;
    }
    unsigned s = 1;
    for (std::size_t j = i + 1; j < m; ++j) {
        s += w[j];
        w[j] = 0;
    }
    w[i] -= 1;
    w[i + 1] = s;
    return w;
}

/// All exponent vectors over m variables with coordinate sum exactly d,
/// enumerated in lexicographic ascending order (stars-and-bars).
inline std::vector<Exponents> compositions_of(std::size_t m, unsigned d) {
    std::vector<Exponents> out;
    if (m == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    Exponents cur(m, 0);
    cur[m - 1] = d;
    for (;;) {
        out.push_back(cur);
        if (d == 0) break;
        // successor in lexicographic order with constant sum
        std::size_t k = 0;
        for (std::size_t j = m; j-- > 0;) {
            if (cur[j] > 0) {
                k = j;
                break;
            }
        }
        if (k == 0) break;  // (d,0,...,0) is the last vector
        if (k == m - 1) {
            cur[m - 2] += 1;
            cur[m - 1] -= 1;
        } else {
            unsigned t = cur[k];
            cur[k] = 0;
            cur[k - 1] += 1;
            cur[m - 1] = t - 1;
        }
    }
    return out;
}

/// All exponent vectors over m variables of total degree at most d, in graded
/// lexicographic ascending order.
inline std::vector<Exponents> monomials_up_to_degree(std::size_t m, unsigned d) {
    std::vector<Exponents> out;
    for (unsigned k = 0; k <= d; ++k) {
        auto level = compositions_of(m, k);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

/// Sparse multivariate polynomial over F_p with graded-lex term order. The
/// zero polynomial is the empty map; stored coefficients are never zero.
class MultiPoly {
  public:
    MultiPoly(const PrimeField& F, std::size_t nvars) : F_(F), m_(nvars) {}

    static MultiPoly constant(const PrimeField& F, std::size_t nvars, const Fp& c) {
        MultiPoly f(F, nvars);
        f.add_term(Exponents(nvars, 0), c);
        return f;
    }
    static MultiPoly constant(const PrimeField& F, std::size_t nvars, i64 c) {
        return constant(F, nvars, F(c));
    }
    static MultiPoly variable(const PrimeField& F, std::size_t nvars, std::size_t i) {
        if (i >= nvars) throw std::invalid_argument("MultiPoly::variable: index out of range");
        Exponents e(nvars, 0);
        e[i] = 1;
        MultiPoly f(F, nvars);
        f.add_term(e, F.one());
        return f;
    }

    const PrimeField& field() const noexcept { return F_; }
    std::size_t nvars() const noexcept { return m_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Total degree; -1 for the zero polynomial.
    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(exponents_degree(e)));
        return d;
    }

    const std::map<Exponents, Fp, GradedLexLess>& terms() const noexcept { return terms_; }

    Fp coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? F_.zero() : it->second;
    }

    void add_term(const Exponents& e, const Fp& c) {
        if (e.size() != m_) throw std::invalid_argument("MultiPoly: exponent arity mismatch");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::pair<Exponents, Fp> leading_term() const {
        if (terms_.empty()) throw std::domain_error("MultiPoly: zero polynomial has no leading term");
        auto it = std::prev(terms_.end());
        return {it->first, it->second};
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    MultiPoly& operator*=(const Fp& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const Fp& s) { return a *= s; }
    friend MultiPoly operator*(const Fp& s, MultiPoly a) { return a *= s; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_compatible(b);
        MultiPoly r(a.F_, a.m_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.m_);
                for (std::size_t i = 0; i < a.m_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    bool operator==(const MultiPoly& o) const {
        check_compatible(o);
        return terms_ == o.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    Fp evaluate(std::span<const Fp> point) const {
        if (point.size() != m_) throw std::invalid_argument("MultiPoly::evaluate: dimension mismatch");
        Fp acc = F_.zero();
        for (const auto& [e, c] : terms_) {
            Fp t = c;
            for (std::size_t i = 0; i < m_; ++i)
                if (e[i]) t *= point[i].pow(e[i]);
            acc += t;
        }
        return acc;
    }
    Fp evaluate(const std::vector<Fp>& point) const { return evaluate(std::span<const Fp>(point)); }

    MultiPoly pow(unsigned k) const {
        MultiPoly r = constant(F_, m_, F_.one());
        for (unsigned i = 0; i < k; ++i) r *= *this;
        return r;
    }

  private:
    void check_compatible(const MultiPoly& o) const {
        if (F_ != o.F_ || m_ != o.m_)
            throw std::invalid_argument("MultiPoly: mixing polynomials over different rings");
    }

    PrimeField F_;
    std::size_t m_;
    std::map<Exponents, Fp, GradedLexLess> terms_;
};

/// Dense univariate polynomial, coefficients low-to-high, trailing coefficient
/// nonzero unless zero.
class UniPoly {
  public:
    explicit UniPoly(const PrimeField& F) : F_(F) {}
    UniPoly(const PrimeField& F, std::vector<Fp> coeffs) : F_(F), c_(std::move(coeffs)) { normalize(); }

    static UniPoly constant(const PrimeField& F, const Fp& c) { return UniPoly(F, {c}); }
    static UniPoly zero(const PrimeField& F) { return UniPoly(F); }

    const PrimeField& field() const noexcept { return F_; }
    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Fp>& coeffs() const noexcept { return c_; }

    Fp coeff(std::size_t k) const { return k < c_.size() ? c_[k] : F_.zero(); }

    void set_coeff(std::size_t k, const Fp& v) {
        if (k >= c_.size()) c_.resize(k + 1, F_.zero());
        c_[k] = v;
        normalize();
    }

    Fp evaluate(const Fp& x) const {
        Fp acc = F_.zero();
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    UniPoly& operator+=(const UniPoly& o) {
        check(o);
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F_.zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        normalize();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        check(o);
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F_.zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        normalize();
        return *this;
    }
    UniPoly& operator*=(const Fp& s) {
        for (auto& x : c_) x *= s;
        normalize();
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(UniPoly a, const Fp& s) { return a *= s; }
    friend UniPoly operator*(const Fp& s, UniPoly a) { return a *= s; }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return UniPoly(a.F_);
        std::vector<Fp> r(a.c_.size() + b.c_.size() - 1, a.F_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(a.F_, std::move(r));
    }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    bool operator==(const UniPoly& o) const {
        check(o);
        return c_ == o.c_;
    }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

  private:
    void check(const UniPoly& o) const {
        if (F_ != o.F_) throw std::invalid_argument("UniPoly: mixing fields");
    }
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    PrimeField F_;
    std::vector<Fp> c_;
};

/// Quotient and remainder of univariate division; B must be nonzero.
inline std::pair<UniPoly, UniPoly> divrem(const UniPoly& A, const UniPoly& B) {
    if (B.is_zero()) throw std::domain_error("divrem: division by zero polynomial");
    const PrimeField& F = A.field();
    UniPoly r = A;
    UniPoly q(F);
    Fp lead_inv = B.coeff(B.degree()).inv();
    while (!r.is_zero() && r.degree() >= B.degree()) {
        std::size_t shift = static_cast<std::size_t>(r.degree() - B.degree());
        Fp factor = r.coeff(r.degree()) * lead_inv;
        q.set_coeff(shift, q.coeff(shift) + factor);
        std::vector<Fp> sub(shift, F.zero());
        for (const auto& c : B.coeffs()) sub.push_back(c * factor);
        r -= UniPoly(F, std::move(sub));
    }
    return {q, r};
}

/// Lagrange interpolation through pairs with distinct x.
inline UniPoly interpolate_univariate(const PrimeField& F, std::span<const std::pair<Fp, Fp>> pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i].first == pts[j].first)
                throw std::invalid_argument("interpolate_univariate: repeated x coordinate");
    UniPoly acc(F);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        UniPoly basis = UniPoly::constant(F, F.one());
        Fp denom = F.one();
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            basis *= UniPoly(F, {-pts[j].first, F.one()});
            denom *= pts[i].first - pts[j].first;
        }
        acc += basis * (pts[i].second * denom.inv());
    }
    return acc;
}
inline UniPoly interpolate_univariate(const PrimeField& F, const std::vector<std::pair<Fp, Fp>>& pts) {
    return interpolate_univariate(F, std::span<const std::pair<Fp, Fp>>(pts));
}

/// Affine form a0 + sum_i coeffs[i] * X_{i+1}.
struct AffineForm {
    Fp constant;
    std::vector<Fp> coeffs;

    std::size_t nvars() const noexcept { return coeffs.size(); }

    Fp evaluate(std::span<const Fp> x) const {
        if (x.size() != coeffs.size()) throw std::invalid_argument("AffineForm: dimension mismatch");
        Fp acc = constant;
        for (std::size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i] * x[i];
        return acc;
    }
    Fp evaluate(const std::vector<Fp>& x) const { return evaluate(std::span<const Fp>(x)); }

    bool is_constant() const {
        return std::all_of(coeffs.begin(), coeffs.end(), [](const Fp& c) { return c.is_zero(); });
    }

    MultiPoly to_poly(const PrimeField& F) const {
        MultiPoly f = MultiPoly::constant(F, coeffs.size(), constant);
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (!coeffs[i].is_zero()) f += MultiPoly::variable(F, coeffs.size(), i) * coeffs[i];
        return f;
    }

    bool operator==(const AffineForm& o) const { return constant == o.constant && coeffs == o.coeffs; }
    bool operator!=(const AffineForm& o) const { return !(*this == o); }
};

/// Coefficient polynomial of X_{var+1}^power, as a polynomial in the remaining
/// variables (variable var removed, others keep their relative order).
inline MultiPoly coeff_extract(const MultiPoly& f, std::size_t var, unsigned power) {
    if (var >= f.nvars()) throw std::invalid_argument("coeff_extract: variable index out of range");
    MultiPoly out(f.field(), f.nvars() - 1);
    for (const auto& [e, c] : f.terms()) {
        if (e[var] != power) continue;
        Exponents r;
        r.reserve(e.size() - 1);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != var) r.push_back(e[i]);
        out.add_term(r, c);
    }
    return out;
}

/// Scalar coefficient of one monomial.
inline Fp coeff_of(const MultiPoly& f, const Exponents& e) { return f.coeff(e); }

/// Degree of f in one variable; -1 for the zero polynomial.
inline int degree_in(const MultiPoly& f, std::size_t var) {
    int d = -1;
    for (const auto& [e, c] : f.terms()) d = std::max(d, static_cast<int>(e[var]));
    return d;
}

/// Substitute X_{i+1} := images[i] for every variable simultaneously. All
/// images must share a common ring.
inline MultiPoly substitute(const MultiPoly& f, std::span<const MultiPoly> images) {
    if (images.size() != f.nvars()) throw std::invalid_argument("substitute: arity mismatch");
    const PrimeField& F = f.field();
    std::size_t target = images.empty() ? 0 : images[0].nvars();
    for (const auto& g : images)
        if (g.nvars() != target || g.field() != F)
            throw std::invalid_argument("substitute: images disagree on ring");
    MultiPoly out(F, target);
    // per-variable power cache
    std::vector<std::vector<MultiPoly>> pows(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) pows[i].push_back(MultiPoly::constant(F, target, F.one()));
    auto power = [&](std::size_t i, unsigned k) -> const MultiPoly& {
        while (pows[i].size() <= k) pows[i].push_back(pows[i].back() * images[i]);
        return pows[i][k];
    };
    for (const auto& [e, c] : f.terms()) {
        MultiPoly t = MultiPoly::constant(F, target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) t *= power(i, e[i]);
        out += t;
    }
    return out;
}
inline MultiPoly substitute(const MultiPoly& f, const std::vector<MultiPoly>& images) {
    return substitute(f, std::span<const MultiPoly>(images));
}

/// f(X_1,...,X_{m-1}, L(X_1,...,X_{m-1})): substitute the last variable by an
/// affine form in the remaining ones. Total degree never increases.
inline MultiPoly restrict_to_hyperplane(const MultiPoly& f, const AffineForm& L) {
    const std::size_t m = f.nvars();
    if (m < 2) throw std::invalid_argument("restrict_to_hyperplane: need at least 2 variables");
    if (L.nvars() != m - 1) throw std::invalid_argument("restrict_to_hyperplane: form arity mismatch");
    const PrimeField& F = f.field();
    MultiPoly lpoly = L.to_poly(F);
    int dm = degree_in(f, m - 1);
    MultiPoly acc(F, m - 1);
    for (int k = dm; k >= 0; --k) acc = acc * lpoly + coeff_extract(f, m - 1, static_cast<unsigned>(k));
    return acc;
}

/// g(Z) = f(base + Z * dir); direction must be nonzero. deg g <= deg f.
inline UniPoly restrict_to_line(const MultiPoly& f, std::span<const Fp> base, std::span<const Fp> dir) {
    const std::size_t m = f.nvars();
    if (base.size() != m || dir.size() != m) throw std::invalid_argument("restrict_to_line: dimension mismatch");
    if (std::all_of(dir.begin(), dir.end(), [](const Fp& c) { return c.is_zero(); }))
        throw std::invalid_argument("restrict_to_line: zero direction");
    const PrimeField& F = f.field();
    std::vector<std::vector<UniPoly>> pows(m);
    for (std::size_t i = 0; i < m; ++i) pows[i].push_back(UniPoly::constant(F, F.one()));
    auto power = [&](std::size_t i, unsigned k) -> const UniPoly& {
        UniPoly axis(F, {base[i], dir[i]});
        while (pows[i].size() <= k) pows[i].push_back(pows[i].back() * axis);
        return pows[i][k];
    };
    UniPoly acc(F);
    for (const auto& [e, c] : f.terms()) {
        UniPoly t = UniPoly::constant(F, c);
        for (std::size_t i = 0; i < m; ++i)
            if (e[i]) t *= power(i, e[i]);
        acc += t;
    }
    return acc;
}
inline UniPoly restrict_to_line(const MultiPoly& f, const std::vector<Fp>& base, const std::vector<Fp>& dir) {
    return restrict_to_line(f, std::span<const Fp>(base), std::span<const Fp>(dir));
}

namespace detail {
inline bool exponents_divide(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}
}  // namespace detail

/// Long division in the graded-lex order. Returns the quotient Q with
/// P = E * Q when E divides P, nullopt otherwise. NOT_DIVISIBLE is a normal
/// outcome, not an error.
inline std::optional<MultiPoly> poly_divide(const MultiPoly& P, const MultiPoly& E) {
    if (E.is_zero()) throw std::domain_error("poly_divide: division by zero polynomial");
    if (P.field() != E.field() || P.nvars() != E.nvars())
        throw std::invalid_argument("poly_divide: ring mismatch");
    const PrimeField& F = P.field();
    const std::size_t m = P.nvars();
    auto [elead, ecoef] = E.leading_term();
    Fp einv = ecoef.inv();
    MultiPoly q(F, m), rem(F, m), rest = P;
    std::optional<Exponents> last;
    while (!rest.is_zero()) {
        auto [lead, c] = rest.leading_term();
        if (last && !GradedLexLess{}(lead, *last))
            throw std::logic_error("poly_divide: leading monomial failed to decrease");
        last = lead;
        if (detail::exponents_divide(elead, lead)) {
            Exponents qe(m);
            for (std::size_t i = 0; i < m; ++i) qe[i] = lead[i] - elead[i];
            Fp qc = c * einv;
            q.add_term(qe, qc);
            for (const auto& [e, ec] : E.terms()) {
                Exponents se(m);
                for (std::size_t i = 0; i < m; ++i) se[i] = e[i] + qe[i];
                rest.add_term(se, -(ec * qc));
            }
        } else {
            rem.add_term(lead, c);
            rest.add_term(lead, -c);
        }
    }
    if (!rem.is_zero()) return std::nullopt;
    return q;
}

inline MultiPoly to_multipoly(const UniPoly& u) {
    MultiPoly f(u.field(), 1);
    for (std::size_t k = 0; k < u.coeffs().size(); ++k) f.add_term({static_cast<unsigned>(k)}, u.coeffs()[k]);
    return f;
}

inline UniPoly to_unipoly(const MultiPoly& f) {
    if (f.nvars() != 1) throw std::invalid_argument("to_unipoly: not univariate");
    UniPoly u(f.field());
    for (const auto& [e, c] : f.terms()) u.set_coeff(e[0], c);
    return u;
}

}  // namespace capgap
