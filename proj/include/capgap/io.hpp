#pragma once

#include <cctype>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "capgap/cap.hpp"
#include "capgap/gap.hpp"
#include "capgap/ltc.hpp"
#include "capgap/shapes.hpp"

namespace capgap {

// ---------------------------------------------------------------------------
// Polynomial text format: integer-coefficient terms over X1..Xm, e.g.
//   "3*X1^2*X2 + X3 - 4"
// Coefficients are reduced mod p on parse.
// ---------------------------------------------------------------------------

inline MultiPoly parse_poly(const std::string& text, const PrimeField& F, std::size_t nvars) {
    MultiPoly out(F, nvars);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("parse_poly: " + why + " at offset " + std::to_string(i));
    };
    skip_ws();
    if (i == text.size()) fail("empty polynomial");
    bool first = true;
    while (true) {
        skip_ws();
        if (i == text.size()) break;
        i64 sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            fail("expected '+' or '-' between terms");
        }
        first = false;
        // one term: factors joined by '*'
        Fp coeff = F(sign);
        Exponents e(nvars, 0);
        bool want_factor = true;
        while (want_factor) {
            skip_ws();
            if (i == text.size()) fail("unexpected end of term");
            if (std::isdigit(static_cast<unsigned char>(text[i]))) {
                i64 v = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    v = v * 10 + (text[i] - '0');
                    if (v > (i64(1) << 62)) fail("coefficient too large");
                    ++i;
                }
                coeff *= F(v);
            } else if (text[i] == 'X' || text[i] == 'x') {
                ++i;
                if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("variable index expected");
                std::size_t var = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                    var = var * 10 + static_cast<std::size_t>(text[i++] - '0');
                if (var == 0 || var > nvars) fail("variable X" + std::to_string(var) + " out of range");
                unsigned pow = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("exponent expected");
                    pow = 0;
                    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                        pow = pow * 10 + static_cast<unsigned>(text[i++] - '0');
                }
                e[var - 1] += pow;
            } else {
                fail(std::string("unexpected character '") + text[i] + "'");
            }
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                want_factor = true;
            } else {
                want_factor = false;
            }
        }
        out.add_term(e, coeff);
    }
    return out;
}

inline std::string format_poly(const MultiPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // leading term first
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << " + ";
        first = false;
        bool has_var = exponents_degree(e) > 0;
        if (!has_var || c.value() != 1) {
            os << c.value();
            if (has_var) os << "*";
        }
        bool first_var = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << "X" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Codeword files: line-oriented UTF-8 with '#' comments. The header carries
// every parameter, then a `data` line, then one coordinate per line as
// `<m index entries> <value>` with `?` marking an erasure.
// ---------------------------------------------------------------------------

/// Baseline evaluation code on a full grid: labels^m in lexicographic order.
class RmGridCode {
  public:
    RmGridCode(const PrimeField& F, std::size_t m, int degree, std::vector<Fp> labels)
        : F_(F), m_(m), d_(degree), labels_(std::move(labels)) {
        if (m_ == 0 || d_ < 0) throw std::invalid_argument("RmGridCode: bad parameters");
        if (labels_.size() <= static_cast<std::size_t>(d_))
            throw std::invalid_argument("RmGridCode: need more labels than the degree");
        for (std::size_t i = 0; i < labels_.size(); ++i)
            for (std::size_t j = i + 1; j < labels_.size(); ++j)
                if (labels_[i] == labels_[j]) throw std::invalid_argument("RmGridCode: labels not distinct");
        Exponents cur(m_, 0);
        const unsigned l = static_cast<unsigned>(labels_.size());
        for (;;) {
            domain_.push_back(cur);
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

    const PrimeField& field() const noexcept { return F_; }
    std::size_t nvars() const noexcept { return m_; }
    int degree() const noexcept { return d_; }
    const std::vector<Fp>& labels() const noexcept { return labels_; }
    const std::vector<Exponents>& domain() const noexcept { return domain_; }
    std::size_t block_length() const noexcept { return domain_.size(); }

    std::vector<Fp> point(const Exponents& idx) const {
        std::vector<Fp> x;
        for (unsigned c : idx) x.push_back(labels_.at(c));
        return x;
    }

  private:
    PrimeField F_;
    std::size_t m_;
    int d_;
    std::vector<Fp> labels_;
    std::vector<Exponents> domain_;
};

inline Word rm_grid_encode(const MultiPoly& f, const RmGridCode& code) {
    if (f.field() != code.field() || f.nvars() != code.nvars())
        throw std::invalid_argument("rm_grid_encode: ring mismatch");
    if (f.total_degree() > code.degree()) throw std::invalid_argument("rm_grid_encode: degree too high");
    Word out;
    for (const auto& idx : code.domain()) out.push_back(f.evaluate(code.point(idx)));
    return out;
}

using AnyCode = std::variant<CapCode, GapCode, RmGridCode>;

namespace detail {

struct ParsedFile {
    std::string kind;
    u64 p = 0;
    std::size_t m = 0;
    int d = -1;
    std::vector<i64> labels;
    std::vector<i64> alphas;
    std::vector<std::vector<i64>> form_rows;
    std::vector<std::pair<std::vector<i64>, std::optional<i64>>> rows;
};

inline ParsedFile parse_codeword_file(std::istream& in) {
    ParsedFile pf;
    std::string line;
    bool in_data = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        auto bad = [&](const std::string& why) {
            throw std::invalid_argument("codeword file line " + std::to_string(lineno) + ": " + why);
        };
        if (!in_data) {
            if (tok == "kind") {
                if (!(ls >> pf.kind)) bad("missing kind");
            } else if (tok == "p") {
                if (!(ls >> pf.p)) bad("missing modulus");
            } else if (tok == "m") {
                if (!(ls >> pf.m)) bad("missing variable count");
            } else if (tok == "d") {
                if (!(ls >> pf.d)) bad("missing degree");
            } else if (tok == "labels") {
                i64 v;
                while (ls >> v) pf.labels.push_back(v);
            } else if (tok == "alphas") {
                i64 v;
                while (ls >> v) pf.alphas.push_back(v);
            } else if (tok == "form") {
                std::vector<i64> row;
                i64 v;
                while (ls >> v) row.push_back(v);
                pf.form_rows.push_back(std::move(row));
            } else if (tok == "data") {
                in_data = true;
            } else {
                bad("unknown header key '" + tok + "'");
            }
        } else {
            std::vector<i64> idx;
            std::optional<i64> value;
            std::vector<std::string> toks{tok};
            while (ls >> tok) toks.push_back(tok);
            if (toks.size() != pf.m + 1) bad("expected m index entries and a value");
            for (std::size_t i = 0; i < pf.m; ++i) idx.push_back(std::stoll(toks[i]));
            if (toks.back() != "?") value = std::stoll(toks.back());
            pf.rows.emplace_back(std::move(idx), value);
        }
    }
    if (pf.kind.empty() || pf.p == 0 || pf.m == 0 || pf.d < 0)
        throw std::invalid_argument("codeword file: incomplete header");
    return pf;
}

}  // namespace detail

inline std::pair<AnyCode, Word> read_codeword(std::istream& in) {
    auto pf = detail::parse_codeword_file(in);
    PrimeField F(pf.p);
    auto build_labels = [&] {
        std::vector<Fp> lab;
        for (i64 v : pf.labels) lab.push_back(F(v));
        return lab;
    };
    AnyCode code = [&]() -> AnyCode {
        if (pf.kind == "cap") return CapCode(F, pf.m, pf.d, build_labels());
        if (pf.kind == "rm-grid") return RmGridCode(F, pf.m, pf.d, build_labels());
        if (pf.kind == "gap") {
            if (!pf.alphas.empty()) {
                std::vector<Fp> alphas;
                for (i64 v : pf.alphas) alphas.push_back(F(v));
                return GapCode(vandermonde_family(F, alphas, pf.m), pf.d);
            }
            std::vector<AffineForm> forms;
            for (const auto& row : pf.form_rows) {
                if (row.size() != pf.m + 1)
                    throw std::invalid_argument("codeword file: form rows need 1 + m coefficients");
                AffineForm f;
                f.constant = F(row[0]);
                for (std::size_t i = 1; i <= pf.m; ++i) f.coeffs.push_back(F(row[i]));
                forms.push_back(std::move(f));
            }
            return GapCode(HyperplaneFamily(F, forms), pf.d);
        }
        throw std::invalid_argument("codeword file: unknown kind '" + pf.kind + "'");
    }();

    const std::size_t n = std::visit([](const auto& c) { return c.block_length(); }, code);
    if (pf.rows.size() != n) throw std::invalid_argument("codeword file: wrong number of data rows");
    Word w(n);
    std::vector<bool> seen(n, false);
    for (const auto& [idx, value] : pf.rows) {
        std::size_t pos;
        if (std::holds_alternative<GapCode>(code)) {
            std::vector<int> sub(idx.begin(), idx.end());
            pos = std::get<GapCode>(code).position(sub);
        } else {
            Exponents e;
            for (i64 v : idx) {
                if (v < 0) throw std::invalid_argument("codeword file: negative index");
                e.push_back(static_cast<unsigned>(v));
            }
            if (std::holds_alternative<CapCode>(code)) {
                pos = std::get<CapCode>(code).position(e);
            } else {
                const auto& rm = std::get<RmGridCode>(code);
                auto it = std::find(rm.domain().begin(), rm.domain().end(), e);
                if (it == rm.domain().end()) throw std::invalid_argument("codeword file: index outside the grid");
                pos = static_cast<std::size_t>(it - rm.domain().begin());
            }
        }
        if (seen[pos]) throw std::invalid_argument("codeword file: duplicate row");
        seen[pos] = true;
        if (value) w[pos] = F(*value);
    }
    return {std::move(code), std::move(w)};
}

inline void write_codeword(std::ostream& os, const AnyCode& code, const Word& w) {
    const std::size_t n = std::visit([](const auto& c) { return c.block_length(); }, code);
    if (w.size() != n) throw std::invalid_argument("write_codeword: length mismatch");
    os << "# capgap codeword\n";
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            os << "kind " << (std::is_same_v<T, CapCode>  ? "cap"
                              : std::is_same_v<T, GapCode> ? "gap"
                                                           : "rm-grid")
               << "\n";
            os << "p " << c.field().modulus() << "\n";
            os << "m " << c.nvars() << "\n";
            os << "d " << c.degree() << "\n";
            if constexpr (std::is_same_v<T, GapCode>) {
                if (c.family().vandermonde_alphas()) {
                    os << "alphas";
                    for (const auto& a : *c.family().vandermonde_alphas()) os << " " << a.value();
                    os << "\n";
                } else {
                    for (const auto& f : c.family().forms()) {
                        os << "form " << f.constant.value();
                        for (const auto& a : f.coeffs) os << " " << a.value();
                        os << "\n";
                    }
                }
            } else {
                os << "labels";
                for (const auto& a : c.labels()) os << " " << a.value();
                os << "\n";
            }
            os << "data\n";
            if constexpr (std::is_same_v<T, GapCode>) {
                for (std::size_t i = 0; i < n; ++i) {
                    for (int v : c.subsets()[i]) os << v << " ";
                    if (w[i])
                        os << w[i]->value() << "\n";
                    else
                        os << "?\n";
                }
            } else {
                for (std::size_t i = 0; i < n; ++i) {
                    for (unsigned v : c.domain()[i]) os << v << " ";
                    if (w[i])
                        os << w[i]->value() << "\n";
                    else
                        os << "?\n";
                }
            }
        },
        code);
}

// ---------------------------------------------------------------------------
// Shape files: '#' comments; either one header line `m ell kind` with kind in
// {grid, simplex, step}, or an explicit point list, one point per line.
// ---------------------------------------------------------------------------

inline Shape read_shape(std::istream& in) {
    std::string line;
    std::vector<std::vector<unsigned>> pts;
    std::optional<Shape> named;
    bool first = true;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (toks.empty()) continue;
        if (first && toks.size() == 3 && !std::isdigit(static_cast<unsigned char>(toks[2][0]))) {
            std::size_t m = std::stoul(toks[0]);
            unsigned ell = static_cast<unsigned>(std::stoul(toks[1]));
            const std::string& kind = toks[2];
            if (kind == "grid")
                named = make_grid(m, ell);
            else if (kind == "simplex")
                named = make_simplex(m, ell);
            else if (kind == "step")
                named = make_step(ell);
            else
                throw std::invalid_argument("shape file: unknown kind '" + kind + "'");
            first = false;
            continue;
        }
        first = false;
        std::vector<unsigned> p;
        for (const auto& tok : toks) p.push_back(static_cast<unsigned>(std::stoul(tok)));
        pts.push_back(std::move(p));
    }
    if (named) {
        if (!pts.empty()) throw std::invalid_argument("shape file: both header and explicit points");
        return *named;
    }
    if (pts.empty()) throw std::invalid_argument("shape file: empty");
    return Shape(pts[0].size(), pts);
}

inline void write_shape(std::ostream& os, const Shape& S) {
    os << "# capgap shape (explicit point list)\n";
    for (const auto& p : S.points()) {
        for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
        os << "\n";
    }
}

inline nlohmann::json test_report_json(const TestReport& rep) {
    nlohmann::json j;
    j["mode"] = rep.mode == TestReport::Mode::line_point ? "line-point" : "plane-point";
    j["exact"] = rep.exact;
    if (!rep.exact) {
        j["trials"] = rep.trials;
        j["seed"] = rep.seed;
    }
    j["rejected"] = rep.rejected;
    j["total"] = rep.total;
    j["p_reject"] = rep.rejection_probability();
    if (!rep.per_object_rejections.empty()) j["breakdown"] = rep.per_object_rejections;
    return j;
}

}  // namespace capgap
