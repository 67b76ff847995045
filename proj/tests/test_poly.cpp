#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "capgap/poly.hpp"

using namespace capgap;

namespace {

MultiPoly random_poly(const PrimeField& F, std::size_t m, unsigned maxdeg, std::mt19937_64& rng) {
    MultiPoly f(F, m);
    std::uniform_int_distribution<u64> coeff(0, F.modulus() - 1);
    for (const auto& e : monomials_up_to_degree(m, maxdeg)) f.add_term(e, F.from_raw(coeff(rng)));
    return f;
}

std::vector<Fp> random_point(const PrimeField& F, std::size_t m, std::mt19937_64& rng) {
    std::uniform_int_distribution<u64> d(0, F.modulus() - 1);
    std::vector<Fp> x;
    for (std::size_t i = 0; i < m; ++i) x.push_back(F.from_raw(d(rng)));
    return x;
}

}  // namespace

TEST_CASE("evaluation", "[poly]") {
    PrimeField F7(7);
    MultiPoly f = MultiPoly::variable(F7, 2, 0) + MultiPoly::variable(F7, 2, 1) * F7(2);  // X + 2Y
    CHECK(f.evaluate({F7(1), F7(1)}) == F7(3));

    MultiPoly z(F7, 2);
    CHECK(z.evaluate({F7(4), F7(6)}) == F7(0));

    PrimeField F5(5);
    MultiPoly xyz = MultiPoly::variable(F5, 3, 0) * MultiPoly::variable(F5, 3, 1) * MultiPoly::variable(F5, 3, 2);
    CHECK(xyz.evaluate({F5(2), F5(3), F5(4)}) == F5(24));
    CHECK(xyz.evaluate({F5(2), F5(3), F5(4)}).value() == 4);

    CHECK_THROWS_AS(f.evaluate({F7(1)}), std::invalid_argument);
}

TEST_CASE("hyperplane restriction", "[poly]") {
    PrimeField F7(7);
    // f = X2 - X1 restricted to X2 = X1 vanishes
    MultiPoly f = MultiPoly::variable(F7, 2, 1) - MultiPoly::variable(F7, 2, 0);
    AffineForm L{F7(0), {F7(1)}};
    CHECK(restrict_to_hyperplane(f, L).is_zero());

    // f = X2^2 at X2 = X1 + 1 becomes X1^2 + 2X1 + 1
    MultiPoly g = MultiPoly::variable(F7, 2, 1) * MultiPoly::variable(F7, 2, 1);
    AffineForm L2{F7(1), {F7(1)}};
    MultiPoly expect(F7, 1);
    expect.add_term({2}, F7(1));
    expect.add_term({1}, F7(2));
    expect.add_term({0}, F7(1));
    CHECK(restrict_to_hyperplane(g, L2) == expect);

    // E = X1, P = (X2-1)(X2-4) over F13 on the line X2 = 2X1 + 4:
    // P becomes (2X1+3)(2X1), divisible by the restriction of E
    PrimeField F13(13);
    MultiPoly X1 = MultiPoly::variable(F13, 2, 0), X2 = MultiPoly::variable(F13, 2, 1);
    MultiPoly P = (X2 - MultiPoly::constant(F13, 2, 1)) * (X2 - MultiPoly::constant(F13, 2, 4));
    AffineForm line{F13(4), {F13(2)}};
    MultiPoly Pr = restrict_to_hyperplane(P, line);
    MultiPoly Z1 = MultiPoly::variable(F13, 1, 0);
    MultiPoly expectP = (Z1 * F13(2) + MultiPoly::constant(F13, 1, 3)) * (Z1 * F13(2));
    CHECK(Pr == expectP);
    MultiPoly Er = restrict_to_hyperplane(X1, line);
    CHECK(Er == Z1);
    CHECK(poly_divide(Pr, Er).has_value());
}

TEST_CASE("line restriction", "[poly]") {
    PrimeField F7(7);
    MultiPoly f = MultiPoly::variable(F7, 2, 0) + MultiPoly::variable(F7, 2, 1);  // X+Y
    UniPoly g = restrict_to_line(f, {F7(0), F7(0)}, {F7(1), F7(1)});
    CHECK(g == UniPoly(F7, {F7(0), F7(2)}));  // 2Z

    MultiPoly xy = MultiPoly::variable(F7, 2, 0) * MultiPoly::variable(F7, 2, 1);
    CHECK(restrict_to_line(xy, {F7(1), F7(0)}, {F7(0), F7(1)}) == UniPoly(F7, {F7(0), F7(1)}));  // Z

    PrimeField F5(5);
    MultiPoly h = MultiPoly::variable(F5, 2, 0) * MultiPoly::variable(F5, 2, 0) + MultiPoly::variable(F5, 2, 1);
    UniPoly hr = restrict_to_line(h, {F5(0), F5(1)}, {F5(1), F5(2)});
    CHECK(hr == UniPoly(F5, {F5(1), F5(2), F5(1)}));  // Z^2 + 2Z + 1

    CHECK_THROWS_AS(restrict_to_line(f, {F7(0), F7(0)}, {F7(0), F7(0)}), std::invalid_argument);

    std::mt19937_64 rng(7);
    for (int it = 0; it < 50; ++it) {
        MultiPoly r = random_poly(F7, 3, 3, rng);
        auto base = random_point(F7, 3, rng);
        auto dir = random_point(F7, 3, rng);
        if (std::all_of(dir.begin(), dir.end(), [](const Fp& c) { return c.is_zero(); })) continue;
        UniPoly rl = restrict_to_line(r, base, dir);
        CHECK(rl.degree() <= std::max(r.total_degree(), 0));
        // agreement at a random parameter value
        Fp z = F7.from_raw(rng() % 7);
        std::vector<Fp> pt;
        for (std::size_t i = 0; i < 3; ++i) pt.push_back(base[i] + z * dir[i]);
        CHECK(rl.evaluate(z) == r.evaluate(pt));
    }
}

TEST_CASE("hyperplane restriction agrees with evaluation", "[poly]") {
    std::mt19937_64 rng(99);
    PrimeField F(11);
    for (int it = 0; it < 60; ++it) {
        std::size_t m = 2 + it % 2;  // 2 or 3 variables
        MultiPoly f = random_poly(F, m, 3, rng);
        AffineForm L{F.from_raw(rng() % 11), {}};
        for (std::size_t i = 0; i + 1 < m; ++i) L.coeffs.push_back(F.from_raw(rng() % 11));
        MultiPoly g = restrict_to_hyperplane(f, L);
        CHECK(g.total_degree() <= std::max(f.total_degree(), -1));
        auto a = random_point(F, m - 1, rng);
        std::vector<Fp> full = a;
        full.push_back(L.evaluate(a));
        CHECK(g.evaluate(a) == f.evaluate(full));
    }
}

TEST_CASE("graded lex predecessor", "[poly]") {
    CHECK(graded_lex_prev({1, 1}) == Exponents{0, 2});
    CHECK(graded_lex_prev({0, 0}) == std::nullopt);
    CHECK(graded_lex_prev({0, 1}) == Exponents{0, 0});
    CHECK(graded_lex_prev({0, 2}) == Exponents{1, 0});
    CHECK(graded_lex_prev({2, 0}) == Exponents{1, 1});

    // iterating prev from (d,0,...,0) enumerates every vector of degree <= d
    for (std::size_t m : {1u, 2u, 3u}) {
        for (unsigned d : {0u, 1u, 2u, 3u, 4u}) {
            Exponents v(m, 0);
            v[0] = d;
            std::size_t count = 0;
            std::optional<Exponents> cur = v;
            Exponents last = v;
            while (cur) {
                ++count;
                if (count > 1) {
                    CHECK(GradedLexLess{}(*cur, last));
                    last = *cur;
                }
                cur = graded_lex_prev(*cur);
            }
            // binom(d+m, m)
            std::size_t expect = 1;
            for (std::size_t i = 1; i <= m; ++i) expect = expect * (d + i) / i;
            CHECK(count == expect);
        }
    }
}

TEST_CASE("polynomial division", "[poly]") {
    PrimeField F7(7);
    MultiPoly X = MultiPoly::variable(F7, 2, 0), Y = MultiPoly::variable(F7, 2, 1);
    MultiPoly P = X * X - Y * Y;
    MultiPoly E = X - Y;
    auto q = poly_divide(P, E);
    REQUIRE(q.has_value());
    CHECK(*q == X + Y);

    PrimeField F13(13);
    MultiPoly X2 = MultiPoly::variable(F13, 2, 1);
    MultiPoly P2 = (X2 - MultiPoly::constant(F13, 2, 1)) * (X2 - MultiPoly::constant(F13, 2, 4));
    CHECK(!poly_divide(P2, MultiPoly::variable(F13, 2, 0)).has_value());

    CHECK(*poly_divide(E, E) == MultiPoly::constant(F7, 2, 1));

    CHECK_THROWS_AS(poly_divide(P, MultiPoly(F7, 2)), std::domain_error);

    std::mt19937_64 rng(11);
    for (int it = 0; it < 60; ++it) {
        PrimeField F(5);
        MultiPoly e = random_poly(F, 2, 2, rng);
        MultiPoly qq = random_poly(F, 2, 2, rng);
        if (e.is_zero()) continue;
        auto got = poly_divide(e * qq, e);
        REQUIRE(got.has_value());
        CHECK(*got == qq);
    }
}

TEST_CASE("coefficient extraction", "[poly]") {
    PrimeField F7(7);
    MultiPoly f = MultiPoly::variable(F7, 2, 0) + MultiPoly::variable(F7, 2, 1) * F7(2);  // X + 2Y
    CHECK(coeff_extract(f, 1, 1) == MultiPoly::constant(F7, 1, 2));
    CHECK(coeff_extract(f, 1, 0) == MultiPoly::variable(F7, 1, 0));

    MultiPoly X = MultiPoly::variable(F7, 2, 0), Y = MultiPoly::variable(F7, 2, 1);
    MultiPoly g = X * Y * Y + Y * Y * F7(3);
    CHECK(coeff_extract(g, 1, 2) == MultiPoly::variable(F7, 1, 0) + MultiPoly::constant(F7, 1, 3));
}

TEST_CASE("univariate interpolation", "[poly]") {
    PrimeField F7(7);
    UniPoly a = interpolate_univariate(F7, {{F7(0), F7(1)}, {F7(1), F7(2)}});
    CHECK(a == UniPoly(F7, {F7(1), F7(1)}));  // Z + 1

    UniPoly b = interpolate_univariate(F7, {{F7(1), F7(5)}});
    CHECK(b == UniPoly::constant(F7, F7(5)));

    std::vector<std::pair<Fp, Fp>> sq = {{F7(0), F7(0)}, {F7(1), F7(1)}, {F7(2), F7(4)}};
    UniPoly c = interpolate_univariate(F7, sq);
    CHECK(c.degree() <= 2);
    for (const auto& [x, y] : sq) CHECK(c.evaluate(x) == y);
    CHECK(c == UniPoly(F7, {F7(0), F7(0), F7(1)}));  // Z^2

    CHECK_THROWS_AS(interpolate_univariate(F7, {{F7(1), F7(5)}, {F7(1), F7(6)}}), std::invalid_argument);
}

TEST_CASE("univariate divrem", "[poly]") {
    PrimeField F7(7);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 80; ++it) {
        std::vector<Fp> ac, bc;
        for (int i = 0; i < 5; ++i) ac.push_back(F7.from_raw(rng() % 7));
        for (int i = 0; i < 3; ++i) bc.push_back(F7.from_raw(rng() % 7));
        UniPoly A(F7, ac), B(F7, bc);
        if (B.is_zero()) continue;
        auto [q, r] = divrem(A, B);
        CHECK(q * B + r == A);
        CHECK((r.is_zero() || r.degree() < B.degree()));
    }
}

TEST_CASE("substitute composes with evaluation", "[poly]") {
    PrimeField F(11);
    std::mt19937_64 rng(17);
    for (int it = 0; it < 40; ++it) {
        MultiPoly f = random_poly(F, 2, 3, rng);
        std::vector<MultiPoly> images = {random_poly(F, 2, 1, rng), random_poly(F, 2, 1, rng)};
        MultiPoly g = substitute(f, images);
        auto x = random_point(F, 2, rng);
        std::vector<Fp> y = {images[0].evaluate(x), images[1].evaluate(x)};
        CHECK(g.evaluate(x) == f.evaluate(y));
    }
}
