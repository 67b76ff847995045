#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "capgap/shapes.hpp"

using namespace capgap;

TEST_CASE("shape constructors and sizes", "[shapes]") {
    CHECK(make_simplex(2, 4).size() == 10);  // binom(5,2)
    CHECK(make_step(4).size() == 12);        // (3/4) * 16
    CHECK(make_grid(2, 3).size() == 9);
    CHECK(make_simplex(3, 4).size() == 20);  // binom(6,3)
    CHECK_THROWS_AS(make_step(3), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0, 2), std::invalid_argument);
}

TEST_CASE("downward closed predicate", "[shapes]") {
    CHECK(is_downward_closed({{0, 0}, {1, 0}, {0, 1}}));
    CHECK(!is_downward_closed({{1, 1}}));
    CHECK(is_downward_closed(make_simplex(3, 3).points()));
    CHECK(is_downward_closed(make_step(4).points()));
    CHECK_THROWS_AS(Shape(2, {{1, 1}}), std::invalid_argument);
}

TEST_CASE("robustness values", "[shapes]") {
    CHECK(robustness(make_grid(2, 4), 2).value == 8);    // relative 1/2 = 1 - d/l
    CHECK(robustness(make_simplex(2, 4), 2).value == 3);  // binom(3,2)
    CHECK(robustness(make_step(4), 2).value == 4);        // relative 1/3 = (2/3)(1 - d/l)

    // grid closed form 1 - d/l for d <= l
    for (unsigned l = 1; l <= 4; ++l)
        for (unsigned d = 0; d <= l; ++d)
            for (std::size_t m = 1; m <= 3; ++m) {
                long long n = 1;
                for (std::size_t i = 0; i < m; ++i) n *= l;
                CHECK(robustness(make_grid(m, l), d).value * static_cast<long long>(l) ==
                      n * static_cast<long long>(l - d));
            }

    // simplex closed form binom(m + l - d - 1, m)
    auto binom = [](long long n, long long k) {
        if (k < 0 || k > n) return 0ll;
        long long r = 1;
        for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    for (std::size_t m = 1; m <= 3; ++m)
        for (unsigned l = 1; l <= 5; ++l)
            for (unsigned d = 0; d < l; ++d)
                CHECK(robustness(make_simplex(m, l), d).value ==
                      binom(static_cast<long long>(m + l - d - 1), static_cast<long long>(m)));
}

TEST_CASE("shifting", "[shapes]") {
    // slice compaction in the second axis
    auto s = shift({{0, 2}, {0, 5}}, 1);
    CHECK(s == std::vector<Point>{{0, 0}, {0, 1}});

    // the grid is a fixed point of every shift
    auto grid = make_grid(2, 3).points();
    CHECK(shift(grid, 0) == grid);
    CHECK(shift(grid, 1) == grid);

    // shift preserves cardinality, and sigma_j(A u B) = sigma_j(A) u sigma_j(B)
    // for sets disjoint in some other coordinate
    std::mt19937_64 rng(5);
    for (int it = 0; it < 100; ++it) {
        std::set<Point> A, B;
        for (int k = 0; k < 6; ++k) {
            // A lives in x < 3, B in x >= 3: disjoint in coordinate 0
            A.insert({rng() % 3, static_cast<unsigned>(rng() % 5)});
            B.insert({3 + rng() % 3, static_cast<unsigned>(rng() % 5)});
        }
        std::vector<Point> av(A.begin(), A.end()), bv(B.begin(), B.end());
        std::vector<Point> uni = av;
        uni.insert(uni.end(), bv.begin(), bv.end());
        auto lhs = shift(uni, 1);
        auto sa = shift(av, 1), sb = shift(bv, 1);
        std::vector<Point> rhs = sa;
        rhs.insert(rhs.end(), sb.begin(), sb.end());
        std::sort(rhs.begin(), rhs.end());
        CHECK(lhs == rhs);
        CHECK(lhs.size() == uni.size());
    }

    // |S n Z| <= |S n shift(Z, i)| for downward-closed S
    Shape S = make_simplex(2, 5);
    for (int it = 0; it < 100; ++it) {
        std::set<Point> Z;
        for (int k = 0; k < 8; ++k) Z.insert({rng() % 6, static_cast<unsigned>(rng() % 6)});
        std::vector<Point> zv(Z.begin(), Z.end());
        for (std::size_t axis = 0; axis < 2; ++axis) {
            auto sz = shift(zv, axis);
            auto count = [&](const std::vector<Point>& v) {
                std::size_t c = 0;
                for (const auto& p : v)
                    if (S.contains(p)) ++c;
                return c;
            };
            CHECK(count(zv) <= count(sz));
        }
    }
}

TEST_CASE("min nonzeros brute force", "[shapes]") {
    PrimeField F5(5);

    // univariate: the degree mantra, n - d nonzeros
    for (unsigned n = 2; n <= 5; ++n)
        for (unsigned d = 0; d < n; ++d)
            CHECK(min_nonzeros_bruteforce(make_grid(1, n), d, F5).min_count == n - d);

    // matches robustness exactly on the simplex
    auto simplex = make_simplex(2, 4);
    auto r = min_nonzeros_bruteforce(simplex, 2, F5);
    CHECK(r.min_count == 3);
    CHECK(r.min_count == robustness(simplex, 2).value);
    CHECK(!r.witness.is_zero());

    // grid(2,3), d=1: equals Pi_1 = 6
    auto g = min_nonzeros_bruteforce(make_grid(2, 3), 1, F5);
    CHECK(g.min_count == 6);
    CHECK(g.min_count == robustness(make_grid(2, 3), 1).value);

    // the guard rejects oversized instances
    CHECK_THROWS_AS(min_nonzeros_bruteforce(make_grid(2, 5), 5, PrimeField(101)), std::invalid_argument);
}

TEST_CASE("zero pattern check", "[shapes]") {
    PrimeField F7(7);
    Shape grid = make_grid(2, 5).with_default_labels(F7);

    // univariate-in-X polynomial with d roots: composition (d, 0)
    MultiPoly f(F7, 2);
    f.add_term({2, 0}, F7(1));
    f.add_term({1, 0}, F7(4));
    f.add_term({0, 0}, F7(3));  // (X+1)(X+3)
    auto comp = zero_pattern_check(f, grid);
    REQUIRE(comp.has_value());
    CHECK(exponents_degree(*comp) == 2);

    // f = X*Y: zeros are two axis lines, composition (1,1) works
    MultiPoly xy = MultiPoly::variable(F7, 2, 0) * MultiPoly::variable(F7, 2, 1);
    auto comp2 = zero_pattern_check(xy, grid);
    REQUIRE(comp2.has_value());

    // random bivariate polynomials of degree <= 3 always pass
    std::mt19937_64 rng(23);
    for (int it = 0; it < 60; ++it) {
        MultiPoly r(F7, 2);
        for (const auto& e : monomials_up_to_degree(2, 3)) r.add_term(e, F7.from_raw(rng() % 7));
        if (r.is_zero()) continue;
        CHECK(zero_pattern_check(r, grid).has_value());
    }

    CHECK_THROWS_AS(zero_pattern_check(MultiPoly(F7, 2), grid), std::invalid_argument);
}

TEST_CASE("smallest robust shape search", "[shapes]") {
    // delta = 1 forces d = 0; a single point suffices
    auto r1 = min_size_search(0, 1, 1, 4, 4);
    REQUIRE(r1.has_value());
    CHECK(r1->size == 1);
    CHECK(!min_size_search(1, 1, 1, 4, 4).has_value());

    // delta just above 1/2: every qualifying shape contains (d,d)
    for (unsigned d : {1u}) {
        auto res = min_size_search(d, 51, 100, 4, 4);
        REQUIRE(res.has_value());
        CHECK(res->witness.contains({d, d}));
        // and the reported optimum satisfies |S| >= (sqrt(delta*|S| + d^2/4) + d/2)^2,
        // i.e. 4|S| >= (sqrt(4*delta*|S| + d^2) + d)^2 with delta the achieved robustness
        auto rob = robustness(res->witness, d);
        double N = static_cast<double>(res->size);
        double delta = static_cast<double>(rob.value) / N;
        double lhs = 4.0 * N;
        double rhs = std::sqrt(4.0 * delta * N + d * d) + d;
        CHECK(lhs >= rhs * rhs - 1e-9);
    }

    // d=1, delta=1/2, box 4x4: same inequality for the optimum
    auto res = min_size_search(1, 1, 2, 4, 4);
    REQUIRE(res.has_value());
    auto rob = robustness(res->witness, 1);
    double N = static_cast<double>(res->size);
    double delta = static_cast<double>(rob.value) / N;
    CHECK(4.0 * N >= std::pow(std::sqrt(4.0 * delta * N + 1.0) + 1.0, 2) - 1e-9);
}

TEST_CASE("every qualifying shape above half robustness contains (d,d)", "[shapes]") {
    // exhaustive over profiles in a 4x4 box, d in {1,2}
    for (unsigned d : {1u, 2u}) {
        std::vector<unsigned> h(4, 0);
        for (;;) {
            std::vector<Point> pts;
            for (unsigned x = 0; x < 4; ++x)
                for (unsigned y = 0; y < h[x]; ++y) pts.push_back({x, y});
            if (!pts.empty()) {
                Shape S(2, pts);
                auto rob = robustness(S, d);
                if (2 * rob.value > static_cast<long long>(S.size())) CHECK(S.contains({d, d}));
            }
            std::size_t i = 4;
            bool done = false;
            while (i-- > 0) {
                unsigned cap = (i == 0) ? 4 : h[i - 1];
                if (h[i] < cap) {
                    ++h[i];
                    for (std::size_t j = i + 1; j < 4; ++j) h[j] = 0;
                    break;
                }
                if (i == 0) done = true;
            }
            if (done) break;
        }
    }
}
