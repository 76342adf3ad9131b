#include "doctest.h"
#include "oracles.hpp"

#include <random>

#include "interprime/errors.hpp"
#include "interprime/intpoly.hpp"

using namespace interprime;

namespace {

IntPoly P(std::initializer_list<long> c) { return IntPoly(c); }

}  // namespace

TEST_CASE("parse_poly reads expressions and list form")
{
    CHECK(parse_poly("x^2-1") == P({-1, 0, 1}));
    CHECK(parse_poly("[0,0,1]") == P({0, 0, 1}));
    CHECK(parse_poly("2x^3+3x^2+x") == P({0, 1, 3, 2}));
    CHECK(parse_poly("  2 x ^ 3 +  3x^2 + x ") == P({0, 1, 3, 2}));
    CHECK(parse_poly("x + x + x^2 - 3x") == P({0, -1, 1}));
    CHECK(parse_poly("-x^2+1") == P({1, 0, -1}));
    CHECK(parse_poly("(x^3-19)(x^2+x+1)") == P({-19, -19, -19, 1, 1, 1}));
    CHECK(parse_poly("(x-1)^2") == P({1, -2, 1}));
    CHECK(parse_poly("[ -4, 0 , 1 ]") == P({-4, 0, 1}));
    CHECK(parse_poly("123456789012345678901234567890x").coeffs()[1] ==
          Integer("123456789012345678901234567890"));
}

TEST_CASE("parse_poly rejects malformed input with a position")
{
    CHECK_THROWS_AS(parse_poly("x^2 + 1.5"), ParseError);
    CHECK_THROWS_AS(parse_poly("x^"), ParseError);
    CHECK_THROWS_AS(parse_poly("[1,2"), ParseError);
    CHECK_THROWS_AS(parse_poly("x y"), ParseError);
    CHECK_THROWS_AS(parse_poly(""), ParseError);
    try {
        parse_poly("x^2 + 1.5");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 7);
    }
}

TEST_CASE("evaluate and derivative")
{
    CHECK(evaluate(P({0, 0, 1}), 12) == 144);
    CHECK(evaluate(P({-1, 0, 1}), 1) == 0);
    // (x^3 - 19)(x^2 + x + 1) expanded independently
    IntPoly prod = P({-19, 0, 0, 1}) * P({1, 1, 1});
    CHECK(prod == P({-19, -19, -19, 1, 1, 1}));
    CHECK(evaluate(prod, 0) == -19);

    CHECK(derivative(P({0, 0, 1})) == P({0, 2}));
    CHECK(derivative(P({-1, 0, 1})) == P({0, 2}));
    CHECK(derivative(P({5})).is_zero());
}

TEST_CASE("content ignores the constant term")
{
    CHECK(content(P({-1, 0, 1})) == 1);
    CHECK(content(P({0, -2, 2})) == 2);
    CHECK(content(P({4, -10, 6})) == 2);
    CHECK_THROWS_AS(content(P({7})), DomainError);
}

TEST_CASE("growth_bounds and the sandwich inequality")
{
    auto g = growth_bounds(P({0, 0, 1}));
    CHECK(g.leading == 1);
    CHECK(g.bound == 0);
    g = growth_bounds(P({-1, 0, 1}));
    CHECK(g.bound == 2);
    // at x = 2: 1/2*4 <= 3 <= 3/2*4
    CHECK(Rational(1, 2) * 4 <= evaluate(P({-1, 0, 1}), 2));
    CHECK(Rational(evaluate(P({-1, 0, 1}), 2)) <= Rational(3, 2) * 4);
    g = growth_bounds(P({0, 1, 3, 2}));
    CHECK(g.leading == 2);
    CHECK(g.bound == 4);
    CHECK_THROWS_AS(growth_bounds(P({3})), DomainError);
}

TEST_CASE("property: sandwich holds on [ceil B, ceil B + 100] for random positive-lead f")
{
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 200; ++trial) {
        int deg = 1 + static_cast<int>(rng() % 6);
        IntPoly f = oracle::random_poly(rng, deg, 50, true);
        auto gb = growth_bounds(f);
        Integer start;
        mpz_cdiv_q(start.get_mpz_t(), gb.bound.get_num().get_mpz_t(), gb.bound.get_den().get_mpz_t());
        for (int i = 0; i <= 100; ++i) {
            Integer x = start + i;
            Integer xk;
            mpz_pow_ui(xk.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(deg));
            Rational lo = Rational(gb.leading * xk, 2);
            Rational hi = Rational(3 * gb.leading * xk, 2);
            Rational v(f(x));
            REQUIRE(lo <= v);
            REQUIRE(v <= hi);
        }
    }
}

TEST_CASE("squarefree_decomposition examples")
{
    auto d = squarefree_decomposition(P({0, 0, 1}));
    REQUIRE(d.factors.size() == 1);
    CHECK(d.unit == 1);
    CHECK(d.factors[0].poly == P({0, 1}));
    CHECK(d.factors[0].exponent == 2);

    d = squarefree_decomposition(P({1, -1, -1, 1}));  // (x+1)(x-1)^2
    REQUIRE(d.factors.size() == 2);
    CHECK(d.factors[0].poly == P({1, 1}));
    CHECK(d.factors[0].exponent == 1);
    CHECK(d.factors[1].poly == P({-1, 1}));
    CHECK(d.factors[1].exponent == 2);

    d = squarefree_decomposition(P({-2, 0, 1}));
    REQUIRE(d.factors.size() == 1);
    CHECK(d.factors[0].exponent == 1);

    d = squarefree_decomposition(P({-6, 0, -6}));
    CHECK(d.unit == -6);
    CHECK(d.expand() == P({-6, 0, -6}));
    CHECK_THROWS_AS(squarefree_decomposition(IntPoly{}), DomainError);
}

TEST_CASE("property: squarefree decomposition re-expands and factors are coprime and squarefree")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 150; ++trial) {
        IntPoly f = IntPoly::constant(1);
        int deg = 0;
        while (deg < 2) {
            int g_deg = 1 + static_cast<int>(rng() % 2);
            IntPoly g = oracle::random_poly(rng, g_deg, 4);
            int e = 1 + static_cast<int>(rng() % 3);
            if (deg + g_deg * e > 8) break;
            for (int i = 0; i < e; ++i) f *= g;
            deg += g_deg * e;
        }
        if (f.degree() < 1) continue;
        auto dec = squarefree_decomposition(f);
        REQUIRE(dec.expand() == f);
        for (std::size_t i = 0; i < dec.factors.size(); ++i) {
            const IntPoly& gi = dec.factors[i].poly;
            CHECK(gcd(gi, derivative(gi)).degree() == 0);
            for (std::size_t j = i + 1; j < dec.factors.size(); ++j) {
                CHECK(gcd(gi, dec.factors[j].poly).degree() == 0);
            }
        }
    }
}

TEST_CASE("semidiscriminant examples")
{
    CHECK(semidiscriminant(P({0, 0, 1})) == 1);
    CHECK(semidiscriminant(P({-1, 0, 1})) == -4);
    CHECK(semidiscriminant(P({1, 0, 1})) == 4);
    CHECK_THROWS_AS(semidiscriminant(P({5})), DomainError);
    // separable case: sign relation to the classical discriminant
    IntPoly cubic = P({-2, 0, 0, 1});
    CHECK(discriminant(cubic) == -108);
    CHECK(semidiscriminant(cubic) == 108);  // (-1)^(3*2/2) * disc
}

TEST_CASE("property: |semidiscriminant| matches the numeric-roots oracle (known generator roots)")
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> coef(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
        IntPoly f = IntPoly::constant(1);
        std::vector<oracle::NumericRoot> roots;
        int deg = 0;
        while (true) {
            std::vector<long> gc;
            int g_deg = 1 + static_cast<int>(rng() % 2);
            for (int i = 0; i <= g_deg; ++i) gc.push_back(coef(rng));
            while (gc.back() == 0) gc.back() = coef(rng);
            int e = 1 + static_cast<int>(rng() % 3);
            if (deg + g_deg * e > 8) break;
            IntPoly g(std::vector<Integer>(gc.begin(), gc.end()));
            for (int i = 0; i < e; ++i) f *= g;
            for (auto r : oracle::small_roots(gc)) roots.push_back({r, e});
            deg += g_deg * e;
        }
        if (f.degree() < 1) continue;
        auto merged = oracle::merge_roots(roots);
        double expected = oracle::log_semidiscriminant(oracle::log_abs(f.leading()), f.degree(), merged);
        Integer exact = semidiscriminant(f);
        REQUIRE(exact != 0);
        CHECK(std::fabs(oracle::log_abs(exact) - expected) < 1e-6);
    }
}

TEST_CASE("property: |semidiscriminant| matches Durand-Kerner roots for random squarefree f")
{
    std::mt19937_64 rng(1234);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        int deg = 1 + static_cast<int>(rng() % 8);
        IntPoly f = oracle::random_poly(rng, deg, 1'000'000);
        if (gcd(f, derivative(f)).degree() > 0) continue;
        std::vector<double> c;
        for (const auto& x : f.coeffs()) c.push_back(x.get_d());
        std::vector<oracle::NumericRoot> roots;
        for (auto r : oracle::durand_kerner(c)) roots.push_back({r, 1});
        double expected = oracle::log_semidiscriminant(oracle::log_abs(f.leading()), deg, roots);
        CHECK(std::fabs(oracle::log_abs(semidiscriminant(f)) - expected) < 1e-6);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("affine_compose")
{
    CHECK(affine_compose(P({0, 0, 1}), 2, -1) == P({1, -4, 4}));
    CHECK(affine_compose(P({-1, 0, 1}), 1, 0) == P({-1, 0, 1}));
    CHECK(affine_compose(P({-1, 0, 1}), 6, -5) == P({24, -60, 36}));
    CHECK_THROWS_AS(affine_compose(P({-1, 0, 1}), 0, 3), DomainError);
}

TEST_CASE("property: derivative is linear")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        IntPoly f = oracle::random_poly(rng, static_cast<int>(rng() % 7), 1000);
        IntPoly g = oracle::random_poly(rng, static_cast<int>(rng() % 7), 1000);
        CHECK(derivative(f + g) == derivative(f) + derivative(g));
    }
}

TEST_CASE("resultant and exact division")
{
    // Res(x - a, x - b) = a - b
    CHECK(resultant(P({-3, 1}), P({-7, 1})) == -4);
    CHECK(resultant(P({-1, 0, 1}), P({1, 0, 1})) == 4);
    CHECK(divexact(P({-1, 0, 1}), P({-1, 1})) == P({1, 1}));
    CHECK_THROWS_AS(divexact(P({1, 0, 1}), P({-1, 1})), InexactDivision);
    CHECK(gcd(P({-1, 0, 1}), P({-2, 2})) == P({-1, 1}));
}
