#include "doctest.h"
#include "oracles.hpp"

#include <set>

#include "interprime/auxfamily.hpp"
#include "interprime/errors.hpp"
#include "interprime/wtrick.hpp"

using namespace interprime;

namespace {

IntPoly P(std::initializer_list<long> c) { return IntPoly(c); }

std::vector<std::int64_t> primes_upto(long n, long residue = -1, long modulus = 1)
{
    std::vector<std::int64_t> out;
    for (long p = 2; p <= n; ++p)
        if (oracle::is_prime_td(static_cast<std::uint64_t>(p)) && (residue < 0 || p % modulus == residue))
            out.push_back(p);
    return out;
}

bool is_square(long v)
{
    if (v < 0) return false;
    long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(v))));
    return r * r == v;
}

}  // namespace

TEST_CASE("primorial")
{
    CHECK(primorial(2) == 2);
    CHECK(primorial(5) == 30);
    CHECK(primorial(13) == 30030);
    CHECK(primorial(14) == 30030);
    CHECK_THROWS_AS(primorial(1), DomainError);
}

TEST_CASE("parse_filter")
{
    auto f = parse_filter("1 mod 4");
    CHECK(f.residue == 1);
    CHECK(f.modulus == 4);
    CHECK(f.accepts(13));
    CHECK_FALSE(f.accepts(7));
    CHECK_THROWS_AS(parse_filter("1 mod 0"), DomainError);
    CHECK_THROWS_AS(parse_filter("5 mod 4"), DomainError);
    CHECK_THROWS_AS(parse_filter("x mod 4"), DomainError);
}

TEST_CASE("residue_selection examples")
{
    const std::uint64_t m = 30;
    auto sel = residue_selection(IntSet(30, primes_upto(30)), m, 2, 2);
    CHECK(sel.b == 1);
    std::vector<std::int64_t> expected;
    for (long n = 0; 2 * n + 1 <= 30; ++n)
        if (oracle::is_prime_td(static_cast<std::uint64_t>(2 * n + 1))) expected.push_back(n);
    CHECK(sel.x.members() == expected);

    auto empty = residue_selection(IntSet(30, {}), m, 6, 36);
    CHECK(empty.b == 1);
    CHECK(empty.x.empty());

    auto a = primes_upto(10000, 1, 4);
    auto sel4 = residue_selection(IntSet(10000, a), 10000, 2, 2);
    std::vector<std::int64_t> pre;
    for (auto p : a)
        if ((p - 1) / 2 <= 5000) pre.push_back((p - 1) / 2);
    CHECK(sel4.b == 1);
    CHECK(sel4.x.members() == pre);
}

TEST_CASE("residue_selection ties go to the smallest b, and Chen sources need b(b+2) coprime to W")
{
    // b = 1 and b = 5 each have one preimage
    auto sel = residue_selection(IntSet(100, {7, 11}), 100, 6, 6);
    CHECK(sel.b == 1);
    CHECK(sel.x.members() == std::vector<std::int64_t>{1});
    // with W = 6 the Chen rule excludes b = 1 (1 * 3) and keeps b = 5 (5 * 7)
    auto chen = residue_selection(IntSet(100, {7, 11}), 100, 6, 6, true);
    CHECK(chen.b == 5);
}

TEST_CASE("run_experiment on a two-element csv set")
{
    ExperimentConfig cfg;
    cfg.h = P({0, 0, 1});
    cfg.n = 41;
    cfg.t = 2;
    cfg.source = SourceKind::Csv;
    cfg.csv_set = IntSet(41, {5, 41});
    auto rep = run_experiment(cfg);
    CHECK(rep.w == 2);
    CHECK(rep.lambda == 4);
    CHECK(rep.r == 0);
    CHECK(rep.b == 1);
    REQUIRE(rep.triples.size() == 1);
    CHECK(rep.triples[0].p1 == 41);
    CHECK(rep.triples[0].p2 == 5);
    CHECK(rep.triples[0].n == 6);
    CHECK(rep.triples[0].a == 10);
    CHECK(rep.triples[0].a_prime == 1);
}

TEST_CASE("run_experiment rejects a polynomial with a local obstruction")
{
    ExperimentConfig cfg;
    cfg.h = P({1, 0, 1});
    cfg.n = 10000;
    cfg.t = 3;
    try {
        run_experiment(cfg);
        FAIL("expected NoLocalRoot");
    } catch (const NoLocalRoot& e) {
        CHECK(e.prime() == 3);
    }
    cfg.t = 2;
    CHECK_THROWS_AS(run_experiment(cfg), NoLocalRoot);
}

TEST_CASE("run_experiment on primes: verified triples, equivariance, h_W agreement")
{
    ExperimentConfig cfg;
    cfg.h = P({0, 0, 1});
    cfg.n = 10000;
    cfg.t = 3;
    cfg.expectation_diagnostic = true;
    auto rep = run_experiment(cfg);
    CHECK(rep.w == 6);
    CHECK(rep.lambda == 36);
    CHECK(rep.r == 0);
    CHECK(rep.hw == P({0, 0, 1}));
    CHECK(rep.hw == aux_poly(cfg.h, 6).poly);
    REQUIRE(!rep.triples.empty());
    CHECK(rep.expectation.has_value());
    CHECK_FALSE(rep.kappa_ok);  // 6 is far above 10000^(1/256)
    CHECK(!rep.warning.empty());

    auto a = primes_upto(10000);
    std::set<std::int64_t> aset(a.begin(), a.end());
    std::set<std::pair<long, long>> reported;
    for (const auto& t : rep.triples) {
        CHECK(oracle::is_prime_td(t.p1.get_ui()));
        CHECK(oracle::is_prime_td(t.p2.get_ui()));
        CHECK(t.p1 - t.p2 == t.n * t.n);
        reported.insert({t.p1.get_si(), t.p2.get_si()});
    }
    // oracle: every prime pair in the class b mod 36 with a square gap whose root is 0 mod 6
    const long b = rep.b.get_si();
    std::set<std::pair<long, long>> expected;
    for (auto p : a) {
        if (p % 36 != b % 36) continue;
        for (auto q : a) {
            if (q >= p || q % 36 != b % 36) continue;
            if ((p - b) / 36 > static_cast<long>(rep.m / 2)) continue;
            const long g = p - q;
            if (!is_square(g)) continue;
            const long root = std::lround(std::sqrt(static_cast<double>(g)));
            if (root % 6 == 0) expected.insert({p, q});
        }
    }
    CHECK(reported == expected);
}

TEST_CASE("run_experiment with a density filter and Chen source")
{
    ExperimentConfig cfg;
    cfg.h = P({0, 0, 1});
    cfg.n = 200000;
    cfg.t = 5;
    cfg.filter = parse_filter("1 mod 4");
    auto rep = run_experiment(cfg);
    auto a = build_source(cfg);
    CHECK(rep.lambda == 900);
    CHECK(rep.b.get_ui() % 4 == 1);
    for (const auto& t : rep.triples) {
        CHECK(verify_triple(t, cfg.h, a));
        CHECK(t.p1.get_ui() % 4 == 1);
    }

    cfg.filter.reset();
    cfg.source = SourceKind::ChenPrimes;
    cfg.n = 100000;
    cfg.t = 3;
    auto chen = run_experiment(cfg);
    Integer bb = chen.b * (chen.b + 2);
    CHECK(mpz_divisible_ui_p(bb.get_mpz_t(), 2) == 0);
    CHECK(mpz_divisible_ui_p(bb.get_mpz_t(), 3) == 0);
    auto ca = build_source(cfg);
    for (const auto& t : chen.triples) CHECK(verify_triple(t, cfg.h, ca));
}

TEST_CASE("run_experiment with x^2 - 1 maps through a nonzero shift")
{
    ExperimentConfig cfg;
    cfg.h = P({-1, 0, 1});
    cfg.n = 50000;
    cfg.t = 3;
    auto rep = run_experiment(cfg);
    CHECK(rep.r == -5);
    CHECK(rep.lambda == 6);
    CHECK(rep.hw == P({4, -10, 6}));
    for (const auto& t : rep.triples) CHECK(t.p1 - t.p2 == t.n * t.n - 1);
    CHECK(!rep.triples.empty());
}

TEST_CASE("scaling_table against the all-pairs oracle")
{
    auto rows = scaling_table(P({0, 0, 1}), SourceKind::Primes, {1000, 10000});
    auto a = primes_upto(1000);
    std::uint64_t count = 0;
    for (auto p : a)
        for (auto q : a)
            if (p > q && is_square(p - q)) ++count;
    CHECK(rows[0].pairs == count);
    CHECK(rows[1].pairs > rows[0].pairs);
}
