#include "doctest.h"
#include "oracles.hpp"

#include <cstdlib>

#include "interprime/errors.hpp"
#include "interprime/primes.hpp"

using namespace interprime;

namespace {

// trial-division classification, independent of the sieve
ChenClass::Kind oracle_chen(std::uint64_t p, std::uint64_t* a, std::uint64_t* b)
{
    auto f = oracle::factor_td(p + 2);
    if (f.size() == 1) return ChenClass::Kind::ViaPrime;
    if (f.size() == 2) {
        // p1^11 > p^3 via logs with a wide safety check on near-ties
        long double lhs = 11.0L * std::log(static_cast<long double>(f[0]));
        long double rhs = 3.0L * std::log(static_cast<long double>(p));
        REQUIRE(std::fabs(lhs - rhs) > 1e-9L);
        *a = f[0];
        *b = f[1];
        if (lhs > rhs) return ChenClass::Kind::ViaSemiprime;
    }
    return ChenClass::Kind::NotChen;
}

}  // namespace

TEST_CASE("sieve counts")
{
    CHECK(sieve(100).count() == 25);
    auto t2 = sieve(2);
    CHECK(t2.count() == 1);
    CHECK(t2.primes() == std::vector<std::uint64_t>{2});
    CHECK(sieve(1).count() == 0);
    CHECK_THROWS_AS(sieve(0), DomainError);
}

TEST_CASE("sieve agrees with trial division and spf is the least factor")
{
    auto t = sieve(20000);
    for (std::uint64_t n = 1; n <= 20000; ++n) {
        REQUIRE(t.is_prime(n) == oracle::is_prime_td(n));
        if (n >= 2) REQUIRE(t.spf(n) == oracle::factor_td(n).front());
        REQUIRE(t.is_prime(n) == (n >= 2 && t.spf(n) == n));
    }
    CHECK(t.spf(20001) == 3);
    CHECK(t.spf(20002) == 2);
}

TEST_CASE("sieve at 10^6 crosses segment boundaries")
{
    auto t = sieve(1'000'000);
    CHECK(t.count() == 78498);
    // independent recount around the first segment boundary (2^20 > 10^6, so use a bigger table)
    auto big = sieve(3'000'000);
    CHECK(big.count_upto(1'000'000) == 78498);
    for (std::uint64_t n = (1u << 20) - 200; n <= (1u << 20) + 200; ++n) {
        REQUIRE(big.is_prime(n) == oracle::is_prime_td(n));
    }
    for (std::uint64_t n = (1u << 21) - 200; n <= (1u << 21) + 200; ++n) {
        REQUIRE(big.is_prime(n) == oracle::is_prime_td(n));
    }
}

TEST_CASE("sieve cap is enforced and overridable")
{
    CHECK_THROWS_AS(sieve(kDefaultSieveCap + 1), DomainError);
    setenv("INTERPRIME_SIEVE_CAP", "50", 1);
    CHECK_THROWS_AS(sieve(51), DomainError);
    CHECK(sieve(50).count() == 15);
    unsetenv("INTERPRIME_SIEVE_CAP");
}

TEST_CASE("classify_chen examples")
{
    auto t = sieve(1000);
    auto c = classify_chen(2, t);
    CHECK(c.kind == ChenClass::Kind::ViaSemiprime);
    CHECK(c.p1 == 2);
    CHECK(c.p2 == 2);
    c = classify_chen(43, t);
    CHECK(c.kind == ChenClass::Kind::NotChen);
    CHECK(c.reason == ChenClass::Reason::TooManyFactors);
    c = classify_chen(211, t);
    CHECK(c.kind == ChenClass::Kind::NotChen);
    CHECK(c.reason == ChenClass::Reason::SmallFactor);
    CHECK(classify_chen(3, t).kind == ChenClass::Kind::ViaPrime);
    CHECK_THROWS_AS(classify_chen(999, t), DomainError);
    CHECK_THROWS_AS(classify_chen(9, t), DomainError);
}

TEST_CASE("exact cutoff at the boundary")
{
    CHECK_FALSE(exceeds_chen_cutoff(3, 211));
    CHECK(exceeds_chen_cutoff(2, 2));
    // 3^11 = 177147; 56^3 = 175616 < 177147 < 57^3 = 185193
    CHECK(exceeds_chen_cutoff(3, 56));
    CHECK_FALSE(exceeds_chen_cutoff(3, 57));
    CHECK(exceeds_chen_cutoff(100000, 1'000'000'000'000ULL));
}

TEST_CASE("property: Chen classification matches trial division for all primes <= 10^4")
{
    auto t = sieve(10'000);
    ChenTable chen(t);
    REQUIRE(chen.primes().size() == 1229);
    for (std::size_t i = 0; i < chen.primes().size(); ++i) {
        std::uint64_t p = chen.primes()[i];
        std::uint64_t a = 0, b = 0;
        auto expected = oracle_chen(p, &a, &b);
        const auto& c = chen.classes()[i];
        REQUIRE(c.kind == expected);
        if (c.kind == ChenClass::Kind::ViaSemiprime) {
            CHECK(c.p1 == a);
            CHECK(c.p2 == b);
            CHECK(c.p1 * c.p2 == p + 2);
        }
    }
}

TEST_CASE("density_report")
{
    auto rows = density_report(100);
    REQUIRE(rows.size() == 10);
    std::uint64_t chen100 = 0;
    for (std::uint64_t p = 2; p <= 100; ++p) {
        std::uint64_t a, b;
        if (oracle::is_prime_td(p) && oracle_chen(p, &a, &b) != ChenClass::Kind::NotChen) ++chen100;
    }
    CHECK(rows.back().n == 100);
    CHECK(rows.back().chen == chen100);
    CHECK(rows.back().primes == 25);

    rows = density_report(10'000);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].primes >= rows[i - 1].primes);
        CHECK(rows[i].chen >= rows[i - 1].chen);
    }
    CHECK_THROWS_AS(density_report(99), DomainError);
}

TEST_CASE("property: ratio band at 10^6")
{
    auto rows = density_report(1'000'000);
    double lo = 1e300, hi = 0;
    for (std::size_t i = 5; i < 10; ++i) {
        lo = std::min(lo, rows[i].ratio);
        hi = std::max(hi, rows[i].ratio);
        CHECK(rows[i].chen > rows[i - 1].chen);
    }
    CHECK(hi <= 3 * lo);
}
