#include "doctest.h"
#include "oracles.hpp"

#include <random>

#include "interprime/errors.hpp"
#include "interprime/znfourier.hpp"

using namespace interprime;

namespace {

IntPoly P(std::initializer_list<long> c) { return IntPoly(c); }

ZnFun random_fun(std::mt19937_64& rng, std::size_t n, bool complex_values = true)
{
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<Complex> v(n);
    for (auto& x : v) x = Complex(u(rng), complex_values ? u(rng) : 0.0);
    return ZnFun::time(v);
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b)
{
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// direct sum_{a,d} f1(a) f2(a+d) S(d)
double direct_bilinear(const ZnFun& f1, const ZnFun& f2, const ZnFun& s)
{
    const auto n = static_cast<std::int64_t>(f1.size());
    double acc = 0;
    for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t d = 0; d < n; ++d) acc += (f1.at(a) * f2.at(a + d) * s.at(d)).real();
    }
    return acc;
}

}  // namespace

TEST_CASE("dft normalization examples")
{
    const std::size_t n = 16;
    std::vector<Complex> delta(n);
    delta[0] = 1;
    auto d = dft(ZnFun::time(delta));
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(d[i] - Complex(1.0 / n)) < 1e-15);

    auto c = dft(ZnFun::time(std::vector<Complex>(n, 1.0)));
    CHECK(std::abs(c[0] - Complex(1)) < 1e-15);
    for (std::size_t i = 1; i < n; ++i) CHECK(std::abs(c[i]) < 1e-15);

    // sign: f = delta_1 gives f^(xi) = e(xi/N)/N
    std::vector<Complex> d1(n);
    d1[1] = 1;
    auto e = dft(ZnFun::time(d1));
    CHECK(std::abs(e[1] - std::polar(1.0 / n, 2 * std::numbers::pi / n)) < 1e-15);

    CHECK_THROWS_AS(dft(e), DomainError);
    CHECK_THROWS_AS(idft(ZnFun::time(d1)), DomainError);
}

TEST_CASE("property: FFT route equals the direct O(N^2) transform")
{
    std::mt19937_64 rng(11);
    for (std::size_t n : {1, 2, 3, 7, 64, 100, 257, 1024, 2048}) {
        auto f = random_fun(rng, n);
        auto fast = dft(f);
        auto slow = oracle::direct_dft(f.values());
        CHECK(max_diff(fast.values(), slow) < 1e-9);
        CHECK(max_diff(idft(fast).values(), f.values()) < 1e-9);
    }
}

TEST_CASE("property: Parseval, Plancherel and the convolution theorem")
{
    std::mt19937_64 rng(12);
    for (std::size_t n : {64, 1024, 4096}) {
        for (int trial = 0; trial < 20; ++trial) {
            auto f = random_fun(rng, n), g = random_fun(rng, n);
            auto fh = dft(f), gh = dft(g);
            Complex lhs = 0, rhs = 0;
            double pl = 0, pr = 0;
            for (std::size_t i = 0; i < n; ++i) {
                lhs += fh[i] * std::conj(gh[i]);
                rhs += f[i] * std::conj(g[i]);
                pl += std::norm(fh[i]);
                pr += std::norm(f[i]);
            }
            rhs /= static_cast<double>(n);
            pr /= static_cast<double>(n);
            CHECK(std::abs(lhs - rhs) < 1e-9);
            CHECK(std::abs(pl - pr) < 1e-9);
            auto conv = dft(convolve(f, g));
            CHECK(max_diff(conv.values(), multiply(fh, gh).values()) < 1e-9);
        }
    }
}

TEST_CASE("convolve examples and direct oracle")
{
    std::mt19937_64 rng(13);
    const std::size_t n = 1024;
    auto f = random_fun(rng, n);
    std::vector<Complex> delta(n);
    delta[0] = 1;
    auto fd = convolve(f, ZnFun::time(delta));
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(fd[i] - f[i] / static_cast<double>(n)) < 1e-12);

    auto cc = convolve(ZnFun::time(std::vector<Complex>(8, 3.0)), ZnFun::time(std::vector<Complex>(8, 5.0)));
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(cc[i] - Complex(15)) < 1e-12);

    auto g = random_fun(rng, n);
    auto fast = convolve(f, g);
    std::vector<Complex> slow(n);
    for (std::size_t x = 0; x < n; ++x) {
        Complex acc = 0;
        for (std::size_t y = 0; y < n; ++y) acc += f[y] * g.at(static_cast<std::int64_t>(x) - static_cast<std::int64_t>(y));
        slow[x] = acc / static_cast<double>(n);
    }
    CHECK(max_diff(fast.values(), slow) < 1e-9);
    CHECK_THROWS_AS(convolve(f, random_fun(rng, 10)), DomainError);
}

TEST_CASE("build_S examples")
{
    auto s = build_S(P({0, 0, 1}), 10);
    for (std::size_t x = 0; x < 10; ++x) {
        double expected = x == 1 ? 2 : x == 4 ? 4 : 0;
        CHECK(s[x].real() == expected);
    }
    s = build_S(P({0, 0, 1}), 100);
    for (long m = 1; m <= 7; ++m) CHECK(s[static_cast<std::size_t>(m * m)].real() == 2 * m);
    double total = 0;
    for (const auto& v : s.values()) total += v.real();
    CHECK(total == 2 * 28);

    s = build_S(P({-1, 0, 1}), 10);
    CHECK(s[3].real() == 4);
    CHECK(s[0].real() == 0);
    CHECK(s[8].real() == 0);

    CHECK_THROWS_AS(build_S(P({20, -9, 1}), 1000), DomainError);  // dips after n = 0
    CHECK_THROWS_AS(build_S(P({0, 0, -1}), 100), DomainError);
}

TEST_CASE("moment_norm examples")
{
    CHECK(moment_norm(ZnFun::zeros(8, Domain::Frequency), 2) == 0);
    const std::size_t n = 64;
    std::vector<Complex> delta(n);
    delta[0] = 1;
    CHECK(std::abs(moment_norm(dft(ZnFun::time(delta)), 2) - 1 / std::sqrt(64.0)) < 1e-15);
    CHECK(std::abs(moment_norm(dft(build_S(P({0, 0, 1}), 10)), 2) - std::sqrt(2.0)) < 1e-12);
    CHECK_THROWS_AS(moment_norm(dft(ZnFun::time(delta)), 0.5), DomainError);
}

TEST_CASE("moment_by_counting hand values")
{
    auto m = moment_by_counting(P({0, 0, 1}), 10, 1);
    CHECK(m.exact == 2);
    m = moment_by_counting(P({0, 0, 1}), 100, 1);
    CHECK(m.exact == Rational(28, 5));
    CHECK(m.value == 5.6);
    CHECK(m.max_n == 7);
}

TEST_CASE("moment_by_counting against a brute-force 4-tuple enumeration")
{
    // independent: loop over all (n1,n2,m1,m2) in the support
    const std::uint64_t n = 64;
    std::vector<std::pair<long, long>> supp;  // (f(n), f'(n))
    for (long k = 1; k * k < 32; ++k) supp.push_back({k * k, 2 * k});
    mpz_class total = 0;
    for (auto a : supp)
        for (auto b : supp)
            for (auto c : supp)
                for (auto d : supp)
                    if (a.first + b.first == c.first + d.first) total += a.second * b.second * c.second * d.second;
    auto m = moment_by_counting(P({0, 0, 1}), n, 2);
    CHECK(m.weighted_solutions == total);
    double fft = moment_power(dft(build_S(P({0, 0, 1}), n)), 2);
    CHECK(std::fabs(fft - m.value) <= 1e-6 * m.value);
}

TEST_CASE("property: counting route equals FFT moments")
{
    for (const auto& f : {P({0, 0, 1}), P({-1, 0, 1})}) {
        for (unsigned s : {1u, 2u}) {
            for (std::uint64_t n : {64, 256, 1024}) {
                auto m = moment_by_counting(f, n, s);
                double fft = moment_power(dft(build_S(f, n)), s);
                CHECK(std::fabs(fft - m.value) <= 1e-6 * m.value);
            }
        }
    }
}

TEST_CASE("moment_by_counting rejects wraparound")
{
    // the support reaches f(M) ~ N/2, so s = 3 always wraps
    CHECK_THROWS_AS(moment_by_counting(P({0, 0, 1}), 100, 3), DomainError);
    CHECK_THROWS_AS(moment_by_counting(P({0, 0, 1}), 100000, 3), DomainError);
    CHECK_NOTHROW(moment_by_counting(P({0, 0, 1}), 1000, 2));
}

TEST_CASE("bilinear_count")
{
    std::mt19937_64 rng(14);
    const std::size_t n = 16;
    auto s = build_S(P({0, 0, 1}), n);
    CHECK(std::fabs(bilinear_count(ZnFun::time_real(std::vector<double>(n, 0.7)), ZnFun::zeros(n))) < 1e-12);
    auto ones = ZnFun::time_real(std::vector<double>(n, 1.0));
    double sum_s = 0;
    for (const auto& v : s.values()) sum_s += v.real();
    CHECK(std::fabs(bilinear_count(ones, s) - n * sum_s) < 1e-9);

    std::vector<double> pattern(n);
    for (int i : {1, 2, 5}) pattern[static_cast<std::size_t>(i)] = 1;
    auto f = ZnFun::time_real(pattern);
    CHECK(std::fabs(bilinear_count(f, s) - direct_bilinear(f, f, s)) < 1e-9);

    for (std::size_t nn : {64, 512, 2048}) {
        auto f1 = random_fun(rng, nn, false), f2 = random_fun(rng, nn, false);
        auto sn = build_S(P({0, 0, 1}), nn);
        double direct = direct_bilinear(f1, f2, sn);
        double spectral = bilinear_count(f1, f2, sn);
        CHECK(std::fabs(direct - spectral) <= 1e-6 * std::max(1.0, std::fabs(direct)));
    }
    CHECK_THROWS_AS(bilinear_count(f, build_S(P({0, 0, 1}), 32)), DomainError);
}

TEST_CASE("uniform moment sweep is flat in W for h = x^2")
{
    auto rows = moment_sweep(P({0, 0, 1}), {1024, 4096}, {1, 2, 6, 30}, 16, false);
    REQUIRE(rows.size() == 8);
    // h_W = x^2 for every W
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(rows[i].fft_norm == rows[i % 2].fft_norm);
    auto counted = moment_sweep(P({0, 0, 1}), {256}, {1, 2}, 2, true);
    for (const auto& r : counted) {
        REQUIRE(r.has_count);
        CHECK(std::fabs(r.count_moment - r.fft_moment) <= 1e-6 * r.count_moment);
    }
}
