#pragma once

// Independent reference computations used only by the test suites.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "interprime/intpoly.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// log|x| of an arbitrary-precision integer.
inline double log_abs(const mpz_class& x)
{
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

/// Root with multiplicity, gathered from known generator factors.
struct NumericRoot {
    cplx value;
    int multiplicity;
};

/// Merges roots closer than tol, adding multiplicities.
inline std::vector<NumericRoot> merge_roots(const std::vector<NumericRoot>& in, double tol = 1e-9)
{
    std::vector<NumericRoot> out;
    for (const auto& r : in) {
        bool merged = false;
        for (auto& o : out) {
            if (std::abs(o.value - r.value) < tol * (1 + std::abs(r.value))) {
                o.multiplicity += r.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(r);
    }
    return out;
}

/// Closed-form roots of a*x + b (a != 0) or a*x^2 + b*x + c.
inline std::vector<cplx> small_roots(const std::vector<long>& c)
{
    if (c.size() == 2) return {cplx(-static_cast<double>(c[0]) / c[1], 0)};
    double a = c[2], b = c[1], cc = c[0];
    cplx disc = std::sqrt(cplx(b * b - 4 * a * cc, 0));
    return {(-b + disc) / (2 * a), (-b - disc) / (2 * a)};
}

/// log |a^(2k-2) prod_{i != j} (eta_i - eta_j)^(e_i e_j)|
inline double log_semidiscriminant(double log_abs_lead, int degree, const std::vector<NumericRoot>& roots)
{
    double acc = (2.0 * degree - 2.0) * log_abs_lead;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (i == j) continue;
            acc += roots[i].multiplicity * roots[j].multiplicity * std::log(std::abs(roots[i].value - roots[j].value));
        }
    }
    return acc;
}

/// Durand-Kerner iteration for the complex roots of a squarefree polynomial.
inline std::vector<cplx> durand_kerner(const std::vector<double>& coeffs)
{
    const int n = static_cast<int>(coeffs.size()) - 1;
    std::vector<double> monic(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) monic[i] = coeffs[i] / coeffs.back();
    double radius = 0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(monic[i]));
    radius += 1;
    std::vector<cplx> z(n);
    for (int i = 0; i < n; ++i) z[i] = std::polar(radius * 0.9, 2 * std::numbers::pi * i / n + 0.4);
    auto eval = [&](cplx x) {
        cplx acc = 0;
        for (int i = n; i >= 0; --i) acc = acc * x + monic[i];
        return acc;
    };
    for (int iter = 0; iter < 5000; ++iter) {
        double change = 0;
        for (int i = 0; i < n; ++i) {
            cplx denom = 1;
            for (int j = 0; j < n; ++j) {
                if (j != i) denom *= z[i] - z[j];
            }
            cplx step = eval(z[i]) / denom;
            z[i] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-15 * radius) break;
    }
    // Newton polish
    for (auto& x : z) {
        for (int it = 0; it < 5; ++it) {
            cplx f = 0, df = 0;
            for (int i = n; i >= 0; --i) {
                df = df * x + f;
                f = f * x + monic[i];
            }
            if (std::abs(df) > 0) x -= f / df;
        }
    }
    return z;
}

/// Direct O(N^2) transform in the averaged, positive-exponent convention.
inline std::vector<cplx> direct_dft(const std::vector<cplx>& f)
{
    const std::size_t n = f.size();
    std::vector<cplx> out(n);
    for (std::size_t xi = 0; xi < n; ++xi) {
        cplx acc = 0;
        for (std::size_t x = 0; x < n; ++x) {
            double angle = 2 * std::numbers::pi * static_cast<double>((x * xi) % n) / static_cast<double>(n);
            acc += f[x] * std::polar(1.0, angle);
        }
        out[xi] = acc / static_cast<double>(n);
    }
    return out;
}

/// Trial-division primality.
inline bool is_prime_td(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

/// Prime factors with multiplicity by trial division.
inline std::vector<std::uint64_t> factor_td(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        while (n % d == 0) {
            out.push_back(d);
            n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline interprime::IntPoly random_poly(std::mt19937_64& rng, int degree, long max_coeff, bool positive_lead = false)
{
    std::uniform_int_distribution<long> dist(-max_coeff, max_coeff);
    std::vector<mpz_class> c(degree + 1);
    for (int i = 0; i <= degree; ++i) c[i] = dist(rng);
    while (c[degree] == 0 || (positive_lead && c[degree] < 0)) c[degree] = dist(rng);
    return interprime::IntPoly(std::move(c));
}

}  // namespace oracle
