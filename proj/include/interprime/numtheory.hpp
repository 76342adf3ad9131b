#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace interprime {

using Integer = mpz_class;
using Rational = mpq_class;

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

/// Trial-division factorisation, ascending primes. factor(1) is empty.
std::vector<PrimePower> factor_u64(std::uint64_t n);

/// Largest e with p^e | n; n must be nonzero.
unsigned valuation(const Integer& n, std::uint64_t p);

Integer pow_ui(std::uint64_t base, unsigned long exp);

/// Least nonnegative residue.
Integer mod_floor(const Integer& a, const Integer& m);

/// Primes p <= limit by a plain sieve; used for small ranges.
std::vector<std::uint64_t> small_primes(std::uint64_t limit);

/// Product of two uint64 values, throwing DomainError on overflow.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

/// Integer value as int64 when it fits.
bool fits_int64(const Integer& x);

}  // namespace interprime
