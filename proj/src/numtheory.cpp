#include "interprime/numtheory.hpp"

#include <limits>

#include "interprime/errors.hpp"

namespace interprime {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime_u64(std::uint64_t n)
{
    if (n < 2) return false;
    static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : kBases) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : kBases) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<PrimePower> factor_u64(std::uint64_t n)
{
    if (n == 0) throw DomainError("cannot factor 0");
    std::vector<PrimePower> out;
    auto strip = [&](std::uint64_t p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e != 0) out.push_back({p, e});
    };
    strip(2);
    strip(3);
    for (std::uint64_t p = 5; p <= n / p; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

unsigned valuation(const Integer& n, std::uint64_t p)
{
    if (n == 0) throw DomainError("valuation of zero is infinite");
    Integer q = n;
    Integer prime(static_cast<unsigned long>(p));
    unsigned v = 0;
    while (mpz_divisible_p(q.get_mpz_t(), prime.get_mpz_t())) {
        mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), prime.get_mpz_t());
        ++v;
    }
    return v;
}

Integer pow_ui(std::uint64_t base, unsigned long exp)
{
    Integer b(static_cast<unsigned long>(base));
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
    return r;
}

Integer mod_floor(const Integer& a, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (r < 0) r += abs(m);
    return r;
}

std::vector<std::uint64_t> small_primes(std::uint64_t limit)
{
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        throw DomainError("64-bit overflow in product");
    }
    return a * b;
}

bool fits_int64(const Integer& x)
{
    return mpz_fits_slong_p(x.get_mpz_t()) != 0;
}

}  // namespace interprime
