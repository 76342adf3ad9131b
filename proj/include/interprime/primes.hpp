#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace interprime {

/// Default sieve cap; INTERPRIME_SIEVE_CAP overrides it.
inline constexpr std::uint64_t kDefaultSieveCap = 100'000'000;
std::uint64_t sieve_cap();

/// Primality for 1..N and least prime factors for 1..N+2.
class PrimeTable {
public:
    PrimeTable() = default;

    std::uint64_t limit() const { return limit_; }
    /// Largest n with a stored least prime factor (limit + 2).
    std::uint64_t spf_limit() const { return spf_.empty() ? 0 : spf_.size() - 1; }

    bool is_prime(std::uint64_t n) const;
    /// spf(1) = 1.
    std::uint32_t spf(std::uint64_t n) const;
    std::uint64_t count() const { return count_; }
    /// Number of primes <= x for x <= limit.
    std::uint64_t count_upto(std::uint64_t x) const;
    std::vector<std::uint64_t> primes() const;

private:
    friend PrimeTable sieve(std::uint64_t n);

    std::uint64_t limit_ = 0;
    std::uint64_t count_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint32_t> spf_;
};

/// Segmented least-prime-factor sieve (segments of 2^20).
PrimeTable sieve(std::uint64_t n);

struct ChenClass {
    enum class Kind { ViaPrime, ViaSemiprime, NotChen };
    enum class Reason { None, TooManyFactors, SmallFactor };

    Kind kind = Kind::NotChen;
    Reason reason = Reason::None;
    std::uint64_t p1 = 0, p2 = 0;  // p1 <= p2 for ViaSemiprime

    bool is_chen() const { return kind != Kind::NotChen; }
    std::string describe() const;
};

/// min(p1,p2)^11 > p^3, exactly.
bool exceeds_chen_cutoff(std::uint64_t factor, std::uint64_t p);

/// Needs p + 2 <= table.spf_limit().
ChenClass classify_chen(std::uint64_t p, const PrimeTable& table);

/// Classification of every prime <= table.limit().
class ChenTable {
public:
    explicit ChenTable(const PrimeTable& table);

    std::uint64_t limit() const { return limit_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    const std::vector<ChenClass>& classes() const { return classes_; }
    std::vector<std::uint64_t> chen_primes() const;
    std::uint64_t chen_count_upto(std::uint64_t x) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
    std::vector<ChenClass> classes_;
};

struct DensityRow {
    std::uint64_t n;
    std::uint64_t primes;
    std::uint64_t chen;
    double ratio;  // chen * log^2 n / n
};

/// Checkpoints N/10, 2N/10, ..., N.
std::vector<DensityRow> density_report(std::uint64_t n);

}  // namespace interprime
