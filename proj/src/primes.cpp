#include "interprime/primes.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "interprime/errors.hpp"
#include "interprime/numtheory.hpp"
#include "interprime/parallel.hpp"

namespace interprime {

namespace {

constexpr std::uint64_t kSegment = 1u << 20;

}  // namespace

std::uint64_t sieve_cap()
{
    if (const char* env = std::getenv("INTERPRIME_SIEVE_CAP")) {
        try {
            std::size_t used = 0;
            unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size() && v > 0) return v;
        } catch (const std::exception&) {
        }
        throw DomainError(std::string("INTERPRIME_SIEVE_CAP is not a positive integer: ") + env);
    }
    return kDefaultSieveCap;
}

bool PrimeTable::is_prime(std::uint64_t n) const
{
    if (n > limit_) throw DomainError("primality query " + std::to_string(n) + " beyond sieve limit " +
                                      std::to_string(limit_));
    return (bits_[n >> 6] >> (n & 63)) & 1u;
}

std::uint32_t PrimeTable::spf(std::uint64_t n) const
{
    if (n == 0 || n >= spf_.size()) throw DomainError("spf query " + std::to_string(n) + " out of range");
    return spf_[n];
}

std::uint64_t PrimeTable::count_upto(std::uint64_t x) const
{
    if (x > limit_) throw DomainError("count beyond sieve limit");
    std::uint64_t c = 0;
    const std::uint64_t full = (x + 1) >> 6;
    for (std::uint64_t w = 0; w < full; ++w) c += static_cast<std::uint64_t>(__builtin_popcountll(bits_[w]));
    for (std::uint64_t n = full << 6; n <= x; ++n) c += (bits_[n >> 6] >> (n & 63)) & 1u;
    return c;
}

std::vector<std::uint64_t> PrimeTable::primes() const
{
    std::vector<std::uint64_t> out;
    out.reserve(count_);
    for (std::uint64_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t word = bits_[w];
        while (word) {
            out.push_back((w << 6) + static_cast<std::uint64_t>(__builtin_ctzll(word)));
            word &= word - 1;
        }
    }
    return out;
}

PrimeTable sieve(std::uint64_t n)
{
    if (n == 0) throw DomainError("sieve limit must be positive");
    const std::uint64_t cap = sieve_cap();
    if (n > cap) {
        throw DomainError("sieve limit " + std::to_string(n) + " exceeds the memory cap " + std::to_string(cap) +
                          " (set INTERPRIME_SIEVE_CAP to raise it)");
    }
    if (n + 2 >= (1ULL << 32)) throw DomainError("sieve limit must stay below 2^32 - 2");

    PrimeTable t;
    t.limit_ = n;
    const std::uint64_t top = n + 2;
    t.spf_.assign(top + 1, 0);
    t.spf_[1] = 1;

    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(top))) + 1;
    const auto base = small_primes(root);
    const std::uint64_t segments = (top + kSegment) / kSegment;
    parallel_for(segments, [&](std::size_t s) {
        const std::uint64_t lo = std::max<std::uint64_t>(2, s * kSegment);
        const std::uint64_t hi = std::min<std::uint64_t>(top + 1, (s + 1) * kSegment);
        if (lo >= hi) return;
        for (std::uint64_t p : base) {
            if (p * p >= hi) break;
            std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
            for (std::uint64_t m = start; m < hi; m += p) {
                if (t.spf_[m] == 0) t.spf_[m] = static_cast<std::uint32_t>(p);
            }
        }
        for (std::uint64_t m = lo; m < hi; ++m) {
            if (t.spf_[m] == 0) t.spf_[m] = static_cast<std::uint32_t>(m);
        }
    });

    t.bits_.assign((n >> 6) + 1, 0);
    for (std::uint64_t m = 2; m <= n; ++m) {
        if (t.spf_[m] == m) {
            t.bits_[m >> 6] |= 1ULL << (m & 63);
            ++t.count_;
        }
    }
    return t;
}

bool exceeds_chen_cutoff(std::uint64_t factor, std::uint64_t p)
{
    // factor^11 > p^3 in 128-bit arithmetic, saturating on the left side
    using u128 = unsigned __int128;
    const u128 limit = ~u128(0) >> 1;
    if (p >= (1ULL << 40)) throw DomainError("chen cutoff test supports p < 2^40");
    const u128 p3 = u128(p) * p * p;
    u128 lhs = 1;
    for (int i = 0; i < 11; ++i) {
        if (lhs > limit / factor) return true;
        lhs *= factor;
    }
    return lhs > p3;
}

std::string ChenClass::describe() const
{
    switch (kind) {
    case Kind::ViaPrime:
        return "ChenViaPrime";
    case Kind::ViaSemiprime:
        return "ChenViaSemiprime(" + std::to_string(p1) + "," + std::to_string(p2) + ")";
    case Kind::NotChen:
        break;
    }
    return reason == Reason::SmallFactor ? "NotChen(SmallFactor)" : "NotChen(TooManyFactors)";
}

ChenClass classify_chen(std::uint64_t p, const PrimeTable& table)
{
    if (p + 2 > table.spf_limit()) {
        throw DomainError("classify_chen needs a table reaching p + 2 = " + std::to_string(p + 2));
    }
    if (p < 2 || table.spf(p) != p) throw DomainError(std::to_string(p) + " is not prime");
    ChenClass c;
    const std::uint64_t m = p + 2;
    const std::uint64_t q1 = table.spf(m);
    if (q1 == m) {
        c.kind = ChenClass::Kind::ViaPrime;
        return c;
    }
    const std::uint64_t q2 = m / q1;
    if (table.spf(q2) != q2) {
        c.reason = ChenClass::Reason::TooManyFactors;
        return c;
    }
    if (!exceeds_chen_cutoff(q1, p)) {  // q1 is the smaller factor
        c.reason = ChenClass::Reason::SmallFactor;
        return c;
    }
    c.kind = ChenClass::Kind::ViaSemiprime;
    c.p1 = q1;
    c.p2 = q2;
    return c;
}

ChenTable::ChenTable(const PrimeTable& table) : limit_(table.limit()), primes_(table.primes())
{
    classes_.resize(primes_.size());
    const std::size_t blocks = (primes_.size() + 65535) / 65536;
    parallel_for(blocks, [&](std::size_t b) {
        const std::size_t end = std::min(primes_.size(), (b + 1) * 65536);
        for (std::size_t i = b * 65536; i < end; ++i) classes_[i] = classify_chen(primes_[i], table);
    });
}

std::vector<std::uint64_t> ChenTable::chen_primes() const
{
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (classes_[i].is_chen()) out.push_back(primes_[i]);
    }
    return out;
}

std::uint64_t ChenTable::chen_count_upto(std::uint64_t x) const
{
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < primes_.size() && primes_[i] <= x; ++i) c += classes_[i].is_chen();
    return c;
}

std::vector<DensityRow> density_report(std::uint64_t n)
{
    if (n < 100) throw DomainError("density_report needs N >= 100");
    PrimeTable table = sieve(n);
    ChenTable chen(table);
    std::vector<DensityRow> rows;
    std::uint64_t primes_seen = 0, chen_seen = 0;
    std::size_t idx = 0;
    for (int i = 1; i <= 10; ++i) {
        const std::uint64_t checkpoint = i == 10 ? n : n / 10 * static_cast<std::uint64_t>(i);
        while (idx < chen.primes().size() && chen.primes()[idx] <= checkpoint) {
            ++primes_seen;
            chen_seen += chen.classes()[idx].is_chen();
            ++idx;
        }
        const double l = std::log(static_cast<double>(checkpoint));
        rows.push_back({checkpoint, primes_seen, chen_seen, static_cast<double>(chen_seen) * l * l / checkpoint});
    }
    return rows;
}

}  // namespace interprime
