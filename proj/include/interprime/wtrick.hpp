#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "interprime/counting.hpp"
#include "interprime/intpoly.hpp"

namespace interprime {

/// prod_{p <= t} p
Integer primorial(std::uint64_t t);

enum class SourceKind { Primes, ChenPrimes, Csv };

/// Keeps a with a = residue (mod modulus).
struct CongruenceFilter {
    std::uint64_t residue = 0;
    std::uint64_t modulus = 1;

    bool accepts(std::uint64_t a) const { return a % modulus == residue; }
    std::string to_string() const;
};

/// Parses "a mod q".
CongruenceFilter parse_filter(const std::string& text);

struct ResidueSelection {
    Integer b;
    IntSet x;
    /// candidates that passed the coprimality test and had a nonempty preimage
    std::size_t candidates_seen = 0;
};

/// Picks b in [1, lambda] coprime to W (for Chen sources: gcd(b(b+2), W) = 1) maximizing
/// |X|, X = {0 <= n <= M/2 : lambda n + b in A}; ties go to the smallest b.
ResidueSelection residue_selection(const IntSet& a, std::uint64_t m, const Integer& w, const Integer& lambda,
                                   bool chen_pairs = false);

struct ExperimentConfig {
    IntPoly h;
    std::uint64_t n = 0;  // primes (or set members) up to N
    std::uint64_t t = 2;
    SourceKind source = SourceKind::Primes;
    std::optional<IntSet> csv_set;  // for SourceKind::Csv
    std::optional<CongruenceFilter> filter;
    bool expectation_diagnostic = false;
};

struct Triple {
    Integer p1;
    Integer p2;
    Integer n;
    std::int64_t a;
    std::int64_t a_prime;
    std::int64_t d;
};

struct ExperimentReport {
    Integer w;
    Integer lambda;
    Integer r;
    IntPoly hw;
    Integer b;
    std::uint64_t m = 0;  // X lives in [0, M/2]
    std::size_t source_size = 0;
    std::size_t x_size = 0;
    double x_density = 0;  // |X| / (M/2 + 1)
    std::vector<Triple> triples;
    std::size_t witnesses = 0;
    std::size_t verified = 0;
    double kappa = 0;
    bool kappa_ok = true;
    std::string warning;
    std::optional<double> expectation;  // E f for f = (log N / log t) 1_X, or the log^2 t variant
};

/// Builds A, h_W and X, searches for a - a' = h_W(d) and maps every hit to p1 - p2 = h(n).
/// Throws NoLocalRoot(p) for the prime p <= t with the smallest obstruction modulus.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// The set A defined by a config (source plus filter).
IntSet build_source(const ExperimentConfig& cfg);

/// Independent re-check of one triple against h and A.
bool verify_triple(const Triple& t, const IntPoly& h, const IntSet& a);

struct ScalingRow {
    std::uint64_t n;
    std::uint64_t pairs;
    double ratio;  // pairs log^2 N / N^(1 + 1/k)
};

/// Distinct pairs p1 > p2 from the source with p1 - p2 = h(n) for some n >= 0.
std::vector<ScalingRow> scaling_table(const IntPoly& h, SourceKind source, const std::vector<std::uint64_t>& n_list,
                                      const std::optional<CongruenceFilter>& filter = std::nullopt);

std::string to_string(SourceKind s);

}  // namespace interprime
