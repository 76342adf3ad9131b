#pragma once

#include <cstdint>
#include <optional>

#include "interprime/numtheory.hpp"

namespace interprime {

struct BoundProfile {
    int k = 0;
    int mu = 0;                  // 3 for k = 2, else 2
    std::uint64_t s0 = 0;        // k 2^(k+1)
    std::optional<Rational> rho_exact;     // only for k = 2
    double rho = 0;
    std::optional<Rational> kappa1_exact;  // rho / (16 k^2) when rho is rational
    double kappa1 = 0;
    Rational kappa2;             // 1/k
    double kappa = 0;            // min(kappa1, kappa2)
    Rational q_lower;            // 2, open
    Rational q_upper;            // 4 s0 / (2 s0 - 1), open
};

BoundProfile profile(int k);

/// exp(-c1 delta^-(k-1) log^mu(2/delta)); shape-only, c1 supplied by the caller.
double lucier_c(int k, double delta, double c1 = 1.0);
/// log of lucier_c; stays finite where lucier_c underflows to 0.
double log_lucier_c(int k, double delta, double c1 = 1.0);

/// x / (2 log(2/x)) for k = 2, x^(k-1) for k >= 3.
double theta(double x, int k);

/// e^(e^e): smallest N at which log log log log N is defined and positive.
double min_threshold_n();

/// Density shapes with every constant set to 1.
struct DensityThresholds {
    double n = 0;
    int k = 0;
    double lucier = 0;      // (log log N)^(mu/(k-1)) / (log N)^(1/(k-1))
    double pss = 0;         // (log N)^(-(1/4) log log log log N)
    double primes_shape = 0;  // (log_4 N)^(mu/(k-1)) / (log_3 N)^(1/(k-1))
};

DensityThresholds density_thresholds(double n, int k);

}  // namespace interprime
