#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "interprime/znfourier.hpp"

namespace interprime {

/// {a : |f^(a)| >= epsilon}, ascending.
struct SpectrumSet {
    std::size_t n_mod = 0;
    double epsilon = 0;
    std::vector<std::size_t> members;
};

/// {m : |1 - e_N(a m)| <= epsilon for every generator a}, ascending.
struct BohrSet {
    std::size_t n_mod = 0;
    double epsilon = 0;
    std::vector<std::size_t> generators;
    std::vector<std::size_t> members;
};

SpectrumSet large_spectrum(const ZnFun& f, double eps);
/// Same threshold applied to an already transformed function.
SpectrumSet large_spectrum_of_transform(const ZnFun& fhat, double eps);

BohrSet bohr_set(const SpectrumSet& omega, double eps);

/// |1 - e_N(r)| = 2 |sin(pi r / N)|, evaluated on r mod N.
double chord(std::int64_t r, std::size_t n_mod);

struct DecompositionDiagnostics {
    double mean_f = 0;
    double mean_f1 = 0;
    double mean_gap = 0;            // |E f1 - E f|
    double max_excess_f1 = 0;       // max_xi |f1^| - |f^|
    double max_excess_f2 = 0;       // max_xi |f2^| - |f^|
    double f2_sup = 0;              // ||f2^||_inf
    double eta = 0;
    double uniform_bound = 0;       // 3 (1 + eta) eps
    bool range_checked = false;     // needs the majorant nu
    double f1_min = 0;
    double f1_max = 0;
    double range_upper = 0;         // 1 + (N/|B|) eta
    bool f_below_nu = false;
    std::size_t spectrum_size = 0;
    std::size_t bohr_size = 0;

    bool mean_ok(double tol = 1e-9) const { return mean_gap < tol; }
    bool domination_ok(double tol = 1e-9) const { return max_excess_f1 <= tol && max_excess_f2 <= tol; }
    bool uniform_ok(double tol = 1e-12) const { return f2_sup <= uniform_bound + tol; }
    bool range_ok(double tol = 1e-9) const
    {
        return !range_checked || (f1_min >= -tol && f1_max <= range_upper + tol);
    }
};

struct Decomposition {
    ZnFun f1;
    ZnFun f2;
    SpectrumSet spectrum;
    BohrSet bohr;
    DecompositionDiagnostics diagnostics;
};

/// f1(n) = E_{m1,m2 in B} f(n + m1 - m2), f2 = f - f1, with Omega and B built at eps.
/// The majorant nu enables the range check; eta defaults to max |nu^(xi) - 1_{xi=0}|
/// when nu is given and to 0 otherwise.
Decomposition smooth_decompose(const ZnFun& f, double eps, const std::optional<ZnFun>& nu = std::nullopt,
                               std::optional<double> eta = std::nullopt);

}  // namespace interprime
