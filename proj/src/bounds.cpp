#include "interprime/bounds.hpp"

#include <cmath>
#include <sstream>

#include "interprime/errors.hpp"

namespace interprime {

namespace {

void require_degree(int k)
{
    if (k < 2) throw DomainError("bounds need k >= 2, got " + std::to_string(k));
}

}  // namespace

BoundProfile profile(int k)
{
    require_degree(k);
    if (k > 60) throw DomainError("k too large for s0 = k 2^(k+1) to fit in 64 bits");
    BoundProfile p;
    p.k = k;
    p.mu = k == 2 ? 3 : 2;
    p.s0 = static_cast<std::uint64_t>(k) << (k + 1);
    const double kk = static_cast<double>(k) * k;
    if (k == 2) {
        p.rho_exact = Rational(1, 4);
        p.rho = 0.25;
        p.kappa1_exact = Rational(1, 4 * 16 * k * k);
        p.kappa1 = p.kappa1_exact->get_d();
    } else {
        const double lk = std::log(static_cast<double>(k));
        p.rho = 1.0 / (8.0 * kk * (lk + 1.5 * std::log(lk) + 4.2));
        p.kappa1 = p.rho / (16.0 * kk);
    }
    p.kappa2 = Rational(1, static_cast<unsigned long>(k));
    p.kappa = std::min(p.kappa1, p.kappa2.get_d());
    p.q_lower = 2;
    const Integer s0 = Integer(static_cast<unsigned long>(p.s0));
    p.q_upper = Rational(4 * s0, 2 * s0 - 1);
    p.q_upper.canonicalize();
    return p;
}

double log_lucier_c(int k, double delta, double c1)
{
    require_degree(k);
    if (!(delta > 0 && delta < 1)) throw DomainError("delta must lie in (0, 1)");
    if (!(c1 > 0)) throw DomainError("c1 must be positive");
    const int mu = k == 2 ? 3 : 2;
    return -c1 * std::pow(delta, -(k - 1)) * std::pow(std::log(2.0 / delta), mu);
}

double lucier_c(int k, double delta, double c1) { return std::exp(log_lucier_c(k, delta, c1)); }

double theta(double x, int k)
{
    require_degree(k);
    if (!(x > 0 && x < 1)) throw DomainError("theta needs x in (0, 1)");
    if (k == 2) return x / (2.0 * std::log(2.0 / x));
    return std::pow(x, k - 1);
}

double min_threshold_n() { return std::exp(std::exp(std::exp(1.0))); }

DensityThresholds density_thresholds(double n, int k)
{
    require_degree(k);
    const double floor_n = min_threshold_n();
    if (!(n > floor_n)) {
        std::ostringstream os;
        os.precision(10);
        os << "log log log log N is undefined or nonpositive (log_3 N <= 1) for N = " << n
           << "; the smallest admissible N is e^(e^e) = " << floor_n;
        throw DomainError(os.str());
    }
    const int mu = k == 2 ? 3 : 2;
    const double e = 1.0 / (k - 1);
    const double l1 = std::log(n), l2 = std::log(l1), l3 = std::log(l2), l4 = std::log(l3);
    DensityThresholds t;
    t.n = n;
    t.k = k;
    t.lucier = std::pow(l2, mu * e) / std::pow(l1, e);
    t.pss = std::pow(l1, -0.25 * l4);
    t.primes_shape = std::pow(l4, mu * e) / std::pow(l3, e);
    return t;
}

}  // namespace interprime
