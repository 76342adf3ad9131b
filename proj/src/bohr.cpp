#include "interprime/bohr.hpp"

#include <cmath>
#include <numbers>

#include "interprime/errors.hpp"

namespace interprime {

namespace {

void check_eps(double eps)
{
    if (!(eps > 0 && eps < 1)) throw DomainError("epsilon must lie in (0, 1)");
}

}  // namespace

SpectrumSet large_spectrum_of_transform(const ZnFun& fhat, double eps)
{
    check_eps(eps);
    if (fhat.domain() != Domain::Frequency) throw DomainError("expected a frequency-domain function");
    SpectrumSet out;
    out.n_mod = fhat.size();
    out.epsilon = eps;
    for (std::size_t a = 0; a < fhat.size(); ++a) {
        if (std::abs(fhat[a]) >= eps) out.members.push_back(a);
    }
    return out;
}

SpectrumSet large_spectrum(const ZnFun& f, double eps) { return large_spectrum_of_transform(dft(f), eps); }

double chord(std::int64_t r, std::size_t n_mod)
{
    const auto n = static_cast<std::int64_t>(n_mod);
    std::int64_t x = r % n;
    if (x < 0) x += n;
    x = std::min(x, n - x);
    return 2.0 * std::sin(std::numbers::pi * static_cast<double>(x) / static_cast<double>(n));
}

BohrSet bohr_set(const SpectrumSet& omega, double eps)
{
    check_eps(eps);
    BohrSet out;
    out.n_mod = omega.n_mod;
    out.epsilon = eps;
    out.generators = omega.members;
    const auto n = static_cast<unsigned __int128>(omega.n_mod);
    for (std::size_t m = 0; m < omega.n_mod; ++m) {
        bool inside = true;
        for (std::size_t a : omega.members) {
            const auto r = static_cast<std::int64_t>((static_cast<unsigned __int128>(a) * m) % n);
            if (chord(r, omega.n_mod) > eps) {
                inside = false;
                break;
            }
        }
        if (inside) out.members.push_back(m);
    }
    return out;
}

Decomposition smooth_decompose(const ZnFun& f, double eps, const std::optional<ZnFun>& nu, std::optional<double> eta)
{
    check_eps(eps);
    if (f.domain() != Domain::Time) throw DomainError("smooth_decompose expects a time-domain function");
    const std::size_t n = f.size();
    const ZnFun fhat = dft(f);
    Decomposition out;
    out.spectrum = large_spectrum_of_transform(fhat, eps);
    out.bohr = bohr_set(out.spectrum, eps);

    // f1^ = f^ |N beta^|^2 with beta = 1_B / |B|
    std::vector<Complex> beta(n);
    const double inv_b = 1.0 / static_cast<double>(out.bohr.members.size());
    for (std::size_t m : out.bohr.members) beta[m] = inv_b;
    const ZnFun beta_hat = dft(ZnFun::time(std::move(beta)));
    std::vector<Complex> f1hat(n), f2hat(n);
    for (std::size_t xi = 0; xi < n; ++xi) {
        const double factor = std::norm(beta_hat[xi] * static_cast<double>(n));
        f1hat[xi] = fhat[xi] * factor;
        f2hat[xi] = fhat[xi] - f1hat[xi];
    }
    out.f1 = idft(ZnFun(f1hat, Domain::Frequency));
    std::vector<Complex> f2(n);
    for (std::size_t x = 0; x < n; ++x) f2[x] = f[x] - out.f1[x];
    out.f2 = ZnFun::time(std::move(f2));

    auto& d = out.diagnostics;
    d.spectrum_size = out.spectrum.members.size();
    d.bohr_size = out.bohr.members.size();
    d.mean_f = f.mean().real();
    d.mean_f1 = out.f1.mean().real();
    d.mean_gap = std::abs(d.mean_f1 - d.mean_f);
    const ZnFun f2hat_direct = dft(out.f2);
    d.max_excess_f1 = -1e300;
    d.max_excess_f2 = -1e300;
    for (std::size_t xi = 0; xi < n; ++xi) {
        const double base = std::abs(fhat[xi]);
        d.max_excess_f1 = std::max(d.max_excess_f1, std::abs(f1hat[xi]) - base);
        d.max_excess_f2 = std::max(d.max_excess_f2, std::abs(f2hat_direct[xi]) - base);
        d.f2_sup = std::max(d.f2_sup, std::abs(f2hat_direct[xi]));
    }

    if (eta) {
        d.eta = *eta;
    } else if (nu) {
        const ZnFun nuhat = dft(*nu);
        for (std::size_t xi = 0; xi < n; ++xi) {
            d.eta = std::max(d.eta, std::abs(nuhat[xi] - Complex(xi == 0 ? 1.0 : 0.0)));
        }
    }
    if (d.eta < 0) throw DomainError("eta must be nonnegative");
    d.uniform_bound = 3.0 * (1.0 + d.eta) * eps;

    if (nu) {
        if (nu->size() != n) throw DomainError("nu must live on the same Z_N as f");
        d.range_checked = true;
        d.f_below_nu = true;
        for (std::size_t x = 0; x < n; ++x) {
            if (f[x].real() < -1e-12 || f[x].real() > (*nu)[x].real() + 1e-12) d.f_below_nu = false;
        }
        d.f1_min = 1e300;
        d.f1_max = -1e300;
        for (std::size_t x = 0; x < n; ++x) {
            d.f1_min = std::min(d.f1_min, out.f1[x].real());
            d.f1_max = std::max(d.f1_max, out.f1[x].real());
        }
        d.range_upper = 1.0 + static_cast<double>(n) / static_cast<double>(d.bohr_size) * d.eta;
    }
    return out;
}

}  // namespace interprime
