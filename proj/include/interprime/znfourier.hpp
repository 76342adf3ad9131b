#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "interprime/intpoly.hpp"

namespace interprime {

using Complex = std::complex<double>;

enum class Domain { Time, Frequency };

/// A function on Z_N, tagged with the side of the transform it lives on.
class ZnFun {
public:
    ZnFun() = default;
    ZnFun(std::vector<Complex> values, Domain domain);
    static ZnFun time(std::vector<Complex> values) { return ZnFun(std::move(values), Domain::Time); }
    static ZnFun time_real(const std::vector<double>& values);
    static ZnFun zeros(std::size_t n, Domain domain = Domain::Time);

    std::size_t size() const { return values_.size(); }
    Domain domain() const { return domain_; }
    const std::vector<Complex>& values() const { return values_; }
    const Complex& operator[](std::size_t i) const { return values_[i]; }
    /// Value at x mod N, for any integer x.
    const Complex& at(std::int64_t x) const;

    /// E_x f(x)
    Complex mean() const;
    std::vector<double> real() const;

private:
    std::vector<Complex> values_;
    Domain domain_ = Domain::Time;
};

/// f^(xi) = E_x f(x) e(x xi / N): averaged, positive exponent.
ZnFun dft(const ZnFun& f);
/// f(x) = sum_xi f^(xi) e(-x xi / N).
ZnFun idft(const ZnFun& g);

/// (f*g)(x) = E_y f(y) g(x - y)
ZnFun convolve(const ZnFun& f, const ZnFun& g);

/// Pointwise product of two functions on the same side.
ZnFun multiply(const ZnFun& f, const ZnFun& g);

/// Support points of S_{N,f}: (x = f(n), weight f'(n)) for n >= 0 with 0 < f(n) < N/2.
struct SupportPoint {
    std::int64_t n;
    std::int64_t x;
    Integer weight;
};
std::vector<SupportPoint> s_support(const IntPoly& f, std::uint64_t n_mod);

/// S_{N,f} as a time-domain function.
ZnFun build_S(const IntPoly& f, std::uint64_t n_mod);

/// (sum_xi |g(xi)|^p)^(1/p), p >= 1.
double moment_norm(const ZnFun& g, double p);
/// sum_xi |g(xi)|^(2s)
double moment_power(const ZnFun& g, unsigned s);

/// Weighted solution count of f(n1)+...+f(ns) = f(m1)+...+f(ms) over the support of S.
struct MomentCount {
    std::uint64_t n_mod = 0;
    unsigned s = 0;
    std::int64_t max_n = -1;  // M
    Integer weighted_solutions;
    Rational exact;  // weighted_solutions / N^(2s-1)
    double value = 0;
};

/// Cap on s * N for the dense sum table.
inline constexpr std::uint64_t kMomentTableCap = 200'000'000;

/// Exact ||S^||_{2s}^{2s}. Requires s * f(M) < N so that sums never wrap.
MomentCount moment_by_counting(const IntPoly& f, std::uint64_t n_mod, unsigned s);

/// sum_{a,d} f(a) f(a+d) S(d), computed as N^2 sum_xi f^(-xi) f^(xi) S^(-xi) (real part).
double bilinear_count(const ZnFun& f, const ZnFun& s);
/// sum_{a,d} f1(a) f2(a+d) S(d)
double bilinear_count(const ZnFun& f1, const ZnFun& f2, const ZnFun& s);

/// One row of the uniform-moment sweep: ||S^_{N,h_W}||_{2s}.
struct MomentRow {
    std::uint64_t n_mod;
    std::uint64_t w;
    unsigned s;
    double fft_norm;    // ||S^||_{2s}
    double fft_moment;  // ||S^||_{2s}^{2s}
    bool has_count = false;
    double count_moment = 0;
};

/// Rows ordered by (W, N). count_moment is filled when the counting route is admissible.
std::vector<MomentRow> moment_sweep(const IntPoly& h, const std::vector<std::uint64_t>& n_list,
                                    const std::vector<std::uint64_t>& w_list, unsigned s, bool with_count);

}  // namespace interprime
