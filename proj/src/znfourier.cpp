#include "interprime/znfourier.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include <fftw3.h>

#include "interprime/auxfamily.hpp"
#include "interprime/errors.hpp"
#include "interprime/parallel.hpp"

namespace interprime {

namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

std::vector<Complex> fft(const std::vector<Complex>& in, int sign)
{
    std::vector<Complex> out(in.size());
    if (in.empty()) return out;
    std::vector<Complex> scratch = in;
    auto* ip = reinterpret_cast<fftw_complex*>(scratch.data());
    auto* op = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(in.size()), ip, op, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

void require_same(const ZnFun& a, const ZnFun& b)
{
    if (a.size() != b.size()) {
        throw DomainError("mismatched N: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
}

std::int64_t as_i64(const Integer& v)
{
    if (!fits_int64(v)) throw DomainError("value does not fit in 64 bits");
    return v.get_si();
}

}  // namespace

ZnFun::ZnFun(std::vector<Complex> values, Domain domain) : values_(std::move(values)), domain_(domain)
{
    if (values_.empty()) throw DomainError("ZnFun needs N >= 1");
}

ZnFun ZnFun::time_real(const std::vector<double>& values)
{
    std::vector<Complex> v(values.begin(), values.end());
    return ZnFun(std::move(v), Domain::Time);
}

ZnFun ZnFun::zeros(std::size_t n, Domain domain) { return ZnFun(std::vector<Complex>(n), domain); }

const Complex& ZnFun::at(std::int64_t x) const
{
    const auto n = static_cast<std::int64_t>(values_.size());
    std::int64_t r = x % n;
    if (r < 0) r += n;
    return values_[static_cast<std::size_t>(r)];
}

Complex ZnFun::mean() const
{
    Complex acc = 0;
    for (const auto& v : values_) acc += v;
    return acc / static_cast<double>(values_.size());
}

std::vector<double> ZnFun::real() const
{
    std::vector<double> out;
    out.reserve(values_.size());
    for (const auto& v : values_) out.push_back(v.real());
    return out;
}

ZnFun dft(const ZnFun& f)
{
    if (f.domain() != Domain::Time) throw DomainError("dft expects a time-domain function");
    // FFTW_BACKWARD uses exp(+2 pi i x xi / N)
    auto out = fft(f.values(), FFTW_BACKWARD);
    const double inv = 1.0 / static_cast<double>(f.size());
    for (auto& v : out) v *= inv;
    return ZnFun(std::move(out), Domain::Frequency);
}

ZnFun idft(const ZnFun& g)
{
    if (g.domain() != Domain::Frequency) throw DomainError("idft expects a frequency-domain function");
    return ZnFun(fft(g.values(), FFTW_FORWARD), Domain::Time);
}

ZnFun multiply(const ZnFun& f, const ZnFun& g)
{
    require_same(f, g);
    if (f.domain() != g.domain()) throw DomainError("multiply needs functions on the same side");
    std::vector<Complex> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] * g[i];
    return ZnFun(std::move(out), f.domain());
}

ZnFun convolve(const ZnFun& f, const ZnFun& g)
{
    require_same(f, g);
    if (f.domain() != Domain::Time || g.domain() != Domain::Time) {
        throw DomainError("convolve expects time-domain functions");
    }
    return idft(multiply(dft(f), dft(g)));
}

std::vector<SupportPoint> s_support(const IntPoly& f, std::uint64_t n_mod)
{
    if (n_mod == 0) throw DomainError("N must be positive");
    if (f.degree() < 1 || f.leading() <= 0) {
        throw DomainError("S_f needs a nonconstant polynomial with positive leading coefficient");
    }
    const IntPoly df = derivative(f);
    // f is increasing from `settled` on
    Integer settled = 0;
    if (df.degree() >= 1) {
        Rational b = growth_bounds(df).bound;
        mpz_cdiv_q(settled.get_mpz_t(), b.get_num().get_mpz_t(), b.get_den().get_mpz_t());
        if (settled < 0) settled = 0;
    }
    const Integer big_n = Integer(static_cast<unsigned long>(n_mod));
    std::vector<SupportPoint> out;
    bool positive_seen = false;
    Integer prev;
    for (Integer n = 0;; ++n) {
        Integer v = f(n);
        // 2 f(n) >= N and past the turning region: nothing further can land in (0, N/2)
        if (n >= settled && 2 * v >= big_n) break;
        if (positive_seen && v <= prev) {
            throw DomainError("f is not increasing on the support of S (f(" + Integer(n - 1).get_str() + ") = " +
                              prev.get_str() + ", f(" + n.get_str() + ") = " + v.get_str() + ")");
        }
        if (v > 0) {
            positive_seen = true;
            if (2 * v < big_n) out.push_back({as_i64(n), as_i64(v), df(n)});
        }
        prev = v;
    }
    return out;
}

ZnFun build_S(const IntPoly& f, std::uint64_t n_mod)
{
    std::vector<Complex> values(n_mod);
    for (const auto& pt : s_support(f, n_mod)) values[static_cast<std::size_t>(pt.x)] = pt.weight.get_d();
    return ZnFun(std::move(values), Domain::Time);
}

double moment_norm(const ZnFun& g, double p)
{
    if (!(p >= 1)) throw DomainError("moment_norm needs p >= 1");
    if (g.domain() != Domain::Frequency) throw DomainError("moment_norm expects a frequency-domain function");
    double peak = 0;
    for (const auto& v : g.values()) peak = std::max(peak, std::abs(v));
    if (peak == 0) return 0;
    // scale by the peak so that large p does not underflow
    double acc = 0;
    for (const auto& v : g.values()) acc += std::pow(std::abs(v) / peak, p);
    return peak * std::pow(acc, 1.0 / p);
}

double moment_power(const ZnFun& g, unsigned s)
{
    if (s == 0) throw DomainError("moment_power needs s >= 1");
    if (g.domain() != Domain::Frequency) throw DomainError("moment_power expects a frequency-domain function");
    double acc = 0;
    for (const auto& v : g.values()) acc += std::pow(std::norm(v), static_cast<double>(s));
    return acc;
}

MomentCount moment_by_counting(const IntPoly& f, std::uint64_t n_mod, unsigned s)
{
    if (s == 0) throw DomainError("s must be positive");
    const auto support = s_support(f, n_mod);
    MomentCount out;
    out.n_mod = n_mod;
    out.s = s;
    out.max_n = support.empty() ? -1 : support.back().n;
    const std::int64_t top = support.empty() ? 0 : support.back().x;
    if (static_cast<unsigned __int128>(s) * static_cast<unsigned __int128>(top) >= n_mod) {
        throw DomainError("moment_by_counting needs s * f(M) < N (s = " + std::to_string(s) +
                          ", f(M) = " + std::to_string(top) + ", N = " + std::to_string(n_mod) + ")");
    }
    if (static_cast<unsigned __int128>(s) * n_mod > kMomentTableCap) {
        throw DomainError("moment_by_counting: s * N exceeds the table cap");
    }
    // weights of s-fold sums, built one summand at a time
    std::map<std::int64_t, Integer> dist{{0, Integer(1)}};
    for (unsigned j = 0; j < s; ++j) {
        std::map<std::int64_t, Integer> next;
        for (const auto& [sum, w] : dist) {
            for (const auto& pt : support) next[sum + pt.x] += w * pt.weight;
        }
        dist = std::move(next);
    }
    Integer total = 0;
    for (const auto& [sum, w] : dist) total += w * w;
    out.weighted_solutions = total;
    Integer denom = pow_ui(n_mod, 2 * s - 1);
    out.exact = Rational(total, denom);
    out.exact.canonicalize();
    out.value = out.exact.get_d();
    return out;
}

double bilinear_count(const ZnFun& f1, const ZnFun& f2, const ZnFun& s)
{
    require_same(f1, f2);
    require_same(f1, s);
    const ZnFun a = dft(f1), b = dft(f2), c = dft(s);
    const auto n = static_cast<std::int64_t>(f1.size());
    Complex acc = 0;
    for (std::int64_t xi = 0; xi < n; ++xi) acc += a.at(-xi) * b.at(xi) * c.at(-xi);
    const double nn = static_cast<double>(n);
    return (acc * nn * nn).real();
}

double bilinear_count(const ZnFun& f, const ZnFun& s) { return bilinear_count(f, f, s); }

std::vector<MomentRow> moment_sweep(const IntPoly& h, const std::vector<std::uint64_t>& n_list,
                                    const std::vector<std::uint64_t>& w_list, unsigned s, bool with_count)
{
    if (s == 0) throw DomainError("s must be positive");
    AuxFamily family(h);
    std::vector<IntPoly> hw;
    for (auto w : w_list) hw.push_back(family.member(w).poly);
    const std::size_t cols = n_list.size();
    std::vector<MomentRow> rows(w_list.size() * cols);
    parallel_for(rows.size(), [&](std::size_t i) {
        const std::size_t wi = i / cols, ni = i % cols;
        MomentRow& row = rows[i];
        row.n_mod = n_list[ni];
        row.w = w_list[wi];
        row.s = s;
        const ZnFun spec = dft(build_S(hw[wi], row.n_mod));
        row.fft_norm = moment_norm(spec, 2.0 * s);
        row.fft_moment = moment_power(spec, s);
        if (with_count) {
            try {
                row.count_moment = moment_by_counting(hw[wi], row.n_mod, s).value;
                row.has_count = true;
            } catch (const DomainError&) {
            }
        }
    });
    return rows;
}

}  // namespace interprime
