#include "interprime/wtrick.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "interprime/auxfamily.hpp"
#include "interprime/bounds.hpp"
#include "interprime/errors.hpp"
#include "interprime/localroots.hpp"
#include "interprime/primes.hpp"

namespace interprime {

Integer primorial(std::uint64_t t)
{
    if (t < 2) throw DomainError("primorial needs t >= 2");
    Integer w = 1;
    for (auto p : small_primes(t)) w *= static_cast<unsigned long>(p);
    return w;
}

std::string CongruenceFilter::to_string() const
{
    return std::to_string(residue) + " mod " + std::to_string(modulus);
}

CongruenceFilter parse_filter(const std::string& text)
{
    static const std::regex pattern(R"(\s*(\d+)\s*mod\s*(\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) throw DomainError("filter must look like \"a mod q\", got \"" + text + "\"");
    CongruenceFilter f;
    try {
        f.residue = std::stoull(m[1].str());
        f.modulus = std::stoull(m[2].str());
    } catch (const std::exception&) {
        throw DomainError("filter values out of range: \"" + text + "\"");
    }
    if (f.modulus == 0) throw DomainError("filter modulus must be positive");
    if (f.residue >= f.modulus) throw DomainError("filter residue must be below the modulus");
    return f;
}

std::string to_string(SourceKind s)
{
    switch (s) {
    case SourceKind::Primes:
        return "primes";
    case SourceKind::ChenPrimes:
        return "chen";
    case SourceKind::Csv:
        return "csv";
    }
    return "?";
}

namespace {

bool admissible_b(const Integer& b, const Integer& w, bool chen_pairs)
{
    Integer g;
    Integer v = chen_pairs ? Integer(b * (b + 2)) : b;
    mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), w.get_mpz_t());
    return g == 1;
}

}  // namespace

ResidueSelection residue_selection(const IntSet& a, std::uint64_t m, const Integer& w, const Integer& lambda,
                                   bool chen_pairs)
{
    if (w < 1 || lambda < 1) throw DomainError("W and lambda must be positive");
    const std::int64_t top = static_cast<std::int64_t>(m / 2);
    // residue class in [1, lambda] -> preimages n
    std::map<Integer, std::vector<std::int64_t>> classes;
    for (auto x : a.members()) {
        Integer xv = static_cast<long>(x);
        Integer b = mod_floor(xv, lambda);
        if (b == 0) b = lambda;
        Integer n = (xv - b) / lambda;
        if (n < 0 || n > top) continue;
        classes[b].push_back(n.get_si());
    }
    ResidueSelection out;
    bool found = false;
    for (auto& [b, ns] : classes) {
        if (!admissible_b(b, w, chen_pairs)) continue;
        ++out.candidates_seen;
        if (!found || ns.size() > out.x.size()) {
            out.b = b;
            out.x = IntSet(static_cast<std::uint64_t>(top), ns);
            found = true;
        }
    }
    if (!found || out.x.empty()) {
        // every admissible class is empty: the smallest admissible b
        for (Integer b = 1; b <= lambda; ++b) {
            if (admissible_b(b, w, chen_pairs)) {
                out.b = b;
                out.x = IntSet(static_cast<std::uint64_t>(top), {});
                return out;
            }
        }
        throw DomainError("no admissible residue b in [1, lambda]");
    }
    return out;
}

IntSet build_source(const ExperimentConfig& cfg)
{
    std::vector<std::int64_t> members;
    auto keep = [&](std::uint64_t v) {
        if (!cfg.filter || cfg.filter->accepts(v)) members.push_back(static_cast<std::int64_t>(v));
    };
    switch (cfg.source) {
    case SourceKind::Primes: {
        PrimeTable table = sieve(cfg.n);
        for (auto p : table.primes()) keep(p);
        break;
    }
    case SourceKind::ChenPrimes: {
        PrimeTable table = sieve(cfg.n);
        ChenTable chen(table);
        for (auto p : chen.chen_primes()) keep(p);
        break;
    }
    case SourceKind::Csv:
        if (!cfg.csv_set) throw DomainError("csv source needs a set");
        for (auto v : cfg.csv_set->members()) {
            if (v >= 0 && static_cast<std::uint64_t>(v) <= cfg.n) keep(static_cast<std::uint64_t>(v));
        }
        break;
    }
    return IntSet(cfg.n, std::move(members));
}

bool verify_triple(const Triple& t, const IntPoly& h, const IntSet& a)
{
    if (t.p1 == t.p2) return false;
    if (h(t.n) != t.p1 - t.p2) return false;
    if (!t.p1.fits_slong_p() || !t.p2.fits_slong_p()) return false;
    return a.contains(t.p1.get_si()) && a.contains(t.p2.get_si());
}

ExperimentReport run_experiment(const ExperimentConfig& cfg)
{
    if (cfg.n < 2) throw DomainError("N must be at least 2");
    const IntPoly& h = cfg.h;
    if (h.degree() < 1) throw DomainError("h must be nonconstant");
    ExperimentReport rep;
    rep.w = primorial(cfg.t);
    if (!rep.w.fits_ulong_p()) throw DomainError("W = primorial(t) must fit in 64 bits");

    // fail at the prime with the smallest obstruction modulus
    const auto verdict = check_intersective(h, cfg.t);
    if (verdict.kind == IntersectivityVerdict::Kind::NotIntersective) throw NoLocalRoot(verdict.witness_prime);

    const auto aux = AuxFamily(h).member(rep.w.get_ui());
    rep.lambda = aux.lambda;
    rep.r = aux.r;
    rep.hw = aux.poly;

    const IntSet a = build_source(cfg);
    rep.source_size = a.size();

    Integer ceil_n_over_lambda;
    Integer nn = static_cast<unsigned long>(cfg.n);
    mpz_cdiv_q(ceil_n_over_lambda.get_mpz_t(), nn.get_mpz_t(), rep.lambda.get_mpz_t());
    rep.m = 2 * ceil_n_over_lambda.get_ui();

    const bool chen = cfg.source == SourceKind::ChenPrimes;
    ResidueSelection sel = residue_selection(a, rep.m, rep.w, rep.lambda, chen);
    rep.b = sel.b;
    rep.x_size = sel.x.size();
    rep.x_density = static_cast<double>(rep.x_size) / static_cast<double>(rep.m / 2 + 1);

    const auto bp = profile(std::max(2, h.degree()));
    rep.kappa = bp.kappa;
    const double log_w = std::log(rep.w.get_d());
    const double log_n = std::log(static_cast<double>(cfg.n));
    rep.kappa_ok = log_w < rep.kappa * log_n;
    if (!rep.kappa_ok) {
        std::ostringstream os;
        os << "W = " << rep.w.get_str() << " is not below N^kappa (kappa = " << rep.kappa
           << "); the search is exact but the theorem's guarantee does not apply";
        rep.warning = os.str();
    }
    if (cfg.expectation_diagnostic) {
        const double log_t = std::log(static_cast<double>(cfg.t));
        const double scale = chen ? log_n / (log_t * log_t) : log_n / log_t;
        rep.expectation = scale * static_cast<double>(rep.x_size) / static_cast<double>(rep.m);
    }

    if (rep.hw.leading() <= 0) throw DomainError("h_W must have a positive leading coefficient");
    const auto witnesses = difference_pairs(sel.x, rep.hw);
    rep.witnesses = witnesses.size();
    for (const auto& wit : witnesses) {
        Triple t;
        t.a = wit.a;
        t.a_prime = wit.a_prime;
        t.d = wit.n;
        t.p1 = rep.lambda * static_cast<long>(wit.a) + rep.b;
        t.p2 = rep.lambda * static_cast<long>(wit.a_prime) + rep.b;
        t.n = rep.w * static_cast<long>(wit.n) + rep.r;
        const bool prime_ok = t.p1.fits_ulong_p() && t.p2.fits_ulong_p() && is_prime_u64(t.p1.get_ui()) &&
                              is_prime_u64(t.p2.get_ui());
        if (verify_triple(t, h, a) && (cfg.source == SourceKind::Csv || prime_ok)) {
            rep.triples.push_back(std::move(t));
        }
    }
    rep.verified = rep.triples.size();
    std::sort(rep.triples.begin(), rep.triples.end(), [](const Triple& x, const Triple& y) {
        if (x.p1 != y.p1) return x.p1 < y.p1;
        return x.p2 < y.p2;
    });
    return rep;
}

std::vector<ScalingRow> scaling_table(const IntPoly& h, SourceKind source, const std::vector<std::uint64_t>& n_list,
                                      const std::optional<CongruenceFilter>& filter)
{
    if (source == SourceKind::Csv) throw DomainError("scaling_table needs a generated source");
    std::vector<ScalingRow> rows;
    for (auto n : n_list) {
        ExperimentConfig cfg;
        cfg.h = h;
        cfg.n = n;
        cfg.source = source;
        cfg.filter = filter;
        const IntSet a = build_source(cfg);
        std::set<std::pair<std::int64_t, std::int64_t>> pairs;
        for (const auto& w : difference_pairs(a, h)) pairs.insert({w.a, w.a_prime});
        const double l = std::log(static_cast<double>(n));
        const double k = h.degree();
        rows.push_back({n, pairs.size(),
                        static_cast<double>(pairs.size()) * l * l / std::pow(static_cast<double>(n), 1.0 + 1.0 / k)});
    }
    return rows;
}

}  // namespace interprime
