#include "interprime/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "interprime/auxfamily.hpp"
#include "interprime/bohr.hpp"
#include "interprime/bounds.hpp"
#include "interprime/counting.hpp"
#include "interprime/errors.hpp"
#include "interprime/intpoly.hpp"
#include "interprime/localroots.hpp"
#include "interprime/parallel.hpp"
#include "interprime/primes.hpp"
#include "interprime/wtrick.hpp"
#include "interprime/znfourier.hpp"

#ifndef INTERPRIME_VERSION
#define INTERPRIME_VERSION "0.0.0"
#endif

namespace interprime::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kGrammar =
    "polynomial grammar:\n"
    "  poly   := ['+'|'-'] term (('+'|'-') term)*\n"
    "  term   := factor ('*'? factor)*\n"
    "  factor := INT | 'x' ('^' UINT)? | '(' poly ')' ('^' UINT)?\n"
    "  or the coefficient list \"[a0,a1,...,ak]\"\n"
    "examples: \"x^2 - 1\", \"(x^3-19)(x^2+x+1)\", \"[0,0,1]\"\n";

/// A command's answer: a JSON document, JSON lines, or text (CSV / table).
struct Output {
    enum class Kind { Document, Lines, Text } kind = Kind::Document;
    Json result;              // Document: the "result" member; Lines: array of records
    std::string text;         // Text body without the comment header
    int exit_code = kExitOk;
};

/// Thrown for input problems detected after CLI parsing (bad CSV, bad set name).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- formatting

Json to_json(const Integer& v)
{
    if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
    return v.get_str();
}

Integer integer_from(const Json& j)
{
    if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) return Integer(j.get<std::string>());
    throw DomainError("expected an integer in the report");
}

Json coeffs_json(const IntPoly& f)
{
    Json a = Json::array();
    for (const auto& c : f.coeffs()) a.push_back(to_json(c));
    return a;
}

std::string rational_string(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

std::string num(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

Json header(const std::string& command, const Json& config)
{
    Json h;
    h["tool"] = "interprime";
    h["version"] = version();
    h["command"] = command;
    h["config"] = config;
    return h;
}

std::string text_header(const std::string& command, const Json& config)
{
    return "# tool=interprime version=" + version() + " command=" + command + "\n# config=" + config.dump() + "\n";
}

std::string render(const std::string& command, const Json& config, const Output& o)
{
    switch (o.kind) {
    case Output::Kind::Document: {
        Json doc;
        doc["header"] = header(command, config);
        doc["result"] = o.result;
        return doc.dump(2) + "\n";
    }
    case Output::Kind::Lines: {
        std::string s = Json{{"header", header(command, config)}}.dump() + "\n";
        for (const auto& r : o.result) s += r.dump() + "\n";
        return s;
    }
    case Output::Kind::Text:
        return text_header(command, config) + o.text;
    }
    return {};
}

// ---------------------------------------------------------------- inputs

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Numbers separated by commas or whitespace; '#' starts a comment.
template <class T>
std::vector<T> read_numbers(const std::string& path)
{
    std::istringstream in(read_file(path));
    std::vector<T> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            T v{};
            auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
                throw UsageError(path + ":" + std::to_string(lineno) + ": not a number: " + tok);
            out.push_back(v);
        }
    }
    return out;
}

IntSet read_intset(const std::string& path, std::uint64_t n)
{
    auto v = read_numbers<std::int64_t>(path);
    if (n == 0) {
        for (auto x : v) n = std::max<std::uint64_t>(n, x > 0 ? static_cast<std::uint64_t>(x) : 0);
    }
    return IntSet(n, std::move(v));
}

/// Named generators {primes, chen, odd, all} on [1, N] or csv:PATH.
IntSet named_set(const std::string& name, std::uint64_t n)
{
    if (name.rfind("csv:", 0) == 0) return read_intset(name.substr(4), n);
    if (n == 0) throw UsageError("--N is required for set " + name);
    std::vector<std::int64_t> v;
    if (name == "primes") {
        for (auto p : sieve(n).primes()) v.push_back(static_cast<std::int64_t>(p));
    } else if (name == "chen") {
        for (auto p : ChenTable(sieve(n + 2)).chen_primes())
            if (p <= n) v.push_back(static_cast<std::int64_t>(p));
    } else if (name == "odd") {
        for (std::uint64_t x = 1; x <= n; x += 2) v.push_back(static_cast<std::int64_t>(x));
    } else if (name == "all") {
        for (std::uint64_t x = 1; x <= n; ++x) v.push_back(static_cast<std::int64_t>(x));
    } else {
        throw UsageError("unknown set '" + name + "' (primes, chen, odd, all, csv:PATH)");
    }
    return IntSet(n, std::move(v));
}

IntPoly poly_of(const Json& config) { return parse_poly(config.at("poly").get<std::string>()); }

// ---------------------------------------------------------------- commands

Json verdict_json(const IntersectivityVerdict& v)
{
    Json j;
    j["kind"] = v.kind_name();
    j["is_proof"] = v.is_proof();
    j["prime_bound"] = v.prime_bound;
    if (v.kind == IntersectivityVerdict::Kind::NotIntersective) {
        j["witness_modulus"] = to_json(v.witness_modulus);
        j["witness_prime"] = v.witness_prime;
    }
    if (v.kind == IntersectivityVerdict::Kind::CertifiedIntersective) j["integer_root"] = to_json(v.integer_root);
    return j;
}

Output cmd_analyze(const Json& c)
{
    const IntPoly h = poly_of(c);
    if (h.degree() < 1) throw DomainError("analyze needs a nonconstant polynomial");
    Output o;
    Json& r = o.result;
    r["poly"] = h.to_string();
    r["coeffs"] = coeffs_json(h);
    r["degree"] = h.degree();
    auto g = growth_bounds(h);
    r["b"] = to_json(g.leading);
    r["B"] = rational_string(g.bound);
    r["B_float"] = g.bound.get_d();
    r["content"] = to_json(content(h));
    r["full_content"] = to_json(full_content(h));
    r["discriminant"] = to_json(discriminant(h));
    r["semidiscriminant"] = to_json(semidiscriminant(h));
    auto dec = squarefree_decomposition(h);
    Json sq = Json::array();
    for (const auto& f : dec.factors) sq.push_back({{"coeffs", coeffs_json(f.poly)}, {"exponent", f.exponent}});
    r["squarefree"] = {{"unit", to_json(dec.unit)}, {"factors", sq}};
    Json roots = Json::array();
    for (const auto& z : integer_roots(h)) roots.push_back(to_json(z));
    r["integer_roots"] = roots;
    r["verdict"] = verdict_json(check_intersective(h, c.at("prime_bound").get<std::uint64_t>()));
    return o;
}

Output cmd_intersective(const Json& c)
{
    const IntPoly h = poly_of(c);
    Output o;
    o.result["coeffs"] = coeffs_json(h);
    o.result["verdict"] = verdict_json(check_intersective(h, c.at("prime_bound").get<std::uint64_t>()));
    return o;
}

Output cmd_aux(const Json& c)
{
    const IntPoly h = poly_of(c);
    std::vector<std::uint64_t> ds = c.at("d").get<std::vector<std::uint64_t>>();
    for (std::uint64_t d = 1; d <= c.at("d_max").get<std::uint64_t>(); ++d) ds.push_back(d);
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    if (ds.empty()) throw UsageError("aux needs --d or --d-max");
    if (ds.front() == 0) throw DomainError("d must be positive");
    const auto q = c.at("check_q").get<std::uint64_t>();

    AuxFamily family(h);
    Output o;
    o.kind = Output::Kind::Lines;
    o.result = Json::array();
    std::vector<Json> rows(ds.size());
    parallel_for(ds.size(), [&](std::size_t i) {
        auto a = family.member(ds[i]);
        Json row;
        row["d"] = a.d;
        row["r"] = to_json(a.r);
        row["lambda"] = to_json(a.lambda);
        row["coeffs"] = coeffs_json(a.poly);
        if (q > 0) {
            auto rep = verify_lemma1(family, ds[i], q);
            Json items = Json::array();
            for (int k = 0; k < 6; ++k)
                items.push_back({{"item", k + 1}, {"pass", rep.items[k].pass}, {"detail", rep.items[k].detail}});
            row["q"] = q;
            row["checks"] = items;
            row["all_pass"] = rep.all_pass();
        }
        rows[i] = std::move(row);
    });
    for (auto& r : rows) o.result.push_back(std::move(r));
    return o;
}

Output cmd_sieve(const Json& c)
{
    Output o;
    o.kind = Output::Kind::Text;
    std::string s = "N,primes,chen,ratio\n";
    for (const auto& r : density_report(c.at("N").get<std::uint64_t>()))
        s += std::to_string(r.n) + "," + std::to_string(r.primes) + "," + std::to_string(r.chen) + "," + num(r.ratio) + "\n";
    o.text = s;
    return o;
}

Output cmd_moments(const Json& c)
{
    const IntPoly h = poly_of(c);
    auto rows = moment_sweep(h, c.at("N_list").get<std::vector<std::uint64_t>>(),
                             c.at("W_list").get<std::vector<std::uint64_t>>(), c.at("s").get<unsigned>(),
                             c.at("count").get<bool>());
    Output o;
    o.kind = Output::Kind::Text;
    std::string s = "N,W,s,fft_moment,count_moment,fft_norm\n";
    for (const auto& r : rows) {
        s += std::to_string(r.n_mod) + "," + std::to_string(r.w) + "," + std::to_string(r.s) + "," + num(r.fft_moment) +
             "," + (r.has_count ? num(r.count_moment) : std::string()) + "," + num(r.fft_norm) + "\n";
    }
    o.text = s;
    return o;
}

std::vector<double> random_unit_values(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = static_cast<double>(rng() >> 11) * 0x1p-53;
    return v;
}

Output cmd_bohr(const Json& c)
{
    const std::string input = c.at("input").get<std::string>();
    std::uint64_t n = c.at("N").get<std::uint64_t>();
    std::vector<double> f;
    if (input == "random") {
        if (n == 0) throw UsageError("--N is required with --input random");
        f = random_unit_values(n, c.at("seed").get<std::uint64_t>());
    } else {
        f = read_numbers<double>(input);
        if (n != 0 && f.size() != n) throw DomainError("input has " + std::to_string(f.size()) + " values, expected N = " + std::to_string(n));
    }
    std::optional<ZnFun> nu;
    if (!c.at("nu").is_null()) {
        auto v = read_numbers<double>(c.at("nu").get<std::string>());
        if (v.size() != f.size()) throw DomainError("nu must have as many values as f");
        nu = ZnFun::time_real(v);
    }
    std::optional<double> eta;
    if (!c.at("eta").is_null()) eta = c.at("eta").get<double>();

    auto d = smooth_decompose(ZnFun::time_real(f), c.at("eps").get<double>(), nu, eta);
    const auto& g = d.diagnostics;
    Output o;
    Json& r = o.result;
    r["N"] = f.size();
    r["spectrum"] = d.spectrum.members;
    r["bohr_size"] = g.bohr_size;
    r["mean_f"] = g.mean_f;
    r["mean_f1"] = g.mean_f1;
    r["mean_gap"] = g.mean_gap;
    r["max_excess_f1"] = g.max_excess_f1;
    r["max_excess_f2"] = g.max_excess_f2;
    r["f2_sup"] = g.f2_sup;
    r["eta"] = g.eta;
    r["uniform_bound"] = g.uniform_bound;
    r["range_checked"] = g.range_checked;
    if (g.range_checked) {
        r["f1_min"] = g.f1_min;
        r["f1_max"] = g.f1_max;
        r["range_upper"] = g.range_upper;
        r["f_below_nu"] = g.f_below_nu;
    }
    r["checks"] = {{"mean", g.mean_ok()}, {"domination", g.domination_ok()}, {"uniform", g.uniform_ok()},
                   {"range", g.range_ok()}};
    return o;
}

Output cmd_pairs(const Json& c)
{
    const IntPoly h = poly_of(c);
    const auto n_list = c.at("N_list").get<std::vector<std::uint64_t>>();
    const std::string set = c.at("set").get<std::string>();
    Output o;
    if (!n_list.empty()) {
        SourceKind kind;
        if (set == "primes")
            kind = SourceKind::Primes;
        else if (set == "chen")
            kind = SourceKind::ChenPrimes;
        else
            throw UsageError("--N-list scaling needs --set primes or chen");
        o.kind = Output::Kind::Text;
        std::string s = "N,pairs,ratio\n";
        for (const auto& r : scaling_table(h, kind, n_list))
            s += std::to_string(r.n) + "," + std::to_string(r.pairs) + "," + num(r.ratio) + "\n";
        o.text = s;
        return o;
    }
    IntSet a = named_set(set, c.at("N").get<std::uint64_t>());
    auto w = difference_pairs(a, h);
    auto wr = weighted_R(a, h);
    const auto limit = c.at("limit").get<std::uint64_t>();
    Json& r = o.result;
    r["set_size"] = a.size();
    r["witness_count"] = w.size();
    r["weighted_R"] = {{"total", to_json(wr.total)},
                       {"from_pairs", to_json(wr.from_pairs)},
                       {"degenerate", to_json(wr.degenerate)},
                       {"negative_values", to_json(wr.negative_values)},
                       {"unordered_pairs", wr.unordered_pairs},
                       {"ordered_pairs", wr.ordered_pairs}};
    Json ws = Json::array();
    for (std::size_t i = 0; i < w.size() && (limit == 0 || i < limit); ++i)
        ws.push_back({{"a", w[i].a}, {"a_prime", w[i].a_prime}, {"n", w[i].n}, {"value", w[i].value}});
    r["witnesses"] = ws;
    r["truncated"] = limit != 0 && w.size() > limit;
    return o;
}

Output cmd_dff(const Json& c)
{
    const IntPoly h = poly_of(c);
    const std::string mode = c.at("mode").get<std::string>();
    auto res = extremal_dff(h, c.at("N").get<std::uint64_t>(), mode == "exact" ? DffMode::Exact : DffMode::Greedy);
    Output o;
    o.result["mode"] = to_string(res.mode);
    o.result["size"] = res.size;
    o.result["witness"] = res.witness.members();
    if (res.mode == DffMode::Exact) o.result["nodes"] = res.nodes;
    return o;
}

ExperimentConfig experiment_config(const Json& c)
{
    ExperimentConfig cfg;
    cfg.h = poly_of(c);
    cfg.n = c.at("N").get<std::uint64_t>();
    cfg.t = c.at("t").get<std::uint64_t>();
    const std::string src = c.at("source").get<std::string>();
    if (src == "primes") {
        cfg.source = SourceKind::Primes;
    } else if (src == "chen") {
        cfg.source = SourceKind::ChenPrimes;
    } else if (src.rfind("csv:", 0) == 0) {
        cfg.source = SourceKind::Csv;
        cfg.csv_set = read_intset(src.substr(4), cfg.n);
    } else {
        throw UsageError("unknown source '" + src + "' (primes, chen, csv:PATH)");
    }
    if (!c.at("filter").is_null()) cfg.filter = parse_filter(c.at("filter").get<std::string>());
    cfg.expectation_diagnostic = c.at("expectation").get<bool>();
    return cfg;
}

Output cmd_transfer(const Json& c)
{
    auto cfg = experiment_config(c);
    auto rep = run_experiment(cfg);
    const auto limit = c.at("limit").get<std::uint64_t>();
    Output o;
    Json& r = o.result;
    r["W"] = to_json(rep.w);
    r["lambda"] = to_json(rep.lambda);
    r["r"] = to_json(rep.r);
    r["hW"] = coeffs_json(rep.hw);
    r["b"] = to_json(rep.b);
    r["M"] = rep.m;
    r["source_size"] = rep.source_size;
    r["X_size"] = rep.x_size;
    r["X_density"] = rep.x_density;
    r["witnesses"] = rep.witnesses;
    r["verified"] = rep.verified;
    r["kappa"] = rep.kappa;
    r["kappa_ok"] = rep.kappa_ok;
    if (!rep.warning.empty()) r["warning"] = rep.warning;
    if (rep.expectation) r["expectation"] = *rep.expectation;
    Json ts = Json::array();
    for (std::size_t i = 0; i < rep.triples.size() && (limit == 0 || i < limit); ++i) {
        const auto& t = rep.triples[i];
        ts.push_back({{"p1", to_json(t.p1)},
                      {"p2", to_json(t.p2)},
                      {"n", to_json(t.n)},
                      {"a", t.a},
                      {"a_prime", t.a_prime},
                      {"d", t.d}});
    }
    r["triples"] = ts;
    r["truncated"] = limit != 0 && rep.triples.size() > limit;
    o.exit_code = rep.verified > 0 ? kExitOk : kExitDomain;
    return o;
}

Output cmd_bounds(const Json& c)
{
    const int k = c.at("k").get<int>();
    const double c1 = c.at("c1").get<double>();
    auto p = profile(k);
    Json r;
    r["k"] = p.k;
    r["mu"] = p.mu;
    r["s0"] = p.s0;
    r["rho"] = p.rho_exact ? Json(rational_string(*p.rho_exact)) : Json(p.rho);
    r["rho_float"] = p.rho;
    r["kappa1"] = p.kappa1_exact ? Json(rational_string(*p.kappa1_exact)) : Json(p.kappa1);
    r["kappa1_float"] = p.kappa1;
    r["kappa2"] = rational_string(p.kappa2);
    r["kappa"] = p.kappa;
    r["q_range"] = {rational_string(p.q_lower), rational_string(p.q_upper)};
    if (!c.at("delta").is_null()) {
        const double delta = c.at("delta").get<double>();
        r["lucier_c"] = lucier_c(k, delta, c1);
        r["theta"] = theta(delta, k);
    }
    if (!c.at("N").is_null()) {
        auto t = density_thresholds(c.at("N").get<double>(), k);
        r["density_lucier"] = t.lucier;
        r["density_pss"] = t.pss;
        r["density_primes_shape"] = t.primes_shape;
    }
    Output o;
    if (c.at("format").get<std::string>() == "json") {
        o.result = r;
        return o;
    }
    o.kind = Output::Kind::Text;
    static const std::map<std::string, std::string> labels = {
        {"k", "degree"},
        {"mu", "exponent of log(2/delta)"},
        {"s0", "moment order k 2^(k+1)"},
        {"rho", "density increment rate"},
        {"rho_float", ""},
        {"kappa1", "rho / (16 k^2)"},
        {"kappa1_float", ""},
        {"kappa2", "1/k"},
        {"kappa", "min(kappa1, kappa2)"},
        {"q_range", "open interval (2, 4 s0 / (2 s0 - 1))"},
        {"lucier_c", "shape-only, c1 supplied"},
        {"theta", "at x = delta"},
        {"density_lucier", "shape-only"},
        {"density_pss", "shape-only"},
        {"density_primes_shape", "shape-only"},
    };
    std::ostringstream s;
    for (const auto& [key, value] : r.items()) {
        std::string v = value.is_string()         ? value.get<std::string>()
                        : value.is_number_float() ? num(value.get<double>())
                        : value.is_array()        ? "(" + value[0].get<std::string>() + ", " + value[1].get<std::string>() + ")"
                                                  : value.dump();
        s << std::left << std::setw(22) << key << std::setw(26) << v << labels.at(key) << "\n";
    }
    o.text = s.str();
    return o;
}

using Command = std::function<Output(const Json&)>;

const std::map<std::string, Command>& commands()
{
    static const std::map<std::string, Command> table = {
        {"analyze", cmd_analyze}, {"intersective", cmd_intersective}, {"aux", cmd_aux},
        {"sieve", cmd_sieve},     {"moments", cmd_moments},           {"bohr", cmd_bohr},
        {"pairs", cmd_pairs},     {"dff", cmd_dff},                   {"transfer", cmd_transfer},
        {"bounds", cmd_bounds},
    };
    return table;
}

// ---------------------------------------------------------------- replay

struct Replay {
    std::size_t checked = 0;
    std::vector<std::string> failures;

    void check(bool ok, const std::string& what)
    {
        ++checked;
        if (!ok) failures.push_back(what);
    }
};

void replay_verdict(const IntPoly& h, const Json& v, Replay& rp)
{
    const std::string kind = v.at("kind").get<std::string>();
    if (kind == "NotIntersective") {
        const Integer m = integer_from(v.at("witness_modulus"));
        const auto p = v.at("witness_prime").get<std::uint64_t>();
        rp.check(m.fits_ulong_p() && has_no_root_mod(h, m.get_ui()), "no root modulo " + m.get_str());
        rp.check(p > 1 && mpz_divisible_ui_p(m.get_mpz_t(), p) != 0, "witness prime divides the modulus");
    } else if (kind == "CertifiedIntersective") {
        const Integer z = integer_from(v.at("integer_root"));
        rp.check(h(z) == 0, "h(" + z.get_str() + ") = 0");
    } else if (kind == "VerifiedUpToBound") {
        auto dec = squarefree_decomposition(h);
        const auto bound = v.at("prime_bound").get<std::uint64_t>();
        for (auto p : sieve(std::max<std::uint64_t>(bound, 2)).primes())
            rp.check(has_padic_root(dec, p), "root in Z_" + std::to_string(p));
    } else {
        rp.check(false, "unknown verdict " + kind);
    }
}

void replay_aux(const Json& config, const std::vector<Json>& rows, Replay& rp)
{
    const IntPoly h = poly_of(config);
    for (const auto& row : rows) {
        const auto d = row.at("d").get<std::uint64_t>();
        const Integer r = integer_from(row.at("r"));
        const Integer lambda = integer_from(row.at("lambda"));
        std::vector<Integer> cs;
        for (const auto& x : row.at("coeffs")) cs.push_back(integer_from(x));
        const IntPoly hd(cs);
        const std::string tag = "d = " + std::to_string(d);
        rp.check(r <= 0 && r > -Integer(d), tag + ": r in (-d, 0]");
        rp.check(lambda > 0 && mpz_divisible_ui_p(lambda.get_mpz_t(), d) != 0, tag + ": d | lambda");
        rp.check(hd * lambda == affine_compose(h, Integer(d), r), tag + ": lambda h_d(x) = h(r + d x)");
        rp.check(hd.degree() == h.degree(), tag + ": degree");
    }
}

void replay_pairs(const Json& config, const Json& result, Replay& rp)
{
    const IntPoly h = poly_of(config);
    IntSet a = named_set(config.at("set").get<std::string>(), config.at("N").get<std::uint64_t>());
    for (const auto& w : result.at("witnesses")) {
        const auto x = w.at("a").get<std::int64_t>(), y = w.at("a_prime").get<std::int64_t>();
        const auto n = w.at("n").get<std::int64_t>();
        const std::string tag = std::to_string(x) + " - " + std::to_string(y);
        rp.check(a.contains(x) && a.contains(y), tag + ": both in the set");
        rp.check(h(Integer(std::to_string(n))) == Integer(std::to_string(x - y)) && x > y, tag + " = h(" + std::to_string(n) + ")");
    }
}

void replay_dff(const Json& config, const Json& result, Replay& rp)
{
    const IntPoly h = poly_of(config);
    const auto n = config.at("N").get<std::uint64_t>();
    auto members = result.at("witness").get<std::vector<std::int64_t>>();
    for (auto x : members) rp.check(x >= 1 && static_cast<std::uint64_t>(x) <= n, std::to_string(x) + " in [1, N]");
    rp.check(members.size() == result.at("size").get<std::size_t>(), "size matches the witness");
    rp.check(is_difference_free(IntSet(n, members), h), "witness is difference-free");
}

void replay_transfer(const Json& config, const Json& result, Replay& rp)
{
    auto cfg = experiment_config(config);
    IntSet a = build_source(cfg);
    for (const auto& j : result.at("triples")) {
        Triple t{integer_from(j.at("p1")), integer_from(j.at("p2")), integer_from(j.at("n")),
                 j.at("a").get<std::int64_t>(), j.at("a_prime").get<std::int64_t>(), j.at("d").get<std::int64_t>()};
        rp.check(verify_triple(t, cfg.h, a), t.p1.get_str() + " - " + t.p2.get_str() + " = h(" + t.n.get_str() + ")");
    }
}

Output replay(const std::string& path)
{
    const std::string text = read_file(path);
    Json head, result;
    std::vector<Json> lines;
    try {
        Json doc = Json::parse(text);
        head = doc.at("header");
        result = doc.at("result");
    } catch (const Json::exception&) {
        // JSON lines: header first
        std::istringstream in(text);
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            Json j;
            try {
                j = Json::parse(line);
            } catch (const Json::exception&) {
                throw UsageError(path + " is not a JSON report (CSV and table outputs carry no witnesses)");
            }
            if (first) {
                if (!j.contains("header")) throw UsageError(path + " has no report header");
                head = j.at("header");
                first = false;
            } else {
                lines.push_back(std::move(j));
            }
        }
        if (first) throw UsageError(path + " is empty");
    }
    if (!head.is_object() || head.value("tool", "") != "interprime") throw UsageError(path + " is not an interprime report");

    const std::string command = head.at("command").get<std::string>();
    const Json& config = head.at("config");
    Replay rp;
    if (command == "intersective" || command == "analyze") {
        replay_verdict(poly_of(config), result.at("verdict"), rp);
    } else if (command == "aux") {
        replay_aux(config, lines, rp);
    } else if (command == "pairs") {
        replay_pairs(config, result, rp);
    } else if (command == "dff") {
        replay_dff(config, result, rp);
    } else if (command == "transfer") {
        replay_transfer(config, result, rp);
    }
    // everything else (and analyze) is recomputed and compared
    if (command == "analyze" || command == "bohr" || command == "bounds") {
        auto again = commands().at(command)(config);
        rp.check(again.result == result, "recomputed result is identical");
    } else if (!commands().count(command) || command == "sieve" || command == "moments") {
        throw UsageError("no replay for command '" + command + "'");
    }

    Output o;
    o.result["report"] = command;
    o.result["checked"] = rp.checked;
    o.result["failures"] = rp.failures;
    o.result["ok"] = rp.failures.empty();
    o.exit_code = rp.failures.empty() ? kExitOk : kExitDomain;
    return o;
}

// ---------------------------------------------------------------- argv

struct Args {
    std::string poly;
    std::uint64_t analyze_bound = 0, prime_bound = 0;
    std::vector<std::uint64_t> d;
    std::uint64_t d_max = 0, check_q = 0;
    std::uint64_t n = 0, t = 2, limit = 0, seed = 1;
    std::vector<std::uint64_t> n_list, w_list;
    unsigned s = 2;
    bool no_count = false, expectation = false;
    std::string input, nu, set = "primes", mode = "exact", source = "primes", filter, format = "table";
    double eps = 0.2, c1 = 1;
    std::optional<double> eta, delta, big_n;
    int k = 2;
};

}  // namespace

std::string version() { return INTERPRIME_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"interprime: intersective polynomials, local roots and prime differences"};
    app.footer(kGrammar);
    app.set_version_flag("--version", version());
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::string output, verify;
    unsigned threads = 0;
    app.add_option("-o,--output", output, "write the report to a file instead of stdout");
    app.add_option("--verify", verify, "re-parse a JSON report and re-verify its witnesses")->check(CLI::ExistingFile);
    app.add_option("--threads", threads, "worker threads (0 = available parallelism)");

    Args a;
    std::map<std::string, std::function<Json()>> configs;

    auto* analyze = app.add_subcommand("analyze", "scalar invariants, squarefree factors and a verdict");
    analyze->add_option("--poly", a.poly)->required();
    analyze->add_option("--prime-bound", a.analyze_bound, "primes checked for local roots")->default_val(100);
    configs["analyze"] = [&] { return Json{{"poly", a.poly}, {"prime_bound", a.analyze_bound}}; };

    auto* inter = app.add_subcommand("intersective", "local-root verdict");
    inter->add_option("--poly", a.poly)->required();
    inter->add_option("--prime-bound", a.prime_bound)->default_val(10000);
    configs["intersective"] = [&] { return Json{{"poly", a.poly}, {"prime_bound", a.prime_bound}}; };

    auto* aux = app.add_subcommand("aux", "auxiliary polynomials h_d as JSON lines");
    aux->add_option("--poly", a.poly)->required();
    aux->add_option("--d", a.d, "moduli d (repeatable or comma separated)")->delimiter(',');
    aux->add_option("--d-max", a.d_max, "also every d in 1..D");
    aux->add_option("--check-q", a.check_q, "run the six family checks for (d, q)");
    configs["aux"] = [&] {
        auto ds = a.d;
        std::sort(ds.begin(), ds.end());
        return Json{{"poly", a.poly}, {"d", ds}, {"d_max", a.d_max}, {"check_q", a.check_q}};
    };

    auto* sv = app.add_subcommand("sieve", "prime and Chen prime counts as CSV");
    sv->add_option("--N", a.n)->required();
    configs["sieve"] = [&] { return Json{{"N", a.n}}; };

    auto* mo = app.add_subcommand("moments", "moments of S^ for h_W as CSV");
    mo->add_option("--poly", a.poly)->required();
    mo->add_option("--N-list", a.n_list)->delimiter(',')->required();
    mo->add_option("--W-list", a.w_list)->delimiter(',')->default_str("1");
    mo->add_option("--s", a.s)->default_val(2);
    mo->add_flag("--no-count", a.no_count, "skip the combinatorial route");
    configs["moments"] = [&] {
        auto w = a.w_list.empty() ? std::vector<std::uint64_t>{1} : a.w_list;
        return Json{{"poly", a.poly}, {"N_list", a.n_list}, {"W_list", w}, {"s", a.s}, {"count", !a.no_count}};
    };

    auto* bo = app.add_subcommand("bohr", "Bohr-set decomposition diagnostics");
    bo->add_option("--N", a.n, "size of Z_N (required for random input)");
    bo->add_option("--eps", a.eps)->default_val(0.2);
    bo->add_option("--input", a.input, "CSV of f values, or 'random'")->required();
    bo->add_option("--nu", a.nu, "CSV of majorant values");
    bo->add_option("--eta", a.eta);
    bo->add_option("--seed", a.seed, "seed for --input random")->default_val(1);
    configs["bohr"] = [&] {
        return Json{{"N", a.n},
                    {"eps", a.eps},
                    {"input", a.input},
                    {"nu", a.nu.empty() ? Json() : Json(a.nu)},
                    {"eta", a.eta ? Json(*a.eta) : Json()},
                    {"seed", a.seed}};
    };

    auto* pa = app.add_subcommand("pairs", "differences a - a' = h(n) in a set");
    pa->add_option("--poly", a.poly)->required();
    pa->add_option("--set", a.set, "primes, chen, odd, all or csv:PATH")->default_val("primes");
    pa->add_option("--N", a.n);
    pa->add_option("--N-list", a.n_list, "scaling table instead of witnesses")->delimiter(',');
    pa->add_option("--limit", a.limit, "witnesses to list (0 = all)")->default_val(0);
    configs["pairs"] = [&] {
        return Json{{"poly", a.poly}, {"set", a.set}, {"N", a.n}, {"N_list", a.n_list}, {"limit", a.limit}};
    };

    auto* df = app.add_subcommand("dff", "largest difference-free subset of {1..N}");
    df->add_option("--poly", a.poly)->required();
    df->add_option("--N", a.n)->required();
    df->add_option("--mode", a.mode)->check(CLI::IsMember({"exact", "greedy"}))->default_val("exact");
    configs["dff"] = [&] { return Json{{"poly", a.poly}, {"N", a.n}, {"mode", a.mode}}; };

    auto* tr = app.add_subcommand("transfer", "W-trick experiment on primes");
    tr->add_option("--poly", a.poly)->required();
    tr->add_option("--N", a.n)->required();
    tr->add_option("--t", a.t)->default_val(2);
    tr->add_option("--source", a.source, "primes, chen or csv:PATH")->default_val("primes");
    tr->add_option("--filter", a.filter, "keep a = r mod q, written \"r mod q\"");
    tr->add_option("--limit", a.limit, "triples to list (0 = all)")->default_val(0);
    tr->add_flag("--expectation", a.expectation, "report E f for the normalized indicator of X");
    configs["transfer"] = [&] {
        return Json{{"poly", a.poly},
                    {"N", a.n},
                    {"t", a.t},
                    {"source", a.source},
                    {"filter", a.filter.empty() ? Json() : Json(a.filter)},
                    {"limit", a.limit},
                    {"expectation", a.expectation}};
    };

    auto* bd = app.add_subcommand("bounds", "closed-form constants and density shapes");
    bd->add_option("--k", a.k)->default_val(2);
    bd->add_option("--delta", a.delta);
    bd->add_option("--N", a.big_n);
    bd->add_option("--c1", a.c1)->default_val(1.0);
    bd->add_option("--format", a.format)->check(CLI::IsMember({"table", "json"}))->default_val("table");
    configs["bounds"] = [&] {
        return Json{{"k", a.k},
                    {"delta", a.delta ? Json(*a.delta) : Json()},
                    {"N", a.big_n ? Json(*a.big_n) : Json()},
                    {"c1", a.c1},
                    {"format", a.format}};
    };

    std::vector<std::string> storage{"interprime"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << version() << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    const auto subs = app.get_subcommands();
    if (subs.empty() == verify.empty()) {
        err << "error: give exactly one subcommand or --verify FILE\n" << app.help();
        return kExitUsage;
    }
    set_thread_count(threads);

    std::string command = verify.empty() ? subs.front()->get_name() : "verify";
    Json config;
    Output result;
    try {
        if (verify.empty()) {
            config = configs.at(command)();
            result = commands().at(command)(config);
        } else {
            config = Json{{"file", verify}};
            result = replay(verify);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n" << kGrammar;
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NoLocalRoot& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }

    const std::string rendered = render(command, config, result);
    if (output.empty()) {
        out << rendered;
    } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << output << "\n";
            return kExitUsage;
        }
        f << rendered;
    }
    return result.exit_code;
}

}  // namespace interprime::cli
