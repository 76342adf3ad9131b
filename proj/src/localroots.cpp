#include "interprime/localroots.hpp"

#include <algorithm>
#include <stdexcept>

#include "interprime/errors.hpp"
#include "interprime/parallel.hpp"

namespace interprime {

namespace {

constexpr unsigned kMaxDescentDepth = 512;

Integer to_integer(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

std::vector<std::uint64_t> reduce_coeffs(const IntPoly& f, std::uint64_t m)
{
    std::vector<std::uint64_t> out;
    out.reserve(f.coeffs().size());
    Integer mm = to_integer(m);
    for (const auto& c : f.coeffs()) out.push_back(mod_floor(c, mm).get_ui());
    return out;
}

std::uint64_t eval_mod(const std::vector<std::uint64_t>& c, std::uint64_t x, std::uint64_t m)
{
    std::uint64_t acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = (mulmod(acc, x, m) + *it) % m;
    }
    return acc;
}

std::vector<std::uint64_t> exhaustive_roots(const IntPoly& f, std::uint64_t m)
{
    auto c = reduce_coeffs(f, m);
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < m; ++x) {
        if (eval_mod(c, x, m) == 0) out.push_back(x);
    }
    return out;
}

// Minimum p-adic valuation over the nonzero coefficients.
unsigned content_valuation(const IntPoly& f, std::uint64_t p)
{
    unsigned v = ~0u;
    for (const auto& c : f.coeffs()) {
        if (c != 0) v = std::min(v, valuation(c, p));
    }
    return v;
}

Integer newton_lift(const IntPoly& g, const IntPoly& dg, const Integer& a, std::uint64_t p, unsigned prec)
{
    const Integer target = pow_ui(p, prec);
    Integer x = a;
    Integer mod = to_integer(p);
    while (mod < target) {
        mod = std::min<Integer>(mod * mod, target);
        Integer fx = mod_floor(g(x), mod);
        Integer dfx = mod_floor(dg(x), mod);
        Integer inv;
        if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), mod.get_mpz_t()) == 0) {
            throw std::logic_error("newton_lift: derivative is not a unit");
        }
        x = mod_floor(x - fx * inv, mod);
    }
    return mod_floor(x, target);
}

// Roots of g in Z_p, each reported modulo p^prec. Requires g squarefree and not
// identically zero mod p. Singular residues are resolved by the substitution
// x -> a + p x followed by removal of the p-content; squarefreeness guarantees
// that the descent terminates.
void zp_roots(const IntPoly& g, std::uint64_t p, unsigned prec, std::vector<Integer>& out, unsigned depth)
{
    if (depth > kMaxDescentDepth) throw std::logic_error("p-adic root descent did not terminate");
    if (g.degree() < 1) return;
    const IntPoly dg = derivative(g);
    const auto gbar = reduce_coeffs(g, p);
    const auto dgbar = reduce_coeffs(dg, p);
    const Integer modulus = pow_ui(p, prec);
    for (std::uint64_t a = 0; a < p; ++a) {
        if (eval_mod(gbar, a, p) != 0) continue;
        if (eval_mod(dgbar, a, p) != 0) {
            out.push_back(newton_lift(g, dg, to_integer(a), p, prec));
            continue;
        }
        IntPoly shifted = affine_compose(g, to_integer(p), to_integer(a));
        shifted = divexact(shifted, pow_ui(p, content_valuation(shifted, p)));
        std::vector<Integer> sub;
        zp_roots(shifted, p, prec > 1 ? prec - 1 : 1, sub, depth + 1);
        for (const auto& z : sub) out.push_back(mod_floor(to_integer(a) + to_integer(p) * z, modulus));
    }
}

std::vector<Integer> zp_roots(const IntPoly& g, std::uint64_t p, unsigned prec)
{
    if (p > kExhaustiveModulusBound) throw DomainError("p-adic roots need p <= 10^7");
    std::vector<Integer> out;
    IntPoly prim = divexact(g, pow_ui(p, content_valuation(g, p)));
    zp_roots(prim, p, prec, out, 0);
    return out;
}

// Lexicographic on (z mod p, z mod p^2, ...): compare base-p digits from the bottom.
bool canonical_less(Integer a, Integer b, std::uint64_t p)
{
    const Integer pp = to_integer(p);
    while (a != 0 || b != 0) {
        Integer da = mod_floor(a, pp);
        Integer db = mod_floor(b, pp);
        if (da != db) return da < db;
        mpz_fdiv_q(a.get_mpz_t(), a.get_mpz_t(), pp.get_mpz_t());
        mpz_fdiv_q(b.get_mpz_t(), b.get_mpz_t(), pp.get_mpz_t());
    }
    return false;
}

// --- F_p polynomial arithmetic for the root-existence test at good primes ---

using PolyModP = std::vector<std::uint64_t>;

void trim(PolyModP& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyModP poly_mod(PolyModP a, const PolyModP& m, std::uint64_t p)
{
    trim(a);
    const std::uint64_t inv = powmod(m.back(), p - 2, p);
    while (a.size() >= m.size()) {
        std::uint64_t q = mulmod(a.back(), inv, p);
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) {
            a[shift + i] = (a[shift + i] + p - mulmod(q, m[i], p)) % p;
        }
        trim(a);
    }
    return a;
}

PolyModP poly_mulmod(const PolyModP& a, const PolyModP& b, const PolyModP& m, std::uint64_t p)
{
    if (a.empty() || b.empty()) return {};
    PolyModP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    return poly_mod(std::move(r), m, p);
}

std::size_t poly_gcd_degree(PolyModP a, PolyModP b, std::uint64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        PolyModP r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? 0 : a.size() - 1;
}

// Does g (with p not dividing its leading coefficient) have a root mod p?
bool has_root_mod_prime(const IntPoly& g, std::uint64_t p)
{
    PolyModP gbar = reduce_coeffs(g, p);
    trim(gbar);
    if (gbar.size() <= 1) return false;
    if (gbar.size() == 2) return true;
    if (p < 4096) {
        for (std::uint64_t a = 0; a < p; ++a) {
            if (eval_mod(gbar, a, p) == 0) return true;
        }
        return false;
    }
    // gcd(g, x^p - x) is nontrivial iff g has a root in F_p.
    PolyModP result{1};
    PolyModP base = poly_mod(PolyModP{0, 1}, gbar, p);
    for (std::uint64_t e = p; e != 0; e >>= 1) {
        if (e & 1) result = poly_mulmod(result, base, gbar, p);
        base = poly_mulmod(base, base, gbar, p);
    }
    result.resize(std::max<std::size_t>(result.size(), 2), 0);
    result[1] = (result[1] + p - 1) % p;
    return poly_gcd_degree(gbar, result, p) >= 1;
}

struct FactorData {
    IntPoly poly;
    Integer bad;  // lc * disc: primes not dividing it are unramified and unobstructed
};

std::vector<FactorData> factor_data(const SquarefreeDecomposition& dec)
{
    std::vector<FactorData> out;
    for (const auto& f : dec.factors) out.push_back({f.poly, f.poly.leading() * discriminant(f.poly)});
    return out;
}

bool has_padic_root(const std::vector<FactorData>& data, std::uint64_t p)
{
    const Integer pp = to_integer(p);
    for (const auto& fd : data) {
        if (!mpz_divisible_p(fd.bad.get_mpz_t(), pp.get_mpz_t())) {
            if (has_root_mod_prime(fd.poly, p)) return true;
        } else if (!zp_roots(fd.poly, p, 1).empty()) {
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<Integer> lift_roots(const IntPoly& f, std::uint64_t p, unsigned alpha)
{
    if (!is_prime_u64(p)) throw DomainError(std::to_string(p) + " is not prime");
    if (alpha == 0) throw DomainError("lift_roots needs alpha >= 1");
    if (p > kExhaustiveModulusBound) throw DomainError("lift_roots needs p <= 10^7");
    const Integer pp = to_integer(p);
    std::vector<Integer> current;
    for (auto r : exhaustive_roots(f, p)) current.push_back(to_integer(r));
    const IntPoly df = derivative(f);
    Integer pj = pp;
    for (unsigned j = 1; j < alpha && !current.empty(); ++j) {
        std::vector<Integer> next;
        for (const auto& r : current) {
            // f(r + t p^j) = f(r) + t p^j f'(r)  (mod p^(j+1))
            Integer q;
            Integer fr = f(r);
            mpz_divexact(q.get_mpz_t(), fr.get_mpz_t(), pj.get_mpz_t());
            std::uint64_t qm = mod_floor(q, pp).get_ui();
            std::uint64_t dm = mod_floor(df(r), pp).get_ui();
            if (dm != 0) {
                std::uint64_t t = mulmod(p - qm % p, powmod(dm, p - 2, p), p) % p;
                next.push_back(r + to_integer(t) * pj);
            } else if (qm == 0) {
                for (std::uint64_t t = 0; t < p; ++t) next.push_back(r + to_integer(t) * pj);
            }
        }
        current = std::move(next);
        pj *= pp;
    }
    std::sort(current.begin(), current.end());
    return current;
}

std::vector<Integer> roots_mod(const IntPoly& f, const Integer& m)
{
    if (m <= 0) throw DomainError("modulus must be positive");
    if (m == 1) return {Integer(0)};
    if (m <= kExhaustiveModulusBound) {
        std::vector<Integer> out;
        for (auto r : exhaustive_roots(f, m.get_ui())) out.push_back(to_integer(r));
        return out;
    }
    if (!mpz_fits_ulong_p(m.get_mpz_t())) throw DomainError("modulus exceeds 64 bits");
    std::uint64_t rest = m.get_ui();
    std::vector<PrimePower> parts;
    for (std::uint64_t p = 2; p <= 1'000'000 && p <= rest / p; ++p) {
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (e) parts.push_back({p, e});
    }
    if (rest > 1) {
        if (!is_prime_u64(rest)) throw DomainError("composite modulus above 10^7 could not be fully factored");
        parts.push_back({rest, 1});
    }
    std::vector<Integer> combined{Integer(0)};
    Integer modulus = 1;
    for (const auto& pp : parts) {
        Integer q = pow_ui(pp.prime, pp.exponent);
        auto local = lift_roots(f, pp.prime, pp.exponent);
        if (local.empty()) return {};
        if (combined.size() * local.size() > 10'000'000) throw DomainError("too many roots to enumerate");
        Integer inv;
        mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), q.get_mpz_t());
        std::vector<Integer> next;
        for (const auto& a : combined) {
            for (const auto& b : local) {
                // x = a (mod modulus), x = b (mod q)
                Integer t = mod_floor((b - a) * inv, q);
                next.push_back(a + modulus * t);
            }
        }
        combined = std::move(next);
        modulus *= q;
    }
    std::sort(combined.begin(), combined.end());
    return combined;
}

std::vector<PAdicRootCert> padic_roots(const SquarefreeDecomposition& dec, std::uint64_t p, unsigned precision)
{
    if (!is_prime_u64(p)) throw DomainError(std::to_string(p) + " is not prime");
    if (precision == 0) throw DomainError("precision must be positive");
    struct Found {
        Integer residue;
        std::size_t factor;
    };
    std::vector<Found> found;
    unsigned work = precision;
    for (;;) {
        found.clear();
        for (std::size_t i = 0; i < dec.factors.size(); ++i) {
            for (auto& r : zp_roots(dec.factors[i].poly, p, work)) found.push_back({std::move(r), i});
        }
        std::vector<Integer> residues;
        for (const auto& f : found) residues.push_back(f.residue);
        std::sort(residues.begin(), residues.end());
        if (std::adjacent_find(residues.begin(), residues.end()) == residues.end()) break;
        if (work > 4096) throw std::logic_error("distinct p-adic roots failed to separate");
        work *= 2;
    }
    std::sort(found.begin(), found.end(),
              [p](const Found& a, const Found& b) { return canonical_less(a.residue, b.residue, p); });
    std::vector<PAdicRootCert> out;
    for (const auto& f : found) {
        PAdicRootCert cert;
        cert.p = p;
        cert.multiplicity = dec.factors[f.factor].exponent;
        cert.factor_index = f.factor;
        Integer pj = 1;
        for (unsigned j = 1; j <= precision; ++j) {
            pj *= static_cast<unsigned long>(p);
            cert.digits.push_back(mod_floor(f.residue, pj));
        }
        out.push_back(std::move(cert));
    }
    return out;
}

std::vector<PAdicRootCert> padic_roots(const IntPoly& h, std::uint64_t p, unsigned precision)
{
    return padic_roots(squarefree_decomposition(h), p, precision);
}

PAdicRootCert select_padic_root(const IntPoly& h, std::uint64_t p, unsigned precision, const RootSelector& selector)
{
    auto roots = padic_roots(h, p, precision);
    if (roots.empty()) throw NoLocalRoot(p);
    std::size_t idx = selector ? selector(roots) : 0;
    if (idx >= roots.size()) throw DomainError("root selector returned an out-of-range index");
    return roots[idx];
}

bool has_padic_root(const SquarefreeDecomposition& dec, std::uint64_t p)
{
    return has_padic_root(factor_data(dec), p);
}

std::vector<Integer> integer_roots(const IntPoly& f)
{
    if (f.degree() < 1) throw DomainError("integer_roots needs a nonconstant polynomial");
    auto dec = squarefree_decomposition(f);
    std::vector<Integer> out;
    for (const auto& fac : dec.factors) {
        const IntPoly& g = fac.poly;
        const Integer bad = g.leading() * discriminant(g);
        std::uint64_t p = 2;
        while (mpz_divisible_ui_p(bad.get_mpz_t(), static_cast<unsigned long>(p))) {
            do ++p; while (!is_prime_u64(p));
        }
        // Cauchy bound: every complex root has |z| < 1 + max |a_i / a_n|.
        Integer cauchy = 0;
        for (int i = 0; i < g.degree(); ++i) cauchy = std::max<Integer>(cauchy, abs(g.coeffs()[i]));
        Integer bound;
        mpz_cdiv_q(bound.get_mpz_t(), cauchy.get_mpz_t(), g.leading().get_mpz_t());
        bound += 1;
        unsigned prec = 1;
        Integer modulus = to_integer(p);
        while (modulus <= 2 * bound) {
            modulus *= static_cast<unsigned long>(p);
            ++prec;
        }
        for (const auto& r : zp_roots(g, p, prec)) {
            Integer z = 2 * r > modulus ? Integer(r - modulus) : r;
            if (g(z) == 0) out.push_back(z);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string IntersectivityVerdict::kind_name() const
{
    switch (kind) {
    case Kind::NotIntersective: return "NotIntersective";
    case Kind::CertifiedIntersective: return "CertifiedIntersective";
    case Kind::VerifiedUpToBound: return "VerifiedUpToBound";
    }
    return "?";
}

IntersectivityVerdict check_intersective(const IntPoly& h, std::uint64_t prime_bound)
{
    if (h.degree() < 1) throw DomainError("intersectivity check needs a nonconstant polynomial");
    IntersectivityVerdict verdict;
    verdict.prime_bound = prime_bound;

    auto roots = integer_roots(h);
    if (!roots.empty()) {
        auto best = std::min_element(roots.begin(), roots.end(), [](const Integer& a, const Integer& b) {
            if (abs(a) != abs(b)) return abs(a) < abs(b);
            return a > b;
        });
        verdict.kind = IntersectivityVerdict::Kind::CertifiedIntersective;
        verdict.integer_root = *best;
        return verdict;
    }

    const auto dec = squarefree_decomposition(h);
    const auto data = factor_data(dec);
    const auto primes = small_primes(prime_bound);
    std::vector<char> local(primes.size(), 0);
    parallel_for(primes.size(), [&](std::size_t i) { local[i] = has_padic_root(data, primes[i]) ? 1 : 0; });

    // The smallest modulus without a root is always a prime power p^j; search failing
    // primes in ascending order and stop once p alone exceeds the best witness.
    bool failed = false;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (local[i]) continue;
        const std::uint64_t p = primes[i];
        if (failed && to_integer(p) > verdict.witness_modulus) break;
        unsigned j = 1;
        while (!lift_roots(h, p, j).empty()) {
            if (++j > 4096) throw std::logic_error("root-free prime power not reached");
        }
        Integer witness = pow_ui(p, j);
        if (!failed || witness < verdict.witness_modulus) {
            verdict.witness_modulus = witness;
            verdict.witness_prime = p;
        }
        failed = true;
    }
    verdict.kind = failed ? IntersectivityVerdict::Kind::NotIntersective
                          : IntersectivityVerdict::Kind::VerifiedUpToBound;
    return verdict;
}

bool has_no_root_mod(const IntPoly& h, std::uint64_t d)
{
    if (d == 0) throw DomainError("modulus must be positive");
    if (d > 100'000'000) throw DomainError("exhaustive re-check limited to d <= 10^8");
    return exhaustive_roots(h, d).empty();
}

}  // namespace interprime
