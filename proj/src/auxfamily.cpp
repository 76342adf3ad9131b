#include "interprime/auxfamily.hpp"

#include <sstream>

#include "interprime/errors.hpp"

namespace interprime {

namespace {

Integer to_integer(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

PAdicRootCert truncate(const PAdicRootCert& cert, unsigned precision)
{
    PAdicRootCert out = cert;
    out.digits.resize(precision);
    return out;
}

}  // namespace

CanonicalRootSystem::CanonicalRootSystem(IntPoly h, RootSelector selector)
    : h_(std::move(h)), dec_(squarefree_decomposition(h_)), selector_(std::move(selector))
{
    if (h_.degree() < 1) throw DomainError("root systems need a nonconstant polynomial");
}

PAdicRootCert CanonicalRootSystem::root(std::uint64_t p, unsigned precision) const
{
    std::lock_guard lock(mutex_);
    if (missing_.count(p)) throw NoLocalRoot(p);
    auto it = cache_.find(p);
    if (it != cache_.end() && it->second.precision() >= precision) return truncate(it->second, precision);
    unsigned target = precision;
    if (it != cache_.end()) target = std::max(precision, 2 * it->second.precision());
    auto roots = padic_roots(dec_, p, target);
    if (roots.empty()) {
        missing_[p] = true;
        throw NoLocalRoot(p);
    }
    std::size_t idx = selector_ ? selector_(roots) : 0;
    if (idx >= roots.size()) throw DomainError("root selector returned an out-of-range index");
    cache_[p] = roots[idx];
    return truncate(roots[idx], precision);
}

InducedRootSystem::InducedRootSystem(std::shared_ptr<const LocalRootSystem> parent, Integer shift, std::uint64_t scale)
    : parent_(std::move(parent)), shift_(std::move(shift)), scale_(scale)
{
    if (scale_ == 0) throw DomainError("induced root system needs a nonzero scale");
}

PAdicRootCert InducedRootSystem::root(std::uint64_t p, unsigned precision) const
{
    unsigned v = 0;
    std::uint64_t unit = scale_;
    while (unit % p == 0) {
        unit /= p;
        ++v;
    }
    PAdicRootCert parent = parent_->root(p, precision + v);
    const Integer pv = pow_ui(p, v);
    const Integer modulus = pow_ui(p, precision);
    Integer y = mod_floor(parent.residue() - shift_, pow_ui(p, precision + v));
    if (!mpz_divisible_p(y.get_mpz_t(), pv.get_mpz_t())) {
        throw std::logic_error("induced root: shift is not congruent to the parent root");
    }
    mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), pv.get_mpz_t());
    Integer inv;
    Integer u = to_integer(unit);
    if (mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), modulus.get_mpz_t()) == 0 && modulus != 1) {
        throw std::logic_error("induced root: scale unit is not invertible");
    }
    Integer z = mod_floor(y * inv, modulus);
    PAdicRootCert out;
    out.p = p;
    out.multiplicity = parent.multiplicity;
    out.factor_index = parent.factor_index;
    Integer pj = 1;
    for (unsigned j = 1; j <= precision; ++j) {
        pj *= static_cast<unsigned long>(p);
        out.digits.push_back(mod_floor(z, pj));
    }
    return out;
}

Integer lambda_of(const LocalRootSystem& roots, std::uint64_t d)
{
    if (d == 0) throw DomainError("lambda is defined for d >= 1");
    Integer lambda = 1;
    for (const auto& pp : factor_u64(d)) {
        PAdicRootCert cert = roots.root(pp.prime, pp.exponent);
        lambda *= pow_ui(pp.prime, static_cast<unsigned long>(cert.multiplicity) * pp.exponent);
    }
    return lambda;
}

Integer r_of(const LocalRootSystem& roots, std::uint64_t d)
{
    if (d == 0) throw DomainError("r_d is defined for d >= 1");
    Integer residue = 0;
    Integer modulus = 1;
    for (const auto& pp : factor_u64(d)) {
        PAdicRootCert cert = roots.root(pp.prime, pp.exponent);
        const Integer q = pow_ui(pp.prime, pp.exponent);
        Integer inv;
        mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), q.get_mpz_t());
        Integer t = mod_floor((cert.residue() - residue) * inv, q);
        residue += modulus * t;
        modulus *= q;
    }
    return residue == 0 ? Integer(0) : Integer(residue - to_integer(d));
}

AuxFamily::AuxFamily(IntPoly h, RootSelector selector)
    : h_(std::move(h)), roots_(std::make_shared<CanonicalRootSystem>(h_, std::move(selector)))
{
}

namespace {

AuxPoly build(const IntPoly& base, const IntPoly& source, const std::shared_ptr<const LocalRootSystem>& roots,
              std::uint64_t d)
{
    AuxPoly out;
    out.base = base;
    out.d = d;
    out.r = r_of(*roots, d);
    out.lambda = lambda_of(*roots, d);
    out.poly = divexact(affine_compose(source, to_integer(d), out.r), out.lambda);
    out.roots = std::make_shared<InducedRootSystem>(roots, out.r, d);
    return out;
}

}  // namespace

AuxPoly AuxFamily::member(std::uint64_t d) const { return build(h_, h_, roots_, d); }

AuxPoly derive(const AuxPoly& source, std::uint64_t q)
{
    AuxPoly local = build(source.poly, source.poly, source.roots, q);
    AuxPoly out;
    out.base = source.base;
    out.d = checked_mul(source.d, q);
    out.r = source.r + to_integer(source.d) * local.r;
    out.lambda = source.lambda * local.lambda;
    out.poly = std::move(local.poly);
    out.roots = std::move(local.roots);
    return out;
}

AuxPoly aux_poly(const IntPoly& h, std::uint64_t d) { return AuxFamily(h).member(d); }

bool Lemma1Report::all_pass() const
{
    for (const auto& item : items) {
        if (!item.pass) return false;
    }
    return true;
}

Lemma1Report verify_lemma1(const AuxFamily& family, std::uint64_t d, std::uint64_t q)
{
    const IntPoly& h = family.base();
    const int k = h.degree();
    if (k < 1) throw DomainError("the auxiliary family needs a nonconstant polynomial");
    Lemma1Report rep;
    rep.d = d;
    rep.q = q;

    const AuxPoly hd = family.member(d);
    const AuxPoly hdq = family.member(checked_mul(d, q));
    const AuxPoly hd_q = derive(hd, q);
    const Integer dd = to_integer(d);

    {
        std::ostringstream os;
        Integer dk;
        mpz_pow_ui(dk.get_mpz_t(), dd.get_mpz_t(), static_cast<unsigned long>(k));
        bool degree_ok = hd.poly.degree() == k;
        bool identity_ok = affine_compose(h, dd, hd.r) == hd.poly * hd.lambda;
        bool lambda_ok = mpz_divisible_p(hd.lambda.get_mpz_t(), dd.get_mpz_t()) &&
                         mpz_divisible_p(dk.get_mpz_t(), hd.lambda.get_mpz_t());
        bool r_ok = hd.r <= 0 && hd.r > -dd;
        rep.items[0].pass = degree_ok && identity_ok && lambda_ok && r_ok;
        os << "h_d = " << hd.poly.to_string() << ", r = " << hd.r.get_str() << ", lambda = " << hd.lambda.get_str();
        rep.items[0].detail = os.str();
    }
    {
        const IntPoly f0 = hd.poly;
        const IntPoly f1 = derivative(f0);
        const IntPoly f2 = derivative(f1);
        Rational bound = growth_bounds(f0).bound;
        Integer start;
        mpz_cdiv_q(start.get_mpz_t(), bound.get_num().get_mpz_t(), bound.get_den().get_mpz_t());
        if (start < 1) start = 1;
        rep.window_start = start;
        bool ok = f0.leading() > 0;
        Integer prev0, prev1, prev2;
        for (unsigned i = 0; ok && i <= rep.window_length; ++i) {
            Integer x = start + i;
            Integer v0 = f0(x), v1 = f1(x), v2 = f2(x);
            if (v0 <= 0 || v1 <= 0 || (k >= 2 && v2 <= 0)) ok = false;
            if (i > 0 && (v0 < prev0 || v1 < prev1 || v2 < prev2)) ok = false;
            prev0 = v0;
            prev1 = v1;
            prev2 = v2;
        }
        rep.items[1].pass = ok;
        rep.items[1].detail = "window-checked on [" + start.get_str() + ", " +
                              Integer(start + rep.window_length).get_str() + "]";
    }
    {
        bool ok = hd_q.poly == hdq.poly && hd_q.r == hdq.r && hd_q.lambda == hdq.lambda;
        rep.items[2].pass = ok;
        rep.items[2].detail = "(h_d)_q = " + hd_q.poly.to_string() + ", h_dq = " + hdq.poly.to_string();
    }
    {
        const Integer& bh = h.leading();
        const Integer& bhd = hd.poly.leading();
        Integer dk1;
        mpz_pow_ui(dk1.get_mpz_t(), dd.get_mpz_t(), static_cast<unsigned long>(k - 1));
        rep.items[3].pass = bh <= bhd && bhd <= dk1 * bh;
        rep.items[3].detail = "b(h) = " + bh.get_str() + ", b(h_d) = " + bhd.get_str() +
                              ", d^(k-1) b(h) = " + Integer(dk1 * bh).get_str();
    }
    {
        Rational bh = growth_bounds(h).bound;
        Rational bhd = growth_bounds(hd.poly).bound;
        Rational limit = Rational(pow_ui(2, static_cast<unsigned long>(k - 1)) * k) * (bh + 2);
        rep.items[4].pass = bhd <= limit;
        rep.items[4].detail = "B(h_d) = " + bhd.get_str() + " <= " + limit.get_str();
    }
    {
        Integer ch = content(h);
        Integer chd = content(hd.poly);
        Integer delta = abs(semidiscriminant(h));
        Integer rhs;
        mpz_pow_ui(rhs.get_mpz_t(), delta.get_mpz_t(), static_cast<unsigned long>(k - 1));
        rhs *= ch * ch;
        rep.items[5].pass = chd * chd <= rhs;
        rep.items[5].detail = "c(h_d) = " + chd.get_str() + ", |Delta(h)| = " + delta.get_str() +
                              ", c(h) = " + ch.get_str();
    }
    return rep;
}

Lemma1Report verify_lemma1(const IntPoly& h, std::uint64_t d, std::uint64_t q)
{
    return verify_lemma1(AuxFamily(h), d, q);
}

}  // namespace interprime
