#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "interprime/intpoly.hpp"

namespace interprime {

/// Moduli up to this bound are searched exhaustively by roots_mod.
inline constexpr std::uint64_t kExhaustiveModulusBound = 10'000'000;

/// All x in [0, m) with f(x) = 0 (mod m), ascending. Moduli above the exhaustive
/// bound are factored; each prime-power part is solved by lifting and the parts are
/// combined by CRT.
std::vector<Integer> roots_mod(const IntPoly& f, const Integer& m);

/// Roots of f modulo p^alpha by Hensel lifting with full branching at singular
/// roots. Equal to roots_mod(f, p^alpha).
std::vector<Integer> lift_roots(const IntPoly& f, std::uint64_t p, unsigned alpha);

/// A root z_p of h in Z_p known to finite precision.
struct PAdicRootCert {
    std::uint64_t p = 0;
    /// digits[j-1] = z_p mod p^j, j = 1..precision
    std::vector<Integer> digits;
    /// exponent of the squarefree factor of h that vanishes at z_p
    unsigned multiplicity = 0;
    /// index of that factor in squarefree_decomposition(h).factors
    std::size_t factor_index = 0;

    unsigned precision() const { return static_cast<unsigned>(digits.size()); }
    /// z_p mod p^precision
    const Integer& residue() const { return digits.back(); }
};

/// Every root of h in Z_p, truncated to `precision` digits, in canonical order:
/// lexicographic on (z mod p, z mod p^2, ...). Distinct roots stay distinct even when
/// they agree to the requested precision.
std::vector<PAdicRootCert> padic_roots(const IntPoly& h, std::uint64_t p, unsigned precision);
std::vector<PAdicRootCert> padic_roots(const SquarefreeDecomposition& dec, std::uint64_t p, unsigned precision);

/// Picks one root out of the canonically ordered candidates (never empty).
using RootSelector = std::function<std::size_t(std::span<const PAdicRootCert>)>;

/// The canonical root (first in canonical order) unless a selector is given.
/// Throws NoLocalRoot when h has no root in Z_p.
PAdicRootCert select_padic_root(const IntPoly& h, std::uint64_t p, unsigned precision,
                                const RootSelector& selector = {});

/// True iff some factor of h has a root in Z_p. Exact.
bool has_padic_root(const SquarefreeDecomposition& dec, std::uint64_t p);

/// Integer roots of f, ascending.
std::vector<Integer> integer_roots(const IntPoly& f);

struct IntersectivityVerdict {
    enum class Kind { NotIntersective, CertifiedIntersective, VerifiedUpToBound };

    Kind kind = Kind::VerifiedUpToBound;
    /// NotIntersective: smallest modulus d such that h has no root mod d (a prime power)
    Integer witness_modulus;
    std::uint64_t witness_prime = 0;
    /// CertifiedIntersective: an integer root of h
    Integer integer_root;
    std::uint64_t prime_bound = 0;
    /// VerifiedUpToBound is a finite check, never a proof of intersectivity.
    bool is_proof() const { return kind != Kind::VerifiedUpToBound; }
    std::string kind_name() const;
};

/// Decides, for every prime p <= prime_bound, whether h has a root in Z_p.
/// An integer root certifies intersectivity for all moduli at once.
IntersectivityVerdict check_intersective(const IntPoly& h, std::uint64_t prime_bound);

/// Exhaustive re-check that h has no root modulo d.
bool has_no_root_mod(const IntPoly& h, std::uint64_t d);

}  // namespace interprime
