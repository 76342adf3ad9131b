#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "interprime/intpoly.hpp"
#include "interprime/localroots.hpp"

namespace interprime {

/// A choice of one root z_p in Z_p for every prime p.
class LocalRootSystem {
public:
    virtual ~LocalRootSystem() = default;
    /// Throws NoLocalRoot(p) when no root exists.
    virtual PAdicRootCert root(std::uint64_t p, unsigned precision) const = 0;
};

/// Roots of a base polynomial chosen by a RootSelector (canonical by default).
/// Certificates are cached per prime and extended on demand; extending never
/// rewrites digits because the selection is made among exact Z_p roots.
class CanonicalRootSystem final : public LocalRootSystem {
public:
    explicit CanonicalRootSystem(IntPoly h, RootSelector selector = {});

    PAdicRootCert root(std::uint64_t p, unsigned precision) const override;
    const IntPoly& polynomial() const { return h_; }

private:
    IntPoly h_;
    SquarefreeDecomposition dec_;
    RootSelector selector_;
    mutable std::mutex mutex_;
    mutable std::map<std::uint64_t, PAdicRootCert> cache_;
    mutable std::map<std::uint64_t, bool> missing_;
};

/// Root system of h(shift + scale*x)/lambda induced from that of h:
/// z'_p = (z_p - shift)/scale. The induced roots are what make (h_d)_q = h_dq hold.
class InducedRootSystem final : public LocalRootSystem {
public:
    InducedRootSystem(std::shared_ptr<const LocalRootSystem> parent, Integer shift, std::uint64_t scale);

    PAdicRootCert root(std::uint64_t p, unsigned precision) const override;

private:
    std::shared_ptr<const LocalRootSystem> parent_;
    Integer shift_;
    std::uint64_t scale_;
};

/// lambda(d) = prod p^(m_p * alpha) for d = prod p^alpha; completely multiplicative.
Integer lambda_of(const LocalRootSystem& roots, std::uint64_t d);

/// The unique r in (-d, 0] with r = z_p (mod p^alpha) for every p^alpha || d.
Integer r_of(const LocalRootSystem& roots, std::uint64_t d);

struct AuxPoly {
    IntPoly base;        // h
    std::uint64_t d = 1;
    Integer r;           // r_d in (-d, 0]
    Integer lambda;      // lambda(d), with d | lambda | d^k
    IntPoly poly;        // h_d(x) = h(r_d + d x) / lambda(d)
    std::shared_ptr<const LocalRootSystem> roots;  // roots of poly, induced from those of base
};

/// The family {h_d} of one polynomial sharing one global choice of local roots.
class AuxFamily {
public:
    explicit AuxFamily(IntPoly h, RootSelector selector = {});

    const IntPoly& base() const { return h_; }
    const std::shared_ptr<const LocalRootSystem>& roots() const { return roots_; }

    /// h_d. Throws NoLocalRoot(p) if some p | d has no Z_p root of h.
    AuxPoly member(std::uint64_t d) const;

private:
    IntPoly h_;
    std::shared_ptr<const LocalRootSystem> roots_;
};

/// Builds g_q for g = source.poly using source.roots (so derive(h_d, q) is (h_d)_q).
AuxPoly derive(const AuxPoly& source, std::uint64_t q);

/// h_d for the canonical root choice.
AuxPoly aux_poly(const IntPoly& h, std::uint64_t d);

struct Lemma1Item {
    bool pass = false;
    std::string detail;
};

struct Lemma1Report {
    std::uint64_t d = 0;
    std::uint64_t q = 0;
    /// items[i] is property i+1: integrality/degree, positivity and monotonicity
    /// (window-checked), (h_d)_q = h_dq, leading-coefficient sandwich, B bound, content bound.
    Lemma1Item items[6];
    /// start and length of the window used for item 2
    Integer window_start;
    unsigned window_length = 1000;

    bool all_pass() const;
};

Lemma1Report verify_lemma1(const AuxFamily& family, std::uint64_t d, std::uint64_t q);
Lemma1Report verify_lemma1(const IntPoly& h, std::uint64_t d, std::uint64_t q);

}  // namespace interprime
