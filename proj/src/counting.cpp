#include "interprime/counting.hpp"

#include <algorithm>
#include <bit>

#include "interprime/errors.hpp"

namespace interprime {

namespace {

std::int64_t to_i64(const Integer& v) { return v.get_si(); }

/// Least n0 >= 0 such that h is increasing on [n0, oo).
Integer settled_point(const IntPoly& h)
{
    const IntPoly dh = derivative(h);
    Integer settled = 0;
    if (dh.degree() >= 1) {
        Rational b = growth_bounds(dh).bound;
        mpz_cdiv_q(settled.get_mpz_t(), b.get_num().get_mpz_t(), b.get_den().get_mpz_t());
        if (settled < 0) settled = 0;
    }
    return settled;
}

void require_increasing_lead(const IntPoly& h)
{
    if (h.degree() < 1 || h.leading() <= 0) {
        throw DomainError("h must be nonconstant with a positive leading coefficient");
    }
}

/// Calls body(n, h(n)) for n = 0, 1, ... until h is increasing and h(n) > limit.
template <class Body>
void scan_values(const IntPoly& h, const Integer& limit, Body&& body)
{
    const Integer settled = settled_point(h);
    for (Integer n = 0;; ++n) {
        Integer v = h(n);
        if (n >= settled && v > limit) return;
        body(n, v);
    }
}

}  // namespace

IntSet::IntSet(std::uint64_t ambient, std::vector<std::int64_t> members)
    : ambient_(ambient), members_(std::move(members))
{
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && (members_.front() < 0 || static_cast<std::uint64_t>(members_.back()) > ambient_)) {
        throw DomainError("set members must lie in [0, " + std::to_string(ambient_) + "]");
    }
}

bool IntSet::contains(std::int64_t x) const { return std::binary_search(members_.begin(), members_.end(), x); }

std::int64_t IntSet::span() const { return members_.size() < 2 ? 0 : members_.back() - members_.front(); }

std::vector<PairWitness> difference_pairs(const IntSet& a, const IntPoly& h)
{
    require_increasing_lead(h);
    std::vector<PairWitness> out;
    if (a.size() < 2) return out;
    const std::int64_t lo = a.members().front();
    std::vector<bool> member(static_cast<std::size_t>(a.span()) + 1);
    for (auto x : a.members()) member[static_cast<std::size_t>(x - lo)] = true;
    const std::int64_t span = a.span();
    scan_values(h, Integer(span), [&](const Integer& n, const Integer& v) {
        if (v <= 0 || v > span) return;
        const std::int64_t g = to_i64(v);
        const std::int64_t nn = to_i64(n);
        for (auto x : a.members()) {
            const std::int64_t y = x + g - lo;
            if (y > span) break;
            if (member[static_cast<std::size_t>(y)]) out.push_back({x + g, x, nn, g});
        }
    });
    return out;
}

WeightedR weighted_R(const IntSet& a, const IntPoly& h)
{
    require_increasing_lead(h);
    WeightedR out;
    const IntPoly dh = derivative(h);
    for (const auto& w : difference_pairs(a, h)) {
        out.from_pairs += dh(Integer(static_cast<long>(w.n)));
        ++out.unordered_pairs;
    }
    out.ordered_pairs = 2 * out.unordered_pairs;
    // h(n) <= 0 happens only before h settles
    const Integer span = a.span();
    scan_values(h, Integer(0), [&](const Integer& n, const Integer& v) {
        if (v > 0) return;
        if (v == 0) {
            out.degenerate += dh(n) * static_cast<unsigned long>(a.size());
            return;
        }
        if (-v > span) return;
        const std::int64_t g = to_i64(-v);
        std::uint64_t r = 0;
        for (auto x : a.members()) r += a.contains(x + g);
        out.negative_values += dh(n) * static_cast<unsigned long>(r);
    });
    out.total = out.from_pairs + out.degenerate + out.negative_values;
    return out;
}

std::vector<std::int64_t> forbidden_gaps(const IntPoly& h, std::uint64_t n)
{
    if (h.degree() < 1) throw DomainError("forbidden gaps need a nonconstant polynomial");
    // |h(x)| >= |x|^(k-1) (|a_k| |x| - sum_{i<k} |a_i|) >= N once |x| >= R
    Integer tail = 0;
    for (int i = 0; i < h.degree(); ++i) tail += abs(h.coeff(static_cast<std::size_t>(i)));
    Integer radius;
    Integer lead = abs(h.leading());
    Integer num = tail + static_cast<unsigned long>(n);
    mpz_cdiv_q(radius.get_mpz_t(), num.get_mpz_t(), lead.get_mpz_t());
    if (radius < 1) radius = 1;
    std::vector<bool> hit(n);
    for (Integer x = -radius; x <= radius; ++x) {
        Integer v = abs(h(x));
        if (v > 0 && v < n) hit[v.get_ui()] = true;
    }
    std::vector<std::int64_t> out;
    for (std::uint64_t g = 1; g < n; ++g) {
        if (hit[g]) out.push_back(static_cast<std::int64_t>(g));
    }
    return out;
}

bool is_difference_free(const IntSet& a, const IntPoly& h)
{
    if (a.size() < 2) return true;
    const auto gaps = forbidden_gaps(h, static_cast<std::uint64_t>(a.span()) + 1);
    for (auto g : gaps) {
        for (auto x : a.members()) {
            if (a.contains(x + g)) return false;
        }
    }
    return true;
}

std::string to_string(DffMode mode) { return mode == DffMode::Exact ? "exact" : "greedy"; }

namespace {

using Mask = std::uint64_t;

struct ExactSearch {
    int n;
    std::vector<Mask> adj;   // vertex i is the integer i + 1
    std::vector<int> order;  // branching order, descending degree
    Mask best = 0;
    int best_size = 0;
    std::uint64_t nodes = 0;

    // greedy clique cover of P: each clique holds at most one chosen vertex
    int cover_bound(Mask p) const
    {
        int cliques = 0;
        while (p) {
            const int v = std::countr_zero(p);
            Mask clique_cand = p & adj[v];
            p &= ~(Mask(1) << v);
            while (clique_cand) {
                const int u = std::countr_zero(clique_cand);
                p &= ~(Mask(1) << u);
                clique_cand &= adj[u];
            }
            ++cliques;
        }
        return cliques;
    }

    void run(Mask chosen, int size, Mask p)
    {
        ++nodes;
        if (!p) {
            if (size > best_size || (size == best_size && chosen < best)) {
                best = chosen;
                best_size = size;
            }
            return;
        }
        if (size + cover_bound(p) <= best_size) return;
        int v = -1;
        for (int u : order) {
            if (p & (Mask(1) << u)) {
                v = u;
                break;
            }
        }
        const Mask bit = Mask(1) << v;
        run(chosen | bit, size + 1, p & ~bit & ~adj[v]);
        run(chosen, size, p & ~bit);
    }
};

}  // namespace

DffResult extremal_dff(const IntPoly& h, std::uint64_t n, DffMode mode)
{
    if (n == 0) throw DomainError("N must be positive");
    DffResult out;
    out.n = n;
    out.mode = mode;
    std::vector<std::int64_t> members;
    if (mode == DffMode::Exact) {
        if (n > kExactDffCap) {
            throw DomainError("exact mode supports N <= " + std::to_string(kExactDffCap) + ", got " +
                              std::to_string(n));
        }
        const auto gaps = forbidden_gaps(h, n);
        ExactSearch s;
        s.n = static_cast<int>(n);
        s.adj.assign(n, 0);
        for (int i = 0; i < s.n; ++i) {
            for (auto g : gaps) {
                if (i + g < s.n) s.adj[i] |= Mask(1) << (i + g);
                if (i - g >= 0) s.adj[i] |= Mask(1) << (i - g);
            }
            s.order.push_back(i);
        }
        std::stable_sort(s.order.begin(), s.order.end(),
                         [&](int x, int y) { return std::popcount(s.adj[x]) > std::popcount(s.adj[y]); });
        const Mask all = n == 64 ? ~Mask(0) : (Mask(1) << n) - 1;
        s.run(0, 0, all);
        for (int i = 0; i < s.n; ++i) {
            if (s.best & (Mask(1) << i)) members.push_back(i + 1);
        }
        out.nodes = s.nodes;
    } else {
        if (n > kGreedyDffCap) {
            throw DomainError("greedy mode supports N <= " + std::to_string(kGreedyDffCap));
        }
        const auto gaps = forbidden_gaps(h, n);
        std::vector<bool> taken(n + 1);
        for (std::uint64_t x = 1; x <= n; ++x) {
            bool ok = true;
            for (auto g : gaps) {
                if (static_cast<std::uint64_t>(g) >= x) break;
                if (taken[x - static_cast<std::uint64_t>(g)]) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                taken[x] = true;
                members.push_back(static_cast<std::int64_t>(x));
            }
        }
    }
    out.size = members.size();
    out.witness = IntSet(n, std::move(members));
    if (!is_difference_free(out.witness, h)) throw std::logic_error("extremal_dff produced an invalid witness");
    return out;
}

}  // namespace interprime
