#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "interprime/intpoly.hpp"

namespace interprime {

/// Sorted, deduplicated integers in [0, N]. Zero is admitted because the
/// progression preimages used by the W-trick start at n = 0.
class IntSet {
public:
    IntSet() = default;
    IntSet(std::uint64_t ambient, std::vector<std::int64_t> members);

    std::uint64_t ambient() const { return ambient_; }
    const std::vector<std::int64_t>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(std::int64_t x) const;
    /// max - min, or 0 when fewer than two members
    std::int64_t span() const;

private:
    std::uint64_t ambient_ = 0;
    std::vector<std::int64_t> members_;
};

/// a - a_prime = h(n) > 0 with a, a_prime in A and n >= 0.
struct PairWitness {
    std::int64_t a;
    std::int64_t a_prime;
    std::int64_t n;
    std::int64_t value;  // h(n)
};

/// Every witness, ordered by (n, a_prime). The scan over n stops once h is increasing
/// and h(n) exceeds the span of A.
std::vector<PairWitness> difference_pairs(const IntSet& a, const IntPoly& h);

struct WeightedR {
    Integer total;             // sum_{n >= 0} h'(n) r(h, n, A)
    Integer from_pairs;        // terms with h(n) > 0
    Integer degenerate;        // terms with h(n) = 0: couples (a, a), flagged
    Integer negative_values;   // terms with h(n) < 0
    std::uint64_t unordered_pairs = 0;  // sum over n with h(n) > 0 of r(h, n, A)
    std::uint64_t ordered_pairs = 0;    // twice the above
};

WeightedR weighted_R(const IntSet& a, const IntPoly& h);

/// Positive gaps g < N with g = |h(n)| for some integer n, ascending.
std::vector<std::int64_t> forbidden_gaps(const IntPoly& h, std::uint64_t n);

enum class DffMode { Exact, Greedy };

inline constexpr std::uint64_t kExactDffCap = 64;
inline constexpr std::uint64_t kGreedyDffCap = 1'000'000;

struct DffResult {
    std::uint64_t n = 0;
    DffMode mode = DffMode::Exact;
    std::size_t size = 0;
    IntSet witness;
    std::uint64_t nodes = 0;  // search nodes (Exact)
};

/// Largest subset of {1..N} with no two elements differing by a forbidden gap.
/// Exact is a branch and bound (N <= 64); Greedy is first-fit from 1 upward.
DffResult extremal_dff(const IntPoly& h, std::uint64_t n, DffMode mode);

/// True iff no two members differ by |h(m)| != 0 for an integer m.
bool is_difference_free(const IntSet& a, const IntPoly& h);

std::string to_string(DffMode mode);

}  // namespace interprime
