#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pavlab/rational.hpp"

namespace pavlab {

// Default cap on sieve length, in entries (4 bytes each). Roughly 128 MB.
inline constexpr uint64_t kDefaultSieveBudget = uint64_t(1) << 25;

// Euler's totient by trial division. Intended for one-off queries; use
// phi_sieve for bulk ranges.
uint64_t euler_phi(uint64_t n);

// phi(1..limit); slot 0 is unused and holds 0.
// Throws BudgetError when limit exceeds budget_entries.
std::vector<uint32_t> phi_sieve(uint64_t limit,
                                uint64_t budget_entries = kDefaultSieveBudget);

std::vector<std::pair<uint64_t, int>> factorize(uint64_t n);

Int lcm_all(std::span<const Int> values);
Int lcm_all(std::span<const uint64_t> values);

// A contiguous integer range [lo, hi] with every multiple of each listed
// divisor removed.
struct RestrictedRange {
    uint64_t lo;
    uint64_t hi;
    std::vector<uint64_t> forbidden;  // sorted, deduplicated, each >= 2

    RestrictedRange(uint64_t lo, uint64_t hi, std::vector<uint64_t> forbidden);

    bool admits(uint64_t n) const;
};

// Exact Sum of phi(n)/n over the range, skipping forbidden multiples.
// The denominator grows like lcm(lo..hi), so the result is assembled by
// balanced divide-and-conquer rather than a running total.
Rat phi_ratio_sum_restricted(const RestrictedRange& range,
                             uint64_t budget_entries = kDefaultSieveBudget);

}
