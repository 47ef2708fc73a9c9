#include "pavlab/arith.hpp"

#include <algorithm>
#include <numeric>

namespace pavlab {

uint64_t euler_phi(uint64_t n) {
    if (n == 0) throw DomainError("euler_phi(0)");
    uint64_t result = n;
    uint64_t m = n;
    for (uint64_t p = 2; p * p <= m; p += (p == 2) ? 1 : 2) {
        if (m % p != 0) continue;
        result -= result / p;
        while (m % p == 0) m /= p;
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<uint32_t> phi_sieve(uint64_t limit, uint64_t budget_entries) {
    if (limit == 0) throw DomainError("phi_sieve(0)");
    if (limit + 1 > budget_entries) {
        throw BudgetError("phi_sieve: " + std::to_string(limit + 1) +
                          " entries exceed budget of " +
                          std::to_string(budget_entries));
    }
    std::vector<uint32_t> phi(limit + 1);
    for (uint64_t i = 0; i <= limit; ++i) phi[i] = static_cast<uint32_t>(i);
    phi[0] = 0;
    for (uint64_t i = 2; i <= limit; ++i) {
        if (phi[i] != i) continue;  // i composite would have been touched
        for (uint64_t j = i; j <= limit; j += i) phi[j] -= phi[j] / i;
    }
    return phi;
}

std::vector<std::pair<uint64_t, int>> factorize(uint64_t n) {
    if (n == 0) throw DomainError("factorize(0)");
    std::vector<std::pair<uint64_t, int>> out;
    for (uint64_t p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

Int lcm_all(std::span<const Int> values) {
    Int acc = 1;
    for (const Int& v : values) {
        if (v == 0) throw DomainError("lcm_all with zero element");
        mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), v.get_mpz_t());
    }
    return acc;
}

Int lcm_all(std::span<const uint64_t> values) {
    Int acc = 1;
    for (uint64_t v : values) {
        if (v == 0) throw DomainError("lcm_all with zero element");
        mpz_lcm_ui(acc.get_mpz_t(), acc.get_mpz_t(), v);
    }
    return acc;
}

RestrictedRange::RestrictedRange(uint64_t lo_, uint64_t hi_,
                                 std::vector<uint64_t> forbidden_)
    : lo(lo_), hi(hi_), forbidden(std::move(forbidden_)) {
    if (lo == 0 || lo > hi) throw DomainError("RestrictedRange: need 1 <= lo <= hi");
    std::sort(forbidden.begin(), forbidden.end());
    forbidden.erase(std::unique(forbidden.begin(), forbidden.end()),
                    forbidden.end());
    for (uint64_t d : forbidden) {
        if (d < 2) throw DomainError("RestrictedRange: forbidden divisor < 2");
    }
}

bool RestrictedRange::admits(uint64_t n) const {
    if (n < lo || n > hi) return false;
    for (uint64_t d : forbidden) {
        if (n % d == 0) return false;
    }
    return true;
}

namespace {

Rat ratio_sum_recurse(const std::vector<uint32_t>& phi,
                      const RestrictedRange& range, uint64_t lo, uint64_t hi) {
    if (hi - lo < 64) {
        Rat acc(0);
        for (uint64_t n = lo; n <= hi; ++n) {
            if (!range.admits(n)) continue;
            Rat term(phi[n], n);
            term.canonicalize();
            acc += term;
        }
        return acc;
    }
    uint64_t mid = lo + (hi - lo) / 2;
    return ratio_sum_recurse(phi, range, lo, mid) +
           ratio_sum_recurse(phi, range, mid + 1, hi);
}

}  // namespace

Rat phi_ratio_sum_restricted(const RestrictedRange& range,
                             uint64_t budget_entries) {
    std::vector<uint32_t> phi = phi_sieve(range.hi, budget_entries);
    return ratio_sum_recurse(phi, range, range.lo, range.hi);
}

}  // namespace pavlab
