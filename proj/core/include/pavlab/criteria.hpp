#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pavlab/arith.hpp"
#include "pavlab/psi.hpp"

namespace pavlab {

// The multiplier a(n) in a criterion series Sum psi(n) * a(n).
//   InverseNormProduct: 1 / prod |n|_{D_i}            (exact)
//   DSWeighted:         phi(n)/n * 1/prod |n|_{D_i}   (exact)
//   MultiCount:         number of nontrivial tuple products <= n  (exact)
//   HarrapCount:        largest index k with n_k <= n             (exact)
//   LogPower(k):        (log n)^k    (exact only for k = 0)
//   FrakM:              totient ratio sum of D at n               (exact)
//   FrakMLog(eps):      FrakM * (log n)^(1+eps)                   (float)
class WeightKind {
  public:
    enum class Tag {
        InverseNormProduct,
        DSWeighted,
        MultiCount,
        HarrapCount,
        LogPower,
        FrakM,
        FrakMLog,
    };

    static WeightKind inverse_norm_product(SequenceFamily F);
    static WeightKind ds_weighted(SequenceFamily F);
    static WeightKind multi_count(SequenceFamily F);
    static WeightKind harrap_count(PseudoValueSequence D);
    static WeightKind log_power(int k);
    static WeightKind frak_m(PseudoValueSequence D);
    static WeightKind frak_m_log(Rat eps, PseudoValueSequence D);

    Tag tag() const;
    bool exact_evaluable() const;
    const SequenceFamily& family() const;        // tags carrying a family
    const PseudoValueSequence& sequence() const; // tags carrying a sequence
    int log_exponent() const;                    // LogPower
    const Rat& eps() const;                      // FrakMLog

    // One-off evaluations. Bulk summation lives in weighted_partial_sum,
    // which shares caches across n.
    Rat eval_exact(uint64_t n) const;  // throws ExactPolicyError if float-only
    double eval_d(uint64_t n) const;

    std::string describe() const;

  private:
    struct State;
    std::shared_ptr<const State> st_;
    explicit WeightKind(std::shared_ptr<const State> st);
};

struct SeriesReport {
    std::string psi_desc;
    std::string weight_desc;
    uint64_t n_start = 0;
    uint64_t n_end = 0;
    std::optional<Rat> sum_exact;
    double sum_float = 0.0;

    // Subtotal over each dyadic block [2^t, 2^(t+1)) clipped to the range.
    // The float total is defined as the plain left-to-right sum of block
    // subtotals, so "subtotals add up to the total" holds bit for bit.
    struct Block {
        uint64_t n_end;  // last n contributing to this block
        std::optional<Rat> exact;
        double value = 0.0;
    };
    std::vector<Block> blocks;
};

// Sum_{n=start}^{N} psi(n) * w(n), ascending n, deterministic. Exact total
// included whenever both psi and w are exact-evaluable.
SeriesReport weighted_partial_sum(const PsiSpec& psi, const WeightKind& w,
                                  uint64_t N);

// Divergence/convergence by closed-form integral test for the built-in
// family x weight pairs that admit one.
enum class Verdict { Diverges, Converges, Unknown };
Verdict analytic_verdict(const PsiSpec& psi, const WeightKind& w);
std::string verdict_str(Verdict v);

// Minimum of phi(P)/P over all tuple products P with every index <= K,
// with the lexicographically first tuple attaining it.
struct MinPhiRatio {
    Rat min_ratio;
    std::vector<uint32_t> argmin;
};
MinPhiRatio min_product_phi_ratio(const SequenceFamily& F, uint32_t K);

// Average of phi(P)/P over all tuple products P <= N (trivial product
// included). Requires the family's mutual-coprimality flag to verify.
Rat avg_product_phi_ratio(const SequenceFamily& F, uint64_t N);

// (Sum of tuple products P <= N) / (N * number of such products).
Rat product_mass_ratio(const SequenceFamily& F, uint64_t N);

// (Sum_{k=1..m} phi(n_k)/n_k) / m.
Rat avg_element_phi_ratio(const PseudoValueSequence& D, uint64_t m);

// Block sum Sum psi_eff(k)*phi(k)/k over k in (2^(2^b), 2^(2^(b+1))].
// psi_eff is psi itself, or psi0 against `family` when one is given.
// phi can come from a sieve or from per-element factorization; both give
// identical values (and identical floats, term order being equal).
enum class PhiSource { Sieve, PerElement };
struct TowerBlock {
    std::optional<Rat> exact;
    double value = 0.0;
};
TowerBlock tower_block_sum(const PsiSpec& psi, const SequenceFamily* family,
                           uint32_t block_index,
                           PhiSource source = PhiSource::Sieve,
                           uint64_t budget_entries = kDefaultSieveBudget);

// Partial sum over blocks b = 1..b_max of log(G_b) / (b * log log G_b),
// counting only blocks with G_b >= 3.
double tower_block_criterion(const PsiSpec& psi, const SequenceFamily* family,
                             uint32_t b_max,
                             uint64_t budget_entries = kDefaultSieveBudget);

// Exact Abel summation identity over [start, N]:
//   Sum psi(n) a(n) = Sum (psi(n) - psi(n+1)) A(n) + psi(N+1) A(N),
// A(n) the running prefix of a. Table psi defined through N+1; both sides
// built by independent code paths and compared exactly.
struct AbelCheck {
    bool equal = false;
    Rat lhs;
    Rat rhs;
};
AbelCheck abel_summation_check(const PsiSpec& table_psi, const WeightKind& w,
                               uint64_t N);

// Two-sided growth bounds for S(n) = Sum_{j<=n} 1/prod|j|_{D_i} against
// n * M(n), M = nontrivial_product_tuples:
//   literal bound  S <= n*M        (fails at tiny n; see sweep)
//   counted bound  S <= n*(M+1)    (provable pointwise)
//   tuple bound    S <= Sum_{lcm tuples <= n} product * floor(n/lcm)
struct SandwichBounds {
    Int sum;
    uint64_t count_m = 0;
    bool literal_ok = false;
    bool counted_ok = false;
    bool tuple_ok = false;
    std::optional<Rat> ratio;  // S / (n*M); unset when M = 0
};
SandwichBounds sandwich_bounds(const SequenceFamily& F, uint64_t n);

struct SandwichSweep {
    std::vector<uint64_t> literal_violations;  // n with M>=1 and S > n*M
    bool counted_ok = true;
    bool tuple_ok = true;
    std::optional<Rat> min_ratio;
    uint64_t min_ratio_at = 0;
};
SandwichSweep sandwich_sweep(const SequenceFamily& F, uint64_t n_max);

// N * counter(N) / Sum_{n<=N} counter(n) for a non-decreasing counter
// (FrakM or MultiCount weight kinds).
Rat linear_growth_ratio(const WeightKind& counter, uint64_t N);

// sup over 2 <= n <= N of Sum_{n_k <= n} n_k * log(n/n_k) / n.
double log_weight_sup_ratio(const PseudoValueSequence& D, uint64_t N);

// Sum of 1/log(n_k) over elements n_k in (2^(2^b), 2^(2^(b+1))].
double inverse_log_block_sum(const PseudoValueSequence& D, uint32_t b);

// Sum_{n=a}^{b} 1/(n log n) against its smooth comparison
// loglog(b+1) - loglog(a), plus their ratio. Needs b >= a >= 2.
struct LogLogComparison {
    double sum = 0.0;
    double integral = 0.0;
    double ratio = 0.0;
};
LogLogComparison loglog_comparison(uint64_t a, uint64_t b);

}
