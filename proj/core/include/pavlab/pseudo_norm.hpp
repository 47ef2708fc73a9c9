#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pavlab/rational.hpp"

namespace pavlab {

// A divisibility chain n_0 = 1 | n_1 | n_2 | ... with every ratio
// n_{k+1}/n_k >= 2. Defined by a ratio rule, not an element list, so the
// chain invariant holds by construction and elements stay exact at any
// size. Copies share state; element caches grow lazily under a lock and
// readers always observe a consistent monotone prefix.
class PseudoValueSequence {
  public:
    enum class Rule { PrimePower, Periodic, Explicit };

    static PseudoValueSequence prime_power(uint64_t p);
    static PseudoValueSequence periodic(std::vector<uint64_t> ratios);
    static PseudoValueSequence explicit_ratios(std::vector<uint64_t> ratios);

    Rule rule() const;

    // n_k. Throws ExhaustedSequenceError past an explicit list's end.
    Int element(size_t k) const;

    // n_k/n_{k-1} for k >= 1.
    uint64_t ratio(size_t k) const;

    // Number of elements an explicit list can ever produce (counting n_0);
    // nullopt for the unbounded rules.
    std::optional<size_t> element_limit() const;

    // Largest k with n_k <= bound. Requires certifying that n_{k+1} > bound,
    // which an exhausted explicit list cannot always do.
    size_t max_index(const Int& bound) const;
    size_t max_index(uint64_t bound) const;

    struct Norm {
        size_t index;  // largest k with n_k | n
        Int element;   // n_k itself; the norm value is 1/element
        Rat value() const { return make_rat(Int(1), element); }
    };
    // The sequence-adic norm of n >= 1: 1/(largest element dividing n).
    Norm norm(const Int& n) const;
    Norm norm(uint64_t n) const;

    // phi(n_k) and phi(n_k)/n_k, exact, via the prime factorization of the
    // ratios (no big-integer factoring ever happens).
    Int element_phi(size_t k) const;
    Rat element_phi_ratio(size_t k) const;

    // Sum of phi(n_k)/n_k over all elements n_k <= n (exact, and a cheap
    // float view of the same prefix).
    Rat totient_ratio_sum(const Int& n) const;
    Rat totient_ratio_sum(uint64_t n) const;
    double totient_ratio_sum_d(uint64_t n) const;

    // Distinct primes dividing n_k, ascending.
    std::vector<uint64_t> element_primes(size_t k) const;

    // True when the full set of primes the rule can ever introduce is known
    // (prime-power and periodic rules).
    bool generator_primes_complete() const;
    std::vector<uint64_t> generator_primes() const;

    std::string describe() const;

    bool same_definition(const PseudoValueSequence& other) const;

  private:
    struct State;
    std::shared_ptr<State> st_;
    explicit PseudoValueSequence(std::shared_ptr<State> st);
};

// An ordered list of pseudo-absolute-value sequences D_1..D_m. The default
// construction is the empty (identity) family: every product over it is 1.
// Repeats are allowed; the mutual-coprimality flag is computed, never
// assumed.
class SequenceFamily {
  public:
    SequenceFamily();
    explicit SequenceFamily(std::vector<PseudoValueSequence> members);

    size_t size() const;
    const PseudoValueSequence& member(size_t i) const;

    // Checks pairwise coprimality of elements up to index_bound per member
    // (full certificate when both generator-prime sets are complete) and
    // caches the verdict.
    bool verify_mutually_coprime(size_t index_bound = 64) const;

    // Cached verdict; nullopt if verify was never run.
    std::optional<bool> mutually_coprime() const;

    std::string describe() const;

  private:
    struct State;
    std::shared_ptr<State> st_;
};

// Product over family members of the member-adic norm of n.
Rat product_pseudo_norm(const SequenceFamily& F, const Int& n);
Rat product_pseudo_norm(const SequenceFamily& F, uint64_t n);

// 1/product_pseudo_norm as an integer: the product of the norm elements.
Int inverse_product_norm(const SequenceFamily& F, const Int& n);
Int inverse_product_norm(const SequenceFamily& F, uint64_t n);

// All index tuples (k_1..k_m) with lcm(n_{k_1}^1, ..., n_{k_m}^m) <= n,
// in lexicographic order. Cutoffs are safe because the lcm is monotone in
// every coordinate.
std::vector<std::vector<uint32_t>> lcm_index_tuples(const SequenceFamily& F,
                                                    uint64_t n);

Int tuple_lcm(const SequenceFamily& F, std::span<const uint32_t> tuple);
Int tuple_product(const SequenceFamily& F, std::span<const uint32_t> tuple);

// floor(n / tuple_lcm): the largest multiplier keeping the lcm at or
// below n. Throws DomainError when the tuple's lcm already exceeds n.
uint64_t tuple_multiplier(const SequenceFamily& F, uint64_t n,
                          std::span<const uint32_t> tuple);

// Number of index tuples whose element product is <= n, excluding the
// all-zeros tuple (whose product is always 1).
uint64_t nontrivial_product_tuples(const SequenceFamily& F, uint64_t n);

// Every distinct tuple product <= bound, ascending with multiplicity
// (repeated families can repeat values). Small: O(polylog(bound)^m).
std::vector<Int> tuple_products_upto(const SequenceFamily& F, uint64_t bound);

// phi(P)/P for the product P of the tuple's elements, exact, computed from
// the union of the members' element prime sets.
Rat tuple_phi_ratio(const SequenceFamily& F, std::span<const uint32_t> tuple);

}
