#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pavlab/psi.hpp"

namespace pavlab {

// Finite union of open intervals inside [0,1), kept sorted and pairwise
// disjoint (touching endpoints stay separate: the shared endpoint belongs
// to neither open interval). Measure is exact.
class IntervalSet {
  public:
    struct Interval {
        Rat left;
        Rat right;
    };

    IntervalSet() = default;

    // Sorts, drops empties, merges strictly overlapping intervals.
    static IntervalSet from_endpoints(std::vector<Interval> raw);
    static IntervalSet full_circle();  // the single interval (0, 1)

    const std::vector<Interval>& intervals() const { return iv_; }
    bool empty() const { return iv_.empty(); }
    size_t size() const { return iv_.size(); }
    const Rat& total_measure() const { return measure_; }

    bool contains(const Rat& x) const;          // strict interior test
    bool subset_of(const IntervalSet& o) const;
    bool valid() const;  // sorted, disjoint, inside [0,1]

    std::string to_json() const;  // [[ln,ld,rn,rd], ...]

    friend IntervalSet union_of(const IntervalSet& a, const IntervalSet& b);

  private:
    std::vector<Interval> iv_;
    Rat measure_;
    void recompute_measure();
};

IntervalSet union_of(const IntervalSet& a, const IntervalSet& b);

// E_n(psi0) = union over 1 <= p <= n, gcd(p,n)=1 of
// ((p - psi0)/n, (p + psi0)/n), reduced mod 1. Arcs longer than the whole
// circle clamp to (0,1).
IntervalSet build_E_n(uint64_t n, const Rat& psi0_value);

inline const Rat& measure(const IntervalSet& s) { return s.total_measure(); }

struct UnionReport {
    IntervalSet set;
    Rat measure;
    Rat tail_sum;  // sum over n of lambda(E_n); >= measure by union bound
};

// Union of E_n(psi0(n)) over N0 <= n <= N1 with psi0(n) = psi(n) * W(n)
// evaluated exactly; ExactPolicyError when psi is float-valued.
UnionReport union_range(const PsiSpec& psi, const SequenceFamily& F,
                        uint64_t N0, uint64_t N1);

struct McReport {
    uint64_t samples = 0;
    uint64_t hits = 0;
    uint64_t seed = 0;
    double fraction = 0.0;
    double halfwidth = 0.0;  // binomial 3 sigma
};

// Uniform dyadic samples u/2^64 (counter-based splitmix64 stream from the
// seed), exact membership tests.
McReport monte_carlo_hits(const IntervalSet& u, uint64_t samples,
                          uint64_t seed);
McReport monte_carlo_hits(const PsiSpec& psi, const SequenceFamily& F,
                          uint64_t N0, uint64_t N1, uint64_t samples,
                          uint64_t seed);

// lambda(E_n(t*psi0)) <= t * lambda(E_n(psi0)) for t >= 1.
bool subhomogeneity_check(uint64_t n, const Rat& psi0_value, const Rat& t);

// The n-th value of the deterministic sample stream; exposed so tests can
// pin the stream.
uint64_t mc_stream_value(uint64_t seed, uint64_t index);

}
