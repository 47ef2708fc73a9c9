#include "pavlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "pavlab/arith.hpp"
#include "pavlab/errors.hpp"

namespace pavlab {

namespace {

Rat balanced_length_sum(const std::vector<IntervalSet::Interval>& iv,
                        size_t lo, size_t hi) {
    if (hi - lo == 0) return Rat(0);
    if (hi - lo == 1) return Rat(iv[lo].right - iv[lo].left);
    size_t mid = lo + (hi - lo) / 2;
    return balanced_length_sum(iv, lo, mid) + balanced_length_sum(iv, mid, hi);
}

}  // namespace

void IntervalSet::recompute_measure() {
    measure_ = balanced_length_sum(iv_, 0, iv_.size());
}

IntervalSet IntervalSet::from_endpoints(std::vector<Interval> raw) {
    std::vector<Interval> kept;
    kept.reserve(raw.size());
    for (auto& i : raw) {
        if (i.left < i.right) kept.push_back(std::move(i));
    }
    std::sort(kept.begin(), kept.end(),
              [](const Interval& a, const Interval& b) {
                  int c = cmp(a.left, b.left);
                  if (c != 0) return c < 0;
                  return a.right < b.right;
              });
    IntervalSet out;
    for (auto& i : kept) {
        if (!out.iv_.empty() && i.left < out.iv_.back().right) {
            if (i.right > out.iv_.back().right) {
                out.iv_.back().right = std::move(i.right);
            }
        } else {
            out.iv_.push_back(std::move(i));
        }
    }
    out.recompute_measure();
    if (!out.valid()) throw DomainError("IntervalSet: endpoints outside [0,1]");
    return out;
}

IntervalSet IntervalSet::full_circle() {
    IntervalSet out;
    out.iv_.push_back({Rat(0), Rat(1)});
    out.measure_ = 1;
    return out;
}

bool IntervalSet::contains(const Rat& x) const {
    size_t lo = 0, hi = iv_.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (iv_[mid].left < x) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    // iv_[lo-1] is the last interval with left < x.
    if (lo == 0) return false;
    return x < iv_[lo - 1].right;
}

bool IntervalSet::subset_of(const IntervalSet& o) const {
    size_t j = 0;
    for (const auto& i : iv_) {
        while (j < o.iv_.size() && o.iv_[j].right < i.right) ++j;
        if (j == o.iv_.size()) return false;
        if (!(o.iv_[j].left <= i.left && i.right <= o.iv_[j].right)) {
            return false;
        }
    }
    return true;
}

bool IntervalSet::valid() const {
    Rat total(0);
    for (size_t i = 0; i < iv_.size(); ++i) {
        if (!(iv_[i].left < iv_[i].right)) return false;
        if (iv_[i].left < 0 || iv_[i].right > 1) return false;
        if (i > 0 && iv_[i].left < iv_[i - 1].right) return false;
        total += iv_[i].right - iv_[i].left;
    }
    return total == measure_;
}

std::string IntervalSet::to_json() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < iv_.size(); ++i) {
        if (i) os << ",";
        os << "[" << int_str(iv_[i].left.get_num()) << ","
           << int_str(iv_[i].left.get_den()) << ","
           << int_str(iv_[i].right.get_num()) << ","
           << int_str(iv_[i].right.get_den()) << "]";
    }
    os << "]";
    return os.str();
}

IntervalSet union_of(const IntervalSet& a, const IntervalSet& b) {
    std::vector<IntervalSet::Interval> all;
    all.reserve(a.iv_.size() + b.iv_.size());
    all.insert(all.end(), a.iv_.begin(), a.iv_.end());
    all.insert(all.end(), b.iv_.begin(), b.iv_.end());
    return IntervalSet::from_endpoints(std::move(all));
}

namespace {

// Appends (lo, lo + len) reduced mod 1, assuming 0 < len <= 1.
void append_mod1(std::vector<IntervalSet::Interval>& out, Rat lo,
                 const Rat& len) {
    Int shift;
    mpz_fdiv_q(shift.get_mpz_t(), lo.get_num().get_mpz_t(),
               lo.get_den().get_mpz_t());
    lo -= Rat(shift);
    Rat hi = lo + len;
    if (hi <= 1) {
        out.push_back({std::move(lo), std::move(hi)});
    } else {
        out.push_back({std::move(lo), Rat(1)});
        out.push_back({Rat(0), hi - 1});
    }
}

}  // namespace

IntervalSet build_E_n(uint64_t n, const Rat& psi0_value) {
    if (n < 1) throw DomainError("build_E_n: n must be >= 1");
    if (psi0_value < 0) throw DomainError("build_E_n: psi0 must be >= 0");
    if (psi0_value == 0) return IntervalSet();

    Rat nn(static_cast<unsigned long>(n));
    Rat len = 2 * psi0_value / nn;
    if (len > 1) return IntervalSet::full_circle();

    std::vector<IntervalSet::Interval> raw;
    for (uint64_t p = 1; p <= n; ++p) {
        if (std::gcd(p, n) != 1) continue;
        Rat lo = (Rat(static_cast<unsigned long>(p)) - psi0_value) / nn;
        append_mod1(raw, std::move(lo), len);
    }
    return IntervalSet::from_endpoints(std::move(raw));
}

UnionReport union_range(const PsiSpec& psi, const SequenceFamily& F,
                        uint64_t N0, uint64_t N1) {
    if (N0 > N1) throw DomainError("union_range: N0 must be <= N1");
    if (N0 < psi.start_index()) {
        throw DomainError("union_range: N0 below psi start");
    }
    if (!psi.exact_evaluable()) {
        throw ExactPolicyError(
            "union_range needs an exactly evaluable psi (table or constant)");
    }
    std::vector<IntervalSet::Interval> all;
    std::vector<Rat> lambdas;
    for (uint64_t n = N0; n <= N1; ++n) {
        IntervalSet e = build_E_n(n, *psi0_eval(psi, F, n).exact);
        lambdas.push_back(e.total_measure());
        all.insert(all.end(), e.intervals().begin(), e.intervals().end());
    }
    UnionReport rep;
    rep.set = IntervalSet::from_endpoints(std::move(all));
    rep.measure = rep.set.total_measure();
    // balanced fold keeps intermediate denominators small
    std::function<Rat(size_t, size_t)> fold = [&](size_t lo,
                                                  size_t hi) -> Rat {
        if (hi - lo == 0) return Rat(0);
        if (hi - lo == 1) return lambdas[lo];
        size_t mid = lo + (hi - lo) / 2;
        return fold(lo, mid) + fold(mid, hi);
    };
    rep.tail_sum = fold(0, lambdas.size());
    return rep;
}

uint64_t mc_stream_value(uint64_t seed, uint64_t index) {
    uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

McReport monte_carlo_hits(const IntervalSet& u, uint64_t samples,
                          uint64_t seed) {
    if (samples < 1) throw DomainError("monte_carlo_hits: samples must be >= 1");
    uint64_t hits = 0;
    for (uint64_t i = 0; i < samples; ++i) {
        uint64_t bits = mc_stream_value(seed, i);
        Rat x((Int(bits)));
        mpq_div_2exp(x.get_mpq_t(), x.get_mpq_t(), 64);
        if (u.contains(x)) ++hits;
    }
    McReport rep;
    rep.samples = samples;
    rep.hits = hits;
    rep.seed = seed;
    rep.fraction = static_cast<double>(hits) / static_cast<double>(samples);
    rep.halfwidth = 3.0 * std::sqrt(rep.fraction * (1.0 - rep.fraction) /
                                    static_cast<double>(samples));
    return rep;
}

McReport monte_carlo_hits(const PsiSpec& psi, const SequenceFamily& F,
                          uint64_t N0, uint64_t N1, uint64_t samples,
                          uint64_t seed) {
    UnionReport rep = union_range(psi, F, N0, N1);
    return monte_carlo_hits(rep.set, samples, seed);
}

bool subhomogeneity_check(uint64_t n, const Rat& psi0_value, const Rat& t) {
    if (t < 1) throw DomainError("subhomogeneity_check: t must be >= 1");
    Rat lhs = build_E_n(n, Rat(t * psi0_value)).total_measure();
    Rat rhs = t * build_E_n(n, psi0_value).total_measure();
    return lhs <= rhs;
}

}  // namespace pavlab
