#include "pavlab/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iterator>
#include <numeric>
#include <random>
#include <sstream>

#include "pavlab/approx.hpp"
#include "pavlab/arith.hpp"
#include "pavlab/criteria.hpp"
#include "pavlab/measure.hpp"

#include "frozen.hpp"

namespace pavlab {

namespace {

using Clock = std::chrono::steady_clock;

struct SuiteBuilder {
    SuiteResult r;
    Clock::time_point t0 = Clock::now();

    SuiteBuilder(std::string name, int criterion, double budget) {
        r.suite = std::move(name);
        r.criterion = criterion;
        r.budget_seconds = budget;
    }

    void check(std::string name, bool pass, std::string detail) {
        r.checks.push_back({std::move(name), pass, std::move(detail)});
    }

    SuiteResult finish() {
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        std::ostringstream os;
        os << fmt(r.seconds) << "s <= " << fmt(r.budget_seconds) << "s";
        bool in_time = r.seconds <= r.budget_seconds;
        r.checks.push_back({"time budget", in_time, os.str()});
        r.pass = true;
        for (const auto& c : r.checks) r.pass = r.pass && c.pass;
        return std::move(r);
    }

    static std::string fmt(double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3g", v);
        return buf;
    }
};

std::string f17(double v) { return float17(v); }

double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

PseudoValueSequence seq2() { return PseudoValueSequence::prime_power(2); }
PseudoValueSequence seq3() { return PseudoValueSequence::prime_power(3); }

SequenceFamily fam23() {
    return SequenceFamily({seq2(), seq3()});
}

// criterion 1: restricted totient-ratio mass against (6/pi^2)(2/3)(3/4)
SuiteResult suite_phi_restricted(uint64_t) {
    SuiteBuilder b("phi_restricted", 1, 10.0);
    RestrictedRange range{1, 1000000, {2, 3}};
    Rat s = phi_ratio_sum_restricted(range);
    double ratio = to_double(s) / 1e6;
    double target = 3.0 / (M_PI * M_PI);
    double re = rel_err(ratio, target);
    b.check("slope within 1e-3 of 3/pi^2", re <= 1e-3,
            "ratio=" + f17(ratio) + " target=" + f17(target) +
                " rel_err=" + f17(re));
    return b.finish();
}

// criterion 2: odd-n slope 4/pi^2 plus deficit bound C log N
SuiteResult suite_phi_odd_slope(uint64_t) {
    SuiteBuilder b("phi_odd_slope", 2, 10.0);
    double target = 4.0 / (M_PI * M_PI);
    double max_deficit_c = 0.0;
    double ratio_at_end = 0.0;
    bool bound_ok = true;
    for (uint64_t N : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
        RestrictedRange range{1, N, {2}};
        double s = to_double(phi_ratio_sum_restricted(range));
        double deficit = target * static_cast<double>(N) - s;
        double c = deficit / std::log(static_cast<double>(N));
        max_deficit_c = std::max(max_deficit_c, c);
        if (s < target * static_cast<double>(N) -
                    frozen::kOddSlopeDeficitC * std::log(static_cast<double>(N))) {
            bound_ok = false;
        }
        if (N == 1000000) ratio_at_end = s / static_cast<double>(N);
    }
    double re = rel_err(ratio_at_end, target);
    b.check("slope within 1e-3 of 4/pi^2", re <= 1e-3,
            "ratio=" + f17(ratio_at_end) + " rel_err=" + f17(re));
    b.check("lower bound 4/pi^2 N - C log N",
            bound_ok,
            "max needed C=" + f17(max_deficit_c) +
                " frozen C=" + f17(frozen::kOddSlopeDeficitC));
    return b.finish();
}

// criterion 3: Abel summation identity on seeded random cases
SuiteResult suite_abel(uint64_t seed) {
    SuiteBuilder b("abel", 3, 5.0);
    std::mt19937_64 rng(seed ^ 0xabe1ULL);
    auto pick_seq = [&](uint64_t r) -> PseudoValueSequence {
        switch (r % 5) {
            case 0: return seq2();
            case 1: return seq3();
            case 2: return PseudoValueSequence::prime_power(5);
            case 3: return PseudoValueSequence::periodic({2, 3});
            default:
                return PseudoValueSequence::explicit_ratios({2, 3, 5, 7, 2});
        }
    };
    auto pick_family = [&]() -> SequenceFamily {
        std::vector<PseudoValueSequence> members;
        uint64_t count = rng() % 3;
        for (uint64_t i = 0; i < count; ++i) members.push_back(pick_seq(rng()));
        return SequenceFamily(std::move(members));
    };
    int equal = 0;
    const int cases = 100;
    for (int i = 0; i < cases; ++i) {
        uint64_t N = 5 + rng() % 296;  // in [5, 300]
        std::vector<Rat> values;
        for (uint64_t n = 3; n <= N + 1; ++n) {
            uint64_t num = rng() % 100;
            uint64_t den = 1 + rng() % 40;
            Rat v(num, den);
            v.canonicalize();
            values.push_back(std::move(v));
        }
        PsiSpec psi = PsiSpec::table(std::move(values), 3);
        WeightKind w = WeightKind::log_power(0);
        switch (rng() % 6) {
            case 0: w = WeightKind::log_power(0); break;
            case 1: w = WeightKind::inverse_norm_product(pick_family()); break;
            case 2: w = WeightKind::ds_weighted(pick_family()); break;
            case 3: w = WeightKind::multi_count(pick_family()); break;
            case 4: w = WeightKind::harrap_count(pick_seq(rng())); break;
            default: w = WeightKind::frak_m(pick_seq(rng())); break;
        }
        if (abel_summation_check(psi, w, N).equal) ++equal;
    }
    b.check("identity exact on all cases", equal == cases,
            std::to_string(equal) + "/" + std::to_string(cases));
    return b.finish();
}

// criterion 4: sandwich bounds for the ({2^k},{3^k}) family
SuiteResult suite_sandwich(uint64_t) {
    SuiteBuilder b("sandwich", 4, 30.0);
    SequenceFamily F = fam23();
    SandwichSweep sweep = sandwich_sweep(F, 10000);

    std::vector<uint64_t> expect(std::begin(frozen::kSandwichViolations),
                                 std::end(frozen::kSandwichViolations));
    std::ostringstream vs;
    for (uint64_t v : sweep.literal_violations) vs << v << " ";
    b.check("literal bound fails only at the pinned points",
            sweep.literal_violations == expect, "violations: " + vs.str());
    b.check("counted bound S <= n(M+1) everywhere", sweep.counted_ok, "");
    b.check("tuple-identity bound holds everywhere", sweep.tuple_ok, "");

    bool floor_ok = sweep.min_ratio && *sweep.min_ratio >= Rat(1, 5);
    b.check("min ratio >= 1/5", floor_ok,
            sweep.min_ratio ? rat_str(*sweep.min_ratio) : "none");
    double mr = sweep.min_ratio ? to_double(*sweep.min_ratio) : 0.0;
    b.check("min ratio matches the recorded value",
            std::abs(mr - frozen::kSandwichMinRatio) <= 1e-12 &&
                sweep.min_ratio_at == frozen::kSandwichMinRatioAt,
            "min=" + f17(mr) + " at n=" + std::to_string(sweep.min_ratio_at));

    SandwichBounds six = sandwich_bounds(F, 6);
    bool six_ok = six.sum == 17 && six.count_m == 4 && six.ratio &&
                  *six.ratio == Rat(17, 24);
    b.check("n=6 values (sum 17, M 4, ratio 17/24)", six_ok,
            "sum=" + int_str(six.sum) + " M=" + std::to_string(six.count_m));
    return b.finish();
}

// criterion 5: disjoint-regime measure formula and its upper bound
SuiteResult suite_measure_formula(uint64_t) {
    SuiteBuilder b("measure_formula", 5, 20.0);
    auto phi = phi_sieve(2000);
    uint64_t formula_bad = 0, bound_bad = 0;
    for (const Rat& psi0 : {Rat(1, 8), Rat(1, 3), Rat(1, 2)}) {
        for (uint64_t n = 1; n <= 2000; ++n) {
            Rat lhs = build_E_n(n, psi0).total_measure();
            Rat rhs = Rat(2) * Rat(phi[n]) * psi0 / Rat(static_cast<unsigned long>(n));
            if (lhs != rhs) ++formula_bad;
        }
    }
    for (const Rat& psi0 : {Rat(4, 5), Rat(2)}) {
        for (uint64_t n = 1; n <= 2000; ++n) {
            Rat lhs = build_E_n(n, psi0).total_measure();
            Rat rhs = Rat(2) * Rat(phi[n]) * psi0 / Rat(static_cast<unsigned long>(n));
            if (lhs > rhs) ++bound_bad;
        }
    }
    b.check("lambda(E_n) = 2 phi(n) psi0 / n for psi0 <= 1/2, n <= 2000",
            formula_bad == 0, std::to_string(formula_bad) + " mismatches");
    b.check("upper bound never violated for psi0 in {4/5, 2}", bound_bad == 0,
            std::to_string(bound_bad) + " violations");
    return b.finish();
}

// criterion 6: convergent-tail union measure and Monte Carlo agreement
SuiteResult suite_borel_cantelli(uint64_t) {
    SuiteBuilder b("borel_cantelli", 6, 30.0);
    const uint64_t N0 = 1000, N1 = 2000;
    Rat psi0(1, 10000000);
    std::vector<Rat> values(N1 - N0 + 1, psi0);
    PsiSpec psi = PsiSpec::table(std::move(values), N0);
    SequenceFamily F;  // identity family, W = 1

    auto phi = phi_sieve(N1);
    std::function<Rat(uint64_t, uint64_t)> fold = [&](uint64_t lo,
                                                      uint64_t hi) -> Rat {
        if (hi - lo == 1) {
            Rat t = Rat(2) * Rat(phi[lo]) * psi0 /
                    Rat(static_cast<unsigned long>(lo));
            t.canonicalize();
            return t;
        }
        uint64_t mid = lo + (hi - lo) / 2;
        return fold(lo, mid) + fold(mid, hi);
    };
    Rat tail_formula = fold(N0, N1 + 1);
    b.check("formula tail below 1e-3", tail_formula < Rat(1, 1000),
            rat_str(tail_formula) + " ~ " + f17(to_double(tail_formula)));

    UnionReport rep = union_range(psi, F, N0, N1);
    b.check("union measure below 1e-3", rep.measure < Rat(1, 1000),
            f17(to_double(rep.measure)));
    b.check("union bound: measure <= sum of lambda(E_n)",
            rep.measure <= rep.tail_sum,
            "tail_sum=" + f17(to_double(rep.tail_sum)));

    McReport mc = monte_carlo_hits(rep.set, 10000, frozen::kBorelSeed);
    double p = to_double(tail_formula);
    double bound = p + 3.0 * std::sqrt(p * (1.0 - p) / 10000.0);
    b.check("MC fraction within tail + 3 sigma", mc.fraction <= bound,
            "fraction=" + f17(mc.fraction) + " (hits=" +
                std::to_string(mc.hits) + ") bound=" + f17(bound));
    return b.finish();
}

// criterion 7: closed form frak_m = 1 + (1 - 1/p) harrap_count
SuiteResult suite_frak_m_closed_form(uint64_t) {
    SuiteBuilder b("frak_m_closed_form", 7, 10.0);
    for (uint64_t p : {2ULL, 3ULL, 5ULL}) {
        PseudoValueSequence D = PseudoValueSequence::prime_power(p);
        uint64_t bad = 0;
        uint64_t first_bad = 0;
        for (uint64_t n = 1; n <= 1000000; ++n) {
            Rat lhs = D.totient_ratio_sum(n);
            Rat rhs = Rat(1) + Rat(p - 1, p) * Rat(static_cast<unsigned long>(
                                                 D.max_index(n)));
            rhs.canonicalize();
            if (lhs != rhs) {
                if (bad == 0) first_bad = n;
                ++bad;
            }
        }
        b.check("identity for p=" + std::to_string(p), bad == 0,
                bad ? std::to_string(bad) + " mismatches, first at n=" +
                          std::to_string(first_bad)
                    : "all n <= 1e6");
    }
    return b.finish();
}

// criterion 8: linear growth band of the counting weights
SuiteResult suite_linear_growth(uint64_t) {
    SuiteBuilder b("linear_growth", 8, 30.0);
    WeightKind frak = WeightKind::frak_m(seq2());
    WeightKind multi = WeightKind::multi_count(fam23());
    double frak_at_1e4 = 0.0, multi_at_1e4 = 0.0;
    bool frak_ok = true, multi_ok = true;
    std::ostringstream fr, mr;
    for (uint64_t N : {100ULL, 1000ULL, 10000ULL}) {
        Rat rf = linear_growth_ratio(frak, N);
        Rat rm = linear_growth_ratio(multi, N);
        fr << f17(to_double(rf)) << " ";
        mr << f17(to_double(rm)) << " ";
        if (rf < 1 || rf > 4) frak_ok = false;
        if (rm < 1 || to_double(rm) > frozen::kMultiGrowthC) multi_ok = false;
        if (N == 10000) {
            frak_at_1e4 = to_double(rf);
            multi_at_1e4 = to_double(rm);
        }
    }
    b.check("frak_m ratio in [1, 4]", frak_ok, fr.str());
    b.check("multi_count ratio in [1, C]", multi_ok,
            mr.str() + "(C=" + f17(frozen::kMultiGrowthC) + ")");
    b.check("ratios at N=1e4 match recorded values",
            std::abs(frak_at_1e4 - frozen::kFrakMRatioAt1e4) <= 1e-12 &&
                std::abs(multi_at_1e4 - frozen::kMultiRatioAt1e4) <= 1e-12,
            "frak=" + f17(frak_at_1e4) + " multi=" + f17(multi_at_1e4));
    return b.finish();
}

// criterion 9: log-weight sup ratio and inverse-log block sums
SuiteResult suite_log_weights(uint64_t) {
    SuiteBuilder b("log_weights", 9, 20.0);
    double sup = log_weight_sup_ratio(seq2(), 1000000);
    b.check("sup ratio <= 4", sup <= 4.0, "sup=" + f17(sup));
    b.check("sup ratio matches recorded value",
            std::abs(sup - frozen::kLogWeightSup) <= 1e-9, f17(sup));
    bool blocks_ok = true;
    std::ostringstream bs;
    double block2 = 0.0;
    for (uint32_t blk : {0u, 1u, 2u, 3u}) {
        double v = inverse_log_block_sum(seq2(), blk);
        bs << f17(v) << " ";
        if (v > 1.5) blocks_ok = false;
        if (blk == 2) block2 = v;
    }
    b.check("block sums <= 1.5 for b <= 3", blocks_ok, bs.str());
    b.check("block b=2 <= 1.3 and matches recorded value",
            block2 <= 1.3 && std::abs(block2 - frozen::kInvLogBlock2) <= 1e-8,
            f17(block2));
    return b.finish();
}

// criterion 10: tower block sums, sieve vs per-element factorization
SuiteResult suite_tower_blocks(uint64_t) {
    SuiteBuilder b("tower_blocks", 10, 60.0);
    PsiSpec psi = PsiSpec::mixed_har(Rat(0), seq2());
    SequenceFamily F({seq2()});
    bool equal_ok = true, positive_ok = true;
    std::ostringstream vs;
    for (uint32_t blk : {0u, 1u, 2u}) {
        TowerBlock s = tower_block_sum(psi, &F, blk, PhiSource::Sieve);
        TowerBlock n = tower_block_sum(psi, &F, blk, PhiSource::PerElement);
        vs << f17(s.value) << " ";
        if (s.value != n.value) equal_ok = false;
        if (!(s.value > 0.0)) positive_ok = false;
    }
    b.check("sieve and per-element sums identical bit for bit", equal_ok,
            vs.str());
    b.check("block values strictly positive", positive_ok, "");

    PsiSpec one = PsiSpec::constant(Rat(1));
    TowerBlock t0 = tower_block_sum(one, nullptr, 0);
    b.check("psi=1 block 0 equals 7/6 exactly",
            t0.exact && *t0.exact == Rat(7, 6),
            t0.exact ? rat_str(*t0.exact) : "no exact value");
    return b.finish();
}

namespace oracle {

// Independent nearest/coprime scan used only for cross-checking.
struct Best {
    Int p;
    Rat dist;
};

Best brute_coprime(const Rat& alpha, uint64_t n, long window) {
    Rat t = alpha * Rat(static_cast<unsigned long>(n));
    Int lo;
    mpz_fdiv_q(lo.get_mpz_t(), t.get_num().get_mpz_t(),
               t.get_den().get_mpz_t());
    lo -= window;
    Int hi = lo + 2 * window + 1;
    std::optional<Best> best;
    for (Int p = lo; p <= hi; p += 1) {
        if (gcd(Int(static_cast<unsigned long>(n)), p) != 1) continue;
        Rat d = t - Rat(p);
        if (d < 0) d = -d;
        if (!best || d < best->dist) best = Best{p, d};
    }
    return *best;
}

Best brute_nearest(const Rat& alpha, uint64_t n, long window) {
    Rat t = alpha * Rat(static_cast<unsigned long>(n));
    Int lo;
    mpz_fdiv_q(lo.get_mpz_t(), t.get_num().get_mpz_t(),
               t.get_den().get_mpz_t());
    lo -= window;
    Int hi = lo + 2 * window + 1;
    std::optional<Best> best;
    for (Int p = lo; p <= hi; p += 1) {
        Rat d = t - Rat(p);
        if (d < 0) d = -d;
        if (!best || d < best->dist) best = Best{p, d};
    }
    return *best;
}

struct NaiveRecord {
    uint64_t n;
    Int p;
    bool indeterminate;
};

// Naive double loop over the whole candidate strip; reproduces the
// windowed enumeration from first principles.
std::vector<NaiveRecord> naive_solutions(const RealTarget& alpha,
                                         const PsiSpec& psi,
                                         const SequenceFamily& F,
                                         uint64_t n_max) {
    std::vector<NaiveRecord> out;
    for (uint64_t n = psi.start_index(); n <= n_max; ++n) {
        PsiValue p0 = psi0_eval(psi, F, n);
        Rat theta_lo, theta_hi;
        if (p0.exact) {
            theta_lo = *p0.exact;
            theta_hi = *p0.exact;
        } else {
            theta_lo = rat_from_double(p0.value * (1.0 - 1e-9));
            theta_hi = rat_from_double(p0.value * (1.0 + 1e-9));
            if (theta_lo < 0) theta_lo = 0;
        }
        // strip half-width: everything within ceil(theta)+2 of nalpha
        Int ceil_theta;
        mpz_cdiv_q(ceil_theta.get_mpz_t(), theta_hi.get_num().get_mpz_t(),
                   theta_hi.get_den().get_mpz_t());
        long half = ceil_theta.get_si() + 2;

        double td = alpha.value() * static_cast<double>(n);
        Int center(static_cast<long>(std::floor(td)));
        for (Int p = center - half; p <= center + half; p += 1) {
            if (gcd(Int(static_cast<unsigned long>(n)), p) != 1) continue;
            Dist d = [&]() -> Dist {
                switch (alpha.kind()) {
                    case RealTarget::Kind::Rational: {
                        Rat t = alpha.rational_value() *
                                Rat(static_cast<unsigned long>(n));
                        Rat diff = t - Rat(p);
                        if (diff < 0) diff = -diff;
                        return Dist::exact(diff);
                    }
                    case RealTarget::Kind::Quadratic:
                        return Dist::surd(
                            alpha.quad_a() * static_cast<unsigned long>(n) -
                                p * alpha.quad_e(),
                            alpha.quad_b() * static_cast<unsigned long>(n),
                            alpha.quad_d(), alpha.quad_e());
                    default:
                        throw DomainError("naive oracle: unsupported target");
                }
            }();
            auto surely_in = d.leq(theta_lo);
            auto maybe_in = d.leq(theta_hi);
            if (maybe_in && !*maybe_in) continue;
            bool certain = surely_in && *surely_in;
            if (!certain && p0.exact) continue;
            out.push_back({n, p, !certain});
        }
    }
    return out;
}

}  // namespace oracle

// criterion 11: coprime distance and solution enumeration vs brute force
SuiteResult suite_approx_oracle(uint64_t seed) {
    SuiteBuilder b("approx_oracle", 11, 30.0);
    std::mt19937_64 rng(seed ^ 0xa9a9ULL);

    uint64_t mismatches = 0, order_bad = 0;
    for (int i = 0; i < 20; ++i) {
        uint64_t q = 1 + rng() % 400;
        uint64_t pn = rng() % q;
        Rat a(pn, q);
        a.canonicalize();
        RealTarget alpha = RealTarget::rational(a);
        for (uint64_t n = 1; n <= 500; ++n) {
            NearestResult got = coprime_dist(alpha, n);
            oracle::Best want = oracle::brute_coprime(a, n, 50);
            if (got.p != want.p || *got.dist.exact_value() != want.dist) {
                ++mismatches;
            }
            NearestResult nearest = dist_to_integers(alpha, n);
            if (*got.dist.exact_value() < *nearest.dist.exact_value()) {
                ++order_bad;
            }
        }
    }
    b.check("coprime_dist equals exhaustive scan (20 alphas, n <= 500)",
            mismatches == 0, std::to_string(mismatches) + " mismatches");
    b.check("coprime_dist >= dist_to_integers", order_bad == 0,
            std::to_string(order_bad) + " violations");

    struct Config {
        RealTarget alpha;
        PsiSpec psi;
        SequenceFamily F;
    };
    std::vector<Rat> table_vals;
    for (uint64_t n = 3; n <= 1000; ++n) {
        table_vals.push_back(Rat(1, (n % 9) + 2));
    }
    RealTarget golden = RealTarget::quadratic(Int(1), Int(1), 5, Int(2));
    std::vector<Config> configs;
    configs.push_back({RealTarget::rational(Rat(1, 3)),
                       PsiSpec::constant(Rat(1, 6)), SequenceFamily({seq2()})});
    configs.push_back({RealTarget::rational(Rat(2, 7)),
                       PsiSpec::table(std::move(table_vals), 3), fam23()});
    configs.push_back({golden, PsiSpec::constant(Rat(1, 10)),
                       SequenceFamily({seq2()})});
    configs.push_back({RealTarget::rational(Rat(5, 17)),
                       PsiSpec::constant(Rat(1, 4)), SequenceFamily()});
    configs.push_back({golden, PsiSpec::power_log(Rat(1), Rat(1), Rat(0)),
                       SequenceFamily({seq2()})});

    uint64_t cfg_bad = 0;
    std::ostringstream counts;
    for (const auto& cfg : configs) {
        auto got = enumerate_solutions(cfg.alpha, cfg.psi, cfg.F, 1000);
        auto want = oracle::naive_solutions(cfg.alpha, cfg.psi, cfg.F, 1000);
        bool same = got.size() == want.size();
        if (same) {
            for (size_t i = 0; i < got.size(); ++i) {
                if (got[i].n != want[i].n || got[i].p != want[i].p ||
                    got[i].indeterminate != want[i].indeterminate) {
                    same = false;
                    break;
                }
            }
        }
        counts << got.size() << " ";
        if (!same) ++cfg_bad;
    }
    b.check("enumeration equals the naive double loop (5 configs, n <= 1e3)",
            cfg_bad == 0,
            "counts: " + counts.str() +
                (cfg_bad ? std::to_string(cfg_bad) + " configs differ" : ""));
    return b.finish();
}

// criterion 12: series equivalence band between the two weight forms
SuiteResult suite_equivalence(uint64_t) {
    SuiteBuilder b("equivalence", 12, 60.0);
    PsiSpec psi = PsiSpec::power_log(Rat(1), Rat(3), Rat(0));
    WeightKind wa = WeightKind::log_power(2);
    WeightKind wb = WeightKind::inverse_norm_product(fam23());
    bool band_ok = true;
    double ratio_at_end = 0.0;
    std::ostringstream rs;
    for (uint64_t N : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
        double a = weighted_partial_sum(psi, wa, N).sum_float;
        double bsum = weighted_partial_sum(psi, wb, N).sum_float;
        double ratio = a / bsum;
        rs << f17(ratio) << " ";
        if (!(ratio >= 1.0 / frozen::kEquivBandC &&
              ratio <= frozen::kEquivBandC)) {
            band_ok = false;
        }
        if (N == 1000000) ratio_at_end = ratio;
    }
    b.check("ratio inside the recorded band [1/C, C]", band_ok,
            rs.str() + "(C=" + f17(frozen::kEquivBandC) + ")");
    b.check("ratio at N=1e6 matches recorded value",
            rel_err(ratio_at_end, frozen::kEquivRatioAt1e6) <= 1e-9,
            f17(ratio_at_end));
    return b.finish();
}

struct SuiteEntry {
    const char* name;
    SuiteResult (*fn)(uint64_t);
};

constexpr SuiteEntry kSuites[] = {
    {"phi_restricted", suite_phi_restricted},
    {"phi_odd_slope", suite_phi_odd_slope},
    {"abel", suite_abel},
    {"sandwich", suite_sandwich},
    {"measure_formula", suite_measure_formula},
    {"borel_cantelli", suite_borel_cantelli},
    {"frak_m_closed_form", suite_frak_m_closed_form},
    {"linear_growth", suite_linear_growth},
    {"log_weights", suite_log_weights},
    {"tower_blocks", suite_tower_blocks},
    {"approx_oracle", suite_approx_oracle},
    {"equivalence", suite_equivalence},
};

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& s : kSuites) out.push_back(s.name);
    return out;
}

SuiteResult run_suite(const std::string& name, uint64_t seed) {
    for (const auto& s : kSuites) {
        if (name == s.name) return s.fn(seed);
    }
    throw DomainError("unknown verification suite: " + name);
}

std::vector<SuiteResult> run_all_suites(uint64_t seed) {
    std::vector<SuiteResult> out;
    for (const auto& s : kSuites) out.push_back(s.fn(seed));
    return out;
}

std::string format_suite_line(const SuiteResult& r) {
    std::ostringstream os;
    os << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.criterion
       << "/12 " << r.suite;
    if (!r.pass) {
        for (const auto& c : r.checks) {
            if (!c.pass) {
                os << "\n    failed: " << c.name;
                if (!c.detail.empty()) os << " (" << c.detail << ")";
            }
        }
    }
    return os.str();
}

}  // namespace pavlab
