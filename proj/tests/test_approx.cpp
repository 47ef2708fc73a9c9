#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "pavlab/approx.hpp"
#include "pavlab/errors.hpp"

using namespace pavlab;

namespace {

PseudoValueSequence seq2() { return PseudoValueSequence::prime_power(2); }

RealTarget golden() { return RealTarget::quadratic(Int(1), Int(1), 5, Int(2)); }

}  // namespace

TEST_CASE("sign_quad") {
    CHECK(sign_quad(Int(-11), Int(5), 5) == 1);   // 5*sqrt(5) = 11.18..
    CHECK(sign_quad(Int(11), Int(-5), 5) == -1);
    CHECK(sign_quad(Int(-12), Int(5), 5) == -1);
    CHECK(sign_quad(Int(0), Int(1), 2) == 1);
    CHECK(sign_quad(Int(0), Int(-1), 2) == -1);
    CHECK(sign_quad(Int(3), Int(0), 2) == 1);
    CHECK(sign_quad(Int(0), Int(0), 2) == 0);
    // x^2 == y^2 d exposes a square d
    CHECK_THROWS_AS(sign_quad(Int(-2), Int(1), 4), DomainError);
}

TEST_CASE("floor_quad") {
    // (1 + sqrt(5)) / 2 = 1.618..
    CHECK(floor_quad(Int(1), Int(1), 5, Int(2)) == 1);
    // (5 + 5 sqrt(5)) / 2 = 8.09..
    CHECK(floor_quad(Int(5), Int(5), 5, Int(2)) == 8);
    // -(1 + sqrt(5)) / 2 = -1.618.. floors to -2
    CHECK(floor_quad(Int(-1), Int(-1), 5, Int(2)) == -2);
    // pure rational via b = 0
    CHECK(floor_quad(Int(7), Int(0), 5, Int(2)) == 3);
    CHECK(floor_quad(Int(-7), Int(0), 5, Int(2)) == -4);
    // sqrt(2) and -sqrt(2)
    CHECK(floor_quad(Int(0), Int(1), 2, Int(1)) == 1);
    CHECK(floor_quad(Int(0), Int(-1), 2, Int(1)) == -2);
    // stress: floor(k * sqrt(2)) against floating point for small k
    for (long k = 1; k <= 1000; ++k) {
        Int want(static_cast<long>(
            std::floor(static_cast<double>(k) * std::sqrt(2.0))));
        REQUIRE(floor_quad(Int(0), Int(k), 2, Int(1)) == want);
    }
}

TEST_CASE("Dist forms and comparisons") {
    Dist z = Dist::exact(Rat(0));
    CHECK(z.exactly_zero());
    CHECK(z.form() == Dist::Form::Exact);

    Dist a = Dist::exact(Rat(1, 3));
    CHECK(*a.leq(Rat(1, 3)) == true);
    CHECK(*a.leq(Rat(1, 4)) == false);
    CHECK(*a.exact_value() == Rat(1, 3));

    // (5 sqrt(5) - 11)/2 = 0.0901..
    Dist s = Dist::surd(Int(-11), Int(5), 5, Int(2));
    CHECK_FALSE(s.exactly_zero());
    CHECK(s.value() == doctest::Approx(0.09016994).epsilon(1e-6));
    CHECK(*s.leq(Rat(902, 10000)) == true);
    CHECK(*s.leq(Rat(901, 10000)) == false);
    CHECK(*s.cmp(a) == -1);
    CHECK(*a.cmp(s) == 1);
    Dist s2 = Dist::surd(Int(11), Int(-5), 5, Int(2));  // same magnitude
    CHECK(*s.cmp(s2) == 0);

    Dist box = Dist::interval(Rat(1, 4), Rat(1, 2));
    CHECK(box.leq(Rat(1, 3)) == std::nullopt);
    CHECK(*box.leq(Rat(1, 2)) == true);
    CHECK(*box.leq(Rat(1, 8)) == false);
    Dist lowbox = Dist::interval(Rat(0), Rat(1, 8));
    CHECK(*lowbox.cmp(box) == -1);
    CHECK(box.cmp(lowbox) == std::optional<int>(1));
    Dist overlap = Dist::interval(Rat(1, 3), Rat(2, 3));
    CHECK(box.cmp(overlap) == std::nullopt);

    CHECK_THROWS_AS(Dist::exact(Rat(-1)), DomainError);
    CHECK_THROWS_AS(Dist::interval(Rat(1, 2), Rat(1, 4)), DomainError);
    CHECK_THROWS_AS(Dist::surd(Int(-2), Int(1), 4, Int(1)), DomainError);
    Dist t2 = Dist::surd(Int(0), Int(1), 2, Int(1));
    CHECK_THROWS_AS(s.cmp(t2), DomainError);
    CHECK_THROWS_AS(s.cmp(box), DomainError);
}

TEST_CASE("RealTargets validate") {
    RealTarget g = golden();
    CHECK(g.kind() == RealTarget::Kind::Quadratic);
    CHECK(g.value() == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0));
    CHECK_THROWS_AS(RealTarget::quadratic(Int(1), Int(0), 5, Int(2)),
                    DomainError);
    CHECK_THROWS_AS(RealTarget::quadratic(Int(1), Int(1), 4, Int(2)),
                    DomainError);
    CHECK_THROWS_AS(RealTarget::quadratic(Int(1), Int(1), 12, Int(2)),
                    DomainError);
    CHECK_THROWS_AS(RealTarget::quadratic(Int(1), Int(1), 5, Int(0)),
                    DomainError);
    // negative denominator is normalized away
    RealTarget neg = RealTarget::quadratic(Int(1), Int(1), 5, Int(-2));
    CHECK(neg.quad_e() > 0);
    CHECK(neg.value() == doctest::Approx(-(1.0 + std::sqrt(5.0)) / 2.0));

    RealTarget r = RealTarget::rational(Rat(6, 4));
    CHECK(r.rational_value() == Rat(3, 2));
    CHECK_THROWS_AS(RealTarget::dyadic(Int(1), -1, 0), DomainError);
    RealTarget d = RealTarget::dyadic(Int(1), -1, 20);
    CHECK(d.dyadic_center() == Rat(1, 2));
    CHECK(d.dyadic_error() == Rat(Int(1), Int(1) << 20));
}

TEST_CASE("dist_to_integers on rationals") {
    auto r = dist_to_integers(RealTarget::rational(Rat(1, 3)), 2);
    CHECK(r.p == 1);
    CHECK(*r.dist.exact_value() == Rat(1, 3));

    auto tie = dist_to_integers(RealTarget::rational(Rat(1, 2)), 3);
    CHECK(tie.p == 1);  // tie between 1 and 2 resolves down
    CHECK(*tie.dist.exact_value() == Rat(1, 2));

    auto exact_hit = dist_to_integers(RealTarget::rational(Rat(2, 5)), 10);
    CHECK(exact_hit.p == 4);
    CHECK(exact_hit.dist.exactly_zero());

    auto negr = dist_to_integers(RealTarget::rational(Rat(-7, 3)), 2);
    CHECK(negr.p == -5);  // -14/3 = -4.66..
    CHECK(*negr.dist.exact_value() == Rat(1, 3));
}

TEST_CASE("dist_to_integers on the golden ratio") {
    auto g = dist_to_integers(golden(), 5);
    CHECK(g.p == 8);
    CHECK(g.dist.form() == Dist::Form::Surd);
    double want = std::abs(5.0 * (1.0 + std::sqrt(5.0)) / 2.0 - 8.0);
    CHECK(g.dist.value() == doctest::Approx(want).epsilon(1e-12));
    CHECK(*g.dist.cmp(Dist::surd(Int(-11), Int(5), 5, Int(2))) == 0);
}

TEST_CASE("dist_to_integers on dyadic targets") {
    RealTarget d = RealTarget::dyadic(Int(3), -2, 30);  // 3/4 +- 2^-30
    auto r = dist_to_integers(d, 3);                     // 9/4 +- 3*2^-30
    CHECK(r.p == 2);
    CHECK(r.dist.form() == Dist::Form::Interval);
    CHECK(r.dist.leq(Rat(1, 4)) == std::nullopt);
    CHECK(*r.dist.leq(Rat(1, 3)) == true);
    // 3 * (1/2 ± eps) sits at 3/2: nearest integer is ambiguous
    CHECK_THROWS_AS(dist_to_integers(RealTarget::dyadic(Int(1), -1, 30), 3),
                    PrecisionError);
}

TEST_CASE("coprime_dist examples") {
    auto a = coprime_dist(RealTarget::rational(Rat(1, 4)), 4);
    CHECK(a.p == 1);
    CHECK(a.dist.exactly_zero());

    auto b = coprime_dist(RealTarget::rational(Rat(1, 2)), 4);
    CHECK(b.p == 1);
    CHECK(*b.dist.exact_value() == Rat(1));

    auto c = coprime_dist(RealTarget::rational(Rat(1, 3)), 6);
    CHECK(c.p == 1);
    CHECK(*c.dist.exact_value() == Rat(1));

    // n = 1: every p is coprime, so this is the plain distance
    auto one = coprime_dist(RealTarget::rational(Rat(7, 10)), 1);
    auto plain = dist_to_integers(RealTarget::rational(Rat(7, 10)), 1);
    CHECK(one.p == plain.p);
    CHECK(*one.dist.exact_value() == *plain.dist.exact_value());
}

TEST_CASE("coprime_dist dominates the plain distance") {
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 8; ++i) {
        uint64_t q = 1 + rng() % 90;
        uint64_t pn = rng() % (3 * q);
        Rat alpha(pn, q);
        alpha.canonicalize();
        RealTarget t = RealTarget::rational(alpha);
        for (uint64_t n = 1; n <= 300; ++n) {
            auto cp = coprime_dist(t, n);
            auto pl = dist_to_integers(t, n);
            Int g;
            mpz_gcd_ui(g.get_mpz_t(), cp.p.get_mpz_t(), n);
            REQUIRE(g == 1);
            REQUIRE(*cp.dist.exact_value() >= *pl.dist.exact_value());
        }
    }
}

TEST_CASE("coprime_dist against a windowed brute force") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 6; ++i) {
        uint64_t q = 1 + rng() % 120;
        uint64_t pn = rng() % q;
        Rat alpha(pn, q);
        alpha.canonicalize();
        RealTarget t = RealTarget::rational(alpha);
        for (uint64_t n = 1; n <= 120; ++n) {
            auto got = coprime_dist(t, n);
            Rat target = alpha * Rat(static_cast<unsigned long>(n));
            Int lo;
            mpz_fdiv_q(lo.get_mpz_t(), target.get_num().get_mpz_t(),
                       target.get_den().get_mpz_t());
            std::optional<Rat> best;
            Int bestp;
            for (Int p = lo - 50; p <= lo + 51; p += 1) {
                Int g;
                mpz_gcd_ui(g.get_mpz_t(), p.get_mpz_t(), n);
                if (g != 1) continue;
                Rat dd = target - Rat(p);
                if (dd < 0) dd = -dd;
                if (!best || dd < *best || (dd == *best && p < bestp)) {
                    best = dd;
                    bestp = p;
                }
            }
            REQUIRE(got.p == bestp);
            REQUIRE(*got.dist.exact_value() == *best);
        }
    }
}

TEST_CASE("rational distance vanishes exactly at multiples of q") {
    RealTarget t = RealTarget::rational(Rat(3, 7));
    for (uint64_t n = 1; n <= 200; ++n) {
        auto r = dist_to_integers(t, n);
        REQUIRE(r.dist.exactly_zero() == (n % 7 == 0));
    }
}

TEST_CASE("enumerate_solutions basic behavior") {
    auto empty = enumerate_solutions(golden(), PsiSpec::constant(Rat(0)),
                                     SequenceFamily(), 50);
    CHECK(empty.empty());

    SequenceFamily F2({seq2()});
    auto recs = enumerate_solutions(RealTarget::rational(Rat(1, 3)),
                                    PsiSpec::constant(Rat(1, 6)), F2, 3);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].n == 3);
    CHECK(recs[0].p == 1);
    CHECK(recs[0].product_norm == Rat(1));
    CHECK(recs[0].dist.exactly_zero());
    CHECK(recs[0].value == 0.0);
    CHECK(recs[0].psi_n == doctest::Approx(1.0 / 6.0));
    CHECK_FALSE(recs[0].indeterminate);
}

TEST_CASE("solutions for psi and 2 psi are nested") {
    SequenceFamily F2({seq2()});
    auto small = enumerate_solutions(golden(), PsiSpec::constant(Rat(1, 12)),
                                     F2, 150);
    auto big = enumerate_solutions(golden(), PsiSpec::constant(Rat(1, 6)),
                                   F2, 150);
    REQUIRE(small.size() <= big.size());
    size_t j = 0;
    for (const auto& r : small) {
        while (j < big.size() &&
               (big[j].n != r.n || big[j].p != r.p)) {
            ++j;
        }
        REQUIRE(j < big.size());
    }
}

TEST_CASE("gcd invariant and ascending order of records") {
    SequenceFamily F2({seq2()});
    auto recs = enumerate_solutions(RealTarget::rational(Rat(2, 7)),
                                    PsiSpec::constant(Rat(1, 4)), F2, 400);
    for (size_t i = 0; i < recs.size(); ++i) {
        Int g;
        mpz_gcd_ui(g.get_mpz_t(), recs[i].p.get_mpz_t(), recs[i].n);
        REQUIRE(g == 1);
        if (i) {
            REQUIRE((recs[i - 1].n < recs[i].n ||
                     (recs[i - 1].n == recs[i].n &&
                      recs[i - 1].p < recs[i].p)));
        }
        REQUIRE(recs[i].slack ==
                doctest::Approx(recs[i].psi_n - recs[i].value));
    }
    CHECK(!recs.empty());
}

TEST_CASE("dyadic targets flag undecidable rows") {
    RealTarget d = RealTarget::dyadic(Int(1), -1, 20);  // 1/2 +- 2^-20
    auto recs = enumerate_solutions(d, PsiSpec::constant(Rat(1, 2)),
                                    SequenceFamily(), 4);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].n == 3);
    CHECK(recs[0].p == 1);
    CHECK(recs[0].indeterminate);
    CHECK(recs[1].n == 3);
    CHECK(recs[1].p == 2);
    CHECK(recs[1].indeterminate);
}

TEST_CASE("running_liminf hits zero for rational targets") {
    auto pts = running_liminf(RealTarget::rational(Rat(1, 3)), seq2(),
                              Rat(0), 64);
    REQUIRE(!pts.empty());
    for (const auto& p : pts) {
        REQUIRE(p.exactly_zero);
        REQUIRE(p.min_lo == 0.0);
    }
    CHECK(pts.back().n == 64);
}

TEST_CASE("running_liminf checkpoints are non-increasing") {
    auto pts = running_liminf(golden(), seq2(), Rat(0), 2000);
    REQUIRE(pts.size() >= 2);
    for (size_t i = 1; i < pts.size(); ++i) {
        REQUIRE(pts[i].min_hi <= pts[i - 1].min_hi + 1e-15);
        REQUIRE(pts[i].n > pts[i - 1].n);
    }
    for (const auto& p : pts) {
        REQUIRE_FALSE(p.exactly_zero);
        REQUIRE(p.min_lo > 0.0);
    }
    CHECK(pts.back().n == 2000);
    CHECK_THROWS_AS(running_liminf(golden(), seq2(), Rat(0), 2),
                    DomainError);
}
