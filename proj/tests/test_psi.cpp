#include <doctest.h>

#include <cmath>

#include "pavlab/errors.hpp"
#include "pavlab/psi.hpp"

using namespace pavlab;

namespace {

PseudoValueSequence seq2() { return PseudoValueSequence::prime_power(2); }

}  // namespace

TEST_CASE("constant family evaluates exactly") {
    PsiSpec c = PsiSpec::constant(Rat(1, 2));
    CHECK(c.family() == PsiFamily::Constant);
    CHECK(c.start_index() == 3);
    CHECK(c.exact_evaluable());
    PsiValue v = psi_eval(c, 10);
    REQUIRE(v.exact.has_value());
    CHECK(*v.exact == Rat(1, 2));
    CHECK(v.value == doctest::Approx(0.5));
    CHECK_THROWS_AS(psi_eval(c, 2), DomainError);
}

TEST_CASE("family constructors validate") {
    CHECK_THROWS_AS(PsiSpec::constant(Rat(-1)), DomainError);
    CHECK_THROWS_AS(PsiSpec::constant(Rat(1), 2), DomainError);
    CHECK_THROWS_AS(PsiSpec::power_log(Rat(0), Rat(1), Rat(0)), DomainError);
    CHECK_THROWS_AS(PsiSpec::mixed_har(Rat(-1, 2), seq2()), DomainError);
    CHECK_THROWS_AS(PsiSpec::table({}, 3), DomainError);
    CHECK_THROWS_AS(PsiSpec::table({Rat(-1)}, 3), DomainError);
}

TEST_CASE("table family window") {
    PsiSpec t = PsiSpec::table({Rat(1, 3), Rat(1, 4), Rat(0)}, 3);
    CHECK(t.end_index() == uint64_t(5));
    CHECK(*psi_eval(t, 3).exact == Rat(1, 3));
    CHECK(*psi_eval(t, 5).exact == Rat(0));
    CHECK_THROWS_AS(psi_eval(t, 6), DomainError);
    CHECK(PsiSpec::constant(Rat(1)).end_index() == std::nullopt);
}

TEST_CASE("mixed_har value at n=8") {
    PsiSpec m = PsiSpec::mixed_har(Rat(0), seq2());
    CHECK_FALSE(m.exact_evaluable());
    PsiValue v = psi_eval(m, 8);
    CHECK_FALSE(v.exact.has_value());
    double want = 1.0 / (8.0 * 2.5 * std::log(8.0));
    CHECK(v.value == doctest::Approx(want).epsilon(1e-12));
    CHECK(v.rel_err <= std::pow(2.0, -40));
}

TEST_CASE("power_log value and monotonicity") {
    PsiSpec p = PsiSpec::power_log(Rat(1), Rat(2), Rat(0));
    PsiValue v = psi_eval(p, 100);
    double want = 1.0 / (100.0 * std::pow(std::log(100.0), 2.0));
    CHECK(v.value == doctest::Approx(want).epsilon(1e-12));
    CHECK(first_increase(p, 16, 10000) == std::nullopt);
}

TEST_CASE("first_increase finds a planted bump") {
    PsiSpec t = PsiSpec::table({Rat(5), Rat(4), Rat(4), Rat(6), Rat(1)}, 3);
    CHECK(first_increase(t, 3, 8) == uint64_t(5));
    PsiSpec flat = PsiSpec::constant(Rat(2));
    CHECK(first_increase(flat, 3, 50) == std::nullopt);
}

TEST_CASE("mixed_har is pointwise monotone in eps") {
    PsiSpec a = PsiSpec::mixed_har(Rat(0), seq2());
    PsiSpec b = PsiSpec::mixed_har(Rat(1, 2), seq2());
    PsiSpec c = PsiSpec::mixed_har(Rat(2), seq2());
    for (uint64_t n : {3ULL, 10ULL, 100ULL, 4096ULL}) {
        double va = psi_eval(a, n).value;
        double vb = psi_eval(b, n).value;
        double vc = psi_eval(c, n).value;
        REQUIRE(va > vb);
        REQUIRE(vb > vc);
    }
}

TEST_CASE("psi0 divides by the product norm") {
    SequenceFamily F2({seq2()});
    PsiSpec half = PsiSpec::constant(Rat(1, 2));
    PsiValue odd = psi0_eval(half, F2, 9);
    REQUIRE(odd.exact.has_value());
    CHECK(*odd.exact == Rat(1, 2));

    SequenceFamily F23(
        {seq2(), PseudoValueSequence::prime_power(3)});
    PsiSpec tw = PsiSpec::constant(Rat(1, 12));
    PsiValue v12 = psi0_eval(tw, F23, 12);
    REQUIRE(v12.exact.has_value());
    CHECK(*v12.exact == Rat(1));

    SequenceFamily empty;
    PsiSpec t = PsiSpec::table({Rat(1, 8)}, 4);
    PsiValue v4 = psi0_eval(t, empty, 4);
    REQUIRE(v4.exact.has_value());
    CHECK(*v4.exact == Rat(1, 8));
}

TEST_CASE("psi0 equals psi when the norm is trivial") {
    SequenceFamily F2({seq2()});
    PsiSpec p = PsiSpec::power_log(Rat(1), Rat(1), Rat(0));
    for (uint64_t n : {3ULL, 5ULL, 7ULL, 9ULL, 15ULL}) {
        REQUIRE(psi0_eval(p, F2, n).value == psi_eval(p, n).value);
    }
    PsiValue v8 = psi0_eval(p, F2, 8);
    CHECK(v8.value == doctest::Approx(psi_eval(p, 8).value * 8.0));
}
