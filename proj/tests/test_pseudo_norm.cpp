#include <doctest.h>

#include <map>
#include <numeric>

#include "pavlab/arith.hpp"
#include "pavlab/errors.hpp"
#include "pavlab/pseudo_norm.hpp"

using namespace pavlab;

namespace {

PseudoValueSequence seq2() { return PseudoValueSequence::prime_power(2); }
PseudoValueSequence seq3() { return PseudoValueSequence::prime_power(3); }
PseudoValueSequence seq10() { return PseudoValueSequence::periodic({10}); }
PseudoValueSequence primorial() {
    return PseudoValueSequence::explicit_ratios({2, 3, 5, 7});
}

}  // namespace

TEST_CASE("sequence construction rules") {
    CHECK_THROWS_AS(PseudoValueSequence::prime_power(10), DomainError);
    CHECK_THROWS_AS(PseudoValueSequence::prime_power(1), DomainError);
    CHECK_THROWS_AS(PseudoValueSequence::periodic({}), DomainError);
    CHECK_THROWS_AS(PseudoValueSequence::periodic({2, 1}), DomainError);
    CHECK_THROWS_AS(PseudoValueSequence::explicit_ratios({0}), DomainError);
    CHECK(seq2().rule() == PseudoValueSequence::Rule::PrimePower);
    CHECK(seq10().rule() == PseudoValueSequence::Rule::Periodic);
    CHECK(primorial().rule() == PseudoValueSequence::Rule::Explicit);
}

TEST_CASE("elements and ratios follow the divisor chain") {
    auto d = primorial();
    CHECK(d.element(0) == 1);
    CHECK(d.element(1) == 2);
    CHECK(d.element(2) == 6);
    CHECK(d.element(3) == 30);
    CHECK(d.element(4) == 210);
    CHECK(d.ratio(3) == 5);
    CHECK(d.element_limit() == size_t(5));
    CHECK_THROWS_AS(d.element(5), ExhaustedSequenceError);
    CHECK(seq2().element_limit() == std::nullopt);
    CHECK(seq2().element(20) == Int(1) << 20);
    for (size_t k = 1; k <= 12; ++k) {
        Int prev = seq10().element(k - 1);
        Int cur = seq10().element(k);
        REQUIRE(cur % prev == 0);
        REQUIRE(cur / prev >= 2);
    }
}

TEST_CASE("norm picks the largest dividing element") {
    auto n12 = seq2().norm(uint64_t(12));
    CHECK(n12.index == 2);
    CHECK(n12.element == 4);
    CHECK(n12.value() == Rat(1, 4));

    for (uint64_t odd : {1ULL, 3ULL, 99ULL, 1001ULL}) {
        auto nm = seq2().norm(odd);
        CHECK(nm.index == 0);
        CHECK(nm.value() == Rat(1));
    }

    auto n100 = seq10().norm(uint64_t(100));
    CHECK(n100.index == 2);
    CHECK(n100.value() == Rat(1, 100));
}

TEST_CASE("norm against a brute-force divisor scan") {
    std::vector<PseudoValueSequence> seqs{seq2(), seq3(), seq10(),
                                          primorial()};
    for (const auto& d : seqs) {
        bool finite = d.element_limit().has_value();
        Int last = finite ? d.element(*d.element_limit() - 1) : Int(0);
        for (uint64_t n = 1; n <= 10000; ++n) {
            if (finite && Int(static_cast<unsigned long>(n)) % last == 0) {
                // the final explicit element divides n, so maximality of the
                // index cannot be certified
                CHECK_THROWS_AS(d.norm(n), ExhaustedSequenceError);
                continue;
            }
            size_t want = 0;
            size_t lim = finite ? *d.element_limit() : size_t(-1);
            for (size_t k = 0; k < lim; ++k) {
                Int e = d.element(k);
                if (e > static_cast<unsigned long>(n)) break;
                if (Int(static_cast<unsigned long>(n)) % e == 0) want = k;
            }
            auto got = d.norm(n);
            REQUIRE(got.index == want);
            REQUIRE(got.element == d.element(want));
        }
    }
}

TEST_CASE("max_index") {
    CHECK(seq2().max_index(uint64_t(1)) == 0);
    CHECK(seq3().max_index(uint64_t(1)) == 0);
    CHECK(seq2().max_index(uint64_t(8)) == 3);
    CHECK(seq3().max_index(uint64_t(100)) == 4);
    CHECK(primorial().max_index(uint64_t(100)) == 3);
    // bound past the last explicit element: the next element is unknown
    CHECK_THROWS_AS(primorial().max_index(uint64_t(100000)),
                    ExhaustedSequenceError);
}

TEST_CASE("totient_ratio_sum exact values and closed form") {
    CHECK(seq2().totient_ratio_sum(uint64_t(1)) == Rat(1));
    CHECK(seq2().totient_ratio_sum(uint64_t(8)) == Rat(5, 2));
    for (uint64_t p : {2ULL, 3ULL, 5ULL}) {
        auto d = PseudoValueSequence::prime_power(p);
        for (uint64_t n = 1; n <= 10000; ++n) {
            Rat want = Rat(1) + Rat(p - 1, p) *
                                    Rat(static_cast<unsigned long>(
                                        d.max_index(n)));
            want.canonicalize();
            REQUIRE(d.totient_ratio_sum(n) == want);
        }
    }
}

TEST_CASE("element phi via ratio factorizations") {
    auto d = primorial();
    CHECK(d.element_phi(0) == 1);
    CHECK(d.element_phi(4) == 48);  // phi(210)
    Rat r = d.element_phi_ratio(4);
    CHECK(r == Rat(8, 35));
    CHECK(seq2().element_phi(10) == 512);
    auto primes = d.element_primes(3);
    CHECK(primes == std::vector<uint64_t>{2, 3, 5});
}

TEST_CASE("index partition of 1..n") {
    // each j <= n lands in exactly one index class, so class sizes sum to n
    for (const auto& d :
         {seq2(), PseudoValueSequence::periodic({2, 3, 5})}) {
        for (uint64_t n : {1ULL, 10ULL, 100ULL, 1000ULL}) {
            std::map<size_t, uint64_t> counts;
            for (uint64_t j = 1; j <= n; ++j) {
                counts[d.norm(j).index] += 1;
            }
            uint64_t total = 0;
            for (auto& [k, c] : counts) {
                REQUIRE(d.element(k) <= static_cast<unsigned long>(n));
                total += c;
            }
            REQUIRE(total == n);
        }
    }
}

TEST_CASE("family products") {
    SequenceFamily F({seq2(), seq3()});
    CHECK(product_pseudo_norm(F, uint64_t(12)) == Rat(1, 12));
    CHECK(inverse_product_norm(F, uint64_t(12)) == 12);
    CHECK(product_pseudo_norm(F, uint64_t(35)) == Rat(1));

    SequenceFamily twice({seq2(), seq2()});
    CHECK(product_pseudo_norm(twice, uint64_t(6)) == Rat(1, 4));

    SequenceFamily empty;
    CHECK(empty.size() == 0);
    CHECK(product_pseudo_norm(empty, uint64_t(17)) == Rat(1));
}

TEST_CASE("mutual coprimality flag") {
    SequenceFamily good({seq2(), seq3()});
    CHECK(good.mutually_coprime() == std::nullopt);
    CHECK(good.verify_mutually_coprime());
    CHECK(good.mutually_coprime() == std::optional<bool>(true));
    SequenceFamily rep({seq2(), seq2()});
    CHECK_FALSE(rep.verify_mutually_coprime());
    SequenceFamily shared({seq2(), seq10()});
    CHECK_FALSE(shared.verify_mutually_coprime());
}

TEST_CASE("lcm index tuples") {
    SequenceFamily one({seq2()});
    auto t4 = lcm_index_tuples(one, 4);
    CHECK(t4 == std::vector<std::vector<uint32_t>>{{0}, {1}, {2}});

    SequenceFamily F({seq2(), seq3()});
    auto t1 = lcm_index_tuples(F, 1);
    CHECK(t1 == std::vector<std::vector<uint32_t>>{{0, 0}});
    auto t6 = lcm_index_tuples(F, 6);
    CHECK(t6 == std::vector<std::vector<uint32_t>>{
                    {0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}});
    for (const auto& t : t6) {
        REQUIRE(tuple_lcm(F, t) <= 6);
    }
}

TEST_CASE("tuple multiplier") {
    SequenceFamily F({seq2(), seq3()});
    std::vector<uint32_t> zeros{0, 0};
    CHECK(tuple_multiplier(F, 5, zeros) == 5);
    std::vector<uint32_t> oneone{1, 1};
    CHECK(tuple_multiplier(F, 6, oneone) == 1);
    SequenceFamily one({seq2()});
    std::vector<uint32_t> two{2};
    CHECK(tuple_multiplier(one, 7, two) == 1);
    CHECK_THROWS_AS(tuple_multiplier(one, 3, two), DomainError);
}

TEST_CASE("multi_count and s_set agree for coprime families") {
    SequenceFamily F({seq2(), seq3()});
    CHECK(nontrivial_product_tuples(F, 1) == 0);
    CHECK(nontrivial_product_tuples(F, 6) == 4);
    F.verify_mutually_coprime();
    SequenceFamily G({seq2(), PseudoValueSequence::prime_power(5)});
    G.verify_mutually_coprime();
    for (const auto& fam : {F, G}) {
        for (uint64_t n = 1; n <= 10000; n = (n < 64 ? n + 1 : n * 2)) {
            REQUIRE(nontrivial_product_tuples(fam, n) + 1 ==
                    lcm_index_tuples(fam, n).size());
        }
    }
}

TEST_CASE("tuple products are sorted and complete") {
    SequenceFamily F({seq2(), seq3()});
    auto prods = tuple_products_upto(F, 20);
    // 1,2,3,4,6,8,9,12,16,18
    std::vector<Int> want{1, 2, 3, 4, 6, 8, 9, 12, 16, 18};
    CHECK(prods == want);
    CHECK(nontrivial_product_tuples(F, 20) == prods.size() - 1);
}

TEST_CASE("tuple phi ratio") {
    SequenceFamily F({seq2(), seq3()});
    std::vector<uint32_t> oneone{1, 1};
    CHECK(tuple_phi_ratio(F, oneone) == Rat(1, 3));
    std::vector<uint32_t> zeros{0, 0};
    CHECK(tuple_phi_ratio(F, zeros) == Rat(1));
}

TEST_CASE("norm-sum identity over exact index tuples") {
    // sum over j <= n of the inverse product norm equals the sum over index
    // tuples of (tuple product) * #{j <= n whose index tuple is exactly t}
    SequenceFamily F({seq2(), seq3()});
    std::map<std::pair<size_t, size_t>, uint64_t> counts;
    Int lhs(0);
    for (uint64_t n = 1; n <= 500; ++n) {
        lhs += inverse_product_norm(F, n);
        auto i2 = F.member(0).norm(n).index;
        auto i3 = F.member(1).norm(n).index;
        counts[{i2, i3}] += 1;
        Int rhs(0);
        for (const auto& [t, c] : counts) {
            std::vector<uint32_t> tuple{static_cast<uint32_t>(t.first),
                                        static_cast<uint32_t>(t.second)};
            rhs += tuple_product(F, tuple) * static_cast<unsigned long>(c);
        }
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("describe stays stable") {
    CHECK(seq2().describe() == "prime_power(2)");
    SequenceFamily F({seq2(), seq3()});
    CHECK(F.describe() == "[prime_power(2) prime_power(3)]");
}
