#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "pavlab/config.hpp"
#include "pavlab/errors.hpp"
#include "pavlab/io.hpp"
#include "pavlab/psi.hpp"
#include "pavlab/rational.hpp"

using namespace pavlab;

TEST_CASE("float17 prints 17 significant digits") {
    CHECK(float17(0.1) == "0.10000000000000001");
    CHECK(float17(1.0) == "1");
    CHECK(float17(0.5) == "0.5");
    CHECK(float17(1.0 / 3.0) == "0.33333333333333331");
    CHECK(float17(0.0) == "0");
    CHECK(float17(-2.25) == "-2.25");
}

TEST_CASE("rat_str always prints the denominator") {
    CHECK(rat_str(Rat(5, 2)) == "5/2");
    CHECK(rat_str(Rat(-1, 3)) == "-1/3");
    CHECK(rat_str(Rat(7)) == "7/1");
    CHECK(rat_str(Rat(6, 4)) == "3/2");
    CHECK(rat_str(Rat(0)) == "0/1");
    CHECK(int_str(Int(-42)) == "-42");
}

TEST_CASE("parse_rat accepts fractions, integers, and decimals") {
    CHECK(parse_rat("5/2") == Rat(5, 2));
    CHECK(parse_rat("-1/3") == Rat(-1, 3));
    CHECK(parse_rat("2/4") == Rat(1, 2));
    CHECK(parse_rat("7") == Rat(7));
    CHECK(parse_rat("-7") == Rat(-7));
    CHECK(parse_rat("0.125") == Rat(1, 8));
    CHECK(parse_rat("-0.5") == Rat(-1, 2));
    CHECK(parse_rat("2.75") == Rat(11, 4));
    CHECK_THROWS_AS(parse_rat(""), ConfigError);
    CHECK_THROWS_AS(parse_rat("abc"), ConfigError);
    CHECK_THROWS_AS(parse_rat("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_rat("1.2.3"), ConfigError);
    CHECK_THROWS_AS(parse_rat("1/2/3"), ConfigError);
    CHECK_THROWS_AS(parse_rat("1e5"), ConfigError);
}

TEST_CASE("rat_from_double is exact on binary fractions") {
    CHECK(rat_from_double(0.5) == Rat(1, 2));
    CHECK(rat_from_double(-0.75) == Rat(-3, 4));
    CHECK(rat_from_double(3.0) == Rat(3));
    // 0.1 is not exactly representable; the binary value comes back
    CHECK(rat_from_double(0.1) ==
          Rat(Int("3602879701896397"), Int("36028797018963968")));
    CHECK_THROWS_AS(rat_from_double(1.0 / 0.0), DomainError);
}

TEST_CASE("to_u64_checked") {
    CHECK(to_u64_checked(Int(5), "x") == 5);
    CHECK(to_u64_checked(Int(0), "x") == 0);
    CHECK_THROWS_AS(to_u64_checked(Int(-1), "x"), DomainError);
    Int huge(1);
    huge <<= 70;
    CHECK_THROWS_AS(to_u64_checked(huge, "x"), DomainError);
}

TEST_CASE("fnv1a64 reference vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("provenance_line format") {
    Provenance p;
    p.config_hash = 0x0123456789abcdefull;
    p.seed = 42;
    CHECK(provenance_line(p) ==
          "# config_hash=0123456789abcdef seed=42 version=0.1.0");
    p.version = "9.9";
    CHECK(provenance_line(p) ==
          "# config_hash=0123456789abcdef seed=42 version=9.9");
    Provenance zero;
    CHECK(provenance_line(zero) ==
          "# config_hash=0000000000000000 seed=0 version=0.1.0");
}

namespace {

const char* kFullConfig = R"({
    "sequences": [
        {"rule": "prime_power", "p": 2},
        {"rule": "periodic", "ratios": [2, 3]},
        {"rule": "explicit", "ratios": [2, 3, 5, 7]}
    ],
    "psi": {"family": "constant", "value": "1/6"},
    "weight": {"kind": "harrap_count", "sequence": 0},
    "alpha": {"kind": "rational", "value": "1/3"},
    "N0": 3,
    "N1": "100",
    "eps": "0.25",
    "label": "demo"
})";

}  // namespace

TEST_CASE("full config round trip") {
    auto cfg = ExperimentConfig::from_string(kFullConfig);

    auto seqs = cfg.sequences();
    REQUIRE(seqs.size() == 3);
    CHECK(seqs[0].describe() == "prime_power(2)");
    CHECK(seqs[1].describe() == "periodic(2;3)");
    CHECK(seqs[2].describe() == "explicit(2;3;5;7)");
    CHECK(cfg.family().describe() ==
          "[prime_power(2) periodic(2;3) explicit(2;3;5;7)]");

    PsiSpec psi = cfg.psi();
    CHECK(psi.describe() == "constant(1/6)");
    CHECK(psi.start_index() == 3);
    CHECK(*psi_eval(psi, 5).exact == Rat(1, 6));

    WeightKind w = cfg.weight();
    CHECK(w.eval_exact(8) == Rat(3));

    RealTarget a = cfg.alpha();
    CHECK(a.kind() == RealTarget::Kind::Rational);
    CHECK(a.rational_value() == Rat(1, 3));

    CHECK(cfg.has("N0"));
    CHECK_FALSE(cfg.has("nope"));
    CHECK(cfg.get_u64("N0", 0) == 3);
    CHECK(cfg.get_u64("nope", 7) == 7);
    CHECK(cfg.require_u64("N1") == 100);
    CHECK(cfg.get_rat("eps", Rat(0)) == Rat(1, 4));
    CHECK(cfg.get_str("label", "") == "demo");
    CHECK(cfg.get_str("nope", "dflt") == "dflt");
}

TEST_CASE("psi family variants and defaults") {
    auto pl = ExperimentConfig::from_string(R"({"psi":{"family":"power_log"}})")
                  .psi();
    CHECK(pl.describe() == "power_log(1/1;1/1;0/1)");
    CHECK(pl.start_index() == 3);
    CHECK(psi_eval(pl, 4).value ==
          doctest::Approx(1.0 / (4.0 * std::log(4.0))));
    CHECK_FALSE(psi_eval(pl, 4).exact.has_value());

    auto tb = ExperimentConfig::from_string(
                  R"({"psi":{"family":"table","start":4,"values":["1/8","1/9"]}})")
                  .psi();
    CHECK(tb.start_index() == 4);
    CHECK(*psi_eval(tb, 5).exact == Rat(1, 9));

    auto mh = ExperimentConfig::from_string(
                  R"({"sequences":[{"rule":"prime_power","p":2}],
                      "psi":{"family":"mixed_har","eps":"1/2","sequence":0}})")
                  .psi();
    CHECK(mh.eps() == Rat(1, 2));
    CHECK(psi_eval(mh, 8).value > 0.0);

    auto st = ExperimentConfig::from_string(
                  R"({"psi":{"family":"constant","value":"1/6","start":"5"}})")
                  .psi();
    CHECK(st.start_index() == 5);
}

TEST_CASE("alpha variants") {
    auto q = ExperimentConfig::from_string(
                 R"({"alpha":{"kind":"quadratic","a":"1","b":"1","d":5,"e":"2"}})")
                 .alpha();
    CHECK(q.kind() == RealTarget::Kind::Quadratic);
    CHECK(q.quad_d() == 5);
    CHECK(q.value() == doctest::Approx(1.6180339887498949));

    auto d = ExperimentConfig::from_string(
                 R"({"alpha":{"kind":"dyadic","mantissa":"355","exponent":-8,
                     "precision":8}})")
                 .alpha();
    CHECK(d.kind() == RealTarget::Kind::Dyadic);
    CHECK(d.dyadic_center() == Rat(355, 256));
    CHECK(d.dyadic_error() == Rat(1, 256));
}

TEST_CASE("weight variants from config") {
    auto lg = ExperimentConfig::from_string(
                  R"({"weight":{"kind":"log_power","k":0}})")
                  .weight();
    CHECK(lg.eval_exact(17) == Rat(1));

    auto mc = ExperimentConfig::from_string(
                  R"({"sequences":[{"rule":"prime_power","p":2},
                                   {"rule":"prime_power","p":3}],
                      "weight":{"kind":"multi_count"}})")
                  .weight();
    CHECK(mc.eval_exact(6) == Rat(4));
}

TEST_CASE("config hashing is canonical") {
    auto a = ExperimentConfig::from_string(R"({"a": 1, "b": 2})");
    auto b = ExperimentConfig::from_string(R"({ "b" : 2, "a" : 1 })");
    CHECK(a.canonical() == "{\"a\":1,\"b\":2}");
    CHECK(a.canonical() == b.canonical());
    CHECK(a.config_hash() == b.config_hash());
    CHECK(a.config_hash() == fnv1a64(a.canonical()));

    auto c = ExperimentConfig::from_string(R"({"a": 1, "b": 3})");
    CHECK(a.config_hash() != c.config_hash());

    CHECK(ExperimentConfig::empty().config_hash() == fnv1a64("{}"));
}

TEST_CASE("config parse failures") {
    CHECK_THROWS_AS(ExperimentConfig::from_string("not json"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_string("[1,2]"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_string("42"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_file("/nonexistent/x.json"),
                    ConfigError);
}

TEST_CASE("config field failures") {
    auto cfg = ExperimentConfig::from_string(
        R"({"neg": -3, "frac": "5/2", "text": "hi", "seq_bad": 5})");
    CHECK_THROWS_AS(cfg.require_u64("missing"), ConfigError);
    CHECK_THROWS_AS(cfg.get_u64("neg", 0), ConfigError);
    CHECK_THROWS_AS(cfg.get_u64("frac", 0), ConfigError);
    CHECK_THROWS_AS(cfg.get_u64("text", 0), ConfigError);
    CHECK(cfg.get_i64("neg", 0) == -3);
    CHECK_THROWS_AS(cfg.get_i64("frac", 0), ConfigError);
    CHECK_THROWS_AS(cfg.get_str("neg", ""), ConfigError);
    CHECK(cfg.get_rat("frac", Rat(0)) == Rat(5, 2));

    CHECK_THROWS_AS(ExperimentConfig::from_string(
                        R"({"sequences": 5})")
                        .sequences(),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_string(
                        R"({"sequences":[{"rule":"nope"}]})")
                        .sequences(),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_string(
                        R"({"sequences":[{"rule":"prime_power"}]})")
                        .sequences(),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_string(
                        R"({"sequences":[{"rule":"prime_power","p":6}]})")
                        .sequences(),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_string(
                        R"({"sequences":[{"rule":"periodic"}]})")
                        .sequences(),
                    ConfigError);

    auto no_psi = ExperimentConfig::empty();
    CHECK_THROWS_AS(no_psi.psi(), ConfigError);
    CHECK_THROWS_AS(no_psi.weight(), ConfigError);
    CHECK_THROWS_AS(no_psi.alpha(), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_string(
                        R"({"psi":{"family":"zeta"}})")
                        .psi(),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_string(
                        R"({"psi":{"family":"mixed_har"}})")
                        .psi(),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_string(
                        R"({"psi":{"family":"table","values":[]}})")
                        .psi(),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_string(
                        R"({"weight":{"kind":"nope"}})")
                        .weight(),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_string(
                        R"({"weight":{"kind":"harrap_count"}})")
                        .weight(),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_string(
                        R"({"alpha":{"kind":"rational"}})")
                        .alpha(),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_string(
                        R"({"alpha":{"kind":"quadratic","a":"1","b":"1",
                            "d":12,"e":"2"}})")
                        .alpha(),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_string(
                        R"({"alpha":{"kind":"spooky"}})")
                        .alpha(),
                    ConfigError);
}

TEST_CASE("from_file reads what from_string reads") {
    const char* path = "config_io_roundtrip_tmp.json";
    {
        std::ofstream out(path);
        out << kFullConfig;
    }
    auto cfg = ExperimentConfig::from_file(path);
    CHECK(cfg.config_hash() ==
          ExperimentConfig::from_string(kFullConfig).config_hash());
    std::remove(path);
}
