#include "pavlab/config.hpp"

#include <fstream>
#include <sstream>

#include "pavlab/errors.hpp"
#include "pavlab/io.hpp"

#include <json.hpp>

namespace pavlab {

using nlohmann::json;

struct ExperimentConfig::Impl {
    json doc;
};

ExperimentConfig::ExperimentConfig(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
    auto impl = std::make_shared<Impl>();
    try {
        impl->doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse: ") + e.what());
    }
    if (!impl->doc.is_object()) {
        throw ConfigError("config parse: top level must be an object");
    }
    return ExperimentConfig(std::move(impl));
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config parse: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

ExperimentConfig ExperimentConfig::empty() { return from_string("{}"); }

std::string ExperimentConfig::canonical() const { return impl_->doc.dump(); }

uint64_t ExperimentConfig::config_hash() const {
    return fnv1a64(canonical());
}

bool ExperimentConfig::has(const std::string& key) const {
    return impl_->doc.contains(key);
}

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& why) {
    throw ConfigError("config field '" + key + "': " + why);
}

uint64_t as_u64(const json& v, const std::string& key) {
    if (v.is_number_unsigned()) return v.get<uint64_t>();
    if (v.is_number_integer()) {
        int64_t s = v.get<int64_t>();
        if (s < 0) bad(key, "must be nonnegative");
        return static_cast<uint64_t>(s);
    }
    if (v.is_string()) {
        try {
            Rat r = parse_rat(v.get<std::string>());
            if (r.get_den() != 1) throw DomainError("not an integer");
            return to_u64_checked(r.get_num(), key.c_str());
        } catch (const Error& e) {
            bad(key, e.what());
        }
    }
    bad(key, "expected an unsigned integer");
}

Rat as_rat(const json& v, const std::string& key) {
    try {
        if (v.is_string()) return parse_rat(v.get<std::string>());
        if (v.is_number_unsigned()) return Rat(Int(v.get<uint64_t>()));
        if (v.is_number_integer()) {
            return Rat(Int(static_cast<long>(v.get<int64_t>())));
        }
    } catch (const Error& e) {
        bad(key, e.what());
    }
    bad(key, "expected a rational (string \"num/den\", integer, or decimal)");
}

Int as_int(const json& v, const std::string& key) {
    Rat r = as_rat(v, key);
    if (r.get_den() != 1) bad(key, "expected an integer");
    return r.get_num();
}

}  // namespace

uint64_t ExperimentConfig::get_u64(const std::string& key,
                                   uint64_t def) const {
    if (!has(key)) return def;
    return as_u64(impl_->doc.at(key), key);
}

uint64_t ExperimentConfig::require_u64(const std::string& key) const {
    if (!has(key)) bad(key, "required");
    return as_u64(impl_->doc.at(key), key);
}

int64_t ExperimentConfig::get_i64(const std::string& key, int64_t def) const {
    if (!has(key)) return def;
    const json& v = impl_->doc.at(key);
    if (v.is_number_integer()) return v.get<int64_t>();
    if (v.is_string()) {
        Rat r = as_rat(v, key);
        if (r.get_den() != 1) bad(key, "expected an integer");
        if (!r.get_num().fits_slong_p()) bad(key, "out of range");
        return r.get_num().get_si();
    }
    bad(key, "expected an integer");
}

Rat ExperimentConfig::get_rat(const std::string& key, const Rat& def) const {
    if (!has(key)) return def;
    return as_rat(impl_->doc.at(key), key);
}

Rat ExperimentConfig::require_rat(const std::string& key) const {
    if (!has(key)) bad(key, "required");
    return as_rat(impl_->doc.at(key), key);
}

std::string ExperimentConfig::get_str(const std::string& key,
                                      const std::string& def) const {
    if (!has(key)) return def;
    const json& v = impl_->doc.at(key);
    if (!v.is_string()) bad(key, "expected a string");
    return v.get<std::string>();
}

namespace {

PseudoValueSequence parse_sequence(const json& v, const std::string& key) {
    if (!v.is_object()) bad(key, "expected an object");
    std::string rule = v.value("rule", "");
    try {
        if (rule == "prime_power") {
            return PseudoValueSequence::prime_power(as_u64(v.at("p"), key));
        }
        if (rule == "periodic" || rule == "explicit") {
            if (!v.contains("ratios") || !v.at("ratios").is_array()) {
                bad(key, "missing ratios array");
            }
            std::vector<uint64_t> ratios;
            for (const auto& r : v.at("ratios")) {
                ratios.push_back(as_u64(r, key));
            }
            return rule == "periodic"
                       ? PseudoValueSequence::periodic(ratios)
                       : PseudoValueSequence::explicit_ratios(ratios);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const json::exception& e) {
        bad(key, e.what());
    } catch (const Error& e) {
        bad(key, e.what());
    }
    bad(key, "rule must be prime_power, periodic, or explicit");
}

}  // namespace

std::vector<PseudoValueSequence> ExperimentConfig::sequences() const {
    std::vector<PseudoValueSequence> out;
    if (!has("sequences")) return out;
    const json& v = impl_->doc.at("sequences");
    if (!v.is_array()) bad("sequences", "expected an array");
    for (size_t i = 0; i < v.size(); ++i) {
        out.push_back(
            parse_sequence(v[i], "sequences[" + std::to_string(i) + "]"));
    }
    return out;
}

SequenceFamily ExperimentConfig::family() const {
    return SequenceFamily(sequences());
}

namespace {

PseudoValueSequence indexed_sequence(
    const std::vector<PseudoValueSequence>& seqs, const json& v,
    const std::string& key) {
    uint64_t idx = v.contains("sequence") ? as_u64(v.at("sequence"), key) : 0;
    if (idx >= seqs.size()) {
        bad(key, "sequence index " + std::to_string(idx) +
                     " out of range (have " + std::to_string(seqs.size()) +
                     ")");
    }
    return seqs[idx];
}

}  // namespace

PsiSpec ExperimentConfig::psi() const {
    if (!has("psi")) bad("psi", "required");
    const json& v = impl_->doc.at("psi");
    if (!v.is_object()) bad("psi", "expected an object");
    std::string family = v.value("family", "");
    uint64_t start = v.contains("start") ? as_u64(v.at("start"), "psi.start")
                                         : uint64_t(3);
    try {
        if (family == "power_log") {
            return PsiSpec::power_log(
                v.contains("c") ? as_rat(v.at("c"), "psi.c") : Rat(1),
                v.contains("a") ? as_rat(v.at("a"), "psi.a") : Rat(1),
                v.contains("b") ? as_rat(v.at("b"), "psi.b") : Rat(0), start);
        }
        if (family == "mixed_har") {
            return PsiSpec::mixed_har(
                v.contains("eps") ? as_rat(v.at("eps"), "psi.eps") : Rat(0),
                indexed_sequence(sequences(), v, "psi.sequence"), start);
        }
        if (family == "table") {
            if (!v.contains("values") || !v.at("values").is_array()) {
                bad("psi.values", "required array");
            }
            std::vector<Rat> values;
            for (const auto& t : v.at("values")) {
                values.push_back(as_rat(t, "psi.values"));
            }
            return PsiSpec::table(std::move(values), start);
        }
        if (family == "constant") {
            if (!v.contains("value")) bad("psi.value", "required");
            return PsiSpec::constant(as_rat(v.at("value"), "psi.value"),
                                     start);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const json::exception& e) {
        bad("psi", e.what());
    } catch (const Error& e) {
        bad("psi", e.what());
    }
    bad("psi.family",
        "must be power_log, mixed_har, table, or constant");
}

WeightKind ExperimentConfig::weight() const {
    if (!has("weight")) bad("weight", "required");
    const json& v = impl_->doc.at("weight");
    if (!v.is_object()) bad("weight", "expected an object");
    std::string kind = v.value("kind", "");
    try {
        if (kind == "inverse_norm_product") {
            return WeightKind::inverse_norm_product(family());
        }
        if (kind == "ds_weighted") return WeightKind::ds_weighted(family());
        if (kind == "multi_count") return WeightKind::multi_count(family());
        if (kind == "harrap_count") {
            return WeightKind::harrap_count(
                indexed_sequence(sequences(), v, "weight.sequence"));
        }
        if (kind == "log_power") {
            int64_t k = v.contains("k") ? as_int(v.at("k"), "weight.k").get_si()
                                        : 0;
            return WeightKind::log_power(static_cast<int>(k));
        }
        if (kind == "frak_m") {
            return WeightKind::frak_m(
                indexed_sequence(sequences(), v, "weight.sequence"));
        }
        if (kind == "frak_m_log") {
            return WeightKind::frak_m_log(
                v.contains("eps") ? as_rat(v.at("eps"), "weight.eps") : Rat(0),
                indexed_sequence(sequences(), v, "weight.sequence"));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const json::exception& e) {
        bad("weight", e.what());
    } catch (const Error& e) {
        bad("weight", e.what());
    }
    bad("weight.kind", "unknown weight kind");
}

RealTarget ExperimentConfig::alpha() const {
    if (!has("alpha")) bad("alpha", "required");
    const json& v = impl_->doc.at("alpha");
    if (!v.is_object()) bad("alpha", "expected an object");
    std::string kind = v.value("kind", "");
    try {
        if (kind == "rational") {
            return RealTarget::rational(as_rat(v.at("value"), "alpha.value"));
        }
        if (kind == "quadratic") {
            return RealTarget::quadratic(
                as_int(v.at("a"), "alpha.a"), as_int(v.at("b"), "alpha.b"),
                as_u64(v.at("d"), "alpha.d"), as_int(v.at("e"), "alpha.e"));
        }
        if (kind == "dyadic") {
            int64_t expo = 0;
            if (v.contains("exponent")) {
                expo = as_int(v.at("exponent"), "alpha.exponent").get_si();
            }
            return RealTarget::dyadic(
                as_int(v.at("mantissa"), "alpha.mantissa"),
                static_cast<int32_t>(expo),
                static_cast<uint32_t>(as_u64(v.at("precision"),
                                             "alpha.precision")));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const json::exception& e) {
        bad("alpha", e.what());
    } catch (const Error& e) {
        bad("alpha", e.what());
    }
    bad("alpha.kind", "must be rational, quadratic, or dyadic");
}

}  // namespace pavlab
