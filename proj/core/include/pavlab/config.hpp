#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pavlab/approx.hpp"
#include "pavlab/criteria.hpp"

namespace pavlab {

// A parsed experiment configuration. Field access is typed and validated;
// every violation throws ConfigError naming the offending key.
//
// Schema sketch (JSON object):
//   "sequences": [ {"rule":"prime_power","p":2}
//                | {"rule":"periodic","ratios":[2,3]}
//                | {"rule":"explicit","ratios":[2,3,5,7]} ... ]
//   "psi":    {"family":"power_log","c":"1","a":"2","b":"0"}
//           | {"family":"mixed_har","eps":"0","sequence":0}
//           | {"family":"table","start":3,"values":["1/8","1/9",...]}
//           | {"family":"constant","value":"1/6"}
//   "weight": {"kind":"inverse_norm_product"} | {"kind":"ds_weighted"}
//           | {"kind":"multi_count"} | {"kind":"harrap_count","sequence":0}
//           | {"kind":"log_power","k":2} | {"kind":"frak_m","sequence":0}
//           | {"kind":"frak_m_log","eps":"1/2","sequence":0}
//   "alpha":  {"kind":"rational","value":"1/3"}
//           | {"kind":"quadratic","a":"1","b":"1","d":5,"e":"2"}
//           | {"kind":"dyadic","mantissa":"355","exponent":-8,"precision":8}
//   plus scalar fields (N0, N1, n_max, samples, seed, ...) read on demand.
// Rational-valued fields accept "num/den", integer, or decimal strings.
class ExperimentConfig {
  public:
    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_string(const std::string& text);
    static ExperimentConfig empty();

    // FNV-1a 64 over the canonical (sorted-key, compact) dump.
    uint64_t config_hash() const;
    std::string canonical() const;

    bool has(const std::string& key) const;
    uint64_t get_u64(const std::string& key, uint64_t def) const;
    uint64_t require_u64(const std::string& key) const;
    int64_t get_i64(const std::string& key, int64_t def) const;
    Rat get_rat(const std::string& key, const Rat& def) const;
    Rat require_rat(const std::string& key) const;
    std::string get_str(const std::string& key, const std::string& def) const;

    std::vector<PseudoValueSequence> sequences() const;  // [] when absent
    SequenceFamily family() const;
    PsiSpec psi() const;
    WeightKind weight() const;
    RealTarget alpha() const;

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit ExperimentConfig(std::shared_ptr<const Impl> impl);
};

}
