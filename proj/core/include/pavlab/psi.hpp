#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pavlab/pseudo_norm.hpp"
#include "pavlab/rational.hpp"

namespace pavlab {

enum class PsiFamily { PowerLog, MixedHar, Table, Constant };

// A test function psi: {start_index, start_index+1, ...} -> [0, inf).
// Families:
//   PowerLog(c,a,b):  c / (n * (log n)^a * (log log n)^b)
//   MixedHar(eps,D):  1 / (n * M_D(n) * (log n)^(1+eps)), M_D the totient
//                     ratio sum of D
//   Table(values):    explicit rational values on a finite window
//   Constant(c):      c everywhere
// Natural logarithm throughout; start_index >= 3 keeps log log n positive.
class PsiSpec {
  public:
    static PsiSpec power_log(Rat c, Rat a, Rat b, uint64_t start_index = 3);
    static PsiSpec mixed_har(Rat eps, PseudoValueSequence D,
                             uint64_t start_index = 3);
    static PsiSpec table(std::vector<Rat> values, uint64_t start_index = 3);
    static PsiSpec constant(Rat c, uint64_t start_index = 3);

    PsiFamily family() const;
    uint64_t start_index() const;

    // Last defined n for Table specs; nullopt for unbounded families.
    std::optional<uint64_t> end_index() const;

    // True when every value is an exact rational (Table, Constant).
    bool exact_evaluable() const;

    const Rat& c() const;    // PowerLog, Constant
    const Rat& a() const;    // PowerLog
    const Rat& b() const;    // PowerLog
    const Rat& eps() const;  // MixedHar
    const PseudoValueSequence& sequence() const;  // MixedHar
    const std::vector<Rat>& table_values() const;

    std::string describe() const;

  private:
    struct State;
    std::shared_ptr<const State> st_;
    explicit PsiSpec(std::shared_ptr<const State> st);
};

// A nonnegative evaluation result. `exact` is set for exact families;
// `value` is always set and carries `rel_err` as a relative error bound
// (0 when exact and the double conversion is the only rounding).
struct PsiValue {
    std::optional<Rat> exact;
    double value = 0.0;
    double rel_err = 0.0;
};

PsiValue psi_eval(const PsiSpec& spec, uint64_t n);

// psi(n) / product_pseudo_norm(n, F) = psi(n) * (product of norm elements).
PsiValue psi0_eval(const PsiSpec& spec, const SequenceFamily& F, uint64_t n);

// First n in [lo, hi) with psi(n+1) > psi(n), if any. Exact families
// compare exactly; float families compare the tracked values.
std::optional<uint64_t> first_increase(const PsiSpec& spec, uint64_t lo,
                                       uint64_t hi);

}
