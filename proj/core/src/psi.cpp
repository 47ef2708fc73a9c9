#include "pavlab/psi.hpp"

#include <cmath>
#include <sstream>

namespace pavlab {

namespace {

// Relative error budget for one float family evaluation: a handful of
// correctly rounded libm calls and multiplies, each 0.5-2 ulp. 2^-44 is a
// generous cover and comfortably inside the documented 2^-40 contract.
constexpr double kFloatRelErr = 0x1p-44;

}  // namespace

struct PsiSpec::State {
    PsiFamily family;
    uint64_t start = 3;
    Rat c, a, b, eps;
    std::vector<Rat> values;
    std::optional<PseudoValueSequence> seq;
};

PsiSpec::PsiSpec(std::shared_ptr<const State> st) : st_(std::move(st)) {}

static void check_start(uint64_t start) {
    if (start < 3) throw DomainError("psi start_index must be >= 3");
}

PsiSpec PsiSpec::power_log(Rat c, Rat a, Rat b, uint64_t start_index) {
    check_start(start_index);
    if (c <= 0) throw DomainError("power_log: c must be positive");
    auto st = std::make_shared<State>();
    st->family = PsiFamily::PowerLog;
    st->start = start_index;
    st->c = std::move(c);
    st->a = std::move(a);
    st->b = std::move(b);
    return PsiSpec(std::move(st));
}

PsiSpec PsiSpec::mixed_har(Rat eps, PseudoValueSequence D,
                           uint64_t start_index) {
    check_start(start_index);
    if (eps < 0) throw DomainError("mixed_har: eps must be >= 0");
    auto st = std::make_shared<State>();
    st->family = PsiFamily::MixedHar;
    st->start = start_index;
    st->eps = std::move(eps);
    st->seq = std::move(D);
    return PsiSpec(std::move(st));
}

PsiSpec PsiSpec::table(std::vector<Rat> values, uint64_t start_index) {
    check_start(start_index);
    if (values.empty()) throw DomainError("table: no values");
    for (const Rat& v : values) {
        if (v < 0) throw DomainError("table: negative value");
    }
    auto st = std::make_shared<State>();
    st->family = PsiFamily::Table;
    st->start = start_index;
    st->values = std::move(values);
    return PsiSpec(std::move(st));
}

PsiSpec PsiSpec::constant(Rat c, uint64_t start_index) {
    check_start(start_index);
    if (c < 0) throw DomainError("constant: negative value");
    auto st = std::make_shared<State>();
    st->family = PsiFamily::Constant;
    st->start = start_index;
    st->c = std::move(c);
    return PsiSpec(std::move(st));
}

PsiFamily PsiSpec::family() const { return st_->family; }
uint64_t PsiSpec::start_index() const { return st_->start; }

std::optional<uint64_t> PsiSpec::end_index() const {
    if (st_->family != PsiFamily::Table) return std::nullopt;
    return st_->start + st_->values.size() - 1;
}

bool PsiSpec::exact_evaluable() const {
    return st_->family == PsiFamily::Table ||
           st_->family == PsiFamily::Constant;
}

const Rat& PsiSpec::c() const { return st_->c; }
const Rat& PsiSpec::a() const { return st_->a; }
const Rat& PsiSpec::b() const { return st_->b; }
const Rat& PsiSpec::eps() const { return st_->eps; }

const PseudoValueSequence& PsiSpec::sequence() const {
    if (!st_->seq) throw DomainError("psi family carries no sequence");
    return *st_->seq;
}

const std::vector<Rat>& PsiSpec::table_values() const { return st_->values; }

std::string PsiSpec::describe() const {
    std::ostringstream os;
    switch (st_->family) {
        case PsiFamily::PowerLog:
            os << "power_log(" << rat_str(st_->c) << ";" << rat_str(st_->a)
               << ";" << rat_str(st_->b) << ")";
            break;
        case PsiFamily::MixedHar:
            os << "mixed_har(" << rat_str(st_->eps) << ";"
               << st_->seq->describe() << ")";
            break;
        case PsiFamily::Table:
            os << "table(start=" << st_->start << ";len=" << st_->values.size()
               << ")";
            break;
        case PsiFamily::Constant:
            os << "constant(" << rat_str(st_->c) << ")";
            break;
    }
    return os.str();
}

PsiValue psi_eval(const PsiSpec& spec, uint64_t n) {
    if (n < spec.start_index()) {
        throw DomainError("psi_eval: n below start_index");
    }
    PsiValue out;
    switch (spec.family()) {
        case PsiFamily::Constant: {
            out.exact = spec.c();
            out.value = to_double(spec.c());
            return out;
        }
        case PsiFamily::Table: {
            uint64_t end = *spec.end_index();
            if (n > end) throw DomainError("psi_eval: n beyond table end");
            const Rat& v = spec.table_values()[n - spec.start_index()];
            out.exact = v;
            out.value = to_double(v);
            return out;
        }
        case PsiFamily::PowerLog: {
            double nn = static_cast<double>(n);
            double ln = std::log(nn);
            double lln = std::log(ln);
            out.value = to_double(spec.c()) /
                        (nn * std::pow(ln, to_double(spec.a())) *
                         std::pow(lln, to_double(spec.b())));
            out.rel_err = kFloatRelErr;
            return out;
        }
        case PsiFamily::MixedHar: {
            double nn = static_cast<double>(n);
            double frakm = to_double(spec.sequence().totient_ratio_sum(n));
            double expo = 1.0 + to_double(spec.eps());
            out.value = 1.0 / (nn * frakm * std::pow(std::log(nn), expo));
            out.rel_err = kFloatRelErr;
            return out;
        }
    }
    throw DomainError("psi_eval: unhandled family");
}

PsiValue psi0_eval(const PsiSpec& spec, const SequenceFamily& F, uint64_t n) {
    PsiValue v = psi_eval(spec, n);
    Int w = inverse_product_norm(F, n);
    PsiValue out;
    if (v.exact) {
        out.exact = *v.exact * Rat(w);
        out.value = to_double(*out.exact);
        out.rel_err = 0.0;
    } else {
        out.value = v.value * w.get_d();
        out.rel_err = v.rel_err + 0x1p-52;
    }
    return out;
}

std::optional<uint64_t> first_increase(const PsiSpec& spec, uint64_t lo,
                                       uint64_t hi) {
    if (lo < spec.start_index()) lo = spec.start_index();
    if (auto end = spec.end_index()) hi = std::min(hi, *end);
    if (hi <= lo) return std::nullopt;
    if (spec.exact_evaluable()) {
        Rat prev = *psi_eval(spec, lo).exact;
        for (uint64_t n = lo + 1; n <= hi; ++n) {
            Rat cur = *psi_eval(spec, n).exact;
            if (cur > prev) return n - 1;
            prev = cur;
        }
        return std::nullopt;
    }
    double prev = psi_eval(spec, lo).value;
    for (uint64_t n = lo + 1; n <= hi; ++n) {
        double cur = psi_eval(spec, n).value;
        if (cur > prev) return n - 1;
        prev = cur;
    }
    return std::nullopt;
}

}  // namespace pavlab
