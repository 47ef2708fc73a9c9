#include "pavlab/pseudo_norm.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "pavlab/arith.hpp"

namespace pavlab {

struct PseudoValueSequence::State {
    Rule rule;
    uint64_t prime = 0;                 // PrimePower only
    std::vector<uint64_t> rule_ratios;  // Periodic pattern / Explicit list

    mutable std::mutex mu;
    mutable std::vector<Int> elems;
    mutable std::vector<uint64_t> elems_u64;  // 0 marks "does not fit"
    mutable std::vector<std::vector<uint64_t>> elem_primes;
    mutable std::vector<Rat> ratio_phi;     // phi(n_k)/n_k
    mutable std::vector<Rat> prefix_phi;    // sum of ratio_phi[0..k]
    mutable std::vector<double> prefix_phi_d;

    // Ratio multiplying n_{k-1} into n_k; nullopt when an explicit list has
    // no ratio at that index.
    std::optional<uint64_t> ratio_at(size_t k) const {
        switch (rule) {
            case Rule::PrimePower:
                return prime;
            case Rule::Periodic:
                return rule_ratios[(k - 1) % rule_ratios.size()];
            case Rule::Explicit:
                if (k > rule_ratios.size()) return std::nullopt;
                return rule_ratios[k - 1];
        }
        return std::nullopt;
    }

    // Appends elements until index k exists. Caller holds the lock.
    // Returns false when an explicit list ran out first.
    bool grow_to(size_t k) const {
        while (elems.size() <= k) {
            size_t j = elems.size();
            std::optional<uint64_t> r = ratio_at(j);
            if (!r) return false;
            Int e = elems[j - 1] * *r;
            std::vector<uint64_t> ps = elem_primes[j - 1];
            for (auto [p, exp] : factorize(*r)) {
                (void)exp;
                if (std::find(ps.begin(), ps.end(), p) == ps.end()) {
                    ps.push_back(p);
                }
            }
            std::sort(ps.begin(), ps.end());
            Rat pr(1);
            for (uint64_t p : ps) pr *= make_rat(Int(p - 1), Int(p));
            elems.push_back(e);
            elems_u64.push_back(e.fits_ulong_p() ? e.get_ui() : 0);
            elem_primes.push_back(std::move(ps));
            ratio_phi.push_back(pr);
            prefix_phi.push_back(prefix_phi[j - 1] + pr);
            prefix_phi_d.push_back(prefix_phi_d[j - 1] + pr.get_d());
        }
        return true;
    }

    void seed() {
        elems.assign(1, Int(1));
        elems_u64.assign(1, 1);
        elem_primes.assign(1, {});
        ratio_phi.assign(1, Rat(1));
        prefix_phi.assign(1, Rat(1));
        prefix_phi_d.assign(1, 1.0);
    }
};

PseudoValueSequence::PseudoValueSequence(std::shared_ptr<State> st)
    : st_(std::move(st)) {}

PseudoValueSequence PseudoValueSequence::prime_power(uint64_t p) {
    auto fs = factorize(p);
    if (p < 2 || fs.size() != 1 || fs[0].second != 1) {
        throw DomainError("prime_power: " + std::to_string(p) + " is not prime");
    }
    auto st = std::make_shared<State>();
    st->rule = Rule::PrimePower;
    st->prime = p;
    st->seed();
    return PseudoValueSequence(std::move(st));
}

static void check_ratios(const std::vector<uint64_t>& ratios,
                         const char* what) {
    for (uint64_t r : ratios) {
        if (r < 2) throw DomainError(std::string(what) + ": ratio < 2");
    }
}

PseudoValueSequence PseudoValueSequence::periodic(std::vector<uint64_t> ratios) {
    if (ratios.empty()) throw DomainError("periodic: empty ratio pattern");
    check_ratios(ratios, "periodic");
    auto st = std::make_shared<State>();
    st->rule = Rule::Periodic;
    st->rule_ratios = std::move(ratios);
    st->seed();
    return PseudoValueSequence(std::move(st));
}

PseudoValueSequence PseudoValueSequence::explicit_ratios(
    std::vector<uint64_t> ratios) {
    check_ratios(ratios, "explicit");
    auto st = std::make_shared<State>();
    st->rule = Rule::Explicit;
    st->rule_ratios = std::move(ratios);
    st->seed();
    return PseudoValueSequence(std::move(st));
}

PseudoValueSequence::Rule PseudoValueSequence::rule() const {
    return st_->rule;
}

std::optional<size_t> PseudoValueSequence::element_limit() const {
    if (st_->rule != Rule::Explicit) return std::nullopt;
    return st_->rule_ratios.size() + 1;
}

Int PseudoValueSequence::element(size_t k) const {
    std::lock_guard lk(st_->mu);
    if (!st_->grow_to(k)) {
        throw ExhaustedSequenceError("element " + std::to_string(k) +
                                     " beyond explicit ratio list");
    }
    return st_->elems[k];
}

uint64_t PseudoValueSequence::ratio(size_t k) const {
    if (k == 0) throw DomainError("ratio(0): element 0 has no ratio");
    std::optional<uint64_t> r = st_->ratio_at(k);
    if (!r) {
        throw ExhaustedSequenceError("ratio " + std::to_string(k) +
                                     " beyond explicit ratio list");
    }
    return *r;
}

size_t PseudoValueSequence::max_index(const Int& bound) const {
    if (bound < 1) throw DomainError("max_index: bound must be >= 1");
    std::lock_guard lk(st_->mu);
    while (st_->elems.back() <= bound) {
        if (!st_->grow_to(st_->elems.size())) {
            throw ExhaustedSequenceError(
                "max_index: explicit list exhausted before exceeding bound");
        }
    }
    // elems is strictly increasing and elems.back() > bound here.
    size_t lo = 0, hi = st_->elems.size() - 1;
    while (lo + 1 < hi) {
        size_t mid = (lo + hi) / 2;
        if (st_->elems[mid] <= bound) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

size_t PseudoValueSequence::max_index(uint64_t bound) const {
    return max_index(Int(static_cast<unsigned long>(bound)));
}

PseudoValueSequence::Norm PseudoValueSequence::norm(const Int& n) const {
    if (n < 1) throw DomainError("norm: n must be >= 1");
    std::lock_guard lk(st_->mu);
    size_t k = 0;
    while (true) {
        if (!st_->grow_to(k + 1)) {
            throw ExhaustedSequenceError(
                "norm: cannot certify next element does not divide n");
        }
        if (st_->elems[k + 1] > n) break;  // cannot divide, nor can any later
        if (!mpz_divisible_p(n.get_mpz_t(), st_->elems[k + 1].get_mpz_t())) {
            break;
        }
        ++k;
    }
    return Norm{k, st_->elems[k]};
}

PseudoValueSequence::Norm PseudoValueSequence::norm(uint64_t n) const {
    if (n < 1) throw DomainError("norm: n must be >= 1");
    std::lock_guard lk(st_->mu);
    size_t k = 0;
    while (true) {
        if (!st_->grow_to(k + 1)) {
            throw ExhaustedSequenceError(
                "norm: cannot certify next element does not divide n");
        }
        uint64_t e = st_->elems_u64[k + 1];
        if (e == 0 || e > n || n % e != 0) break;
        ++k;
    }
    return Norm{k, st_->elems[k]};
}

Int PseudoValueSequence::element_phi(size_t k) const {
    std::lock_guard lk(st_->mu);
    if (!st_->grow_to(k)) {
        throw ExhaustedSequenceError("element_phi beyond explicit ratio list");
    }
    Int e = st_->elems[k];
    for (uint64_t p : st_->elem_primes[k]) {
        mpz_divexact_ui(e.get_mpz_t(), e.get_mpz_t(), p);
        e *= p - 1;
    }
    return e;
}

Rat PseudoValueSequence::element_phi_ratio(size_t k) const {
    std::lock_guard lk(st_->mu);
    if (!st_->grow_to(k)) {
        throw ExhaustedSequenceError(
            "element_phi_ratio beyond explicit ratio list");
    }
    return st_->ratio_phi[k];
}

Rat PseudoValueSequence::totient_ratio_sum(const Int& n) const {
    size_t k = max_index(n);
    std::lock_guard lk(st_->mu);
    return st_->prefix_phi[k];
}

Rat PseudoValueSequence::totient_ratio_sum(uint64_t n) const {
    return totient_ratio_sum(Int(static_cast<unsigned long>(n)));
}

double PseudoValueSequence::totient_ratio_sum_d(uint64_t n) const {
    size_t k = max_index(n);
    std::lock_guard lk(st_->mu);
    return st_->prefix_phi_d[k];
}

std::vector<uint64_t> PseudoValueSequence::element_primes(size_t k) const {
    std::lock_guard lk(st_->mu);
    if (!st_->grow_to(k)) {
        throw ExhaustedSequenceError(
            "element_primes beyond explicit ratio list");
    }
    return st_->elem_primes[k];
}

bool PseudoValueSequence::generator_primes_complete() const {
    return st_->rule != Rule::Explicit;
}

std::vector<uint64_t> PseudoValueSequence::generator_primes() const {
    std::vector<uint64_t> out;
    auto add = [&out](uint64_t r) {
        for (auto [p, e] : factorize(r)) {
            (void)e;
            if (std::find(out.begin(), out.end(), p) == out.end()) {
                out.push_back(p);
            }
        }
    };
    if (st_->rule == Rule::PrimePower) {
        out.push_back(st_->prime);
    } else {
        for (uint64_t r : st_->rule_ratios) add(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string PseudoValueSequence::describe() const {
    std::ostringstream os;
    switch (st_->rule) {
        case Rule::PrimePower:
            os << "prime_power(" << st_->prime << ")";
            break;
        case Rule::Periodic:
        case Rule::Explicit:
            os << (st_->rule == Rule::Periodic ? "periodic(" : "explicit(");
            for (size_t i = 0; i < st_->rule_ratios.size(); ++i) {
                if (i) os << ";";
                os << st_->rule_ratios[i];
            }
            os << ")";
            break;
    }
    return os.str();
}

bool PseudoValueSequence::same_definition(
    const PseudoValueSequence& other) const {
    if (st_ == other.st_) return true;
    if (st_->rule != other.st_->rule) return false;
    return st_->prime == other.st_->prime &&
           st_->rule_ratios == other.st_->rule_ratios;
}

struct SequenceFamily::State {
    std::vector<PseudoValueSequence> members;
    mutable std::mutex mu;
    mutable std::optional<bool> coprime;
};

SequenceFamily::SequenceFamily() : st_(std::make_shared<State>()) {}

SequenceFamily::SequenceFamily(std::vector<PseudoValueSequence> members)
    : st_(std::make_shared<State>()) {
    st_->members = std::move(members);
}

size_t SequenceFamily::size() const { return st_->members.size(); }

const PseudoValueSequence& SequenceFamily::member(size_t i) const {
    if (i >= st_->members.size()) throw DomainError("family member out of range");
    return st_->members[i];
}

bool SequenceFamily::verify_mutually_coprime(size_t index_bound) const {
    std::lock_guard lk(st_->mu);
    if (st_->coprime.has_value()) return *st_->coprime;
    bool ok = true;
    for (size_t i = 0; ok && i < st_->members.size(); ++i) {
        for (size_t j = i + 1; ok && j < st_->members.size(); ++j) {
            const auto& a = st_->members[i];
            const auto& b = st_->members[j];
            if (a.generator_primes_complete() && b.generator_primes_complete()) {
                auto pa = a.generator_primes();
                auto pb = b.generator_primes();
                std::vector<uint64_t> common;
                std::set_intersection(pa.begin(), pa.end(), pb.begin(),
                                      pb.end(), std::back_inserter(common));
                ok = common.empty();
            } else {
                auto top = [index_bound](const PseudoValueSequence& s) {
                    size_t k = index_bound;
                    if (auto lim = s.element_limit()) k = std::min(k, *lim - 1);
                    return s.element(k);
                };
                Int g;
                Int ea = top(a), eb = top(b);
                mpz_gcd(g.get_mpz_t(), ea.get_mpz_t(), eb.get_mpz_t());
                ok = (g == 1);
            }
        }
    }
    st_->coprime = ok;
    return ok;
}

std::optional<bool> SequenceFamily::mutually_coprime() const {
    std::lock_guard lk(st_->mu);
    return st_->coprime;
}

std::string SequenceFamily::describe() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < st_->members.size(); ++i) {
        if (i) os << " ";
        os << st_->members[i].describe();
    }
    os << "]";
    return os.str();
}

Rat product_pseudo_norm(const SequenceFamily& F, const Int& n) {
    return make_rat(Int(1), inverse_product_norm(F, n));
}

Rat product_pseudo_norm(const SequenceFamily& F, uint64_t n) {
    return make_rat(Int(1), inverse_product_norm(F, n));
}

Int inverse_product_norm(const SequenceFamily& F, const Int& n) {
    Int acc = 1;
    for (size_t i = 0; i < F.size(); ++i) acc *= F.member(i).norm(n).element;
    return acc;
}

Int inverse_product_norm(const SequenceFamily& F, uint64_t n) {
    Int acc = 1;
    for (size_t i = 0; i < F.size(); ++i) acc *= F.member(i).norm(n).element;
    return acc;
}

namespace {

// Shared tuple walk: calls visit(tuple, combined) for every tuple whose
// combined value (lcm or product, both monotone per coordinate) is <= bound.
template <typename Combine, typename Visit>
void walk_tuples(const SequenceFamily& F, const Int& bound, Combine combine,
                 Visit visit, size_t i, std::vector<uint32_t>& tuple,
                 const Int& acc) {
    if (i == F.size()) {
        visit(tuple, acc);
        return;
    }
    for (uint32_t k = 0;; ++k) {
        Int combined = combine(acc, F.member(i).element(k));
        if (combined > bound) break;
        tuple.push_back(k);
        walk_tuples(F, bound, combine, visit, i + 1, tuple, combined);
        tuple.pop_back();
    }
}

Int lcm_combine(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int mul_combine(const Int& a, const Int& b) { return a * b; }

}  // namespace

std::vector<std::vector<uint32_t>> lcm_index_tuples(const SequenceFamily& F,
                                                    uint64_t n) {
    if (n < 1) throw DomainError("lcm_index_tuples: n must be >= 1");
    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> tuple;
    walk_tuples(
        F, Int(static_cast<unsigned long>(n)), lcm_combine,
        [&out](const std::vector<uint32_t>& t, const Int&) { out.push_back(t); },
        0, tuple, Int(1));
    return out;
}

Int tuple_lcm(const SequenceFamily& F, std::span<const uint32_t> tuple) {
    if (tuple.size() != F.size()) throw DomainError("tuple arity mismatch");
    Int acc = 1;
    for (size_t i = 0; i < F.size(); ++i) {
        acc = lcm_combine(acc, F.member(i).element(tuple[i]));
    }
    return acc;
}

Int tuple_product(const SequenceFamily& F, std::span<const uint32_t> tuple) {
    if (tuple.size() != F.size()) throw DomainError("tuple arity mismatch");
    Int acc = 1;
    for (size_t i = 0; i < F.size(); ++i) acc *= F.member(i).element(tuple[i]);
    return acc;
}

uint64_t tuple_multiplier(const SequenceFamily& F, uint64_t n,
                          std::span<const uint32_t> tuple) {
    if (n < 1) throw DomainError("tuple_multiplier: n must be >= 1");
    Int l = tuple_lcm(F, tuple);
    if (l > static_cast<unsigned long>(n)) {
        throw DomainError("tuple_multiplier: tuple lcm exceeds n");
    }
    Int q = Int(static_cast<unsigned long>(n)) / l;
    return q.get_ui();
}

uint64_t nontrivial_product_tuples(const SequenceFamily& F, uint64_t n) {
    if (n < 1) throw DomainError("nontrivial_product_tuples: n must be >= 1");
    uint64_t count = 0;
    std::vector<uint32_t> tuple;
    walk_tuples(
        F, Int(static_cast<unsigned long>(n)), mul_combine,
        [&count](const std::vector<uint32_t>&, const Int&) { ++count; }, 0,
        tuple, Int(1));
    return count - 1;  // drop the all-zeros tuple, whose product is 1
}

std::vector<Int> tuple_products_upto(const SequenceFamily& F, uint64_t bound) {
    if (bound < 1) throw DomainError("tuple_products_upto: bound must be >= 1");
    std::vector<Int> out;
    std::vector<uint32_t> tuple;
    walk_tuples(
        F, Int(static_cast<unsigned long>(bound)), mul_combine,
        [&out](const std::vector<uint32_t>&, const Int& p) { out.push_back(p); },
        0, tuple, Int(1));
    std::sort(out.begin(), out.end());
    return out;
}

Rat tuple_phi_ratio(const SequenceFamily& F, std::span<const uint32_t> tuple) {
    if (tuple.size() != F.size()) throw DomainError("tuple arity mismatch");
    std::vector<uint64_t> primes;
    for (size_t i = 0; i < F.size(); ++i) {
        for (uint64_t p : F.member(i).element_primes(tuple[i])) {
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) {
                primes.push_back(p);
            }
        }
    }
    Rat acc(1);
    for (uint64_t p : primes) acc *= make_rat(Int(p - 1), Int(p));
    return acc;
}

}  // namespace pavlab
