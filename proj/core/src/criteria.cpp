#include "pavlab/criteria.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "pavlab/arith.hpp"

namespace pavlab {

namespace {

// Neumaier-compensated accumulator; used wherever a float series is long
// enough for naive summation order to matter.
struct CompensatedSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x)) {
            c += (s - t) + x;
        } else {
            c += (x - t) + s;
        }
        s = t;
    }
    double get() const { return s + c; }
};

double ln_int(const Int& v) {
    long exp2 = 0;
    double m = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(m) + static_cast<double>(exp2) * M_LN2;
}

}  // namespace

struct WeightKind::State {
    Tag tag;
    SequenceFamily family;
    std::optional<PseudoValueSequence> seq;
    int k = 0;
    Rat eps;
};

WeightKind::WeightKind(std::shared_ptr<const State> st) : st_(std::move(st)) {}

WeightKind WeightKind::inverse_norm_product(SequenceFamily F) {
    auto st = std::make_shared<State>();
    st->tag = Tag::InverseNormProduct;
    st->family = std::move(F);
    return WeightKind(std::move(st));
}

WeightKind WeightKind::ds_weighted(SequenceFamily F) {
    auto st = std::make_shared<State>();
    st->tag = Tag::DSWeighted;
    st->family = std::move(F);
    return WeightKind(std::move(st));
}

WeightKind WeightKind::multi_count(SequenceFamily F) {
    auto st = std::make_shared<State>();
    st->tag = Tag::MultiCount;
    st->family = std::move(F);
    return WeightKind(std::move(st));
}

WeightKind WeightKind::harrap_count(PseudoValueSequence D) {
    auto st = std::make_shared<State>();
    st->tag = Tag::HarrapCount;
    st->seq = std::move(D);
    return WeightKind(std::move(st));
}

WeightKind WeightKind::log_power(int k) {
    auto st = std::make_shared<State>();
    st->tag = Tag::LogPower;
    st->k = k;
    return WeightKind(std::move(st));
}

WeightKind WeightKind::frak_m(PseudoValueSequence D) {
    auto st = std::make_shared<State>();
    st->tag = Tag::FrakM;
    st->seq = std::move(D);
    return WeightKind(std::move(st));
}

WeightKind WeightKind::frak_m_log(Rat eps, PseudoValueSequence D) {
    if (eps < 0) throw DomainError("frak_m_log: eps must be >= 0");
    auto st = std::make_shared<State>();
    st->tag = Tag::FrakMLog;
    st->eps = std::move(eps);
    st->seq = std::move(D);
    return WeightKind(std::move(st));
}

WeightKind::Tag WeightKind::tag() const { return st_->tag; }

bool WeightKind::exact_evaluable() const {
    switch (st_->tag) {
        case Tag::LogPower:
            return st_->k == 0;
        case Tag::FrakMLog:
            return false;
        default:
            return true;
    }
}

const SequenceFamily& WeightKind::family() const {
    switch (st_->tag) {
        case Tag::InverseNormProduct:
        case Tag::DSWeighted:
        case Tag::MultiCount:
            return st_->family;
        default:
            throw DomainError("weight kind carries no family");
    }
}

const PseudoValueSequence& WeightKind::sequence() const {
    if (!st_->seq) throw DomainError("weight kind carries no sequence");
    return *st_->seq;
}

int WeightKind::log_exponent() const {
    if (st_->tag != Tag::LogPower) throw DomainError("not a log power weight");
    return st_->k;
}

const Rat& WeightKind::eps() const {
    if (st_->tag != Tag::FrakMLog) throw DomainError("weight kind carries no eps");
    return st_->eps;
}

Rat WeightKind::eval_exact(uint64_t n) const {
    if (n < 1) throw DomainError("weight eval: n must be >= 1");
    switch (st_->tag) {
        case Tag::InverseNormProduct:
            return Rat(inverse_product_norm(st_->family, n));
        case Tag::DSWeighted: {
            Rat r(Int(euler_phi(n)) * inverse_product_norm(st_->family, n),
                  Int(static_cast<unsigned long>(n)));
            r.canonicalize();
            return r;
        }
        case Tag::MultiCount:
            return Rat(static_cast<unsigned long>(
                nontrivial_product_tuples(st_->family, n)));
        case Tag::HarrapCount:
            return Rat(static_cast<unsigned long>(st_->seq->max_index(n)));
        case Tag::LogPower:
            if (st_->k == 0) return Rat(1);
            throw ExactPolicyError("log power weight is float-valued");
        case Tag::FrakM:
            return st_->seq->totient_ratio_sum(n);
        case Tag::FrakMLog:
            throw ExactPolicyError("frak_m_log weight is float-valued");
    }
    throw DomainError("weight eval: unhandled tag");
}

double WeightKind::eval_d(uint64_t n) const {
    switch (st_->tag) {
        case Tag::LogPower:
            return std::pow(std::log(static_cast<double>(n)), st_->k);
        case Tag::FrakMLog:
            return st_->seq->totient_ratio_sum_d(n) *
                   std::pow(std::log(static_cast<double>(n)),
                            1.0 + to_double(st_->eps));
        default:
            return to_double(eval_exact(n));
    }
}

std::string WeightKind::describe() const {
    std::ostringstream os;
    switch (st_->tag) {
        case Tag::InverseNormProduct:
            os << "inverse_norm_product" << st_->family.describe();
            break;
        case Tag::DSWeighted:
            os << "ds_weighted" << st_->family.describe();
            break;
        case Tag::MultiCount:
            os << "multi_count" << st_->family.describe();
            break;
        case Tag::HarrapCount:
            os << "harrap_count[" << st_->seq->describe() << "]";
            break;
        case Tag::LogPower:
            os << "log_power(" << st_->k << ")";
            break;
        case Tag::FrakM:
            os << "frak_m[" << st_->seq->describe() << "]";
            break;
        case Tag::FrakMLog:
            os << "frak_m_log(" << rat_str(st_->eps) << ")[" << st_->seq->describe()
               << "]";
            break;
    }
    return os.str();
}

namespace {

// Per-n weight evaluation with the cross-n caches a bulk sweep needs:
// sorted tuple products for MultiCount, element cursors for the counting
// weights. Must be advanced with strictly ascending n.
class BulkWeightCursor {
  public:
    BulkWeightCursor(const WeightKind& w, uint64_t n_max) : w_(w) {
        switch (w.tag()) {
            case WeightKind::Tag::MultiCount:
                products_ = tuple_products_upto(w.family(), n_max);
                break;
            case WeightKind::Tag::HarrapCount:
            case WeightKind::Tag::FrakM:
            case WeightKind::Tag::FrakMLog:
                seq_ = &w.sequence();
                frakm_exact_ = Rat(1);
                frakm_d_ = 1.0;
                fetch_next_element();
                break;
            default:
                break;
        }
    }

    Rat exact(uint64_t n) {
        advance(n);
        switch (w_.tag()) {
            case WeightKind::Tag::MultiCount:
                return Rat(static_cast<unsigned long>(products_le_ - 1));
            case WeightKind::Tag::HarrapCount:
                return Rat(static_cast<unsigned long>(index_));
            case WeightKind::Tag::FrakM:
                return frakm_exact_;
            default:
                return w_.eval_exact(n);
        }
    }

    double value(uint64_t n) {
        advance(n);
        switch (w_.tag()) {
            case WeightKind::Tag::MultiCount:
                return static_cast<double>(products_le_ - 1);
            case WeightKind::Tag::HarrapCount:
                return static_cast<double>(index_);
            case WeightKind::Tag::FrakM:
                return frakm_d_;
            case WeightKind::Tag::FrakMLog:
                return frakm_d_ * std::pow(std::log(static_cast<double>(n)),
                                           1.0 + to_double(w_.eps()));
            default:
                return w_.eval_d(n);
        }
    }

  private:
    void fetch_next_element() {
        size_t k = index_ + 1;
        if (auto lim = seq_->element_limit()) {
            if (k >= *lim) {
                next_elem_ = 0;  // no further elements can exist
                return;
            }
        }
        Int e = seq_->element(k);
        next_elem_ = e.fits_ulong_p() ? e.get_ui() : 0;
    }

    void advance(uint64_t n) {
        if (seq_ != nullptr) {
            while (next_elem_ != 0 && next_elem_ <= n) {
                ++index_;
                frakm_exact_ += seq_->element_phi_ratio(index_);
                frakm_d_ = to_double(frakm_exact_);
                fetch_next_element();
            }
        }
        while (products_le_ < products_.size() &&
               products_[products_le_] <= static_cast<unsigned long>(n)) {
            ++products_le_;
        }
    }

    const WeightKind& w_;
    std::vector<Int> products_;
    size_t products_le_ = 0;
    const PseudoValueSequence* seq_ = nullptr;
    size_t index_ = 0;
    uint64_t next_elem_ = 0;
    Rat frakm_exact_;
    double frakm_d_ = 0.0;
};

}  // namespace

SeriesReport weighted_partial_sum(const PsiSpec& psi, const WeightKind& w,
                                  uint64_t N) {
    uint64_t start = psi.start_index();
    if (N < start) throw DomainError("weighted_partial_sum: N below start");
    if (auto end = psi.end_index()) {
        if (N > *end) {
            throw DomainError("weighted_partial_sum: N beyond psi table end");
        }
    }
    bool exact_mode = psi.exact_evaluable() && w.exact_evaluable();

    SeriesReport rep;
    rep.psi_desc = psi.describe();
    rep.weight_desc = w.describe();
    rep.n_start = start;
    rep.n_end = N;

    BulkWeightCursor cursor(w, N);

    Rat block_exact(0);
    CompensatedSum block_float;
    uint64_t block_top = uint64_t(1) << (64 - std::countl_zero(start));
    auto flush_block = [&](uint64_t last_n) {
        SeriesReport::Block blk;
        blk.n_end = last_n;
        if (exact_mode) {
            blk.exact = block_exact;
            blk.value = to_double(block_exact);
        } else {
            blk.value = block_float.get();
        }
        rep.blocks.push_back(std::move(blk));
        block_exact = 0;
        block_float = CompensatedSum{};
    };

    for (uint64_t n = start; n <= N; ++n) {
        if (n >= block_top) {
            flush_block(n - 1);
            block_top <<= 1;
        }
        if (exact_mode) {
            block_exact += *psi_eval(psi, n).exact * cursor.exact(n);
        } else {
            block_float.add(psi_eval(psi, n).value * cursor.value(n));
        }
    }
    flush_block(N);

    if (exact_mode) {
        Rat total(0);
        for (const auto& blk : rep.blocks) total += *blk.exact;
        rep.sum_exact = total;
    }
    double total_f = 0.0;
    for (const auto& blk : rep.blocks) total_f += blk.value;
    rep.sum_float = total_f;
    return rep;
}

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Diverges:
            return "diverges";
        case Verdict::Converges:
            return "converges";
        case Verdict::Unknown:
            return "unknown";
    }
    return "unknown";
}

Verdict analytic_verdict(const PsiSpec& psi, const WeightKind& w) {
    using Tag = WeightKind::Tag;
    if (psi.family() == PsiFamily::Table) return Verdict::Converges;
    if (psi.family() == PsiFamily::Constant) {
        if (psi.c() == 0) return Verdict::Converges;
        switch (w.tag()) {
            case Tag::MultiCount:
                return w.family().size() == 0 ? Verdict::Converges
                                              : Verdict::Diverges;
            case Tag::InverseNormProduct:
            case Tag::DSWeighted:
            case Tag::HarrapCount:
            case Tag::LogPower:
            case Tag::FrakM:
            case Tag::FrakMLog:
                return Verdict::Diverges;
        }
        return Verdict::Unknown;
    }
    if (psi.family() == PsiFamily::PowerLog && w.tag() == Tag::LogPower) {
        // Sum c / (n (log n)^(a-k) (loglog n)^b): diverges iff the log
        // exponent is < 1, or = 1 with loglog exponent <= 1.
        Rat log_exp = psi.a() - Rat(w.log_exponent());
        if (log_exp < 1) return Verdict::Diverges;
        if (log_exp == 1) {
            return psi.b() <= 1 ? Verdict::Diverges : Verdict::Converges;
        }
        return Verdict::Converges;
    }
    if (psi.family() == PsiFamily::MixedHar && w.tag() == Tag::FrakM &&
        psi.sequence().same_definition(w.sequence())) {
        // Sum 1 / (n (log n)^(1+eps)).
        return psi.eps() == 0 ? Verdict::Diverges : Verdict::Converges;
    }
    if (psi.family() == PsiFamily::MixedHar && w.tag() == Tag::FrakMLog &&
        psi.sequence().same_definition(w.sequence())) {
        // Sum (log n)^(eps_w - eps_psi) / n.
        return psi.eps() - w.eps() <= 1 ? Verdict::Diverges
                                        : Verdict::Converges;
    }
    return Verdict::Unknown;
}

namespace {

void min_ratio_walk(const SequenceFamily& F, uint32_t K, size_t i,
                    std::vector<uint64_t>& primes, std::vector<uint32_t>& tuple,
                    MinPhiRatio& best) {
    if (i == F.size()) {
        Rat r(1);
        for (uint64_t p : primes) r *= make_rat(Int(p - 1), Int(p));
        if (r < best.min_ratio) {
            best.min_ratio = r;
            best.argmin = tuple;
        }
        return;
    }
    for (uint32_t k = 0; k <= K; ++k) {
        std::vector<uint64_t> saved = primes;
        for (uint64_t p : F.member(i).element_primes(k)) {
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) {
                primes.push_back(p);
            }
        }
        tuple.push_back(k);
        min_ratio_walk(F, K, i + 1, primes, tuple, best);
        tuple.pop_back();
        primes = std::move(saved);
    }
}

}  // namespace

MinPhiRatio min_product_phi_ratio(const SequenceFamily& F, uint32_t K) {
    double leaves = 1.0;
    for (size_t i = 0; i < F.size(); ++i) leaves *= K + 1.0;
    if (leaves > 1e7) throw BudgetError("min_product_phi_ratio: tuple space too large");
    MinPhiRatio best;
    best.min_ratio = 2;  // above any phi ratio
    std::vector<uint64_t> primes;
    std::vector<uint32_t> tuple;
    min_ratio_walk(F, K, 0, primes, tuple, best);
    return best;
}

namespace {

void require_coprime(const SequenceFamily& F, const char* what) {
    if (!F.verify_mutually_coprime()) {
        throw NotMutuallyCoprimeError(std::string(what) +
                                      ": family is not mutually coprime");
    }
}

void phi_ratio_product_walk(const SequenceFamily& F, const Int& bound,
                            size_t i, std::vector<uint64_t>& primes,
                            const Int& acc, Rat& sum, uint64_t& count) {
    if (i == F.size()) {
        Rat r(1);
        for (uint64_t p : primes) r *= make_rat(Int(p - 1), Int(p));
        sum += r;
        ++count;
        return;
    }
    for (uint32_t k = 0;; ++k) {
        Int next = acc * F.member(i).element(k);
        if (next > bound) break;
        std::vector<uint64_t> saved = primes;
        for (uint64_t p : F.member(i).element_primes(k)) {
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) {
                primes.push_back(p);
            }
        }
        phi_ratio_product_walk(F, bound, i + 1, primes, next, sum, count);
        primes = std::move(saved);
    }
}

}  // namespace

Rat avg_product_phi_ratio(const SequenceFamily& F, uint64_t N) {
    if (N < 1) throw DomainError("avg_product_phi_ratio: N must be >= 1");
    require_coprime(F, "avg_product_phi_ratio");
    Rat sum(0);
    uint64_t count = 0;
    std::vector<uint64_t> primes;
    phi_ratio_product_walk(F, Int(static_cast<unsigned long>(N)), 0, primes,
                           Int(1), sum, count);
    return sum / Rat(static_cast<unsigned long>(count));
}

Rat product_mass_ratio(const SequenceFamily& F, uint64_t N) {
    if (N < 1) throw DomainError("product_mass_ratio: N must be >= 1");
    require_coprime(F, "product_mass_ratio");
    std::vector<Int> products = tuple_products_upto(F, N);
    Int sum(0);
    for (const Int& p : products) sum += p;
    Rat r(sum, Int(static_cast<unsigned long>(N)) *
                   static_cast<unsigned long>(products.size()));
    r.canonicalize();
    return r;
}

Rat avg_element_phi_ratio(const PseudoValueSequence& D, uint64_t m) {
    if (m < 1) throw DomainError("avg_element_phi_ratio: m must be >= 1");
    Rat sum(0);
    for (uint64_t k = 1; k <= m; ++k) {
        sum += D.element_phi_ratio(static_cast<size_t>(k));
    }
    return sum / Rat(static_cast<unsigned long>(m));
}

namespace {

struct TowerRange {
    uint64_t lo;
    uint64_t hi;
};

TowerRange tower_range(uint32_t block_index) {
    if (block_index > 4) {
        throw BudgetError("tower block index beyond 4 is refused");
    }
    uint64_t lo = (uint64_t(1) << (uint64_t(1) << block_index)) + 1;
    uint64_t hi = uint64_t(1) << (uint64_t(1) << (block_index + 1));
    return {lo, hi};
}

Rat exact_block_recurse(const PsiSpec& psi, const SequenceFamily* family,
                        const std::vector<uint32_t>& phi, uint64_t lo,
                        uint64_t hi) {
    if (hi - lo < 64) {
        Rat acc(0);
        for (uint64_t k = lo; k <= hi; ++k) {
            Rat pk = family ? *psi0_eval(psi, *family, k).exact
                            : *psi_eval(psi, k).exact;
            Rat term(phi[k], k);
            term.canonicalize();
            acc += pk * term;
        }
        return acc;
    }
    uint64_t mid = lo + (hi - lo) / 2;
    return exact_block_recurse(psi, family, phi, lo, mid) +
           exact_block_recurse(psi, family, phi, mid + 1, hi);
}

}  // namespace

TowerBlock tower_block_sum(const PsiSpec& psi, const SequenceFamily* family,
                           uint32_t block_index, PhiSource source,
                           uint64_t budget_entries) {
    auto [lo, hi] = tower_range(block_index);
    if (lo < psi.start_index()) {
        throw DomainError("tower_block_sum: block starts below psi start");
    }

    std::vector<uint32_t> sieve;
    if (source == PhiSource::Sieve) sieve = phi_sieve(hi, budget_entries);
    auto phi_at = [&](uint64_t k) -> uint64_t {
        return source == PhiSource::Sieve ? sieve[k] : euler_phi(k);
    };

    TowerBlock out;
    CompensatedSum acc;
    for (uint64_t k = lo; k <= hi; ++k) {
        double pk = family ? psi0_eval(psi, *family, k).value
                           : psi_eval(psi, k).value;
        acc.add(pk * (static_cast<double>(phi_at(k)) / static_cast<double>(k)));
    }
    out.value = acc.get();

    if (psi.exact_evaluable()) {
        std::vector<uint32_t> exact_phi;
        if (source == PhiSource::Sieve) {
            exact_phi = std::move(sieve);
        } else {
            exact_phi.resize(hi + 1);
            for (uint64_t k = lo; k <= hi; ++k) {
                exact_phi[k] = static_cast<uint32_t>(euler_phi(k));
            }
        }
        out.exact = exact_block_recurse(psi, family, exact_phi, lo, hi);
    }
    return out;
}

double tower_block_criterion(const PsiSpec& psi, const SequenceFamily* family,
                             uint32_t b_max, uint64_t budget_entries) {
    if (b_max > 4) throw BudgetError("tower block index beyond 4 is refused");
    double total = 0.0;
    for (uint32_t b = 1; b <= b_max; ++b) {
        double g =
            tower_block_sum(psi, family, b, PhiSource::Sieve, budget_entries)
                .value;
        if (g < 3.0) continue;
        total += std::log(g) / (static_cast<double>(b) * std::log(std::log(g)));
    }
    return total;
}

AbelCheck abel_summation_check(const PsiSpec& table_psi, const WeightKind& w,
                               uint64_t N) {
    if (table_psi.family() != PsiFamily::Table) {
        throw DomainError("abel_summation_check: psi must be a table");
    }
    uint64_t start = table_psi.start_index();
    if (N < start) throw DomainError("abel_summation_check: N below start");
    if (*table_psi.end_index() < N + 1) {
        throw DomainError("abel_summation_check: table must reach N+1");
    }
    if (!w.exact_evaluable()) {
        throw ExactPolicyError("abel_summation_check needs an exact weight");
    }

    std::vector<Rat> a;
    a.reserve(N - start + 1);
    for (uint64_t n = start; n <= N; ++n) a.push_back(w.eval_exact(n));

    AbelCheck out;
    out.lhs = 0;
    for (uint64_t n = start; n <= N; ++n) {
        out.lhs += *psi_eval(table_psi, n).exact * a[n - start];
    }

    Rat prefix(0);
    out.rhs = 0;
    for (uint64_t n = start; n <= N; ++n) {
        prefix += a[n - start];
        Rat dpsi =
            *psi_eval(table_psi, n).exact - *psi_eval(table_psi, n + 1).exact;
        out.rhs += dpsi * prefix;
    }
    out.rhs += *psi_eval(table_psi, N + 1).exact * prefix;

    out.equal = (out.lhs == out.rhs);
    return out;
}

namespace {

// Sum over tuple products P <= n of P * floor(n/P). For a mutually coprime
// family tuple lcm and tuple product agree, so this is the tuple-identity
// side of the upper sandwich bound.
Int tuple_bound_value(const std::vector<uint64_t>& products, uint64_t n) {
    Int acc(0);
    for (uint64_t p : products) {
        if (p > n) break;
        acc += static_cast<unsigned long>(p * (n / p));
    }
    return acc;
}

}  // namespace

SandwichBounds sandwich_bounds(const SequenceFamily& F, uint64_t n) {
    if (n < 1) throw DomainError("sandwich_bounds: n must be >= 1");
    require_coprime(F, "sandwich_bounds");

    SandwichBounds out;
    out.sum = 0;
    for (uint64_t j = 1; j <= n; ++j) out.sum += inverse_product_norm(F, j);
    out.count_m = nontrivial_product_tuples(F, n);

    std::vector<Int> prods = tuple_products_upto(F, n);
    std::vector<uint64_t> prods64;
    prods64.reserve(prods.size());
    for (const Int& p : prods) prods64.push_back(p.get_ui());

    Int n_int(static_cast<unsigned long>(n));
    out.literal_ok = out.sum <= n_int * static_cast<unsigned long>(out.count_m);
    out.counted_ok =
        out.sum <= n_int * static_cast<unsigned long>(out.count_m + 1);
    out.tuple_ok = out.sum <= tuple_bound_value(prods64, n);
    if (out.count_m >= 1) {
        Rat r(out.sum, n_int * static_cast<unsigned long>(out.count_m));
        r.canonicalize();
        out.ratio = r;
    }
    return out;
}

SandwichSweep sandwich_sweep(const SequenceFamily& F, uint64_t n_max) {
    if (n_max < 1) throw DomainError("sandwich_sweep: n_max must be >= 1");
    require_coprime(F, "sandwich_sweep");

    std::vector<Int> prods = tuple_products_upto(F, n_max);
    std::vector<uint64_t> prods64;
    prods64.reserve(prods.size());
    for (const Int& p : prods) prods64.push_back(p.get_ui());

    SandwichSweep out;
    Int sum(0);
    size_t le = 0;
    for (uint64_t n = 1; n <= n_max; ++n) {
        sum += inverse_product_norm(F, n);
        while (le < prods64.size() && prods64[le] <= n) ++le;
        uint64_t m = le - 1;  // products include 1, so le >= 1
        Int n_int(static_cast<unsigned long>(n));
        if (m >= 1) {
            if (sum > n_int * static_cast<unsigned long>(m)) {
                out.literal_violations.push_back(n);
            }
            Rat r(sum, n_int * static_cast<unsigned long>(m));
            r.canonicalize();
            if (!out.min_ratio || r < *out.min_ratio) {
                out.min_ratio = r;
                out.min_ratio_at = n;
            }
        }
        if (sum > n_int * static_cast<unsigned long>(m + 1)) {
            out.counted_ok = false;
        }
        if (sum > tuple_bound_value(prods64, n)) out.tuple_ok = false;
    }
    return out;
}

Rat linear_growth_ratio(const WeightKind& counter, uint64_t N) {
    if (N < 2) throw DomainError("linear_growth_ratio: N must be >= 2");
    using Tag = WeightKind::Tag;
    if (counter.tag() != Tag::FrakM && counter.tag() != Tag::MultiCount) {
        throw DomainError(
            "linear_growth_ratio: counter must be frak_m or multi_count");
    }
    BulkWeightCursor cursor(counter, N);
    Rat acc(0);
    Rat last(0);
    for (uint64_t n = 1; n <= N; ++n) {
        last = cursor.exact(n);
        acc += last;
    }
    if (acc == 0) {
        throw DomainError("linear_growth_ratio: counter vanishes on range");
    }
    return Rat(static_cast<unsigned long>(N)) * last / acc;
}

double log_weight_sup_ratio(const PseudoValueSequence& D, uint64_t N) {
    if (N < 2) throw DomainError("log_weight_sup_ratio: N must be >= 2");
    double elem_sum = 1.0;      // n_0 = 1
    double elem_log_sum = 0.0;  // n_0 * log(n_0)
    size_t index = 0;
    auto next_element = [&](size_t k) -> uint64_t {
        if (auto lim = D.element_limit()) {
            if (k >= *lim) return 0;
        }
        Int e = D.element(k);
        return e.fits_ulong_p() ? e.get_ui() : 0;
    };
    uint64_t next = next_element(1);
    double sup = 0.0;
    for (uint64_t n = 2; n <= N; ++n) {
        while (next != 0 && next <= n) {
            ++index;
            double e = static_cast<double>(next);
            elem_sum += e;
            elem_log_sum += e * std::log(e);
            next = next_element(index + 1);
        }
        double v = (elem_sum * std::log(static_cast<double>(n)) -
                    elem_log_sum) /
                   static_cast<double>(n);
        if (v > sup) sup = v;
    }
    return sup;
}

double inverse_log_block_sum(const PseudoValueSequence& D, uint32_t b) {
    if (b > 8) throw BudgetError("inverse_log_block_sum: block index beyond 8");
    Int lo = Int(1) << (uint64_t(1) << b);
    Int hi = Int(1) << (uint64_t(1) << (b + 1));
    double acc = 0.0;
    for (size_t k = 0;; ++k) {
        if (auto lim = D.element_limit()) {
            if (k >= *lim) {
                throw ExhaustedSequenceError(
                    "inverse_log_block_sum: explicit list ends inside block");
            }
        }
        Int e = D.element(k);
        if (e > hi) break;
        if (e > lo) acc += 1.0 / ln_int(e);
    }
    return acc;
}

LogLogComparison loglog_comparison(uint64_t a, uint64_t b) {
    if (a < 2 || b < a) throw DomainError("loglog_comparison: need b >= a >= 2");
    CompensatedSum acc;
    for (uint64_t n = a; n <= b; ++n) {
        double nn = static_cast<double>(n);
        acc.add(1.0 / (nn * std::log(nn)));
    }
    LogLogComparison out;
    out.sum = acc.get();
    out.integral = std::log(std::log(static_cast<double>(b + 1))) -
                   std::log(std::log(static_cast<double>(a)));
    out.ratio = out.sum / out.integral;
    return out;
}

}  // namespace pavlab
