#include "pavlab/approx.hpp"

#include <cmath>
#include <sstream>

#include "pavlab/arith.hpp"
#include "pavlab/errors.hpp"

namespace pavlab {

int sign_quad(const Int& x, const Int& y, uint64_t d) {
    int sx = sgn(x);
    int sy = sgn(y);
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    // Opposite signs: compare x^2 against y^2 d; the larger magnitude wins.
    Int xx = x * x;
    Int yy = y * y * static_cast<unsigned long>(d);
    int c = cmp(xx, yy);
    if (c == 0) {
        // x^2 = y^2 d would make sqrt(d) rational; d is non-square here,
        // so this cannot happen with y != 0.
        throw DomainError("sign_quad: d must not be a perfect square");
    }
    return (c > 0) ? sx : sy;
}

Int floor_quad(const Int& a, const Int& b, uint64_t d, const Int& e) {
    if (e <= 0) throw DomainError("floor_quad: denominator must be positive");
    Int s;
    {
        Int bb = b * b * static_cast<unsigned long>(d);
        mpz_sqrt(s.get_mpz_t(), bb.get_mpz_t());
    }
    Int num = (b >= 0) ? Int(a + s) : Int(a - s - 1);
    Int m;
    mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), e.get_mpz_t());

    auto sign_t_minus = [&](const Int& x) {
        return sign_quad(a - x * e, b, d);
    };
    for (int i = 0; i < 64 && sign_t_minus(m + 1) >= 0; ++i) m += 1;
    for (int i = 0; i < 64 && sign_t_minus(m) < 0; ++i) m -= 1;
    if (sign_t_minus(m) < 0 || sign_t_minus(m + 1) >= 0) {
        throw DomainError("floor_quad: correction did not converge");
    }
    return m;
}

Dist Dist::exact(Rat v) {
    if (v < 0) throw DomainError("Dist::exact: negative distance");
    Dist out;
    out.form_ = Form::Exact;
    out.lo_ = v;
    out.hi_ = std::move(v);
    return out;
}

Dist Dist::surd(Int u, Int v, uint64_t d, Int e) {
    if (e <= 0) throw DomainError("Dist::surd: denominator must be positive");
    if (sign_quad(u, v, d) < 0) {
        u = -u;
        v = -v;
    }
    Dist out;
    out.form_ = Form::Surd;
    out.u_ = std::move(u);
    out.v_ = std::move(v);
    out.e_ = std::move(e);
    out.d_ = d;
    return out;
}

Dist Dist::interval(Rat lo, Rat hi) {
    if (lo < 0 || hi < lo) throw DomainError("Dist::interval: bad bounds");
    Dist out;
    out.form_ = Form::Interval;
    out.lo_ = std::move(lo);
    out.hi_ = std::move(hi);
    return out;
}

double Dist::value() const {
    switch (form_) {
        case Form::Exact:
            return to_double(lo_);
        case Form::Surd:
            return (to_double(Rat(u_)) +
                    to_double(Rat(v_)) * std::sqrt(static_cast<double>(d_))) /
                   to_double(Rat(e_));
        case Form::Interval:
            return to_double((lo_ + hi_) / 2);
    }
    return 0.0;
}

double Dist::lo_d() const {
    return form_ == Form::Interval ? to_double(lo_) : value();
}

double Dist::hi_d() const {
    return form_ == Form::Interval ? to_double(hi_) : value();
}

bool Dist::exactly_zero() const {
    switch (form_) {
        case Form::Exact:
            return lo_ == 0;
        case Form::Surd:
            return u_ == 0 && v_ == 0;
        case Form::Interval:
            return lo_ == 0 && hi_ == 0;
    }
    return false;
}

std::optional<Rat> Dist::exact_value() const {
    if (form_ == Form::Exact) return lo_;
    if (form_ == Form::Surd && v_ == 0) {
        Rat r(u_, e_);
        r.canonicalize();
        return r;
    }
    return std::nullopt;
}

std::string Dist::str() const {
    std::ostringstream os;
    switch (form_) {
        case Form::Exact:
            os << rat_str(lo_);
            break;
        case Form::Surd:
            os << "(" << int_str(u_) << "+" << int_str(v_) << "*sqrt(" << d_
               << "))/" << int_str(e_);
            break;
        case Form::Interval:
            os << "[" << rat_str(lo_) << "," << rat_str(hi_) << "]";
            break;
    }
    return os.str();
}

std::optional<bool> Dist::leq(const Rat& t) const {
    switch (form_) {
        case Form::Exact:
            return lo_ <= t;
        case Form::Surd: {
            // (u + v sqrt d)/e <= tn/td  <=>  td(u + v sqrt d) - tn e <= 0
            Int tn = t.get_num();
            Int td = t.get_den();
            return sign_quad(td * u_ - tn * e_, td * v_, d_) <= 0;
        }
        case Form::Interval:
            if (hi_ <= t) return true;
            if (lo_ > t) return false;
            return std::nullopt;
    }
    return std::nullopt;
}

std::optional<int> Dist::cmp(const Dist& o) const {
    auto box = [](const Dist& a) -> std::optional<std::pair<Rat, Rat>> {
        if (a.form_ == Form::Exact) return std::make_pair(a.lo_, a.lo_);
        if (a.form_ == Form::Interval) return std::make_pair(a.lo_, a.hi_);
        return std::nullopt;
    };
    if (form_ == Form::Surd && o.form_ == Form::Surd) {
        if (d_ != o.d_) {
            throw DomainError("Dist::cmp: mixed quadratic fields");
        }
        // Both values nonnegative: compare e2(u1+v1 s) vs e1(u2+v2 s).
        int s = sign_quad(o.e_ * u_ - e_ * o.u_, o.e_ * v_ - e_ * o.v_, d_);
        return s;
    }
    if (form_ == Form::Surd || o.form_ == Form::Surd) {
        const Dist& sd = (form_ == Form::Surd) ? *this : o;
        const Dist& rd = (form_ == Form::Surd) ? o : *this;
        auto rb = box(rd);
        if (!rb || rb->first != rb->second) {
            throw DomainError("Dist::cmp: surd against interval");
        }
        // sign(surd - r), r = rn/rd: sign(rden*u + rden*v sqrt d - rn*e).
        Int rn = rb->first.get_num();
        Int rden = rb->first.get_den();
        int s = sign_quad(rden * sd.u_ - rn * sd.e_, rden * sd.v_, sd.d_);
        return (form_ == Form::Surd) ? s : -s;
    }
    auto ab = box(*this);
    auto bb = box(o);
    if (ab->second < bb->first) return -1;
    if (bb->second < ab->first) return 1;
    if (ab->first == ab->second && bb->first == bb->second) return 0;
    return std::nullopt;
}

RealTarget RealTarget::rational(Rat alpha) {
    alpha.canonicalize();
    RealTarget out;
    out.kind_ = Kind::Rational;
    out.rational_ = std::move(alpha);
    return out;
}

RealTarget RealTarget::quadratic(Int a, Int b, uint64_t d, Int e) {
    if (b == 0) throw DomainError("quadratic target: b must be nonzero");
    if (e == 0) throw DomainError("quadratic target: e must be nonzero");
    if (d < 2) throw DomainError("quadratic target: d must be >= 2");
    for (const auto& [p, k] : factorize(d)) {
        (void)p;
        if (k > 1) throw DomainError("quadratic target: d must be squarefree");
    }
    if (e < 0) {
        a = -a;
        b = -b;
        e = -e;
    }
    Int g = gcd(gcd(a, b), e);
    if (g > 1) {
        a /= g;
        b /= g;
        e /= g;
    }
    RealTarget out;
    out.kind_ = Kind::Quadratic;
    out.a_ = std::move(a);
    out.b_ = std::move(b);
    out.d_ = d;
    out.e_ = std::move(e);
    return out;
}

RealTarget RealTarget::dyadic(Int mantissa, int32_t exponent,
                              uint32_t precision) {
    if (precision < 1 || precision > 16384) {
        throw DomainError("dyadic target: precision out of range [1, 16384]");
    }
    RealTarget out;
    out.kind_ = Kind::Dyadic;
    out.mantissa_ = std::move(mantissa);
    out.exponent_ = exponent;
    out.precision_ = precision;
    return out;
}

const Rat& RealTarget::rational_value() const {
    if (kind_ != Kind::Rational) {
        throw DomainError("target is not rational");
    }
    return rational_;
}

Rat RealTarget::dyadic_center() const {
    if (kind_ != Kind::Dyadic) throw DomainError("target is not dyadic");
    Rat c(mantissa_);
    if (exponent_ >= 0) {
        mpq_mul_2exp(c.get_mpq_t(), c.get_mpq_t(),
                     static_cast<unsigned long>(exponent_));
    } else {
        mpq_div_2exp(c.get_mpq_t(), c.get_mpq_t(),
                     static_cast<unsigned long>(-static_cast<int64_t>(exponent_)));
    }
    return c;
}

Rat RealTarget::dyadic_error() const {
    if (kind_ != Kind::Dyadic) throw DomainError("target is not dyadic");
    Rat e(1);
    mpq_div_2exp(e.get_mpq_t(), e.get_mpq_t(), precision_);
    return e;
}

double RealTarget::value() const {
    switch (kind_) {
        case Kind::Rational:
            return to_double(rational_);
        case Kind::Quadratic:
            return (to_double(Rat(a_)) +
                    to_double(Rat(b_)) * std::sqrt(static_cast<double>(d_))) /
                   to_double(Rat(e_));
        case Kind::Dyadic:
            return to_double(dyadic_center());
    }
    return 0.0;
}

std::string RealTarget::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Rational:
            os << "rational(" << rat_str(rational_) << ")";
            break;
        case Kind::Quadratic:
            os << "quadratic((" << int_str(a_) << "+" << int_str(b_)
               << "*sqrt(" << d_ << "))/" << int_str(e_) << ")";
            break;
        case Kind::Dyadic:
            os << "dyadic(" << int_str(mantissa_) << ";" << exponent_ << ";"
               << precision_ << ")";
            break;
    }
    return os.str();
}

namespace {

Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(),
               x.get_den().get_mpz_t());
    return q;
}

Int ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(),
               x.get_den().get_mpz_t());
    return q;
}

// Nearest integer to a rational, half-way cases to the SMALLER integer:
// round(t) = ceil((2 tn - td) / (2 td)).
Int round_half_down(const Rat& t) {
    Int num = 2 * t.get_num() - t.get_den();
    Int den = 2 * t.get_den();
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

struct DyadicProduct {
    Rat center;  // n * center(alpha)
    Rat err;     // n * 2^-precision
};

DyadicProduct dyadic_product(const RealTarget& alpha, uint64_t n) {
    Rat nn(static_cast<unsigned long>(n));
    return {alpha.dyadic_center() * nn, alpha.dyadic_error() * nn};
}

// True when some half-integer j + 1/2 lies inside [c - err, c + err]
// (endpoints included; a touching endpoint already spoils certainty).
bool straddles_half_integer(const Rat& c, const Rat& err) {
    Int j_lo = ceil_rat(2 * (c - err));
    Int j_hi = floor_rat(2 * (c + err));
    if (j_lo > j_hi) return false;
    if (mpz_odd_p(j_lo.get_mpz_t())) return true;
    return j_lo < j_hi;
}

Dist dyadic_dist_to(const DyadicProduct& t, const Int& p) {
    Rat mid = abs_rat(t.center - Rat(p));
    Rat lo = mid - t.err;
    if (lo < 0) lo = 0;
    return Dist::interval(std::move(lo), mid + t.err);
}

}  // namespace

NearestResult dist_to_integers(const RealTarget& alpha, uint64_t n) {
    if (n < 1) throw DomainError("dist_to_integers: n must be >= 1");
    switch (alpha.kind()) {
        case RealTarget::Kind::Rational: {
            Rat t = alpha.rational_value() * Rat(static_cast<unsigned long>(n));
            Int p = round_half_down(t);
            return {p, Dist::exact(abs_rat(t - Rat(p)))};
        }
        case RealTarget::Kind::Quadratic: {
            Int A = alpha.quad_a() * static_cast<unsigned long>(n);
            Int B = alpha.quad_b() * static_cast<unsigned long>(n);
            uint64_t d = alpha.quad_d();
            const Int& E = alpha.quad_e();
            Int m = floor_quad(A, B, d, E);
            // fractional part vs 1/2: sign of 2(A - mE) - E + 2B sqrt(d)
            int s = sign_quad(2 * (A - m * E) - E, 2 * B, d);
            Int p = (s > 0) ? Int(m + 1) : m;
            return {p, Dist::surd(A - p * E, B, d, E)};
        }
        case RealTarget::Kind::Dyadic: {
            DyadicProduct t = dyadic_product(alpha, n);
            if (straddles_half_integer(t.center, t.err)) {
                throw PrecisionError(
                    "dyadic precision cannot identify the nearest integer");
            }
            Int p = round_half_down(t.center);
            return {p, dyadic_dist_to(t, p)};
        }
    }
    throw DomainError("dist_to_integers: unhandled target kind");
}

namespace {

Dist target_dist_to(const RealTarget& alpha, uint64_t n, const Int& p) {
    switch (alpha.kind()) {
        case RealTarget::Kind::Rational: {
            Rat t = alpha.rational_value() * Rat(static_cast<unsigned long>(n));
            return Dist::exact(abs_rat(t - Rat(p)));
        }
        case RealTarget::Kind::Quadratic: {
            Int A = alpha.quad_a() * static_cast<unsigned long>(n);
            Int B = alpha.quad_b() * static_cast<unsigned long>(n);
            return Dist::surd(A - p * alpha.quad_e(), B, alpha.quad_d(),
                              alpha.quad_e());
        }
        case RealTarget::Kind::Dyadic:
            return dyadic_dist_to(dyadic_product(alpha, n), p);
    }
    throw DomainError("target_dist_to: unhandled target kind");
}

bool coprime_to(uint64_t n, const Int& p) {
    Int g = gcd(Int(static_cast<unsigned long>(n)), p);
    return g == 1;
}

}  // namespace

NearestResult coprime_dist(const RealTarget& alpha, uint64_t n) {
    NearestResult nearest = dist_to_integers(alpha, n);
    if (coprime_to(n, nearest.p)) return nearest;

    std::optional<Int> lo, hi;
    for (uint64_t k = 1; k <= kCoprimeScanCap; ++k) {
        if (!lo) {
            Int cand = nearest.p - static_cast<unsigned long>(k);
            if (coprime_to(n, cand)) lo = cand;
        }
        if (!hi) {
            Int cand = nearest.p + static_cast<unsigned long>(k);
            if (coprime_to(n, cand)) hi = cand;
        }
        if (lo && hi) break;
    }
    if (!lo || !hi) {
        throw ScanCapError("coprime_dist: no coprime integer within scan cap");
    }
    Dist dlo = target_dist_to(alpha, n, *lo);
    Dist dhi = target_dist_to(alpha, n, *hi);
    auto c = dlo.cmp(dhi);
    if (!c) {
        throw PrecisionError(
            "precision insufficient to order coprime candidates");
    }
    if (*c <= 0) return {*lo, std::move(dlo)};
    return {*hi, std::move(dhi)};
}

namespace {

struct CandidateWindow {
    Int p_lo;
    Int p_hi;  // inclusive; empty when p_lo > p_hi
};

CandidateWindow candidate_window(const RealTarget& alpha, uint64_t n,
                                 const Rat& theta_hi) {
    switch (alpha.kind()) {
        case RealTarget::Kind::Rational: {
            Rat t = alpha.rational_value() * Rat(static_cast<unsigned long>(n));
            return {ceil_rat(t - theta_hi), floor_rat(t + theta_hi)};
        }
        case RealTarget::Kind::Quadratic: {
            Int hn = theta_hi.get_num();
            Int hd = theta_hi.get_den();
            Int A = alpha.quad_a() * static_cast<unsigned long>(n);
            Int B = alpha.quad_b() * static_cast<unsigned long>(n);
            uint64_t d = alpha.quad_d();
            const Int& E = alpha.quad_e();
            Int hi = floor_quad(A * hd + hn * E, B * hd, d, E * hd);
            // t - theta is irrational, so its ceiling is floor + 1.
            Int lo = floor_quad(A * hd - hn * E, B * hd, d, E * hd) + 1;
            return {std::move(lo), std::move(hi)};
        }
        case RealTarget::Kind::Dyadic: {
            DyadicProduct t = dyadic_product(alpha, n);
            return {ceil_rat(t.center - t.err - theta_hi),
                    floor_rat(t.center + t.err + theta_hi)};
        }
    }
    throw DomainError("candidate_window: unhandled target kind");
}

}  // namespace

std::vector<SolutionRecord> enumerate_solutions(const RealTarget& alpha,
                                                const PsiSpec& psi,
                                                const SequenceFamily& F,
                                                uint64_t n_max) {
    if (n_max < psi.start_index()) {
        throw DomainError("enumerate_solutions: n_max below psi start");
    }
    std::vector<SolutionRecord> out;
    for (uint64_t n = psi.start_index(); n <= n_max; ++n) {
        Rat prod_norm = product_pseudo_norm(F, n);
        PsiValue pv = psi_eval(psi, n);
        PsiValue p0 = psi0_eval(psi, F, n);

        Rat theta_lo, theta_hi;
        if (p0.exact) {
            theta_lo = *p0.exact;
            theta_hi = *p0.exact;
        } else {
            // Certainty margin: 1e-9 relative, far above the tracked
            // evaluation error; the gap is reported as indeterminate.
            theta_lo = rat_from_double(p0.value * (1.0 - 1e-9));
            theta_hi = rat_from_double(p0.value * (1.0 + 1e-9));
            if (theta_lo < 0) theta_lo = 0;
        }
        if (theta_hi < 0) continue;

        CandidateWindow win = candidate_window(alpha, n, theta_hi);
        if (win.p_lo > win.p_hi) continue;
        if (Int(win.p_hi - win.p_lo) > 20000) {
            throw BudgetError("enumerate_solutions: window too wide");
        }
        for (Int p = win.p_lo; p <= win.p_hi; p += 1) {
            if (!coprime_to(n, p)) continue;
            Dist dist = target_dist_to(alpha, n, p);
            auto surely_in = dist.leq(theta_lo);
            auto maybe_in = dist.leq(theta_hi);
            bool certain = surely_in && *surely_in;
            bool excluded = maybe_in && !*maybe_in;
            if (excluded) continue;
            if (!certain && p0.exact && dist.form() != Dist::Form::Interval) {
                // Exact threshold and exact distance: leq was decisive,
                // so !certain means the point is out.
                continue;
            }
            SolutionRecord rec;
            rec.n = n;
            rec.p = p;
            rec.product_norm = prod_norm;
            rec.dist = dist;
            rec.value = to_double(prod_norm) * dist.value();
            rec.psi_n = pv.value;
            rec.slack = rec.psi_n - rec.value;
            rec.indeterminate = !certain;
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::vector<LiminfCheckpoint> running_liminf(const RealTarget& alpha,
                                             const PseudoValueSequence& D,
                                             const Rat& eps, uint64_t n_max) {
    if (n_max < 3) throw DomainError("running_liminf: n_max must be >= 3");
    if (eps < 0) throw DomainError("running_liminf: eps must be >= 0");
    double exp_log = 1.0 + to_double(eps);

    std::vector<LiminfCheckpoint> out;
    double min_lo = std::numeric_limits<double>::infinity();
    double min_hi = std::numeric_limits<double>::infinity();
    bool zero = false;
    for (uint64_t n = 3; n <= n_max; ++n) {
        if (!zero) {
            double factor = static_cast<double>(n) * D.totient_ratio_sum_d(n) *
                            std::pow(std::log(static_cast<double>(n)), exp_log) *
                            to_double(D.norm(n).value());
            double q_lo, q_hi;
            bool q_zero = false;
            try {
                NearestResult r = coprime_dist(alpha, n);
                q_lo = factor * r.dist.lo_d();
                q_hi = factor * r.dist.hi_d();
                q_zero = r.dist.exactly_zero();
            } catch (const PrecisionError&) {
                q_lo = 0.0;
                q_hi = std::numeric_limits<double>::infinity();
            }
            if (q_zero) zero = true;
            if (q_lo < min_lo) min_lo = q_lo;
            if (q_hi < min_hi) min_hi = q_hi;
        }
        if (zero) {
            min_lo = 0.0;
            min_hi = 0.0;
        }
        bool is_pow2 = (n & (n - 1)) == 0;
        if (is_pow2 || n == n_max) {
            LiminfCheckpoint cp;
            cp.n = n;
            cp.min_lo = min_lo;
            cp.min_hi = min_hi;
            cp.interval = min_lo < min_hi;
            cp.exactly_zero = zero;
            out.push_back(cp);
        }
    }
    return out;
}

}  // namespace pavlab
