#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pavlab/psi.hpp"

namespace pavlab {

// A certified distance value. Three representations:
//   Exact:    a nonnegative rational
//   Surd:     |u + v*sqrt(d)| / e with integer u, v, e>0 (sign-normalized)
//   Interval: [lo, hi], the true value lies inside
// Comparisons on Exact/Surd forms are integer sign tests and never lose;
// Interval comparisons can come back indeterminate.
class Dist {
  public:
    enum class Form { Exact, Surd, Interval };

    Dist() : form_(Form::Exact), lo_(0), hi_(0) {}
    static Dist exact(Rat v);
    static Dist surd(Int u, Int v, uint64_t d, Int e);
    static Dist interval(Rat lo, Rat hi);

    Form form() const { return form_; }
    double value() const;  // midpoint for Interval
    double lo_d() const;
    double hi_d() const;
    bool exactly_zero() const;
    std::optional<Rat> exact_value() const;  // Exact form only
    std::string str() const;

    // this <= t, tri-state (nullopt: the interval straddles t).
    std::optional<bool> leq(const Rat& t) const;
    // three-way compare, -1/0/+1; nullopt when intervals overlap.
    std::optional<int> cmp(const Dist& o) const;

  private:
    Form form_;
    Rat lo_, hi_;
    Int u_, v_, e_;
    uint64_t d_ = 0;
};

// sign of x + y*sqrt(d) for integers x, y and non-square d >= 2.
int sign_quad(const Int& x, const Int& y, uint64_t d);
// floor((a + b*sqrt(d)) / e), e > 0, by integer sqrt plus exact correction.
Int floor_quad(const Int& a, const Int& b, uint64_t d, const Int& e);

// A real number alpha in one of three exact carriers.
//   Rational:  p/q reduced
//   Quadratic: (a + b*sqrt(d))/e, b != 0, d squarefree >= 2, e > 0
//   Dyadic:    mantissa * 2^exponent with certified error 2^-precision
class RealTarget {
  public:
    enum class Kind { Rational, Quadratic, Dyadic };

    static RealTarget rational(Rat alpha);
    static RealTarget quadratic(Int a, Int b, uint64_t d, Int e);
    static RealTarget dyadic(Int mantissa, int32_t exponent,
                             uint32_t precision);

    Kind kind() const { return kind_; }
    double value() const;
    std::string describe() const;

    const Rat& rational_value() const;
    const Int& quad_a() const { return a_; }
    const Int& quad_b() const { return b_; }
    uint64_t quad_d() const { return d_; }
    const Int& quad_e() const { return e_; }
    Rat dyadic_center() const;
    Rat dyadic_error() const;

  private:
    RealTarget() = default;
    Kind kind_ = Kind::Rational;
    Rat rational_;
    Int a_, b_, e_;
    uint64_t d_ = 0;
    Int mantissa_;
    int32_t exponent_ = 0;
    uint32_t precision_ = 0;
};

inline constexpr uint64_t kCoprimeScanCap = 1000000;

struct NearestResult {
    Int p;
    Dist dist;
};

// Nearest integer to n*alpha and the distance; ties go to the smaller p.
// Dyadic targets throw PrecisionError when the error bar straddles a
// half-integer (the nearest integer is then not identified).
NearestResult dist_to_integers(const RealTarget& alpha, uint64_t n);

// Distance from n*alpha to the nearest integer p with gcd(n, p) = 1:
// outward scan from the nearest integer, first coprime candidate on each
// side, closer one wins (tie: smaller p). ScanCapError past the scan cap.
NearestResult coprime_dist(const RealTarget& alpha, uint64_t n);

struct SolutionRecord {
    uint64_t n = 0;
    Int p;
    Rat product_norm;        // prod_i |n|_{D_i}
    Dist dist;               // |n*alpha - p|
    double value = 0.0;      // product_norm * dist
    double psi_n = 0.0;
    double slack = 0.0;      // psi_n - value
    bool indeterminate = false;
};

// All (n, p) with psi.start_index() <= n <= n_max, gcd(n, p) = 1 and
// product_norm * |n*alpha - p| <= psi(n), ascending (n, p). Entries whose
// membership cannot be certified either way are kept and flagged
// indeterminate instead of aborting the sweep.
std::vector<SolutionRecord> enumerate_solutions(const RealTarget& alpha,
                                                const PsiSpec& psi,
                                                const SequenceFamily& F,
                                                uint64_t n_max);

struct LiminfCheckpoint {
    uint64_t n = 0;
    double min_lo = 0.0;
    double min_hi = 0.0;
    bool interval = false;      // lo < hi: precision left a gap
    bool exactly_zero = false;  // the running min is exactly zero
};

// Running minimum over 3 <= n <= n_max of
//   n * frak_m(n) * (log n)^(1+eps) * |n|_D * coprime_dist(n, alpha),
// checkpointed at powers of two and at n_max. A per-n precision failure
// widens the running interval to [0, current] rather than aborting.
std::vector<LiminfCheckpoint> running_liminf(const RealTarget& alpha,
                                             const PseudoValueSequence& D,
                                             const Rat& eps, uint64_t n_max);

}
