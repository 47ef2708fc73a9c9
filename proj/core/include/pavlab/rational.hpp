#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "pavlab/errors.hpp"

namespace pavlab {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, unsigned long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline double to_double(const Rat& r) { return r.get_d(); }

// "num/den" with a canonical positive denominator, e.g. "5/2", "-1/3", "7/1".
// The denominator is always printed so CSV cells parse uniformly.
std::string rat_str(const Rat& r);

std::string int_str(const Int& v);

// Shortest-round-trip style fixed formatting: 17 significant digits.
std::string float17(double x);

// Exact conversion of a finite double into a rational (binary expansion).
Rat rat_from_double(double x);

// Parses "num/den", "num", or a decimal like "0.125" (exact power-of-ten
// denominator). Throws ConfigError on anything else.
Rat parse_rat(const std::string& text);

uint64_t to_u64_checked(const Int& v, const char* what);

}
