// SPDX-License-Identifier: MIT
//
// Exact rational scalars. Thin helpers around GMP's mpq_class; everything
// symbolic in this library is carried in Rat, floats appear only at
// evaluation / integration / reporting time.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "pearsonchaos/errors.hpp"

namespace pearsonchaos {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw Error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p/q", "p", or a decimal like "-0.25" (exact).
Rat parse_rat(const std::string& text);

/// Canonical rendering: "p" or "p/q", q > 0.
std::string rat_str(const Rat& r);

inline double to_double(const Rat& r) { return r.get_d(); }

/// Exact value of the double (every finite double is rational).
inline Rat rat_from_double(double x) { return Rat(x); }

Rat rat_pow(const Rat& base, unsigned exp);

/// Binomial coefficient as an exact rational.
Rat rat_binom(unsigned n, unsigned k);

/// Exact integer factorial.
Rat rat_factorial(unsigned n);

/// True if r = (p/q)^2 for some rational; if so outputs the nonnegative root.
bool rat_sqrt_exact(const Rat& r, Rat& root);

}  // namespace pearsonchaos
