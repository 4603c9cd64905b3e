#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace approxdeg {

/// Exact rational scalar used throughout the toolkit. All degree bounds,
/// witness values and LP solutions are computed in this type; no floating
/// point enters any certificate path.
using Rat = mpq_class;

/// Parses a rational literal of the form "p/q" or "p" (decimal notation is
/// rejected). Throws UsageError on malformed input or zero denominator.
Rat parse_rat(const std::string& text);

/// Canonical "p/q" rendering ("p" when the denominator is 1).
std::string rat_str(const Rat& value);

inline Rat rat_abs(const Rat& value) {
    return value < 0 ? Rat(-value) : value;
}

Rat rat_floor(const Rat& value);

/// Largest integer k with k <= value; value must be >= 0 and fit in long.
long rat_floor_long(const Rat& value);

/// Smallest integer k with k >= value; must fit in long.
long rat_ceil_long(const Rat& value);

Rat rat_pow(const Rat& base, unsigned long exp);

Rat binomial(unsigned long n, unsigned long k);

Rat factorial(unsigned long n);

double rat_to_double(const Rat& value);

}  // namespace approxdeg
