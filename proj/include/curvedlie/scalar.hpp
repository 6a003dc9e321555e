#pragma once

// Exact rational scalars backed by GMP.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace curvedlie {

/// Exact rational number, always canonical (lowest terms, positive denominator).
using Scalar = mpq_class;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Scalar& s);

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input or zero denominator.
Scalar parse_scalar(std::string_view text);

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

/// (-1)^n for an integer exponent.
inline int sign_pow(long n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace curvedlie
