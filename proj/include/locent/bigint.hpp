#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace locent {

/// Arbitrary-precision nonnegative integer used for exponents and lengths.
using Natural = mpz_class;

/// Natural logarithm of a positive integer of any size.
///
/// Splits n = m * 2^e with m in [0.5, 1) and returns log(m) + e * log(2),
/// so the result carries the relative accuracy of a double (well below 1e-12)
/// regardless of how many bits n has. Throws std::domain_error for n <= 0.
double log_natural(const Natural& n);

std::string to_string(const Natural& n);

/// Parses a run of decimal digits. Throws std::invalid_argument otherwise.
Natural parse_natural(std::string_view digits);

/// Narrowing conversion; throws std::overflow_error when n does not fit.
std::int64_t to_int64(const Natural& n);

}  // namespace locent
