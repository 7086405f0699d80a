#include "locent/bigint.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace locent {

double log_natural(const Natural& n) {
  if (sgn(n) <= 0) throw std::domain_error("log of a non-positive integer");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, n.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

std::string to_string(const Natural& n) { return n.get_str(10); }

Natural parse_natural(std::string_view digits) {
  if (digits.empty()) throw std::invalid_argument("empty integer");
  for (char c : digits)
    if (c < '0' || c > '9') throw std::invalid_argument("not a nonnegative integer: " + std::string(digits));
  return Natural(std::string(digits), 10);
}

std::int64_t to_int64(const Natural& n) {
  if (!n.fits_slong_p()) throw std::overflow_error("integer " + to_string(n) + " exceeds 64 bits");
  return static_cast<std::int64_t>(n.get_si());
}

}  // namespace locent
