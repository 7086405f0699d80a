#include "locent/linalg.hpp"

#include <utility>

namespace locent {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  __extension__ using u128 = unsigned __int128;
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p) {
  const std::size_t rows = m.rows, cols = m.cols;
  std::vector<std::uint64_t> a(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    const std::int64_t v = m.data[i];
    const std::uint64_t mag = static_cast<std::uint64_t>(v < 0 ? -v : v) % p;
    a[i] = (v < 0 && mag) ? p - mag : mag;
  }
  auto at = [&](std::size_t r, std::size_t c) -> std::uint64_t& { return a[r * cols + c]; };

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && at(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t k = 0; k < cols; ++k) std::swap(at(pivot, k), at(rank, k));
    // Fermat inverse; p is prime.
    const std::uint64_t inv = pow_mod(at(rank, c), p - 2, p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (at(r, c) == 0) continue;
      const std::uint64_t f = mul_mod(at(r, c), inv, p);
      for (std::size_t k = c; k < cols; ++k) {
        const std::uint64_t sub = mul_mod(f, at(rank, k), p);
        at(r, k) = at(r, k) >= sub ? at(r, k) - sub : at(r, k) + p - sub;
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_rational(const IntMatrix& m) {
  const std::size_t rows = m.rows, cols = m.cols;
  std::vector<Natural> a(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) a[i] = static_cast<long>(m.data[i]);
  auto at = [&](std::size_t r, std::size_t c) -> Natural& { return a[r * cols + c]; };

  Natural prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && sgn(at(pivot, c)) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t k = 0; k < cols; ++k) std::swap(at(pivot, k), at(rank, k));
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        at(r, k) = at(rank, c) * at(r, k) - at(r, c) * at(rank, k);
        // Bareiss: the division by the previous pivot is exact.
        mpz_divexact(at(r, k).get_mpz_t(), at(r, k).get_mpz_t(), prev.get_mpz_t());
      }
      at(r, c) = 0;
    }
    prev = at(rank, c);
    ++rank;
  }
  return rank;
}

std::size_t rank_over(const IntMatrix& m, std::uint64_t characteristic) {
  if (m.rows == 0 || m.cols == 0) return 0;
  return characteristic == 0 ? rank_rational(m) : rank_mod_p(m, characteristic);
}

}  // namespace locent
