#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "locent/bigint.hpp"

namespace locent {

/// Dense row-major integer matrix; the differentials of a Koszul complex
/// restricted to one multidegree have entries in {-1, 0, 1}.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Rank over F_p by Gaussian elimination on residues.
std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p);

/// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t rank_rational(const IntMatrix& m);

/// Rank over the prime field of the given characteristic (Q for 0).
std::size_t rank_over(const IntMatrix& m, std::uint64_t characteristic);

}  // namespace locent
