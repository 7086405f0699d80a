#pragma once

// Small brute-force oracles shared by the unit tests. They deliberately
// avoid the library algorithms they are used to check.

#include <cstdint>
#include <utility>
#include <random>
#include <stdexcept>
#include <vector>

#include "locent/monomial.hpp"

namespace locent::testing {

inline std::vector<long> small_entries(const ExponentVector& v) {
  std::vector<long> out;
  for (const auto& e : v.entries()) out.push_back(e.get_si());
  return out;
}

// Counts every point of the pure-power box not divisible by any generator.
inline Natural naive_colength(const MonomialIdeal& ideal) {
  const std::size_t d = ideal.dim();
  std::vector<long> bound(d, -1);
  std::vector<std::vector<long>> gens;
  for (const auto& g : ideal.generators()) {
    gens.push_back(small_entries(g));
    std::size_t nonzero = 0, at = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (gens.back()[i] != 0) ++nonzero, at = i;
    if (nonzero == 1 && (bound[at] < 0 || gens.back()[at] < bound[at])) bound[at] = gens.back()[at];
  }
  for (long b : bound)
    if (b < 0) throw std::invalid_argument("naive_colength: not m-primary");
  std::vector<long> point(d, 0);
  Natural count = 0;
  while (true) {
    bool inside = false;
    for (const auto& g : gens) {
      bool div = true;
      for (std::size_t i = 0; i < d && div; ++i) div = g[i] <= point[i];
      if (div) {
        inside = true;
        break;
      }
    }
    if (!inside) ++count;
    std::size_t i = 0;
    while (i < d && ++point[i] == bound[i]) point[i++] = 0;
    if (i == d) break;
  }
  return count;
}

// Pure powers X_i^{b_i} with 1 <= b_i <= max_power plus up to `extra`
// random mixed generators.
inline MonomialIdeal random_m_primary(std::mt19937_64& rng, std::size_t d, long max_power, int extra) {
  std::vector<ExponentVector> gens;
  for (std::size_t i = 0; i < d; ++i)
    gens.push_back(ExponentVector::pure_power(d, i, Natural(static_cast<unsigned long>(1 + rng() % max_power))));
  const int count = static_cast<int>(rng() % (extra + 1));
  for (int k = 0; k < count; ++k) {
    std::vector<Natural> e;
    for (std::size_t i = 0; i < d; ++i) e.emplace_back(static_cast<unsigned long>(rng() % max_power));
    ExponentVector v(std::move(e));
    if (!v.is_zero()) gens.push_back(std::move(v));
  }
  return minimalize(std::move(gens), d);
}

// Rank over F_p by plain row reduction; p must be below 2^31.
inline std::size_t brute_rank(std::vector<std::vector<std::int64_t>> rows, std::int64_t p) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (auto& r : rows)
    for (auto& x : r) x = ((x % p) + p) % p;
  auto inverse = [p](std::int64_t a) {
    std::int64_t result = 1, e = p - 2;
    while (e > 0) {
      if (e & 1) result = result * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return result;
  };
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const std::int64_t inv = inverse(rows[rank][c]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const std::int64_t f = rows[r][c] * inv % p;
      for (std::size_t k = c; k < cols; ++k) rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// Koszul homology lengths by direct enumeration of every multidegree in the
// box [0, side)^d. Returns the lengths indexed by k = -degree. Nothing from
// the library's Koszul code is used.
inline std::vector<std::int64_t> brute_koszul_homology(const std::vector<std::vector<long>>& seq,
                                                       const std::vector<std::vector<long>>& quotient,
                                                       std::size_t d, long side, std::int64_t p) {
  const std::size_t m = seq.size();
  const std::uint32_t subsets = 1u << m;
  std::vector<std::vector<long>> shift(subsets, std::vector<long>(d, 0));
  for (std::uint32_t s = 0; s < subsets; ++s)
    for (std::size_t i = 0; i < m; ++i)
      if (s >> i & 1u)
        for (std::size_t c = 0; c < d; ++c) shift[s][c] += seq[i][c];
  std::vector<std::int64_t> total(m + 1, 0);
  std::vector<long> v(d, 0);
  while (true) {
    // Active basis vectors per size k, with their position.
    std::vector<std::vector<std::uint32_t>> active(m + 1);
    std::vector<long> index(subsets, -1);
    for (std::uint32_t s = 0; s < subsets; ++s) {
      std::vector<long> mono(d);
      bool ok = true;
      for (std::size_t c = 0; c < d && ok; ++c) ok = (mono[c] = v[c] - shift[s][c]) >= 0;
      for (const auto& g : quotient) {
        if (!ok) break;
        bool div = true;
        for (std::size_t c = 0; c < d && div; ++c) div = g[c] <= mono[c];
        if (div) ok = false;
      }
      if (!ok) continue;
      const auto k = static_cast<std::size_t>(__builtin_popcount(s));
      index[s] = static_cast<long>(active[k].size());
      active[k].push_back(s);
    }
    // rank of the map from size k to size k - 1.
    std::vector<std::size_t> rank(m + 2, 0);
    for (std::size_t k = 1; k <= m; ++k) {
      if (active[k].empty() || active[k - 1].empty()) continue;
      std::vector<std::vector<std::int64_t>> mat(active[k].size(), std::vector<std::int64_t>(active[k - 1].size(), 0));
      for (std::size_t r = 0; r < active[k].size(); ++r) {
        const std::uint32_t s = active[k][r];
        int pos = 0;
        for (std::size_t i = 0; i < m; ++i) {
          if (!(s >> i & 1u)) continue;
          const std::uint32_t t = s & ~(1u << i);
          if (index[t] >= 0) mat[r][static_cast<std::size_t>(index[t])] = (pos % 2 == 0) ? 1 : -1;
          ++pos;
        }
      }
      rank[k] = brute_rank(std::move(mat), p);
    }
    for (std::size_t k = 0; k <= m; ++k)
      total[k] += static_cast<std::int64_t>(active[k].size() - rank[k] - rank[k + 1]);
    std::size_t c = 0;
    while (c < d && ++v[c] == side) v[c++] = 0;
    if (c == d) break;
  }
  return total;
}

}  // namespace locent::testing
