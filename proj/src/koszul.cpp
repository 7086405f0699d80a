#include "locent/koszul.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

#include "locent/errors.hpp"
#include "locent/linalg.hpp"
#include "locent/parallel.hpp"

namespace locent {

namespace {

constexpr std::size_t kMaxSequenceLength = 16;

std::size_t popcount(std::uint32_t s) { return static_cast<std::size_t>(std::popcount(s)); }

// Position of element i among the members of S in increasing order.
int position_in(std::uint32_t subset, std::size_t i) {
  return std::popcount(subset & ((std::uint32_t{1} << i) - 1));
}

std::int64_t saturating_int64(const Natural& n) {
  return n.fits_slong_p() ? static_cast<std::int64_t>(n.get_si()) : std::numeric_limits<std::int64_t>::max();
}

// Integer view of a complex used by the per-multidegree kernels.
struct Workspace {
  std::size_t m = 0;
  std::size_t d = 0;
  std::uint64_t characteristic = 0;
  std::vector<std::vector<std::int64_t>> shifts;  // indexed by subset mask
  std::vector<std::vector<std::int64_t>> quotient;

  explicit Workspace(const KoszulComplex& complex)
      : m(complex.length()), d(complex.ring().dim()), characteristic(complex.ring().characteristic()) {
    const std::uint32_t subsets = std::uint32_t{1} << m;
    shifts.assign(subsets, std::vector<std::int64_t>(d, 0));
    for (std::uint32_t s = 1; s < subsets; ++s) {
      const auto low = static_cast<std::size_t>(std::countr_zero(s));
      const auto& x = complex.sequence()[low];
      const auto& rest = shifts[s & (s - 1)];
      for (std::size_t c = 0; c < d; ++c) {
        if (!x[c].fits_slong_p()) throw SearchRegionExceeded("sequence exponents exceed 64 bits");
        shifts[s][c] = rest[c] + static_cast<std::int64_t>(x[c].get_si());
      }
    }
    for (const auto& g : complex.ring().quotient().generators()) {
      std::vector<std::int64_t> e(d);
      for (std::size_t c = 0; c < d; ++c) e[c] = saturating_int64(g[c]);
      quotient.push_back(std::move(e));
    }
  }

  bool in_quotient(const std::vector<std::int64_t>& w) const {
    for (const auto& g : quotient) {
      bool divides = true;
      for (std::size_t c = 0; c < d; ++c)
        if (g[c] > w[c]) {
          divides = false;
          break;
        }
      if (divides) return true;
    }
    return false;
  }

  // dim H^{-k}_v for k = 0..m.
  std::vector<std::size_t> homology(const std::vector<std::int64_t>& v) const {
    const std::uint32_t subsets = std::uint32_t{1} << m;
    std::vector<std::int64_t> index(subsets, -1);
    std::vector<std::size_t> dims(m + 1, 0);
    std::vector<std::int64_t> w(d);
    for (std::uint32_t s = 0; s < subsets; ++s) {
      bool fits = true;
      for (std::size_t c = 0; c < d; ++c) {
        w[c] = v[c] - shifts[s][c];
        if (w[c] < 0) {
          fits = false;
          break;
        }
      }
      if (!fits || in_quotient(w)) continue;
      index[s] = static_cast<std::int64_t>(dims[popcount(s)]++);
    }

    // rank of d: degree -k -> degree -(k-1), for k = 1..m
    std::vector<std::size_t> ranks(m + 2, 0);
    for (std::size_t k = 1; k <= m; ++k) {
      if (dims[k] == 0 || dims[k - 1] == 0) continue;
      IntMatrix mat(dims[k - 1], dims[k]);
      for (std::uint32_t s = 0; s < subsets; ++s) {
        if (popcount(s) != k || index[s] < 0) continue;
        for (std::size_t i = 0; i < m; ++i) {
          if (!(s & (std::uint32_t{1} << i))) continue;
          const std::uint32_t t = s & ~(std::uint32_t{1} << i);
          if (index[t] < 0) continue;  // x_i times the monomial lands in J
          mat(static_cast<std::size_t>(index[t]), static_cast<std::size_t>(index[s])) =
              (position_in(s, i) % 2 == 0) ? 1 : -1;
        }
      }
      ranks[k] = rank_over(mat, characteristic);
    }
    std::vector<std::size_t> h(m + 1);
    for (std::size_t k = 0; k <= m; ++k) h[k] = dims[k] - ranks[k] - ranks[k + 1];
    return h;
  }
};

// An axis-aligned block of lattice points: coordinate c ranges over
// [lo[c], lo[c] + extent[c]).
struct Block {
  std::vector<std::int64_t> lo;
  std::vector<std::uint64_t> extent;

  std::uint64_t volume() const {
    std::uint64_t v = 1;
    for (auto e : extent) {
      if (e == 0) return 0;
      if (v > (std::uint64_t{1} << 40) / e) throw SearchRegionExceeded("homology search region too large");
      v *= e;
    }
    return v;
  }

  std::vector<std::int64_t> point(std::uint64_t index) const {
    std::vector<std::int64_t> p(lo);
    for (std::size_t c = extent.size(); c-- > 0;) {
      p[c] += static_cast<std::int64_t>(index % extent[c]);
      index /= extent[c];
    }
    return p;
  }
};

std::vector<Natural> sum_block(const Workspace& ws, const Block& block, unsigned threads) {
  const std::uint64_t volume = block.volume();
  std::vector<Natural> total(ws.m + 1, Natural(0));
  if (volume == 0) return total;
  const unsigned workers = threads == 0 ? default_thread_count() : threads;
  const std::uint64_t chunks = std::min<std::uint64_t>(volume, std::uint64_t{workers} * 8);
  auto chunk_sum = [&](std::size_t c) {
    std::vector<std::uint64_t> acc(ws.m + 1, 0);
    const std::uint64_t begin = volume * c / chunks, end = volume * (c + 1) / chunks;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const auto h = ws.homology(block.point(idx));
      for (std::size_t k = 0; k <= ws.m; ++k) acc[k] += h[k];
    }
    return acc;
  };
  const auto partial = parallel_map(static_cast<std::size_t>(chunks), chunk_sum, workers);
  for (const auto& acc : partial)
    for (std::size_t k = 0; k <= ws.m; ++k) total[k] += Natural(static_cast<unsigned long>(acc[k]));
  return total;
}

// Points of [0, side] (inclusive) minus [0, side) (exclusive), split by the
// first coordinate that sits on the new face.
std::vector<Block> shell(const std::vector<std::uint64_t>& side) {
  const std::size_t d = side.size();
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < d; ++i) {
    Block b{std::vector<std::int64_t>(d, 0), std::vector<std::uint64_t>(d)};
    for (std::size_t c = 0; c < d; ++c) {
      if (c < i)
        b.extent[c] = side[c];
      else if (c == i) {
        b.lo[c] = static_cast<std::int64_t>(side[c]);
        b.extent[c] = 1;
      } else
        b.extent[c] = side[c] + 1;
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

}  // namespace

KoszulComplex::KoszulComplex(RingSpec ring, std::vector<ExponentVector> sequence)
    : ring_(std::move(ring)), sequence_(std::move(sequence)) {
  const std::size_t m = sequence_.size();
  bases_.resize(m + 1);
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << m); ++s) bases_[popcount(s)].push_back(s);

  differentials_.resize(m + 1);
  for (std::size_t k = 1; k <= m; ++k) {
    const auto& lower = bases_[k - 1];
    for (std::size_t src = 0; src < bases_[k].size(); ++src) {
      const std::uint32_t s = bases_[k][src];
      for (std::size_t i = 0; i < m; ++i) {
        if (!(s & (std::uint32_t{1} << i))) continue;
        const std::uint32_t t = s & ~(std::uint32_t{1} << i);
        const auto tgt = static_cast<std::size_t>(std::lower_bound(lower.begin(), lower.end(), t) - lower.begin());
        differentials_[k].push_back(KoszulEntry{src, tgt, i, position_in(s, i) % 2 == 0 ? 1 : -1});
      }
    }
  }
}

KoszulComplex KoszulComplex::build(const RingSpec& ring, std::vector<ExponentVector> sequence) {
  if (sequence.empty()) throw std::invalid_argument("Koszul complex needs a nonempty sequence");
  if (sequence.size() > kMaxSequenceLength)
    throw std::invalid_argument("Koszul complex supports sequences of length <= 16");
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (sequence[i].dim() != ring.dim())
      throw DimensionMismatch("sequence element " + std::to_string(i + 1) + " has the wrong length");
    if (sequence[i].is_zero())
      throw std::invalid_argument("sequence element " + std::to_string(i + 1) + " is a unit, not in m");
  }
  const MonomialIdeal generated = ideal_sum(minimalize(sequence, ring.dim()), ring.quotient());
  if (!is_m_primary(generated))
    throw NotFiniteLength("sequence generates " + generated.to_string() +
                          " with J, which is not m-primary: the Koszul complex has homology of infinite length");
  KoszulComplex complex(ring, std::move(sequence));
  if (!complex.squares_to_zero()) throw std::logic_error("Koszul differential does not square to zero");
  return complex;
}

std::size_t KoszulComplex::rank(int degree) const { return basis(degree).size(); }

const std::vector<std::uint32_t>& KoszulComplex::basis(int degree) const {
  if (degree > 0 || static_cast<std::size_t>(-degree) > length())
    throw std::out_of_range("degree outside -m..0");
  return bases_[static_cast<std::size_t>(-degree)];
}

ExponentVector KoszulComplex::shift(std::uint32_t subset) const {
  ExponentVector out = ExponentVector::zero(ring_.dim());
  for (std::size_t i = 0; i < length(); ++i)
    if (subset & (std::uint32_t{1} << i)) out += sequence_[i];
  return out;
}

const std::vector<KoszulEntry>& KoszulComplex::differential(int degree) const {
  if (degree > 0 || static_cast<std::size_t>(-degree) > length())
    throw std::out_of_range("degree outside -m..0");
  return differentials_[static_cast<std::size_t>(-degree)];
}

bool KoszulComplex::squares_to_zero() const {
  for (std::size_t k = 2; k <= length(); ++k) {
    // For each source basis element, collect d(d(e_S)) as signed monomials.
    std::vector<std::map<std::pair<std::size_t, ExponentVector>, long>> image(bases_[k].size());
    for (const auto& outer : differentials_[k]) {
      for (const auto& inner : differentials_[k - 1]) {
        if (inner.source != outer.target) continue;
        const ExponentVector mono = sequence_[outer.element] + sequence_[inner.element];
        image[outer.source][{inner.target, mono}] += outer.sign * inner.sign;
      }
    }
    for (const auto& terms : image)
      for (const auto& [key, coeff] : terms)
        if (coeff != 0) return false;
  }
  return true;
}

KoszulComplex pullback(const KoszulComplex& complex, const MonomialMap& phi) {
  if (!(phi.ring() == complex.ring())) throw std::invalid_argument("pullback: map acts on a different ring");
  if (!is_finite_length(phi)) throw NotFiniteLength("pullback: map is not of finite length");
  std::vector<ExponentVector> images;
  images.reserve(complex.length());
  for (const auto& x : complex.sequence()) images.push_back(apply_to_monomial(phi, x));
  return KoszulComplex::build(complex.ring(), std::move(images));
}

const Natural& HomologyLengths::at(int degree) const {
  static const Natural zero = 0;
  auto it = lengths.find(degree);
  return it == lengths.end() ? zero : it->second;
}

std::vector<std::size_t> homology_at_multidegree(const KoszulComplex& complex,
                                                 const std::vector<std::int64_t>& multidegree) {
  if (multidegree.size() != complex.ring().dim()) throw DimensionMismatch("multidegree has the wrong length");
  return Workspace(complex).homology(multidegree);
}

std::vector<std::uint64_t> default_search_box(const KoszulComplex& complex) {
  const std::size_t d = complex.ring().dim();
  const MonomialIdeal generated = ideal_sum(minimalize(complex.sequence(), d), complex.ring().quotient());
  const auto bounds = pure_power_bounds(generated);
  if (!bounds) throw NotFiniteLength("sequence is not m-primary");
  const ExponentVector widest = complex.shift((std::uint32_t{1} << complex.length()) - 1);
  std::vector<std::uint64_t> side(d);
  for (std::size_t c = 0; c < d; ++c) {
    const Natural s = (*bounds)[c] + widest[c];
    if (!s.fits_ulong_p()) throw SearchRegionExceeded("homology search box exceeds 64 bits");
    side[c] = s.get_ui();
  }
  return side;
}

HomologyLengths homology_lengths(const KoszulComplex& complex, const HomologyOptions& options) {
  std::vector<std::uint64_t> side = default_search_box(complex);
  for (auto s : side)
    if (s > options.max_side)
      throw SearchRegionExceeded("homology search box side " + std::to_string(s) + " exceeds cap " +
                                 std::to_string(options.max_side));
  const Workspace ws(complex);
  const std::size_t d = side.size();

  std::vector<Natural> total =
      sum_block(ws, Block{std::vector<std::int64_t>(d, 0), side}, options.threads);

  int quiet_shells = 0;
  while (quiet_shells < 2) {
    for (auto s : side)
      if (s + 1 > options.max_side)
        throw SearchRegionExceeded("homology did not stabilize within side " + std::to_string(options.max_side));
    bool quiet = true;
    for (const Block& b : shell(side)) {
      const auto contribution = sum_block(ws, b, options.threads);
      for (std::size_t k = 0; k <= ws.m; ++k) {
        if (sgn(contribution[k]) != 0) quiet = false;
        total[k] += contribution[k];
      }
    }
    quiet_shells = quiet ? quiet_shells + 1 : 0;
    for (auto& s : side) ++s;
  }

  HomologyLengths out;
  for (std::size_t k = 0; k <= ws.m; ++k) out.lengths[-static_cast<int>(k)] = total[k];
  return out;
}

Natural h0_length(const KoszulComplex& complex) {
  return colength(minimalize(complex.sequence(), complex.ring().dim()), complex.ring());
}

GeneratorProfile generator_profile(const HomologyLengths& homology) {
  GeneratorProfile profile{Natural(0), 0};
  bool nonzero = false;
  for (const auto& [degree, len] : homology.lengths) {
    if (sgn(len) == 0) continue;
    nonzero = true;
    if (len > profile.max_length) profile.max_length = len;
    const auto width = static_cast<unsigned>(degree < 0 ? -degree : degree);
    profile.width = std::max(profile.width, width);
  }
  if (!nonzero) throw std::invalid_argument("generator profile of a complex with zero homology");
  return profile;
}

}  // namespace locent
