#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "locent/bigint.hpp"
#include "locent/endo.hpp"
#include "locent/monomial.hpp"

namespace locent {

/// One nonzero entry of a Koszul differential: e_S -> sign * x_i * e_{S \ {i}}.
struct KoszulEntry {
  std::size_t source;  // index of S in the basis of the source degree
  std::size_t target;  // index of S \ {i} in the basis of the target degree
  std::size_t element; // i
  int sign;            // (-1)^{pos(i, S)}
};

/// Koszul complex G(x) over R = k[X]/J on monomials x_1..x_m, in
/// cohomological degrees -m..0.
///
/// The free module in degree -k has basis e_S for the k-subsets S of
/// {0..m-1}, encoded as bitmasks in increasing numeric order; e_S sits in
/// multidegree sum_{i in S} deg(x_i). H^0 = R/(x).
class KoszulComplex {
 public:
  /// Validates that each x_i is in m and that (x) + J is m-primary, then
  /// checks d o d = 0. Throws NotFiniteLength / std::invalid_argument.
  static KoszulComplex build(const RingSpec& ring, std::vector<ExponentVector> sequence);

  const RingSpec& ring() const { return ring_; }
  const std::vector<ExponentVector>& sequence() const { return sequence_; }
  std::size_t length() const { return sequence_.size(); }

  /// Rank of the free module in cohomological degree `degree` (in -m..0).
  std::size_t rank(int degree) const;
  /// Bitmask basis of the module in cohomological degree `degree`.
  const std::vector<std::uint32_t>& basis(int degree) const;
  /// Multidegree shift of the basis element e_S.
  ExponentVector shift(std::uint32_t subset) const;
  /// Entries of the differential leaving cohomological degree `degree`
  /// (towards degree + 1); empty for degree 0.
  const std::vector<KoszulEntry>& differential(int degree) const;

  /// d o d = 0 checked symbolically over k[X] (coefficients in Z).
  bool squares_to_zero() const;

  friend bool operator==(const KoszulComplex& a, const KoszulComplex& b) {
    return a.ring_ == b.ring_ && a.sequence_ == b.sequence_;
  }

 private:
  KoszulComplex(RingSpec ring, std::vector<ExponentVector> sequence);

  RingSpec ring_;
  std::vector<ExponentVector> sequence_;
  std::vector<std::vector<std::uint32_t>> bases_;         // indexed by k = -degree
  std::vector<std::vector<KoszulEntry>> differentials_;  // indexed by k = -degree
};

/// The Koszul complex over R on (phi(x_1), ..., phi(x_m)): the derived
/// pullback of a strictly perfect complex is its plain tensor product.
KoszulComplex pullback(const KoszulComplex& complex, const MonomialMap& phi);

/// length_R(H^k) for k in -m..0.
struct HomologyLengths {
  std::map<int, Natural> lengths;

  const Natural& at(int degree) const;
};

struct HomologyOptions {
  /// Largest side length the multidegree search may reach.
  std::uint64_t max_side = 512;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Exact homology lengths, multidegree by multidegree.
///
/// Each multidegree piece of the complex is a complex of k-vector spaces
/// with one basis vector per e_S whose monomial X^{v - shift(S)} is a
/// standard monomial mod J. Ranks are taken over F_p or Q. The search
/// starts on the pure-power box of (x) + J enlarged by the largest shift
/// and grows by unit shells until two consecutive shells carry no homology.
/// Throws SearchRegionExceeded if the box outgrows options.max_side.
HomologyLengths homology_lengths(const KoszulComplex& complex, const HomologyOptions& options = {});

/// Per-degree dimensions of homology in one multidegree (index k = -degree).
std::vector<std::size_t> homology_at_multidegree(const KoszulComplex& complex,
                                                 const std::vector<std::int64_t>& multidegree);

/// Side lengths of the initial search box used by homology_lengths.
std::vector<std::uint64_t> default_search_box(const KoszulComplex& complex);

/// length(H^0) = colength of (x) + J.
Natural h0_length(const KoszulComplex& complex);

/// The constants (B, N) of a generator: the largest homology length and the
/// cohomological width outside which homology vanishes.
struct GeneratorProfile {
  Natural max_length;  // B
  unsigned width = 0;  // N
};

/// Throws std::invalid_argument when every homology length is zero.
GeneratorProfile generator_profile(const HomologyLengths& homology);

}  // namespace locent
