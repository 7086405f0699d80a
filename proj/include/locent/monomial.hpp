#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "locent/bigint.hpp"

namespace locent {

/// Exponent vector v of the monomial X^v = X_1^{v_1} ... X_d^{v_d}.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::vector<Natural> entries);
  ExponentVector(std::initializer_list<long> entries);

  /// The exponent vector of the constant monomial 1 in d variables.
  static ExponentVector zero(std::size_t d);
  /// X_i^power.
  static ExponentVector pure_power(std::size_t d, std::size_t i, const Natural& power);

  std::size_t dim() const { return entries_.size(); }
  const Natural& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Natural>& entries() const { return entries_; }

  bool is_zero() const;
  /// Number of variables with a positive exponent.
  std::size_t support_size() const;
  /// Bitmask of the variables with a positive exponent (d <= 64).
  std::uint64_t support_mask() const;

  ExponentVector operator+(const ExponentVector& other) const;
  ExponentVector& operator+=(const ExponentVector& other);
  ExponentVector scaled(const Natural& factor) const;

  /// Renders as a bracketed integer list, e.g. "[2,0,1]".
  std::string to_string() const;

  friend bool operator==(const ExponentVector& a, const ExponentVector& b) {
    return a.entries_ == b.entries_;
  }
  /// Lexicographic order; the canonical order of ideal generators.
  friend bool operator<(const ExponentVector& a, const ExponentVector& b) {
    return a.entries_ < b.entries_;
  }

 private:
  std::vector<Natural> entries_;
};

/// True iff u_i <= v_i for every i, i.e. X^u divides X^v.
bool divides(const ExponentVector& u, const ExponentVector& v);

/// Componentwise maximum (exponent of lcm(X^u, X^v)).
ExponentVector lcm(const ExponentVector& u, const ExponentVector& v);

/// A monomial ideal stored by its minimal generators in lexicographic order.
///
/// The empty generator set is the zero ideal.
class MonomialIdeal {
 public:
  /// The zero ideal of k[X_1..X_d].
  explicit MonomialIdeal(std::size_t d) : dim_(d) {}

  /// The maximal ideal m = (X_1, ..., X_d).
  static MonomialIdeal maximal(std::size_t d);

  std::size_t dim() const { return dim_; }
  const std::vector<ExponentVector>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }

  std::string to_string() const;

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  friend MonomialIdeal minimalize(std::vector<ExponentVector> gens, std::size_t d);
  std::size_t dim_ = 0;
  std::vector<ExponentVector> gens_;
};

/// Drops every generator divisible by another and sorts the survivors.
/// Throws DimensionMismatch if a vector does not have length d.
MonomialIdeal minimalize(std::vector<ExponentVector> gens, std::size_t d);

bool contains(const MonomialIdeal& ideal, const ExponentVector& v);

/// I + K.
MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b);

/// Every generator of `a` lies in `b` (so a is contained in b).
bool is_subideal(const MonomialIdeal& a, const MonomialIdeal& b);

/// For each variable, the smallest a with X_i^a a generator; empty if some
/// variable has no pure-power generator.
std::optional<std::vector<Natural>> pure_power_bounds(const MonomialIdeal& ideal);

/// A monomial ideal has radical m iff it contains a power of every variable.
bool is_m_primary(const MonomialIdeal& ideal);

/// Dimension of k[X_1..X_d]/J for a monomial ideal J inside m: the largest
/// set C of variables such that no generator is supported inside C.
std::size_t krull_dimension(const MonomialIdeal& quotient, std::size_t d);

/// k[X_1..X_d]/J over a field of characteristic 0 or p, viewed as a local
/// ring at the origin.
class RingSpec {
 public:
  /// Validates that the characteristic is 0 or prime and that J lies in m.
  /// Throws std::invalid_argument otherwise.
  RingSpec(std::uint64_t characteristic, std::size_t d, MonomialIdeal quotient);
  /// The regular ring k[X_1..X_d].
  RingSpec(std::uint64_t characteristic, std::size_t d);

  std::uint64_t characteristic() const { return characteristic_; }
  std::size_t dim() const { return dim_; }
  const MonomialIdeal& quotient() const { return quotient_; }
  bool regular() const { return quotient_.is_zero(); }

  std::string to_string() const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  std::uint64_t characteristic_;
  std::size_t dim_;
  MonomialIdeal quotient_;
};

bool is_prime(std::uint64_t n);

/// Length of R/IR, i.e. the number of standard monomials of I + J.
///
/// Uses inclusion-exclusion over the non-pure-power minimal generators
/// inside the pure-power box while there are at most
/// kInclusionExclusionCap of them; beyond that it enumerates the box.
/// Throws NotFiniteLength when I + J is not m-primary.
Natural colength(const MonomialIdeal& ideal, const RingSpec& ring);

inline constexpr std::size_t kInclusionExclusionCap = 20;

/// Standard monomials of an m-primary ideal counted by walking the
/// pure-power box, one column at a time along the last variable.
/// Throws std::length_error when the box has more than `max_points` columns.
Natural colength_by_enumeration(const MonomialIdeal& ideal,
                                std::uint64_t max_points = std::uint64_t{1} << 32);

}  // namespace locent
