#pragma once

#include <cstddef>
#include <vector>

#include "locent/bigint.hpp"
#include "locent/monomial.hpp"

namespace locent {

/// Local monomial endomorphism phi(X_j) = X^{A e_j} of a RingSpec.
///
/// Stored by the columns of the exponent matrix A. Construction checks that
/// every column is nonzero (phi is local) and that phi maps J into J, so
/// phi is well defined on k[X]/J.
class MonomialMap {
 public:
  MonomialMap(RingSpec ring, std::vector<ExponentVector> columns);

  static MonomialMap identity(const RingSpec& ring);
  /// X_i -> X_i^{xi_i}.
  static MonomialMap diagonal(const RingSpec& ring, const std::vector<Natural>& exponents);
  /// x -> x^p on a ring of characteristic p > 0.
  static MonomialMap frobenius(const RingSpec& ring);

  const RingSpec& ring() const { return ring_; }
  std::size_t dim() const { return columns_.size(); }
  const std::vector<ExponentVector>& columns() const { return columns_; }
  /// Entry A(row, col): the exponent of X_row in phi(X_col).
  const Natural& entry(std::size_t row, std::size_t col) const { return columns_[col][row]; }

  bool is_diagonal() const;
  /// Exactly one positive entry in every row and every column.
  bool is_monomial_matrix() const;
  /// |det A| for a monomial matrix (product of its positive entries).
  Natural monomial_matrix_abs_det() const;

  friend bool operator==(const MonomialMap&, const MonomialMap&) = default;

 private:
  RingSpec ring_;
  std::vector<ExponentVector> columns_;
};

/// phi(X^v) = X^{A v}.
ExponentVector apply_to_monomial(const MonomialMap& phi, const ExponentVector& v);

/// phi o psi, with matrix A_phi * A_psi. Throws std::invalid_argument on ring mismatch.
MonomialMap compose(const MonomialMap& phi, const MonomialMap& psi);

/// phi^n by binary exponentiation; n = 0 is rejected.
MonomialMap iterate(const MonomialMap& phi, unsigned long n);

/// Generators of the extension phi(q)R.
MonomialIdeal image_ideal(const MonomialMap& phi, const MonomialIdeal& q);

/// phi(m)R is m-primary.
bool is_finite_length(const MonomialMap& phi);

/// A square of monomial maps xi: S -> R with psi acting on S and phi on R.
///
/// Entropy transfer needs the square to commute and xi to be of finite
/// length; both are checked separately so that flat (non-finite-length)
/// squares can still be tested for commutativity.
struct TransferSquare {
  RingSpec source;
  RingSpec target;
  std::vector<ExponentVector> xi_images;  // xi(Y_j) as exponent vectors over the target
  MonomialMap psi;                        // endomorphism of the source
  MonomialMap phi;                        // endomorphism of the target

  /// Checks shapes only. S must be regular with the characteristic of R, and
  /// every source variable needs a nonzero image of length dim(R).
  /// Throws std::invalid_argument.
  static TransferSquare make(MonomialMap psi, MonomialMap phi, std::vector<ExponentVector> xi_images);
};

/// J_R + (xi(Y_1), ..., xi(Y_e)) is m-primary.
bool xi_is_finite_length(const TransferSquare& square);

/// xi(psi(Y_j)) == phi(xi(Y_j)) for every source variable Y_j.
bool check_square(const TransferSquare& square);

}  // namespace locent
