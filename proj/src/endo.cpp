#include "locent/endo.hpp"

#include <stdexcept>
#include <string>

#include "locent/errors.hpp"

namespace locent {

MonomialMap::MonomialMap(RingSpec ring, std::vector<ExponentVector> columns)
    : ring_(std::move(ring)), columns_(std::move(columns)) {
  const std::size_t d = ring_.dim();
  if (columns_.size() != d)
    throw DimensionMismatch("map has " + std::to_string(columns_.size()) + " columns, ring has " +
                            std::to_string(d) + " variables");
  for (std::size_t j = 0; j < d; ++j) {
    if (columns_[j].dim() != d)
      throw DimensionMismatch("map column " + std::to_string(j + 1) + " has length " +
                              std::to_string(columns_[j].dim()) + ", expected " + std::to_string(d));
    if (columns_[j].is_zero())
      throw std::invalid_argument("map column " + std::to_string(j + 1) +
                                  " is zero (not a local endomorphism)");
  }
  for (const auto& g : ring_.quotient().generators()) {
    const ExponentVector image = apply_to_monomial(*this, g);
    if (!contains(ring_.quotient(), image))
      throw std::invalid_argument("map is not well defined on the quotient: generator " +
                                  g.to_string() + " maps to " + image.to_string() +
                                  ", which is not in J");
  }
}

MonomialMap MonomialMap::identity(const RingSpec& ring) {
  std::vector<Natural> ones(ring.dim(), Natural(1));
  return diagonal(ring, ones);
}

MonomialMap MonomialMap::diagonal(const RingSpec& ring, const std::vector<Natural>& exponents) {
  if (exponents.size() != ring.dim()) throw DimensionMismatch("diagonal map: wrong number of exponents");
  std::vector<ExponentVector> cols;
  for (std::size_t j = 0; j < exponents.size(); ++j)
    cols.push_back(ExponentVector::pure_power(ring.dim(), j, exponents[j]));
  return MonomialMap(ring, std::move(cols));
}

MonomialMap MonomialMap::frobenius(const RingSpec& ring) {
  if (ring.characteristic() == 0)
    throw HypothesisError("Frobenius needs a ring of positive characteristic");
  const Natural p(std::to_string(ring.characteristic()));
  return diagonal(ring, std::vector<Natural>(ring.dim(), p));
}

bool MonomialMap::is_diagonal() const {
  for (std::size_t j = 0; j < dim(); ++j)
    for (std::size_t i = 0; i < dim(); ++i)
      if (i != j && sgn(entry(i, j)) != 0) return false;
  return true;
}

bool MonomialMap::is_monomial_matrix() const {
  const std::size_t d = dim();
  std::vector<int> row_count(d, 0);
  for (std::size_t j = 0; j < d; ++j) {
    int col_count = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (sgn(entry(i, j)) > 0) {
        ++col_count;
        ++row_count[i];
      }
    if (col_count != 1) return false;
  }
  for (int c : row_count)
    if (c != 1) return false;
  return true;
}

Natural MonomialMap::monomial_matrix_abs_det() const {
  if (!is_monomial_matrix()) throw std::invalid_argument("not a monomial matrix");
  Natural det = 1;
  for (std::size_t j = 0; j < dim(); ++j)
    for (std::size_t i = 0; i < dim(); ++i)
      if (sgn(entry(i, j)) > 0) det *= entry(i, j);
  return det;
}

ExponentVector apply_to_monomial(const MonomialMap& phi, const ExponentVector& v) {
  const std::size_t d = phi.dim();
  if (v.dim() != d)
    throw DimensionMismatch("apply: vector of length " + std::to_string(v.dim()) + " on a map of dimension " +
                            std::to_string(d));
  std::vector<Natural> out(d, Natural(0));
  for (std::size_t j = 0; j < d; ++j) {
    if (sgn(v[j]) == 0) continue;
    for (std::size_t i = 0; i < d; ++i) out[i] += phi.entry(i, j) * v[j];
  }
  return ExponentVector(std::move(out));
}

MonomialMap compose(const MonomialMap& phi, const MonomialMap& psi) {
  if (!(phi.ring() == psi.ring())) throw std::invalid_argument("compose: maps act on different rings");
  std::vector<ExponentVector> cols;
  cols.reserve(psi.dim());
  for (const auto& c : psi.columns()) cols.push_back(apply_to_monomial(phi, c));
  return MonomialMap(phi.ring(), std::move(cols));
}

MonomialMap iterate(const MonomialMap& phi, unsigned long n) {
  if (n == 0) throw std::invalid_argument("iterate: n must be at least 1");
  MonomialMap result = phi;
  MonomialMap base = phi;
  --n;
  while (n > 0) {
    if (n & 1UL) result = compose(result, base);
    n >>= 1;
    if (n > 0) base = compose(base, base);
  }
  return result;
}

MonomialIdeal image_ideal(const MonomialMap& phi, const MonomialIdeal& q) {
  if (q.dim() != phi.dim()) throw DimensionMismatch("image_ideal: ideal and map dimensions differ");
  std::vector<ExponentVector> images;
  images.reserve(q.generators().size());
  for (const auto& g : q.generators()) images.push_back(apply_to_monomial(phi, g));
  return minimalize(std::move(images), phi.dim());
}

bool is_finite_length(const MonomialMap& phi) {
  const RingSpec& ring = phi.ring();
  return is_m_primary(ideal_sum(ring.quotient(), image_ideal(phi, MonomialIdeal::maximal(ring.dim()))));
}

TransferSquare TransferSquare::make(MonomialMap psi, MonomialMap phi,
                                    std::vector<ExponentVector> xi_images) {
  const RingSpec& source = psi.ring();
  const RingSpec& target = phi.ring();
  if (!source.regular()) throw std::invalid_argument("transfer square: source ring must be regular");
  if (source.characteristic() != target.characteristic())
    throw std::invalid_argument("transfer square: source and target characteristics differ");
  if (xi_images.size() != source.dim())
    throw DimensionMismatch("transfer square: xi needs one image per source variable");
  for (std::size_t j = 0; j < xi_images.size(); ++j) {
    if (xi_images[j].dim() != target.dim())
      throw DimensionMismatch("transfer square: xi image " + std::to_string(j + 1) +
                              " has the wrong length");
    if (xi_images[j].is_zero())
      throw std::invalid_argument("transfer square: xi image " + std::to_string(j + 1) +
                                  " is a unit (xi is not local)");
  }
  return TransferSquare{source, target, std::move(xi_images), std::move(psi), std::move(phi)};
}

bool xi_is_finite_length(const TransferSquare& square) {
  const MonomialIdeal xi_ideal = minimalize(square.xi_images, square.target.dim());
  return is_m_primary(ideal_sum(square.target.quotient(), xi_ideal));
}

bool check_square(const TransferSquare& square) {
  const std::size_t ds = square.source.dim();
  const std::size_t dr = square.target.dim();
  for (std::size_t j = 0; j < ds; ++j) {
    // xi(psi(Y_j)) = X^{Xi * psi_j}, where Xi has the xi images as columns.
    std::vector<Natural> lhs(dr, Natural(0));
    const ExponentVector& psi_col = square.psi.columns()[j];
    for (std::size_t k = 0; k < ds; ++k)
      for (std::size_t i = 0; i < dr; ++i) lhs[i] += square.xi_images[k][i] * psi_col[k];
    const ExponentVector rhs = apply_to_monomial(square.phi, square.xi_images[j]);
    if (!(ExponentVector(std::move(lhs)) == rhs)) return false;
  }
  return true;
}

}  // namespace locent
