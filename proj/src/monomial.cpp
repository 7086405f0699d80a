#include "locent/monomial.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "locent/errors.hpp"
#include "locent/parallel.hpp"

namespace locent {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) + " vs " +
                            std::to_string(b));
}

}  // namespace

ExponentVector::ExponentVector(std::vector<Natural> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_)
    if (sgn(e) < 0) throw std::invalid_argument("negative exponent " + locent::to_string(e));
}

ExponentVector::ExponentVector(std::initializer_list<long> entries) {
  entries_.reserve(entries.size());
  for (long e : entries) {
    if (e < 0) throw std::invalid_argument("negative exponent " + std::to_string(e));
    entries_.emplace_back(e);
  }
}

ExponentVector ExponentVector::zero(std::size_t d) {
  return ExponentVector(std::vector<Natural>(d, Natural(0)));
}

ExponentVector ExponentVector::pure_power(std::size_t d, std::size_t i, const Natural& power) {
  std::vector<Natural> e(d, Natural(0));
  e.at(i) = power;
  return ExponentVector(std::move(e));
}

bool ExponentVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Natural& e) { return sgn(e) == 0; });
}

std::size_t ExponentVector::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const Natural& e) { return sgn(e) > 0; }));
}

std::uint64_t ExponentVector::support_mask() const {
  if (entries_.size() > 64) throw std::length_error("support mask needs d <= 64");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (sgn(entries_[i]) > 0) mask |= std::uint64_t{1} << i;
  return mask;
}

ExponentVector ExponentVector::operator+(const ExponentVector& other) const {
  ExponentVector out = *this;
  out += other;
  return out;
}

ExponentVector& ExponentVector::operator+=(const ExponentVector& other) {
  require_same_dim(dim(), other.dim(), "monomial product");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ExponentVector ExponentVector::scaled(const Natural& factor) const {
  ExponentVector out = *this;
  for (auto& e : out.entries_) e *= factor;
  return out;
}

std::string ExponentVector::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ',';
    s += locent::to_string(entries_[i]);
  }
  s += ']';
  return s;
}

bool divides(const ExponentVector& u, const ExponentVector& v) {
  require_same_dim(u.dim(), v.dim(), "divides");
  for (std::size_t i = 0; i < u.dim(); ++i)
    if (u[i] > v[i]) return false;
  return true;
}

ExponentVector lcm(const ExponentVector& u, const ExponentVector& v) {
  require_same_dim(u.dim(), v.dim(), "lcm");
  std::vector<Natural> e(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) e[i] = u[i] > v[i] ? u[i] : v[i];
  return ExponentVector(std::move(e));
}

MonomialIdeal MonomialIdeal::maximal(std::size_t d) {
  std::vector<ExponentVector> gens;
  for (std::size_t i = 0; i < d; ++i) gens.push_back(ExponentVector::pure_power(d, i, 1));
  return minimalize(std::move(gens), d);
}

std::string MonomialIdeal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ", ";
    s += gens_[i].to_string();
  }
  s += ')';
  return s;
}

MonomialIdeal minimalize(std::vector<ExponentVector> gens, std::size_t d) {
  for (const auto& g : gens) require_same_dim(g.dim(), d, "minimalize");
  // Sorting by total degree first means a divisor is always met before its multiples.
  std::sort(gens.begin(), gens.end(), [](const ExponentVector& a, const ExponentVector& b) {
    Natural da = 0, db = 0;
    for (const auto& e : a.entries()) da += e;
    for (const auto& e : b.entries()) db += e;
    if (da != db) return da < db;
    return a < b;
  });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  MonomialIdeal out(d);
  for (auto& g : gens) {
    const bool redundant = std::any_of(out.gens_.begin(), out.gens_.end(),
                                       [&](const ExponentVector& h) { return divides(h, g); });
    if (!redundant) out.gens_.push_back(std::move(g));
  }
  std::sort(out.gens_.begin(), out.gens_.end());
  return out;
}

bool contains(const MonomialIdeal& ideal, const ExponentVector& v) {
  require_same_dim(ideal.dim(), v.dim(), "contains");
  return std::any_of(ideal.generators().begin(), ideal.generators().end(),
                     [&](const ExponentVector& g) { return divides(g, v); });
}

MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_dim(a.dim(), b.dim(), "ideal_sum");
  std::vector<ExponentVector> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return minimalize(std::move(gens), a.dim());
}

bool is_subideal(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_dim(a.dim(), b.dim(), "is_subideal");
  return std::all_of(a.generators().begin(), a.generators().end(),
                     [&](const ExponentVector& g) { return contains(b, g); });
}

std::optional<std::vector<Natural>> pure_power_bounds(const MonomialIdeal& ideal) {
  const std::size_t d = ideal.dim();
  std::vector<Natural> bounds(d, Natural(0));
  for (const auto& g : ideal.generators()) {
    if (g.support_size() != 1) continue;
    for (std::size_t i = 0; i < d; ++i) {
      if (sgn(g[i]) == 0) continue;
      if (sgn(bounds[i]) == 0 || g[i] < bounds[i]) bounds[i] = g[i];
    }
  }
  for (const auto& b : bounds)
    if (sgn(b) == 0) return std::nullopt;
  return bounds;
}

bool is_m_primary(const MonomialIdeal& ideal) { return pure_power_bounds(ideal).has_value(); }

std::size_t krull_dimension(const MonomialIdeal& quotient, std::size_t d) {
  require_same_dim(quotient.dim(), d, "krull_dimension");
  if (quotient.is_zero()) return d;
  if (d > 24) throw std::length_error("krull_dimension enumerates variable subsets; d <= 24");
  std::vector<std::uint64_t> supports;
  for (const auto& g : quotient.generators()) supports.push_back(g.support_mask());
  std::size_t best = 0;
  const std::uint64_t subsets = std::uint64_t{1} << d;
  for (std::uint64_t c = 0; c < subsets; ++c) {
    const auto size = static_cast<std::size_t>(std::popcount(c));
    if (size <= best) continue;
    const bool free = std::none_of(supports.begin(), supports.end(),
                                   [c](std::uint64_t s) { return (s & ~c) == 0; });
    if (free) best = size;
  }
  return best;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    if (n % q == 0) return n == q;
  }
  Natural z(std::to_string(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

RingSpec::RingSpec(std::uint64_t characteristic, std::size_t d, MonomialIdeal quotient)
    : characteristic_(characteristic), dim_(d), quotient_(std::move(quotient)) {
  if (d == 0) throw std::invalid_argument("ring needs at least one variable");
  if (characteristic_ != 0 && !is_prime(characteristic_))
    throw std::invalid_argument("characteristic " + std::to_string(characteristic_) +
                                " is neither 0 nor prime");
  require_same_dim(quotient_.dim(), d, "quotient ideal");
  for (const auto& g : quotient_.generators())
    if (g.is_zero())
      throw std::invalid_argument("quotient generator 1 is not in the maximal ideal");
}

RingSpec::RingSpec(std::uint64_t characteristic, std::size_t d)
    : RingSpec(characteristic, d, MonomialIdeal(d)) {}

std::string RingSpec::to_string() const {
  std::ostringstream os;
  os << (characteristic_ == 0 ? std::string("Q") : "F" + std::to_string(characteristic_)) << "[d="
     << dim_ << "]";
  if (!regular()) os << "/" << quotient_.to_string();
  return os.str();
}

namespace {

Natural box_term(const std::vector<Natural>& box, const ExponentVector& corner) {
  Natural product = 1;
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (corner[i] >= box[i]) return 0;
    product *= box[i] - corner[i];
  }
  return product;
}

// Signed sum over subsets T of `gens` of the number of box points divisible by lcm(T).
void inclusion_exclusion(const std::vector<Natural>& box, const std::vector<ExponentVector>& gens,
                         std::size_t start, const ExponentVector& corner, int sign, Natural& acc) {
  const Natural term = box_term(box, corner);
  if (sign > 0)
    acc += term;
  else
    acc -= term;
  for (std::size_t j = start; j < gens.size(); ++j) {
    ExponentVector next = lcm(corner, gens[j]);
    // lcm only grows along a branch, so a zero term prunes every superset.
    if (sgn(box_term(box, next)) == 0) continue;
    inclusion_exclusion(box, gens, j + 1, next, -sign, acc);
  }
}

}  // namespace

Natural colength_by_enumeration(const MonomialIdeal& ideal, std::uint64_t max_points) {
  const auto bounds = pure_power_bounds(ideal);
  if (!bounds) throw NotFiniteLength("ideal " + ideal.to_string() + " is not m-primary");
  const std::size_t d = ideal.dim();
  std::vector<std::uint64_t> box(d);
  std::uint64_t columns = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (!(*bounds)[i].fits_ulong_p()) throw std::length_error("enumeration box too large");
    box[i] = (*bounds)[i].get_ui();
    if (i + 1 < d) {
      if (columns > max_points / box[i]) throw std::length_error("enumeration box too large");
      columns *= box[i];
    }
  }
  if (d == 1) return Natural(static_cast<unsigned long>(box[0]));

  // Every generator is inside the box (its entries are at most the pure-power bounds).
  std::vector<std::vector<std::uint64_t>> gens;
  for (const auto& g : ideal.generators()) {
    std::vector<std::uint64_t> e(d);
    for (std::size_t i = 0; i < d; ++i) e[i] = g[i].get_ui();
    gens.push_back(std::move(e));
  }

  // One task per value of the first coordinate; each sums its column heights.
  auto slab = [&](std::size_t first) -> std::uint64_t {
    std::vector<std::uint64_t> prefix(d - 1, 0);
    prefix[0] = first;
    std::uint64_t total = 0;
    while (true) {
      std::uint64_t height = box[d - 1];
      for (const auto& g : gens) {
        bool below = true;
        for (std::size_t i = 0; i + 1 < d; ++i)
          if (g[i] > prefix[i]) {
            below = false;
            break;
          }
        if (below) height = std::min(height, g[d - 1]);
      }
      total += height;
      std::size_t i = d - 2;
      while (i > 0) {
        if (++prefix[i] < box[i]) break;
        prefix[i] = 0;
        --i;
      }
      if (i == 0) break;
    }
    return total;
  };
  const auto partial = parallel_map(box[0], slab);
  Natural total = 0;
  for (std::uint64_t p : partial) total += Natural(static_cast<unsigned long>(p));
  return total;
}

Natural colength(const MonomialIdeal& ideal, const RingSpec& ring) {
  require_same_dim(ideal.dim(), ring.dim(), "colength");
  const MonomialIdeal total = ideal_sum(ideal, ring.quotient());
  const auto bounds = pure_power_bounds(total);
  if (!bounds)
    throw NotFiniteLength("R/I is not of finite length: " + total.to_string() + " is not m-primary");

  std::vector<ExponentVector> mixed;
  for (const auto& g : total.generators())
    if (g.support_size() > 1) mixed.push_back(g);
  if (mixed.size() > kInclusionExclusionCap) return colength_by_enumeration(total);

  Natural acc = 0;
  inclusion_exclusion(*bounds, mixed, 0, ExponentVector::zero(ring.dim()), +1, acc);
  return acc;
}

}  // namespace locent
