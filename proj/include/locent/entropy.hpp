#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "locent/bigint.hpp"
#include "locent/endo.hpp"
#include "locent/koszul.hpp"
#include "locent/monomial.hpp"

namespace locent {

struct EntropyRow {
  unsigned n = 0;
  Natural length;          // length_R(R / phi^n(q) R)
  double log_length = 0;   // log(length)
  double a_n = 0;          // log(length) / n
};

struct EntropySequence {
  std::vector<EntropyRow> rows;  // n = 1..n_max
  MonomialIdeal ideal;
  MonomialMap map;
};

/// length_R(R / phi^n(q) R) for n = 1..n_max. Rows are computed
/// concurrently and returned in n order.
///
/// Throws NotFiniteLength when phi is not of finite length or q + J is not
/// m-primary, std::invalid_argument when n_max < 1.
EntropySequence local_entropy_sequence(const MonomialMap& phi, const MonomialIdeal& q, unsigned n_max,
                                       unsigned threads = 0);

/// Finite-n surrogate for lim (1/n) log length_n.
struct LimitEstimate {
  /// Growth rate: the last log-ratio log(length_n / length_{n-1}), Aitken
  /// accelerated when the ratios converge geometrically.
  double slope = 0;
  double last_term = 0;       // a_{n_max}
  double ols_slope = 0;       // least-squares slope of log(length_n) over the final half
  double last_log_ratio = 0;  // log(length_{n_max} / length_{n_max - 1})
  double difference = 0;      // last_term - slope
};

/// Needs at least 3 rows; throws std::invalid_argument otherwise.
LimitEstimate estimate_limit(const EntropySequence& sequence);

/// Length of R / phi^n(m) R, the size of the composition-series tower that
/// bounds the complexity of the n-th pullback of the Koszul generator on a
/// regular system of parameters. Valid for every t.
/// Throws NotRegular on quotient rings, NotFiniteLength if phi is not of finite length.
Natural delta_upper(const MonomialMap& phi, unsigned long n);

/// log of h0 / (B e^{N |t|}), the certified lower bound on the complexity
/// of the n-th pullback of a generator with profile (B, N).
double log_delta_lower(const GeneratorProfile& profile, const Natural& h0_length, double t);
double delta_lower(const GeneratorProfile& profile, const Natural& h0_length, double t);

struct SandwichRow {
  unsigned n = 0;
  double lower_logavg = 0;  // (1/n) log delta_lower
  double upper_logavg = 0;  // (1/n) log delta_upper
  double gap_bound = 0;     // (log B + N |t|) / n
};

struct SandwichReport {
  double t = 0;
  std::vector<SandwichRow> rows;
  GeneratorProfile profile;
  double h_loc_reference = 0;
};

/// Relative slack used when comparing the two bounds in floating point.
inline constexpr double kBoundSlack = 1e-12;

/// lower <= upper and upper - lower <= gap_bound, up to kBoundSlack.
bool row_invariants_hold(const SandwichRow& row);

/// Lower and upper complexity bounds per t and n for the Koszul generator on
/// `sequence`. Throws NotRegular on quotient rings.
std::vector<SandwichReport> sandwich(const MonomialMap& phi, const std::vector<ExponentVector>& sequence,
                                     const std::vector<double>& t_values, unsigned n_max,
                                     const HomologyOptions& options = {});

struct LowerBoundRow {
  unsigned n = 0;
  double lower_logavg = 0;
  double local_a_n = 0;  // (1/n) log length(R / phi^n(m) R)
};

struct LowerBoundReport {
  double t = 0;
  std::vector<LowerBoundRow> rows;
  GeneratorProfile profile;
};

/// Lower bounds only; valid on any ring where phi has finite length.
std::vector<LowerBoundReport> lower_bounds(const MonomialMap& phi, const std::vector<ExponentVector>& sequence,
                                           const std::vector<double>& t_values, unsigned n_max,
                                           const HomologyOptions& options = {});

/// sum_i log xi_i for X_i -> X_i^{xi_i}. Throws std::invalid_argument on a zero exponent.
double closed_form_diagonal(const std::vector<Natural>& exponents);

/// dim(R) * log p. Throws HypothesisError unless R has characteristic p.
double frobenius_prediction(const RingSpec& ring, std::uint64_t p);

struct TransferReport {
  double h_phi = 0;
  double h_psi = 0;
  bool agree = false;
  double tolerance = 0;
  std::string conclusion;
};

inline constexpr double kTransferTolerance = 1e-6;

/// Compares the local entropies across a commuting square. When they agree
/// the entropy of the pullback of phi is pinned to the shared value;
/// otherwise only h_loc(phi) <= h_t <= h_loc(psi) is reported.
/// Throws HypothesisError when the square does not commute.
TransferReport transfer_check(const TransferSquare& square, unsigned n_max,
                              double tolerance = kTransferTolerance);

/// 12 significant digits, no negative zero.
std::string format_real(double value);

}  // namespace locent
