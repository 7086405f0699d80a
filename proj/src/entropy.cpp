#include "locent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "locent/errors.hpp"
#include "locent/parallel.hpp"

namespace locent {

namespace {

std::vector<MonomialMap> iterates(const MonomialMap& phi, unsigned n_max) {
  std::vector<MonomialMap> out;
  out.reserve(n_max);
  out.push_back(phi);
  for (unsigned n = 2; n <= n_max; ++n) out.push_back(compose(out.back(), phi));
  return out;
}

void require_finite_length(const MonomialMap& phi) {
  if (!is_finite_length(phi))
    throw NotFiniteLength("endomorphism is not of finite length: phi(m)R + J is not m-primary");
}

}  // namespace

EntropySequence local_entropy_sequence(const MonomialMap& phi, const MonomialIdeal& q, unsigned n_max,
                                       unsigned threads) {
  if (n_max < 1) throw std::invalid_argument("max-iter must be at least 1");
  require_finite_length(phi);
  const RingSpec& ring = phi.ring();
  if (q.dim() != ring.dim()) throw DimensionMismatch("ideal and ring dimensions differ");
  if (!is_m_primary(ideal_sum(q, ring.quotient())))
    throw NotFiniteLength("ideal " + q.to_string() + " is not m-primary in R");

  const auto maps = iterates(phi, n_max);
  auto row = [&](std::size_t i) {
    EntropyRow r;
    r.n = static_cast<unsigned>(i + 1);
    r.length = colength(image_ideal(maps[i], q), ring);
    r.log_length = log_natural(r.length);
    r.a_n = r.log_length / r.n;
    return r;
  };
  auto rows = parallel_map(maps.size(), row, threads == 0 ? default_thread_count() : threads);
  return EntropySequence{std::move(rows), q, phi};
}

LimitEstimate estimate_limit(const EntropySequence& sequence) {
  const auto& rows = sequence.rows;
  if (rows.size() < 3) throw std::invalid_argument("estimate_limit needs at least 3 rows");
  LimitEstimate est;
  est.last_term = rows.back().a_n;

  const std::size_t count = std::max<std::size_t>(2, (rows.size() + 1) / 2);
  const std::size_t first = rows.size() - count;
  double mean_n = 0, mean_y = 0;
  for (std::size_t i = first; i < rows.size(); ++i) {
    mean_n += rows[i].n;
    mean_y += rows[i].log_length;
  }
  mean_n /= static_cast<double>(count);
  mean_y /= static_cast<double>(count);
  double sxy = 0, sxx = 0;
  for (std::size_t i = first; i < rows.size(); ++i) {
    const double dx = rows[i].n - mean_n;
    sxy += dx * (rows[i].log_length - mean_y);
    sxx += dx * dx;
  }
  est.ols_slope = sxy / sxx;

  std::vector<double> ratios;
  for (std::size_t i = 1; i < rows.size(); ++i) ratios.push_back(rows[i].log_length - rows[i - 1].log_length);
  est.last_log_ratio = ratios.back();
  est.slope = est.last_log_ratio;

  if (ratios.size() >= 3) {
    const double s1 = ratios[ratios.size() - 3];
    const double s2 = ratios[ratios.size() - 2];
    const double s3 = ratios.back();
    const double d1 = s2 - s1, d2 = s3 - s2;
    const double noise = 1e-13 * std::max(1.0, std::fabs(s3));
    // Aitken delta-squared, only where the ratios contract geometrically.
    if (std::fabs(d2) > noise && std::fabs(d1) > noise) {
      const double r = d2 / d1;
      if (std::fabs(r) < 0.9) est.slope = s3 - d2 * d2 / (d2 - d1);
    }
  }
  est.difference = est.last_term - est.slope;
  return est;
}

Natural delta_upper(const MonomialMap& phi, unsigned long n) {
  if (!phi.ring().regular())
    throw NotRegular("the composition-series upper bound needs a regular ring; R has quotient " +
                     phi.ring().quotient().to_string());
  require_finite_length(phi);
  return colength(image_ideal(iterate(phi, n), MonomialIdeal::maximal(phi.dim())), phi.ring());
}

double log_delta_lower(const GeneratorProfile& profile, const Natural& h0_length, double t) {
  return log_natural(h0_length) - log_natural(profile.max_length) - profile.width * std::fabs(t);
}

double delta_lower(const GeneratorProfile& profile, const Natural& h0_length, double t) {
  return std::exp(log_delta_lower(profile, h0_length, t));
}

bool row_invariants_hold(const SandwichRow& row) {
  const double scale =
      std::max({1.0, std::fabs(row.lower_logavg), std::fabs(row.upper_logavg), std::fabs(row.gap_bound)});
  const double slack = kBoundSlack * scale;
  return row.lower_logavg <= row.upper_logavg + slack &&
         row.upper_logavg - row.lower_logavg <= row.gap_bound + slack;
}

namespace {

struct GeneratorData {
  GeneratorProfile profile;
  std::vector<Natural> h0;  // H^0 length of the n-th pullback, n = 1..n_max
};

GeneratorData pullback_h0(const MonomialMap& phi, const std::vector<ExponentVector>& sequence, unsigned n_max,
                          const HomologyOptions& options) {
  if (n_max < 1) throw std::invalid_argument("max-iter must be at least 1");
  require_finite_length(phi);
  const KoszulComplex generator = KoszulComplex::build(phi.ring(), sequence);
  GeneratorData data{generator_profile(homology_lengths(generator, options)), {}};
  for (const auto& map : iterates(phi, n_max)) data.h0.push_back(h0_length(pullback(generator, map)));
  return data;
}

double reference_entropy(const MonomialMap& phi, unsigned n_max) {
  const auto seq = local_entropy_sequence(phi, MonomialIdeal::maximal(phi.dim()), n_max);
  return seq.rows.size() >= 3 ? estimate_limit(seq).slope : seq.rows.back().a_n;
}

}  // namespace

std::vector<SandwichReport> sandwich(const MonomialMap& phi, const std::vector<ExponentVector>& sequence,
                                     const std::vector<double>& t_values, unsigned n_max,
                                     const HomologyOptions& options) {
  if (!phi.ring().regular())
    throw NotRegular("the sandwich needs a regular ring; only lower bounds are available on " +
                     phi.ring().to_string());
  const GeneratorData gen = pullback_h0(phi, sequence, n_max, options);
  std::vector<double> upper_logavg;
  for (unsigned n = 1; n <= n_max; ++n) upper_logavg.push_back(log_natural(delta_upper(phi, n)) / n);
  const double reference = reference_entropy(phi, n_max);

  std::vector<SandwichReport> reports;
  for (double t : t_values) {
    SandwichReport rep{t, {}, gen.profile, reference};
    for (unsigned n = 1; n <= n_max; ++n) {
      SandwichRow row;
      row.n = n;
      row.lower_logavg = log_delta_lower(gen.profile, gen.h0[n - 1], t) / n;
      row.upper_logavg = upper_logavg[n - 1];
      row.gap_bound = (log_natural(gen.profile.max_length) + gen.profile.width * std::fabs(t)) / n;
      rep.rows.push_back(row);
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::vector<LowerBoundReport> lower_bounds(const MonomialMap& phi, const std::vector<ExponentVector>& sequence,
                                           const std::vector<double>& t_values, unsigned n_max,
                                           const HomologyOptions& options) {
  const GeneratorData gen = pullback_h0(phi, sequence, n_max, options);
  const auto local = local_entropy_sequence(phi, MonomialIdeal::maximal(phi.dim()), n_max);
  std::vector<LowerBoundReport> reports;
  for (double t : t_values) {
    LowerBoundReport rep{t, {}, gen.profile};
    for (unsigned n = 1; n <= n_max; ++n)
      rep.rows.push_back(
          LowerBoundRow{n, log_delta_lower(gen.profile, gen.h0[n - 1], t) / n, local.rows[n - 1].a_n});
    reports.push_back(std::move(rep));
  }
  return reports;
}

double closed_form_diagonal(const std::vector<Natural>& exponents) {
  double sum = 0;
  for (const auto& xi : exponents) {
    if (sgn(xi) <= 0) throw std::invalid_argument("diagonal exponents must be positive");
    sum += log_natural(xi);
  }
  return sum;
}

double frobenius_prediction(const RingSpec& ring, std::uint64_t p) {
  if (ring.characteristic() != p || p == 0)
    throw HypothesisError("Frobenius prediction: ring characteristic " + std::to_string(ring.characteristic()) +
                          " is not " + std::to_string(p));
  const auto dim = krull_dimension(ring.quotient(), ring.dim());
  return static_cast<double>(dim) * std::log(static_cast<double>(p));
}

TransferReport transfer_check(const TransferSquare& square, unsigned n_max, double tolerance) {
  if (!check_square(square)) throw HypothesisError("transfer square does not commute: xi o psi != phi o xi");
  if (!xi_is_finite_length(square)) throw NotFiniteLength("transfer square: xi is not of finite length");
  if (n_max < 3) throw std::invalid_argument("transfer check needs max-iter >= 3");
  require_finite_length(square.psi);
  require_finite_length(square.phi);
  TransferReport rep;
  rep.tolerance = tolerance;
  rep.h_psi = estimate_limit(local_entropy_sequence(square.psi, MonomialIdeal::maximal(square.source.dim()), n_max))
                  .slope;
  rep.h_phi = estimate_limit(local_entropy_sequence(square.phi, MonomialIdeal::maximal(square.target.dim()), n_max))
                  .slope;
  rep.agree = std::fabs(rep.h_phi - rep.h_psi) <= tolerance;
  if (rep.agree)
    rep.conclusion = "h_t(L phi^*) is constant and equal to h_loc(phi) = " + format_real(rep.h_phi);
  else
    rep.conclusion = "h_loc(phi) = " + format_real(rep.h_phi) + " <= h_t(L phi^*) <= h_loc(psi) = " +
                     format_real(rep.h_psi);
  return rep;
}

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace locent
