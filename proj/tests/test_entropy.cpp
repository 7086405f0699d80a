#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "locent/entropy.hpp"
#include "locent/errors.hpp"
#include "test_support.hpp"

using namespace locent;

namespace {

const RingSpec kPlane(0, 2);

MonomialMap diag(const RingSpec& ring, std::vector<Natural> e) { return MonomialMap::diagonal(ring, e); }

// A sequence whose rows are given lengths; map and ideal are placeholders.
EntropySequence synthetic(const std::vector<Natural>& lengths) {
  EntropySequence seq{{}, MonomialIdeal::maximal(1), MonomialMap::identity(RingSpec(0, 1))};
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const unsigned n = static_cast<unsigned>(i + 1);
    const double l = log_natural(lengths[i]);
    seq.rows.push_back(EntropyRow{n, lengths[i], l, l / n});
  }
  return seq;
}

Natural power(unsigned long base, unsigned n) {
  Natural r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, n);
  return r;
}

}  // namespace

TEST_CASE("local_entropy_sequence examples") {
  const RingSpec space(0, 3);
  auto seq = local_entropy_sequence(diag(space, {2, 3, 5}), MonomialIdeal::maximal(3), 4);
  REQUIRE(seq.rows.size() == 4);
  CHECK(seq.rows[3].length == power(30, 4));
  CHECK(seq.rows[3].a_n == doctest::Approx(std::log(30.0)).epsilon(1e-12));

  seq = local_entropy_sequence(MonomialMap::frobenius(RingSpec(2, 2)), MonomialIdeal::maximal(2), 6);
  for (const auto& row : seq.rows) {
    CHECK(row.length == power(4, row.n));
    CHECK(std::fabs(row.a_n - 2 * std::log(2.0)) < 1e-12);
  }

  seq = local_entropy_sequence(diag(kPlane, {2, 3}), minimalize({{2, 0}, {0, 3}}, 2), 6);
  for (const auto& row : seq.rows) {
    CHECK(row.length == 6 * power(6, row.n));
    CHECK(std::fabs(row.a_n - (std::log(6.0) + std::log(6.0) / row.n)) < 1e-12);
  }

  CHECK_THROWS_AS(local_entropy_sequence(MonomialMap(kPlane, {{1, 1}, {1, 1}}), MonomialIdeal::maximal(2), 3),
                  NotFiniteLength);
  CHECK_THROWS_AS(local_entropy_sequence(diag(kPlane, {2, 3}), minimalize({{1, 0}}, 2), 3), NotFiniteLength);
  CHECK_THROWS_AS(local_entropy_sequence(diag(kPlane, {2, 3}), MonomialIdeal::maximal(2), 0), std::invalid_argument);
}

TEST_CASE("a_n is nonnegative and rows are in order") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + rng() % 3;
    std::vector<Natural> e;
    for (std::size_t i = 0; i < d; ++i) e.emplace_back(static_cast<unsigned long>(1 + rng() % 3));
    const auto seq = local_entropy_sequence(diag(RingSpec(0, d), e), MonomialIdeal::maximal(d), 5, 1 + trial % 4);
    for (std::size_t i = 0; i < seq.rows.size(); ++i) {
      CHECK(seq.rows[i].n == i + 1);
      CHECK(seq.rows[i].a_n >= 0);
      CHECK(seq.rows[i].length >= 1);
    }
  }
}

TEST_CASE("estimate_limit examples") {
  std::vector<Natural> lengths;
  for (unsigned n = 1; n <= 8; ++n) lengths.push_back(power(30, n));
  auto est = estimate_limit(synthetic(lengths));
  CHECK(std::fabs(est.slope - std::log(30.0)) < 1e-12);
  CHECK(std::fabs(est.difference) < 1e-12);
  CHECK(std::fabs(est.ols_slope - std::log(30.0)) < 1e-12);

  lengths.clear();
  for (unsigned n = 1; n <= 8; ++n) lengths.push_back(6 * power(6, n));
  est = estimate_limit(synthetic(lengths));
  CHECK(std::fabs(est.slope - std::log(6.0)) < 1e-12);
  CHECK(std::fabs(est.last_term - (std::log(6.0) + std::log(6.0) / 8)) < 1e-12);

  lengths.clear();
  for (unsigned n = 1; n <= 10; ++n) lengths.push_back(2 * power(3, n) - 1);
  est = estimate_limit(synthetic(lengths));
  CHECK(std::fabs(est.slope - std::log(3.0)) < 1e-6);

  CHECK_THROWS_AS(estimate_limit(synthetic({1, 2})), std::invalid_argument);
}

TEST_CASE("delta_upper") {
  CHECK(delta_upper(diag(kPlane, {2, 3}), 2) == 36);
  CHECK(delta_upper(MonomialMap::frobenius(RingSpec(2, 2)), 1) == 4);
  for (unsigned long n : {1ul, 5ul, 40ul}) CHECK(delta_upper(MonomialMap::identity(kPlane), n) == 1);
  CHECK_THROWS_AS(delta_upper(MonomialMap::frobenius(RingSpec(2, 2, minimalize({{1, 1}}, 2))), 1), NotRegular);
}

TEST_CASE("delta_lower") {
  const GeneratorProfile unit{Natural(1), 0};
  for (double t : {-3.0, 0.0, 2.5}) CHECK(delta_lower(unit, Natural(36), t) == doctest::Approx(36.0));
  const GeneratorProfile six{Natural(6), 0};
  CHECK(delta_lower(six, power(6, 5), 0.7) == doctest::Approx(std::pow(6.0, 4)));
  const GeneratorProfile wide{Natural(1), 2};
  CHECK(delta_lower(wide, Natural(1), 1.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(log_delta_lower(wide, Natural(1), -1.0) == doctest::Approx(-2.0));
}

TEST_CASE("sandwich examples") {
  const auto phi = diag(kPlane, {2, 3});
  auto reports = sandwich(phi, {{1, 0}, {0, 1}}, {0.0}, 8);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].rows.size() == 8);
  for (const auto& row : reports[0].rows) {
    CHECK(std::fabs(row.lower_logavg - std::log(6.0)) < 1e-12);
    CHECK(std::fabs(row.upper_logavg - std::log(6.0)) < 1e-12);
    CHECK(row_invariants_hold(row));
  }

  reports = sandwich(phi, {{2, 0}, {0, 3}}, {0.0, 1.5}, 8);
  for (const auto& rep : reports) {
    CHECK(rep.profile.max_length == 6);
    CHECK(rep.profile.width == 0);
    for (const auto& row : rep.rows) {
      CHECK(std::fabs(row.gap_bound - std::log(6.0) / row.n) < 1e-12);
      CHECK(row_invariants_hold(row));
    }
  }

  reports = sandwich(MonomialMap::identity(kPlane), {{1, 0}, {0, 1}}, {0.0, -2.0}, 5);
  for (const auto& rep : reports) {
    CHECK(rep.h_loc_reference == 0.0);
    for (const auto& row : rep.rows) {
      CHECK(row.lower_logavg == 0.0);
      CHECK(row.upper_logavg == 0.0);
    }
  }
  CHECK_THROWS_AS(sandwich(MonomialMap::frobenius(RingSpec(2, 2, minimalize({{1, 1}}, 2))), {{1, 0}, {0, 1}}, {0.0}, 3),
                  NotRegular);
}

TEST_CASE("bound chain holds for random diagonal and monomial-matrix maps") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 15; ++trial) {
    const Natural a = static_cast<unsigned long>(1 + rng() % 4), b = static_cast<unsigned long>(1 + rng() % 4);
    const MonomialMap phi = trial % 2 ? diag(kPlane, {a, b}) : MonomialMap(kPlane, {{0, a.get_si()}, {b.get_si(), 0}});
    std::vector<ExponentVector> seq = {{1 + static_cast<long>(rng() % 2), 0}, {0, 1 + static_cast<long>(rng() % 3)}};
    if (trial % 3 == 0) seq.push_back({1, 1});
    const double t = static_cast<double>(rng() % 7) - 3.0;
    for (const auto& rep : sandwich(phi, seq, {t}, 5))
      for (const auto& row : rep.rows) {
        CHECK(row.lower_logavg <= row.upper_logavg + 1e-12 * std::max(1.0, std::fabs(row.upper_logavg)));
        CHECK(row_invariants_hold(row));
      }
  }
}

TEST_CASE("lower bounds on a quotient ring") {
  const RingSpec cross(2, 2, minimalize({{1, 1}}, 2));
  const auto reports = lower_bounds(MonomialMap::frobenius(cross), {{1, 0}, {0, 1}}, {0.0, 1.0}, 5);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].profile.width == 1);
  for (const auto& rep : reports)
    for (const auto& row : rep.rows) CHECK(row.lower_logavg <= row.local_a_n + 1e-12);
}

TEST_CASE("closed forms") {
  CHECK(closed_form_diagonal({2, 3, 5}) == doctest::Approx(std::log(30.0)).epsilon(1e-14));
  CHECK(closed_form_diagonal({1, 1, 1, 1}) == 0.0);
  CHECK(closed_form_diagonal({4, 4}) == doctest::Approx(4 * std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(closed_form_diagonal({2, 0}), std::invalid_argument);

  CHECK(frobenius_prediction(RingSpec(2, 2), 2) == doctest::Approx(2 * std::log(2.0)));
  CHECK(frobenius_prediction(RingSpec(3, 2, minimalize({{1, 1}}, 2)), 3) == doctest::Approx(std::log(3.0)));
  CHECK(frobenius_prediction(RingSpec(5, 1, minimalize({{1}}, 1)), 5) == 0.0);
  CHECK_THROWS_AS(frobenius_prediction(RingSpec(3, 2), 2), HypothesisError);
}

TEST_CASE("diagonal sequences equal the closed form at every n") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + rng() % 4;
    std::vector<Natural> e;
    for (std::size_t i = 0; i < d; ++i) e.emplace_back(static_cast<unsigned long>(1 + rng() % 7));
    const double expected = closed_form_diagonal(e);
    for (const auto& row : local_entropy_sequence(diag(RingSpec(0, d), e), MonomialIdeal::maximal(d), 6).rows)
      CHECK(std::fabs(row.a_n - expected) <= 1e-12 * std::max(1.0, expected));
  }
}

TEST_CASE("monomial-matrix estimates equal log |det|") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t d = 1 + rng() % 3;
    std::vector<std::size_t> perm(d);
    for (std::size_t i = 0; i < d; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<ExponentVector> cols;
    for (std::size_t j = 0; j < d; ++j)
      cols.push_back(ExponentVector::pure_power(d, perm[j], Natural(static_cast<unsigned long>(1 + rng() % 4))));
    const MonomialMap phi(RingSpec(0, d), cols);
    const auto seq = local_entropy_sequence(phi, MonomialIdeal::maximal(d), 6);
    CHECK(std::fabs(estimate_limit(seq).slope - log_natural(phi.monomial_matrix_abs_det())) < 1e-9);
  }
}

TEST_CASE("the limit does not depend on the ideal") {
  std::mt19937_64 rng(42);
  const unsigned n_max = 8;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + rng() % 2;
    std::vector<Natural> e;
    for (std::size_t i = 0; i < d; ++i) e.emplace_back(static_cast<unsigned long>(1 + rng() % 4));
    const auto phi = diag(RingSpec(0, d), e);
    const auto q1 = locent::testing::random_m_primary(rng, d, 5, 3);
    const auto q2 = locent::testing::random_m_primary(rng, d, 5, 3);
    const double s1 = estimate_limit(local_entropy_sequence(phi, q1, n_max)).slope;
    const double s2 = estimate_limit(local_entropy_sequence(phi, q2, n_max)).slope;
    const double envelope =
        2 * std::max(log_natural(colength(q1, phi.ring())), log_natural(colength(q2, phi.ring()))) / n_max;
    CHECK(std::fabs(s1 - s2) <= envelope + 1e-12);
  }
}

TEST_CASE("transfer_check") {
  // Frobenius on a line maps into Frobenius on the plane through Y -> X_2.
  const RingSpec line(3, 1), plane(3, 2);
  auto report = transfer_check(
      TransferSquare::make(MonomialMap::frobenius(plane), MonomialMap::frobenius(plane), {{1, 0}, {0, 1}}), 8);
  CHECK(report.agree);
  CHECK(std::fabs(report.h_phi - 2 * std::log(3.0)) < 1e-9);
  CHECK(report.conclusion.find("is constant and equal to") != std::string::npos);

  report = transfer_check(
      TransferSquare::make(MonomialMap::identity(plane), MonomialMap::identity(plane), {{1, 0}, {0, 1}}), 8);
  CHECK(report.agree);
  CHECK(report.h_phi == 0.0);
  CHECK(report.h_psi == 0.0);

  // Unequal entropies on a commuting square: only the one-sided chain.
  const auto psi = MonomialMap::diagonal(RingSpec(0, 2), {Natural(2), Natural(2)});
  const auto phi = MonomialMap::diagonal(RingSpec(0, 1), {Natural(2)});
  report = transfer_check(TransferSquare::make(psi, phi, {{1}, {1}}), 8);
  CHECK_FALSE(report.agree);
  CHECK(report.conclusion.find("<=") != std::string::npos);

  const auto bad = TransferSquare::make(MonomialMap::diagonal(RingSpec(0, 1), {Natural(2)}),
                                        MonomialMap::diagonal(RingSpec(0, 1), {Natural(3)}), {{1}});
  CHECK_THROWS_AS(transfer_check(bad, 8), HypothesisError);
  const auto flat = TransferSquare::make(MonomialMap::diagonal(line, {Natural(3)}),
                                         MonomialMap::frobenius(plane), {{0, 1}});
  CHECK_THROWS_AS(transfer_check(flat, 8), NotFiniteLength);
}

TEST_CASE("format_real") {
  CHECK(format_real(std::log(6.0)) == "1.79175946923");
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(2.0) == "2");
}
