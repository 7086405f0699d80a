#include "locent/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "locent/entropy.hpp"
#include "locent/errors.hpp"
#include "locent/koszul.hpp"

namespace locent::cli {

namespace {

RunReport start(const SpecFile& spec, const CommandOptions& opts) {
  RunReport rep;
  rep.command = opts.echo;
  rep.input_digest = spec.digest;
  return rep;
}

std::string log_value(double v, const CommandOptions& opts) { return format_real(v / opts.log_scale); }

std::vector<ExponentVector> generator_sequence(const SpecFile& spec) {
  if (spec.sequence) return *spec.sequence;
  std::vector<ExponentVector> vars;
  for (std::size_t i = 0; i < spec.ring.dim(); ++i) vars.push_back(ExponentVector::pure_power(spec.ring.dim(), i, 1));
  return vars;
}

std::string render_sequence(const std::vector<ExponentVector>& seq) {
  std::string s;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += ", ";
    s += seq[i].to_string();
  }
  return s;
}

bool is_frobenius(const MonomialMap& phi) {
  return phi.ring().characteristic() != 0 && phi == MonomialMap::frobenius(phi.ring());
}

struct Prediction {
  double value;
  std::string kind;
};

std::optional<Prediction> closed_form(const MonomialMap& phi) {
  const RingSpec& ring = phi.ring();
  if (is_frobenius(phi)) return Prediction{frobenius_prediction(ring, ring.characteristic()), "frobenius"};
  if (!ring.regular()) return std::nullopt;
  if (phi.is_diagonal()) {
    std::vector<Natural> xi;
    for (std::size_t i = 0; i < phi.dim(); ++i) xi.push_back(phi.entry(i, i));
    return Prediction{closed_form_diagonal(xi), "diagonal"};
  }
  if (phi.is_monomial_matrix()) return Prediction{log_natural(phi.monomial_matrix_abs_det()), "monomial-matrix"};
  return std::nullopt;
}

void add_entropy_table(RunReport& rep, const EntropySequence& seq, const CommandOptions& opts) {
  rep.columns = {"n", "length", "log_length", "a_n"};
  for (const auto& r : seq.rows)
    rep.rows.push_back({std::to_string(r.n), to_string(r.length), log_value(r.log_length, opts),
                        log_value(r.a_n, opts)});
}

void add_estimate_notes(RunReport& rep, const EntropySequence& seq, const CommandOptions& opts) {
  if (seq.rows.size() < 3) {
    rep.note("slope", "unavailable (needs max-iter >= 3)");
    return;
  }
  const LimitEstimate est = estimate_limit(seq);
  rep.note("slope", log_value(est.slope, opts));
  rep.note("ols_slope", log_value(est.ols_slope, opts));
  rep.note("last_term", log_value(est.last_term, opts));
  rep.note("last_minus_slope", log_value(est.difference, opts));
}

// Brute-force box enumeration for every row whose box is small enough.
void add_enumeration_oracle(RunReport& rep, const EntropySequence& seq) {
  const RingSpec& ring = seq.map.ring();
  MonomialMap power = seq.map;
  for (const auto& r : seq.rows) {
    if (r.n > 1) power = compose(power, seq.map);
    const MonomialIdeal total = ideal_sum(image_ideal(power, seq.ideal), ring.quotient());
    try {
      const Natural counted = colength_by_enumeration(total, std::uint64_t{1} << 26);
      rep.verdict("enumeration n=" + std::to_string(r.n), counted == r.length,
                  "box count " + to_string(counted) + " vs " + to_string(r.length));
    } catch (const std::length_error&) {
      rep.note("enumeration n=" + std::to_string(r.n), "skipped (box too large)");
    }
  }
}

Natural doubled_box_homology_total(const KoszulComplex& complex, int degree) {
  const auto side = default_search_box(complex);
  std::vector<std::uint64_t> doubled;
  std::uint64_t volume = 1;
  for (auto s : side) {
    doubled.push_back(2 * s);
    if (volume > (std::uint64_t{1} << 24) / (2 * s)) throw std::length_error("oracle box too large");
    volume *= 2 * s;
  }
  Natural total = 0;
  std::vector<std::int64_t> v(side.size(), 0);
  const auto k = static_cast<std::size_t>(-degree);
  for (std::uint64_t idx = 0; idx < volume; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t c = side.size(); c-- > 0;) {
      v[c] = static_cast<std::int64_t>(rest % doubled[c]);
      rest /= doubled[c];
    }
    total += static_cast<unsigned long>(homology_at_multidegree(complex, v)[k]);
  }
  return total;
}

}  // namespace

RunReport cmd_entropy(const SpecFile& spec, const CommandOptions& opts) {
  RunReport rep = start(spec, opts);
  const MonomialIdeal q = spec.ideal.value_or(MonomialIdeal::maximal(spec.ring.dim()));
  const EntropySequence seq = local_entropy_sequence(spec.map, q, opts.max_iter);
  add_entropy_table(rep, seq, opts);
  rep.note("ideal", q.to_string());
  add_estimate_notes(rep, seq, opts);
  if (auto pred = closed_form(spec.map)) {
    rep.note("prediction", log_value(pred->value, opts));
    rep.note("prediction_basis", pred->kind);
  }
  if (opts.oracle) add_enumeration_oracle(rep, seq);
  return rep;
}

RunReport cmd_delta(const SpecFile& spec, const CommandOptions& opts) {
  RunReport rep = start(spec, opts);
  const auto sequence = generator_sequence(spec);
  rep.note("generator", "Koszul(" + render_sequence(sequence) + ")");

  if (!spec.ring.regular()) {
    const auto reports = lower_bounds(spec.map, sequence, opts.t_values, opts.max_iter);
    rep.note("notice", "ring is not regular; the upper bound needs a regular ring, reporting lower bounds only");
    rep.note("B", to_string(reports.front().profile.max_length));
    rep.note("N", std::to_string(reports.front().profile.width));
    rep.columns = {"t", "n", "lower_logavg", "a_n"};
    for (const auto& r : reports)
      for (const auto& row : r.rows)
        rep.rows.push_back({format_real(r.t), std::to_string(row.n), log_value(row.lower_logavg, opts),
                            log_value(row.local_a_n, opts)});
    return rep;
  }

  const auto reports = sandwich(spec.map, sequence, opts.t_values, opts.max_iter);
  rep.note("B", to_string(reports.front().profile.max_length));
  rep.note("N", std::to_string(reports.front().profile.width));
  rep.note("h_loc_reference", log_value(reports.front().h_loc_reference, opts));
  rep.columns = {"t", "n", "lower_logavg", "upper_logavg", "gap_bound"};
  std::size_t checked = 0;
  std::string first_failure;
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      rep.rows.push_back({format_real(r.t), std::to_string(row.n), log_value(row.lower_logavg, opts),
                          log_value(row.upper_logavg, opts), log_value(row.gap_bound, opts)});
      ++checked;
      if (!row_invariants_hold(row) && first_failure.empty())
        first_failure = "t=" + format_real(r.t) + " n=" + std::to_string(row.n);
    }
  }
  rep.verdict("sandwich holds", first_failure.empty(),
              first_failure.empty() ? std::to_string(checked) + " rows: lower <= upper <= lower + gap_bound"
                                    : "row invariant fails at " + first_failure);
  return rep;
}

RunReport cmd_koszul(const SpecFile& spec, const CommandOptions& opts) {
  if (!spec.sequence) throw ParseError("spec has no 'sequence' field, which koszul requires");
  RunReport rep = start(spec, opts);
  KoszulComplex complex = KoszulComplex::build(spec.ring, *spec.sequence);
  if (opts.pullback_iter > 0) {
    complex = pullback(complex, iterate(spec.map, opts.pullback_iter));
    rep.note("pullback", "map^" + std::to_string(opts.pullback_iter));
  }
  rep.note("sequence", render_sequence(complex.sequence()));
  std::string ranks;
  for (int k = -static_cast<int>(complex.length()); k <= 0; ++k)
    ranks += (ranks.empty() ? "" : ",") + std::to_string(complex.rank(k));
  rep.note("ranks", ranks);

  const HomologyLengths homology = homology_lengths(complex);
  rep.columns = {"degree", "length"};
  for (const auto& [degree, len] : homology.lengths) rep.rows.push_back({std::to_string(degree), to_string(len)});
  const GeneratorProfile profile = generator_profile(homology);
  rep.note("B", to_string(profile.max_length));
  rep.note("N", std::to_string(profile.width));

  const Natural h0 = h0_length(complex);
  rep.verdict("H^0 equals colength", h0 == homology.at(0),
              "colength " + to_string(h0) + " vs H^0 " + to_string(homology.at(0)));
  if (opts.oracle) {
    try {
      for (int k = -static_cast<int>(complex.length()); k <= 0; ++k) {
        const Natural direct = doubled_box_homology_total(complex, k);
        rep.verdict("doubled-box H^" + std::to_string(k), direct == homology.at(k),
                    "doubled box " + to_string(direct) + " vs " + to_string(homology.at(k)));
      }
    } catch (const std::length_error&) {
      rep.note("oracle", "skipped (box too large)");
    }
  }
  return rep;
}

RunReport cmd_transfer(const SpecFile& spec, const CommandOptions& opts) {
  if (!spec.square) throw ParseError("spec has no transfer square (source_variables, source_map, xi)");
  RunReport rep = start(spec, opts);
  const TransferSquare& sq = *spec.square;
  if (!check_square(sq)) throw HypothesisError("transfer square does not commute: xi o psi != phi o xi");
  const TransferReport tr = transfer_check(sq, opts.max_iter);
  const auto psi_seq = local_entropy_sequence(sq.psi, MonomialIdeal::maximal(sq.source.dim()), opts.max_iter);
  const auto phi_seq = local_entropy_sequence(sq.phi, MonomialIdeal::maximal(sq.target.dim()), opts.max_iter);
  rep.columns = {"n", "a_n_psi", "a_n_phi"};
  for (std::size_t i = 0; i < psi_seq.rows.size(); ++i)
    rep.rows.push_back({std::to_string(psi_seq.rows[i].n), log_value(psi_seq.rows[i].a_n, opts),
                        log_value(phi_seq.rows[i].a_n, opts)});
  rep.note("square", "commutes");
  rep.note("h_loc_psi", log_value(tr.h_psi, opts));
  rep.note("h_loc_phi", log_value(tr.h_phi, opts));
  rep.note("agree", tr.agree ? "yes" : "no");
  rep.note("conclusion", tr.conclusion);
  return rep;
}

RunReport cmd_verify(const std::string& suite, const SpecFile& spec, const CommandOptions& opts) {
  RunReport rep = start(spec, opts);
  const RingSpec& ring = spec.ring;
  const MonomialIdeal m = MonomialIdeal::maximal(ring.dim());

  if (suite == "diagonal") {
    if (!ring.regular() || !spec.map.is_diagonal())
      throw HypothesisError("verify diagonal needs a diagonal map on a regular ring");
    std::vector<Natural> xi;
    Natural product = 1;
    for (std::size_t i = 0; i < spec.map.dim(); ++i) {
      xi.push_back(spec.map.entry(i, i));
      product *= xi.back();
    }
    const double predicted = closed_form_diagonal(xi);
    const auto seq = local_entropy_sequence(spec.map, m, opts.max_iter);
    add_entropy_table(rep, seq, opts);
    rep.note("prediction", log_value(predicted, opts));
    Natural expected = 1;
    for (const auto& r : seq.rows) {
      expected *= product;
      const bool ok = r.length == expected && std::fabs(r.a_n - predicted) < 1e-9;
      rep.verdict("n=" + std::to_string(r.n), ok,
                  "length " + to_string(r.length) + " vs " + to_string(expected) + "; |a_n - prediction| < 1e-9");
    }
  } else if (suite == "monomial-matrix") {
    if (!ring.regular() || !spec.map.is_monomial_matrix())
      throw HypothesisError("verify monomial-matrix needs a monomial matrix on a regular ring");
    const Natural det = spec.map.monomial_matrix_abs_det();
    const double predicted = log_natural(det);
    const auto seq = local_entropy_sequence(spec.map, m, opts.max_iter);
    add_entropy_table(rep, seq, opts);
    rep.note("prediction", log_value(predicted, opts));
    rep.note("prediction_basis", "log|det A|, |det A| = " + to_string(det));
    Natural expected = 1;
    for (const auto& r : seq.rows) {
      expected *= det;
      rep.verdict("n=" + std::to_string(r.n), r.length == expected,
                  "length " + to_string(r.length) + " vs |det A|^n = " + to_string(expected));
    }
    if (seq.rows.size() >= 3) {
      const double slope = estimate_limit(seq).slope;
      rep.verdict("slope", std::fabs(slope - predicted) < 1e-9,
                  log_value(slope, opts) + " within 1e-9 of " + log_value(predicted, opts));
    }
  } else if (suite == "frobenius") {
    if (!is_frobenius(spec.map)) throw HypothesisError("verify frobenius needs the Frobenius map x -> x^p");
    const std::uint64_t p = ring.characteristic();
    const double predicted = frobenius_prediction(ring, p);
    const auto seq = local_entropy_sequence(spec.map, m, opts.max_iter);
    add_entropy_table(rep, seq, opts);
    rep.note("prediction", log_value(predicted, opts));
    rep.note("prediction_basis", "dim R = " + std::to_string(krull_dimension(ring.quotient(), ring.dim())) +
                                     ", p = " + std::to_string(p));
    add_estimate_notes(rep, seq, opts);
    bool bounded = true;
    for (const auto& r : seq.rows) bounded = bounded && r.a_n >= predicted - 1e-9;
    rep.verdict("a_n >= dim R * log p", bounded, "every n; standard monomials on a free face give p^{n dim R}");
    if (ring.regular()) {
      Natural expected = 1;
      Natural pd = 1;
      for (std::size_t i = 0; i < ring.dim(); ++i) pd *= static_cast<unsigned long>(p);
      bool exact = true;
      for (const auto& r : seq.rows) {
        expected *= pd;
        exact = exact && r.length == expected;
      }
      rep.verdict("length = p^{n d}", exact, "regular ring, every n");
    }
    if (seq.rows.size() >= 3) {
      const double slope = estimate_limit(seq).slope;
      rep.verdict("slope", std::fabs(slope - predicted) <= 1e-6,
                  "predicted " + log_value(predicted, opts) + "; slope " + log_value(slope, opts) + " within 1e-6");
    }
    if (opts.oracle) add_enumeration_oracle(rep, seq);
  } else if (suite == "ideal-independence") {
    if (!spec.ideal) throw ParseError("verify ideal-independence needs an 'ideal' field");
    if (opts.max_iter < 3) throw std::invalid_argument("verify ideal-independence needs max-iter >= 3");
    const auto with_q = local_entropy_sequence(spec.map, *spec.ideal, opts.max_iter);
    const auto with_m = local_entropy_sequence(spec.map, m, opts.max_iter);
    rep.columns = {"n", "a_n_q", "a_n_m", "difference"};
    for (std::size_t i = 0; i < with_q.rows.size(); ++i)
      rep.rows.push_back({std::to_string(with_q.rows[i].n), log_value(with_q.rows[i].a_n, opts),
                          log_value(with_m.rows[i].a_n, opts),
                          log_value(with_q.rows[i].a_n - with_m.rows[i].a_n, opts)});
    const double slope_q = estimate_limit(with_q).slope;
    const double slope_m = estimate_limit(with_m).slope;
    const double envelope =
        2.0 * std::max(log_natural(colength(*spec.ideal, ring)), log_natural(colength(m, ring))) / opts.max_iter;
    rep.note("ideal", spec.ideal->to_string());
    rep.note("slope_q", log_value(slope_q, opts));
    rep.note("slope_m", log_value(slope_m, opts));
    rep.note("envelope", log_value(envelope, opts));
    rep.verdict("slopes agree", std::fabs(slope_q - slope_m) <= envelope + 1e-12,
                "|slope_q - slope_m| <= 2 max(log colength(q), log colength(m)) / N");
  } else if (suite == "sandwich") {
    const auto reports = sandwich(spec.map, generator_sequence(spec), opts.t_values, opts.max_iter);
    rep.columns = {"t", "n", "lower_logavg", "upper_logavg", "gap_bound"};
    const double h = reports.front().h_loc_reference;
    bool invariants = true, near = true;
    for (const auto& r : reports)
      for (const auto& row : r.rows) {
        rep.rows.push_back({format_real(r.t), std::to_string(row.n), log_value(row.lower_logavg, opts),
                            log_value(row.upper_logavg, opts), log_value(row.gap_bound, opts)});
        invariants = invariants && row_invariants_hold(row);
        near = near && std::fabs(row.lower_logavg - h) <= row.gap_bound + 1e-9 &&
               std::fabs(row.upper_logavg - h) <= row.gap_bound + 1e-9;
      }
    rep.note("h_loc_reference", log_value(h, opts));
    rep.verdict("sandwich holds", invariants, "lower <= upper <= lower + gap_bound at every row");
    rep.verdict("bounds within gap of h_loc", near, "|bound - h_loc| <= gap_bound + 1e-9 at every row");
  } else if (suite == "transfer") {
    RunReport tr = cmd_transfer(spec, opts);
    tr.verdict("entropies agree", tr.notes.end() != std::find_if(tr.notes.begin(), tr.notes.end(), [](const auto& kv) {
                                    return kv.first == "agree" && kv.second == "yes";
                                  }),
               "|h_loc(phi) - h_loc(psi)| <= 1e-6 after slope extrapolation");
    return tr;
  } else {
    throw std::invalid_argument("unknown verify suite '" + suite + "'");
  }
  return rep;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"locent: local entropy of monomial endomorphisms and complexity bounds"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string format_name = "tsv";
  std::string log_base = "e";
  std::string suite;
  CommandOptions opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_path, "Spec file")->required()->check(CLI::ExistingFile);
    sub->add_option("--max-iter", opts.max_iter, "Largest iterate n")->check(CLI::Range(1u, 100000u));
    sub->add_option("--t", opts.t_values, "Comma-separated values of t")->delimiter(',')->allow_extra_args(false);
    sub->add_option("--format", format_name, "tsv or report")->check(CLI::IsMember({"tsv", "report"}));
    sub->add_flag("--oracle", opts.oracle, "Cross-check against brute-force enumeration");
    sub->add_option("--log-base", log_base, "Display logarithms in base e, 2 or 10")
        ->check(CLI::IsMember({"e", "2", "10"}));
  };
  CLI::App* entropy = app.add_subcommand("entropy", "Local entropy sequence");
  CLI::App* delta = app.add_subcommand("delta", "Lower and upper complexity bounds");
  CLI::App* koszul = app.add_subcommand("koszul", "Koszul homology lengths");
  CLI::App* verify = app.add_subcommand("verify", "Check computed entropies against predictions");
  CLI::App* transfer = app.add_subcommand("transfer", "Entropy transfer along a commuting square");
  for (CLI::App* sub : {entropy, delta, koszul, verify, transfer}) add_common(sub);
  koszul->add_option("--pullback-iter", opts.pullback_iter, "Pull the complex back along map^n");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(verify_suites()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  for (int i = 1; i < argc; ++i) opts.echo += (i > 1 ? " " : "") + std::string(argv[i]);
  opts.log_scale = log_base == "2" ? std::numbers::ln2 : log_base == "10" ? std::numbers::ln10 : 1.0;
  const Format format = format_name == "report" ? Format::report : Format::tsv;

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const SpecFile spec = parse_spec(spec_path);
    RunReport rep;
    if (entropy->parsed())
      rep = cmd_entropy(spec, opts);
    else if (delta->parsed())
      rep = cmd_delta(spec, opts);
    else if (koszul->parsed())
      rep = cmd_koszul(spec, opts);
    else if (verify->parsed())
      rep = cmd_verify(suite, spec, opts);
    else
      rep = cmd_transfer(spec, opts);
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << render(rep, format);
    err << "wall-time: " << rep.wall_seconds << " s\n";
    return rep.all_pass() ? kExitOk : kExitVerdict;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const HypothesisError& e) {
    err << "hypothesis failure: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const SearchRegionExceeded& e) {
    err << "homology search failed: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace locent::cli
