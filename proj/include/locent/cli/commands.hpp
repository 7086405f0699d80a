#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "locent/cli/report.hpp"
#include "locent/cli/spec_file.hpp"

namespace locent::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitParse = 2,
  kExitHypothesis = 3,
  kExitVerdict = 4,
};

struct CommandOptions {
  std::string echo;  // command line as typed, minus the program name
  unsigned max_iter = 8;
  std::vector<double> t_values{0.0};
  bool oracle = false;
  /// Divides every displayed logarithm (1 keeps natural logs).
  double log_scale = 1.0;
  unsigned pullback_iter = 0;
};

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> suites = {"diagonal", "monomial-matrix", "frobenius",
                                                  "ideal-independence", "sandwich", "transfer"};
  return suites;
}

/// Each command throws HypothesisError (and subclasses) when the input does
/// not satisfy the mathematical preconditions, ParseError / std::invalid_argument
/// on unusable input. Verdict failures are reported, not thrown.
RunReport cmd_entropy(const SpecFile& spec, const CommandOptions& opts);
RunReport cmd_delta(const SpecFile& spec, const CommandOptions& opts);
RunReport cmd_koszul(const SpecFile& spec, const CommandOptions& opts);
RunReport cmd_verify(const std::string& suite, const SpecFile& spec, const CommandOptions& opts);
RunReport cmd_transfer(const SpecFile& spec, const CommandOptions& opts);

/// Full front end from argv to exit code.
/// The rendered report goes to `out`; diagnostics and wall time go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace locent::cli
