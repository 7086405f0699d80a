#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "locent/cli/commands.hpp"
#include "locent/errors.hpp"

using namespace locent;
using namespace locent::cli;

namespace {

const std::string kData = LOCENT_TEST_DATA_DIR;

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "locent");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return Run{code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

// Goldens store the data directory as "DATA" so they do not depend on the checkout location.
std::string normalized(std::string s) {
  for (std::size_t at; (at = s.find(kData)) != std::string::npos;) s.replace(at, kData.size(), "DATA");
  return s;
}

void check_golden(const std::string& name, const std::string& actual) {
  const std::string path = std::string(LOCENT_GOLDEN_DIR) + "/" + name;
  if (std::getenv("LOCENT_UPDATE_GOLDENS")) {
    std::ofstream(path, std::ios::binary) << actual;
    return;
  }
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing golden " << path);
  std::ostringstream expected;
  expected << in.rdbuf();
  CHECK(expected.str() == actual);
}

}  // namespace

TEST_CASE("golden reports") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"entropy_diag235.tsv", {"entropy", "--spec", data("diag235.spec"), "--max-iter", "6"}},
      {"entropy_frobenius3_cross.tsv", {"entropy", "--spec", data("frobenius3_cross.spec"), "--max-iter", "8"}},
      {"entropy_swap32_log2.tsv", {"entropy", "--spec", data("swap32.spec"), "--max-iter", "4", "--log-base", "2"}},
      {"delta_diag23.tsv", {"delta", "--spec", data("diag23.spec"), "--t=-1,0,1", "--max-iter", "8"}},
      {"delta_frobenius2_cross.tsv", {"delta", "--spec", data("frobenius2_cross.spec"), "--max-iter", "4"}},
      {"koszul_regular.tsv", {"koszul", "--spec", data("regular_xy.spec")}},
      {"koszul_cross_pullback.tsv",
       {"koszul", "--spec", data("frobenius2_cross.spec"), "--pullback-iter", "2", "--oracle"}},
      {"verify_diagonal.tsv", {"verify", "diagonal", "--spec", data("diag235.spec"), "--max-iter", "8"}},
      {"verify_frobenius.tsv", {"verify", "frobenius", "--spec", data("frobenius3_cross.spec"), "--max-iter", "8"}},
      {"verify_ideal_independence.tsv", {"verify", "ideal-independence", "--spec", data("diag23.spec")}},
      {"verify_sandwich.tsv", {"verify", "sandwich", "--spec", data("diag23.spec"), "--t=-1,0,1"}},
      {"transfer_frobenius.json", {"transfer", "--spec", data("frobenius_square.spec"), "--format", "report"}},
  };
  for (const auto& [name, args] : cases) {
    CAPTURE(name);
    const Run r = run(args);
    CHECK(r.code == kExitOk);
    check_golden(name, normalized(r.out));
  }
}

TEST_CASE("identical invocations give byte-identical reports") {
  const std::vector<std::string> args = {"koszul", "--spec", data("frobenius3_cross.spec"), "--pullback-iter", "3"};
  const Run a = run(args), b = run(args);
  CHECK(a.out == b.out);
  CHECK(a.code == kExitOk);
}

TEST_CASE("exit codes") {
  CHECK(run({"entropy", "--spec", data("xy_to_xy.spec")}).code == kExitHypothesis);
  const Run zero = run({"entropy", "--spec", data("zero_column.spec")});
  CHECK(zero.code == kExitParse);
  CHECK(zero.err.find("map column 2 is zero (not a local endomorphism)") != std::string::npos);
  CHECK(run({"entropy", "--spec", data("bad_syntax.spec")}).code == kExitParse);
  CHECK(run({"entropy", "--spec", data("missing.spec")}).code == kExitParse);
  CHECK(run({"entropy"}).code == kExitParse);
  CHECK(run({"verify", "nonsense", "--spec", data("diag23.spec")}).code == kExitParse);
  CHECK(run({"koszul", "--spec", data("seq_not_primary.spec")}).code == kExitHypothesis);
  CHECK(run({"transfer", "--spec", data("broken_square.spec")}).code == kExitHypothesis);
  CHECK(run({"verify", "frobenius", "--spec", data("diag23.spec")}).code == kExitHypothesis);
  CHECK(run({"verify", "transfer", "--spec", data("unequal_square.spec")}).code == kExitVerdict);
}

TEST_CASE("commands called directly") {
  const auto spec = parse_spec(data("diag235.spec"));
  CommandOptions opts;
  opts.max_iter = 6;
  const RunReport rep = cmd_entropy(spec, opts);
  REQUIRE(rep.rows.size() == 6);
  CHECK(rep.rows[5][1] == "729000000");
  CHECK(rep.all_pass());

  const auto cross = parse_spec(data("frobenius2_cross.spec"));
  const RunReport delta = cmd_delta(cross, opts);
  bool noticed = false;
  for (const auto& [k, v] : delta.notes) noticed |= k == "notice";
  CHECK(noticed);

  const RunReport verify = cmd_verify("monomial-matrix", parse_spec(data("swap32.spec")), opts);
  CHECK(verify.all_pass());
  CHECK(verify.verdicts.size() == 7);

  CHECK_THROWS_AS(cmd_verify("sandwich", cross, opts), NotRegular);
}

TEST_CASE("tsv and report formats carry the same rows") {
  const Run tsv = run({"entropy", "--spec", data("diag235.spec"), "--max-iter", "3"});
  const Run rep = run({"entropy", "--spec", data("diag235.spec"), "--max-iter", "3", "--format", "report"});
  CHECK(tsv.out.find("3\t27000\t") != std::string::npos);
  CHECK(rep.out.find("\"27000\"") != std::string::npos);
  CHECK(rep.out.find("\"status\": \"pass\"") != std::string::npos);
}
