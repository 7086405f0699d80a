#include "locent/cli/report.hpp"

#include <algorithm>

#include <json.hpp>

namespace locent::cli {

bool RunReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

namespace {

std::string join(const std::vector<std::string>& cells, char sep) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += sep;
    out += cells[i];
  }
  return out;
}

}  // namespace

std::string render(const RunReport& report, Format format) {
  if (format == Format::report) {
    nlohmann::ordered_json j;
    j["command"] = report.command;
    j["input"] = report.input_digest;
    j["columns"] = report.columns;
    j["rows"] = report.rows;
    nlohmann::ordered_json notes = nlohmann::ordered_json::array();
    for (const auto& [k, v] : report.notes) notes.push_back({{"key", k}, {"value", v}});
    j["notes"] = notes;
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
    for (const auto& v : report.verdicts)
      verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
    j["verdicts"] = verdicts;
    j["status"] = report.all_pass() ? "pass" : "fail";
    return j.dump(2) + "\n";
  }

  std::string out;
  out += "# command: " + report.command + "\n";
  out += "# input: " + report.input_digest + "\n";
  if (!report.columns.empty()) {
    out += join(report.columns, '\t') + "\n";
    for (const auto& row : report.rows) out += join(row, '\t') + "\n";
  }
  for (const auto& [k, v] : report.notes) out += "# " + k + "\t" + v + "\n";
  for (const auto& v : report.verdicts)
    out += std::string("# verdict\t") + (v.pass ? "PASS" : "FAIL") + "\t" + v.name + "\t" + v.detail + "\n";
  return out;
}

}  // namespace locent::cli
