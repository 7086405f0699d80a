#pragma once

#include <string>
#include <utility>
#include <vector>

namespace locent::cli {

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Output of one command. Rendering is deterministic: the wall time is kept
/// out of the rendered text and printed separately by the front end.
struct RunReport {
  std::string command;
  std::string input_digest;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> notes;
  std::vector<Verdict> verdicts;
  double wall_seconds = 0;

  void note(std::string key, std::string value) { notes.emplace_back(std::move(key), std::move(value)); }
  void verdict(std::string name, bool pass, std::string detail) {
    verdicts.push_back(Verdict{std::move(name), pass, std::move(detail)});
  }
  bool all_pass() const;
};

enum class Format { tsv, report };

/// tsv is a tab-separated table framed by '#' lines carrying the header,
/// notes and verdicts. report is one JSON object with the same content.
std::string render(const RunReport& report, Format format);

}  // namespace locent::cli
