#include "locent/cli/spec_file.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "locent/errors.hpp"

namespace locent::cli {

namespace {

struct Field {
  std::size_t line = 0;
  std::string value;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

class Parser {
 public:
  explicit Parser(std::string_view origin) : origin_(origin) {}

  [[noreturn]] void fail(std::size_t line, const std::string& msg) const {
    throw ParseError(origin_ + ":" + std::to_string(line) + ": " + msg);
  }

  std::map<std::string, Field> split(std::string_view text) const {
    static const std::set<std::string> known = {"characteristic", "variables", "quotient", "map", "ideal",
                                                "sequence", "source_variables", "source_map", "xi"};
    std::map<std::string, Field> fields;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
      ++line;
      const auto hash = raw.find('#');
      const std::string body = trim(std::string_view(raw).substr(0, hash));
      if (body.empty()) continue;
      const auto colon = body.find(':');
      if (colon == std::string::npos) fail(line, "expected 'field: value'");
      const std::string key = trim(std::string_view(body).substr(0, colon));
      if (!known.count(key)) fail(line, "unknown field '" + key + "'");
      if (fields.count(key)) fail(line, "duplicate field '" + key + "'");
      fields[key] = Field{line, trim(std::string_view(body).substr(colon + 1))};
    }
    return fields;
  }

  std::uint64_t characteristic(const Field& f) const {
    const std::string& v = f.value;
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
      fail(f.line, "field 'characteristic': expected 0 or a prime, got '" + v + "'");
    if (v.size() > 19) fail(f.line, "field 'characteristic': value too large");
    const std::uint64_t p = std::stoull(v);
    if (p != 0 && !is_prime(p)) fail(f.line, "field 'characteristic': " + v + " is neither 0 nor prime");
    return p;
  }

  std::vector<std::string> names(const Field& f, const char* key) const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    std::istringstream in(f.value);
    std::string item;
    while (std::getline(in, item, ',')) {
      const std::string name = trim(item);
      const bool ok = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') &&
                      name.find_first_not_of("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_") ==
                          std::string::npos;
      if (!ok) fail(f.line, std::string("field '") + key + "': invalid variable name '" + name + "'");
      if (!seen.insert(name).second) fail(f.line, std::string("field '") + key + "': duplicate variable '" + name + "'");
      out.push_back(name);
    }
    if (out.empty()) fail(f.line, std::string("field '") + key + "': no variables");
    return out;
  }

  // Bracketed integer lists separated by commas, e.g. "[1,0], [0,2]". Empty is allowed.
  std::vector<ExponentVector> vectors(const Field& f, const char* key, std::size_t d) const {
    std::vector<ExponentVector> out;
    const std::string& s = f.value;
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto bad = [&](const std::string& what) {
      fail(f.line, std::string("field '") + key + "': " + what);
    };
    skip_ws();
    while (i < s.size()) {
      if (s[i] != '[') bad("expected '[' at column " + std::to_string(i + 1));
      ++i;
      std::vector<Natural> entries;
      while (true) {
        skip_ws();
        if (i < s.size() && s[i] == '-') bad("negative exponent in vector " + std::to_string(out.size() + 1));
        const std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) bad("expected an integer at column " + std::to_string(i + 1));
        entries.push_back(parse_natural(std::string_view(s).substr(start, i - start)));
        skip_ws();
        if (i < s.size() && s[i] == ',') {
          ++i;
          continue;
        }
        if (i < s.size() && s[i] == ']') {
          ++i;
          break;
        }
        bad("unterminated vector");
      }
      if (entries.size() != d)
        bad("vector " + std::to_string(out.size() + 1) + " has " + std::to_string(entries.size()) +
            " entries, expected " + std::to_string(d));
      out.emplace_back(std::move(entries));
      skip_ws();
      if (i < s.size()) {
        if (s[i] != ',') bad("expected ',' between vectors");
        ++i;
        skip_ws();
        if (i == s.size()) bad("trailing ','");
      }
    }
    return out;
  }

 private:
  std::string origin_;
};

}  // namespace

std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SpecFile parse_spec_text(std::string_view text, std::string_view origin) {
  Parser p(origin);
  const auto fields = p.split(text);
  auto require = [&](const char* key) -> const Field& {
    auto it = fields.find(key);
    if (it == fields.end()) throw ParseError(std::string(origin) + ": missing field '" + key + "'");
    return it->second;
  };
  auto optional = [&](const char* key) -> const Field* {
    auto it = fields.find(key);
    return it == fields.end() ? nullptr : &it->second;
  };

  const Field& char_field = require("characteristic");
  const std::uint64_t characteristic = p.characteristic(char_field);
  const Field& var_field = require("variables");
  std::vector<std::string> variables = p.names(var_field, "variables");
  const std::size_t d = variables.size();

  MonomialIdeal quotient(d);
  const Field* quot_field = optional("quotient");
  if (quot_field) {
    for (const auto& g : p.vectors(*quot_field, "quotient", d))
      if (g.is_zero()) p.fail(quot_field->line, "field 'quotient': generator 1 is not in the maximal ideal");
    quotient = minimalize(p.vectors(*quot_field, "quotient", d), d);
  }
  RingSpec ring(characteristic, d, quotient);

  const Field& map_field = require("map");
  auto columns = p.vectors(map_field, "map", d);
  if (columns.size() != d)
    p.fail(map_field.line, "field 'map': expected " + std::to_string(d) + " columns, got " +
                               std::to_string(columns.size()));
  std::optional<MonomialMap> map;
  try {
    map.emplace(ring, std::move(columns));
  } catch (const std::invalid_argument& e) {
    p.fail(map_field.line, e.what());
  }

  std::optional<MonomialIdeal> ideal;
  if (const Field* f = optional("ideal")) {
    auto gens = p.vectors(*f, "ideal", d);
    if (gens.empty()) p.fail(f->line, "field 'ideal': empty");
    ideal = minimalize(std::move(gens), d);
  }

  std::optional<std::vector<ExponentVector>> sequence;
  if (const Field* f = optional("sequence")) {
    auto seq = p.vectors(*f, "sequence", d);
    if (seq.empty()) p.fail(f->line, "field 'sequence': empty");
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (seq[i].is_zero())
        p.fail(f->line, "field 'sequence': element " + std::to_string(i + 1) + " is a unit, not in m");
    sequence = std::move(seq);
  }

  std::optional<TransferSquare> square;
  const Field* src_vars = optional("source_variables");
  const Field* src_map = optional("source_map");
  const Field* xi = optional("xi");
  if (src_vars || src_map || xi) {
    if (!src_vars || !src_map || !xi)
      throw ParseError(std::string(origin) +
                       ": fields 'source_variables', 'source_map' and 'xi' must appear together");
    const auto src_names = p.names(*src_vars, "source_variables");
    const std::size_t e = src_names.size();
    RingSpec source(characteristic, e);
    auto psi_cols = p.vectors(*src_map, "source_map", e);
    if (psi_cols.size() != e)
      p.fail(src_map->line, "field 'source_map': expected " + std::to_string(e) + " columns");
    std::optional<MonomialMap> psi;
    try {
      psi.emplace(source, std::move(psi_cols));
    } catch (const std::invalid_argument& ex) {
      p.fail(src_map->line, std::string("field 'source_map': ") + ex.what());
    }
    auto images = p.vectors(*xi, "xi", d);
    try {
      square = TransferSquare::make(*psi, *map, std::move(images));
    } catch (const std::invalid_argument& ex) {
      p.fail(xi->line, ex.what());
    }
  }

  return SpecFile{std::move(variables), ring, std::move(*map), std::move(ideal), std::move(sequence),
                  std::move(square), fnv1a_digest(text)};
}

SpecFile parse_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open spec file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str(), path.string());
}

}  // namespace locent::cli
