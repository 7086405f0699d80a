#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "locent/endo.hpp"
#include "locent/monomial.hpp"

namespace locent::cli {

/// Malformed spec file; the message carries "origin:line: ".
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A validated ring / endomorphism description.
///
/// Format: one `key: value` field per line, '#' starts a comment.
///
///   characteristic: 3
///   variables: X, Y
///   quotient: [1,1]
///   map: [3,0], [0,3]          # columns: map(X), map(Y)
///   ideal: [2,0], [0,3]        # optional
///   sequence: [1,0], [0,1]     # optional, Koszul sequence
///   source_variables: U, V     # optional, transfer square source S
///   source_map: [3,0], [0,3]   # psi on S
///   xi: [1,0], [0,1]           # xi(U), xi(V) over the variables above
struct SpecFile {
  std::vector<std::string> variables;
  RingSpec ring;
  MonomialMap map;
  std::optional<MonomialIdeal> ideal;
  std::optional<std::vector<ExponentVector>> sequence;
  std::optional<TransferSquare> square;
  std::string digest;  // of the raw bytes
};

SpecFile parse_spec(const std::filesystem::path& path);
SpecFile parse_spec_text(std::string_view text, std::string_view origin = "<input>");

/// "fnv1a64:" followed by 16 hex digits.
std::string fnv1a_digest(std::string_view bytes);

}  // namespace locent::cli
