#pragma once

#include <stdexcept>
#include <string>

namespace locent {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A mathematical hypothesis of an operation does not hold for its input.
struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The quotient under consideration is not of finite length.
struct NotFiniteLength : HypothesisError {
  using HypothesisError::HypothesisError;
};

/// An upper bound that is only valid over regular rings was requested on a quotient ring.
struct NotRegular : HypothesisError {
  using HypothesisError::HypothesisError;
};

/// Multidegree search for homology hit its size cap before stabilizing.
struct SearchRegionExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace locent
