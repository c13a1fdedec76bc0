#pragma once

#include <stdexcept>
#include <string>

namespace qcd {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integration failures.
struct StepSizeUnderflow : Error {
  using Error::Error;
};
struct NonFiniteState : Error {
  using Error::Error;
};

// Shape / argument violations.
struct LengthMismatch : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct InvalidSize : Error {
  using Error::Error;
};
struct InvalidSpin : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};

// Linear algebra failures.
struct SingularFit : Error {
  using Error::Error;
};
struct LinearSolveFailure : Error {
  using Error::Error;
};

// Configuration / front-end failures.
struct ParseError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct CapExceeded : Error {
  using Error::Error;
};

}  // namespace qcd
