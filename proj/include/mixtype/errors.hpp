#pragma once

#include <stdexcept>
#include <string>

namespace mixtype {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Vector length does not match the ambient dimension.
struct DimensionError : Error {
  using Error::Error;
};

// Parameter point outside the analytic domain of a surface or stencil.
struct DomainError : Error {
  using Error::Error;
};

// Induced metric is degenerate (beta == 0 within tolerance).
struct DegenerateMetricError : Error {
  using Error::Error;
};

// A limit that was expected to exist does not (extrapolants blow up).
struct DivergenceError : Error {
  using Error::Error;
};

// Type-change point with vanishing gradient of B.
struct DegenerateTypeChangeError : Error {
  using Error::Error;
};

// Log-log regression failed to produce a consistent integer order.
struct OrderFitError : Error {
  using Error::Error;
};

// Input sampling or parameters violate an operation's precondition.
struct PreconditionError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

} // namespace mixtype
