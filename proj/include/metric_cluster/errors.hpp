#pragma once

#include <stdexcept>
#include <string>

namespace metric_cluster {

/// Base of every exception thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad literals, unknown vertices, broken graph invariants.
struct InvalidInput : Error {
  using Error::Error;
};

/// An exponential enumeration or a floating-point range guard refused the input.
struct LimitExceeded : Error {
  using Error::Error;
};

struct DisconnectedGraph : Error {
  using Error::Error;
};

/// The input is well formed but an operation's precondition does not hold
/// (non-metrizable graph, adjacent pair, uncertified graph, ...).
struct PreconditionFailed : Error {
  using Error::Error;
};

}  // namespace metric_cluster
