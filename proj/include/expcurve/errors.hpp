#pragma once

#include <stdexcept>
#include <string>

namespace expcurve {

/// A certified computation could not be certified (exit code 3 territory for the CLI).
struct CertificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two independent routes to the same quantity disagree; indicates a bug (exit code 4).
struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The requested input lies outside what the backend can handle.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace expcurve
