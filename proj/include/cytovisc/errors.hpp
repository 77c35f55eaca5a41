#pragma once

#include <stdexcept>
#include <string>

namespace cytovisc {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A parameter or configuration violates its documented invariants.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Simulation state that cannot occur for a valid configuration
/// (e.g. a particle found inside an obstacle).
class InvalidState : public Error {
  public:
    using Error::Error;
};

/// Root finding failed because the target lies outside the achievable range.
class NoRootError : public Error {
  public:
    using Error::Error;
};

/// Malformed input file (CSV or config).
class ParseError : public Error {
  public:
    using Error::Error;
};

}  // namespace cytovisc
