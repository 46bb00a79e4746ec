#pragma once

#include <stdexcept>
#include <string>

namespace groupctl {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes, parents or schemas of the operands do not agree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An enumeration would produce more elements than the caller allows.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// The engine contradicted one of its own finiteness guarantees. Always a bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class ChainNotStrict : public PreconditionFailed {
 public:
  using PreconditionFailed::PreconditionFailed;
};

class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (subgroup specs, family specs, reports).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace groupctl
